"""Vectors, matrices and Hermitian forms over Z[w] (and Z[zeta_12]).

Vectors are tuples of ring elements, matrices are tuples of row tuples.
Hermitian forms are conjugate linear in the FIRST argument and linear in
the second.  Lattice automorphisms are held as ``AutMatrix``: an exact
coordinate-space matrix A / theta^k (theta-denominators arise because the
coordinate lattice E^n may be strictly larger than the lattice acted on).
"""

from __future__ import annotations

from fractions import Fraction

from .rings import Eis, Cyclo12, THETA, ZERO, ONE

EVector = tuple
EMatrix = tuple


def vec(*entries) -> EVector:
    return tuple(x if isinstance(x, Eis) else Eis(x) for x in entries)


def vec_add(u, v):
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u, v):
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(s, u):
    return tuple(s * x for x in u)


def vec_neg(u):
    return tuple(-x for x in u)


def vec_is_zero(u) -> bool:
    return not any(u)


def vec_is_integral(u) -> bool:
    return all(x.is_integral() for x in u)


def mat_vec(m, v):
    return tuple(sum((a * x for a, x in zip(row, v)), start=ZERO) for row in m)


def mat_mul(a, b):
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), start=ZERO) for col in bt)
        for row in a
    )


def mat_transpose(m):
    return tuple(zip(*m))


def mat_conj_transpose(m):
    return tuple(tuple(x.conj() for x in col) for col in zip(*m))


def mat_identity(n) -> EMatrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def mat_scalar(n, s) -> EMatrix:
    s = s if isinstance(s, Eis) else Eis(s)
    return tuple(tuple(s if i == j else ZERO for j in range(n)) for i in range(n))


def mat_eq(a, b) -> bool:
    return a == b


def mat_is_hermitian(g) -> bool:
    return g == mat_conj_transpose(g)


def hermitian_ip(u, v, g) -> Eis:
    """conj(u)^T G v; conjugate linear in u, linear in v."""
    if len(u) != len(v) or len(u) != len(g):
        raise ValueError("dimension mismatch")
    total = ZERO
    for i, ui in enumerate(u):
        uc = ui.conj()
        row = g[i]
        acc = ZERO
        for j, vj in enumerate(v):
            gij = row[j]
            if gij:
                acc = acc + gij * vj
        total = total + uc * acc
    return total


def mat_det(m) -> Eis:
    """Exact determinant over Z[w] by fraction-free (Bareiss) elimination."""
    n = len(m)
    a = [list(row) for row in m]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).exact_div(prev)
            a[i][k] = ZERO
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def mat_inverse(m) -> EMatrix:
    """Exact inverse over Q(w): Gauss-Jordan with Fraction components."""
    n = len(m)
    a = [[Eis(Fraction(x.a), Fraction(x.b)) for x in row] for row in m]
    inv = [[Eis(Fraction(int(i == j))) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        p = a[col][col]
        for j in range(n):
            a[col][j] = a[col][j].frac_div(p)
            inv[col][j] = inv[col][j].frac_div(p)
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                for j in range(n):
                    a[r][j] = a[r][j] - f * a[col][j]
                    inv[r][j] = inv[r][j] - f * inv[col][j]
    return tuple(tuple(row) for row in inv)


class Basis:
    """A cached invertible coordinate matrix with exact solve."""

    def __init__(self, vectors):
        self.vectors = tuple(tuple(v) for v in vectors)
        self.cols = tuple(zip(*self.vectors))
        self._inv = mat_inverse(self.cols)

    def coeffs(self, v) -> EVector:
        """Coefficients t with v = sum t_i * vectors[i] (exact, maybe Fractions)."""
        return mat_vec(self._inv, v)

    def integral_coeffs(self, v):
        """Like coeffs but None when any coefficient is non-integral."""
        t = self.coeffs(v)
        out = []
        for x in t:
            if not _is_integral_pair(x):
                return None
            out.append(Eis(int(x.a), int(x.b)))
        return tuple(out)


# ---------------------------------------------------------------------------
# Hermitian forms of the two coordinate systems


class LorentzForm:
    """The Hermitian form of a 14-dim Lorentzian coordinate system.

    * negdef part: the first 12 coordinates, either minus the plain sum
      (3E8+H system) or minus one third of it (Leech+H system);
    * hyperbolic tail on the last two: <(al,be),(al',be')> =
      conj(al)*conj(theta)*be' + conj(be)*theta*al'.
    """

    def __init__(self, name: str, leech_scaled: bool):
        self.name = name
        self.leech_scaled = leech_scaled

    def ip(self, u, v) -> Eis:
        if len(u) != 14 or len(v) != 14:
            raise ValueError("LorentzForm expects 14 coordinates")
        s = ZERO
        for i in range(12):
            if u[i] and v[i]:
                s = s + u[i].conj() * v[i]
        if self.leech_scaled:
            s = _div3_eis(s)
        al, be = u[12], u[13]
        alp, bep = v[12], v[13]
        h = al.conj() * (-THETA) * bep + be.conj() * THETA * alp
        return h - s

    def ip12(self, u, v) -> Cyclo12:
        """Same form with Z[zeta_12]-entried vectors (exact)."""
        cu = [x if isinstance(x, Cyclo12) else Cyclo12.from_eis(x) for x in u]
        cv = [x if isinstance(x, Cyclo12) else Cyclo12.from_eis(x) for x in v]
        s = Cyclo12()
        for i in range(12):
            s = s + cu[i].conj() * cv[i]
        if self.leech_scaled:
            s = s.divide_exact_int(3)
        th = Cyclo12.from_eis(THETA)
        h = cu[12].conj() * (-th) * cv[13] + cu[13].conj() * th * cv[12]
        return h - s

    def norm(self, u) -> Eis:
        return self.ip(u, u)


def _div3_eis(x: Eis) -> Eis:
    qa, ra = divmod(x.a, 3)
    qb, rb = divmod(x.b, 3)
    if ra or rb:
        raise ValueError(f"{x} not divisible by 3; vector outside the lattice pairing")
    return Eis(qa, qb)


FORM_E8H = LorentzForm("3E8+H", leech_scaled=False)
FORM_LEECH_H = LorentzForm("Leech+H", leech_scaled=True)


# ---------------------------------------------------------------------------
# Automorphisms as exact coordinate matrices A / theta^k


class AutMatrix:
    """A lattice automorphism as a coordinate matrix with theta denominator.

    value = mat / theta^k.  theta * E^14 always lies inside the lattices we
    act on, so k <= 1 after reduction; products temporarily raise k and are
    reduced again.
    """

    __slots__ = ("mat", "k", "n")

    def __init__(self, mat, k=0):
        self.mat = tuple(tuple(row) for row in mat)
        self.k = k
        self.n = len(self.mat)
        self._reduce()

    def _reduce(self):
        while self.k > 0 and all(THETA.divides(x) for row in self.mat for x in row):
            self.mat = tuple(tuple(x.exact_div(THETA) for x in row) for row in self.mat)
            self.k -= 1

    @classmethod
    def identity(cls, n=14) -> "AutMatrix":
        return cls(mat_identity(n))

    @classmethod
    def from_columns(cls, cols, k=0) -> "AutMatrix":
        return cls(tuple(zip(*cols)), k)

    def __eq__(self, other):
        if not isinstance(other, AutMatrix):
            return NotImplemented
        return self.k == other.k and self.mat == other.mat

    def __hash__(self):
        return hash((self.k, self.mat))

    def __matmul__(self, other: "AutMatrix") -> "AutMatrix":
        return AutMatrix(mat_mul(self.mat, other.mat), self.k + other.k)

    def __pow__(self, n: int) -> "AutMatrix":
        if n < 0:
            return self.inverse() ** (-n)
        out = AutMatrix.identity(self.n)
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def apply(self, v):
        """Image of a coordinate vector (entries Eis, exact)."""
        w = mat_vec(self.mat, v)
        for _ in range(self.k):
            w = tuple(x.exact_div(THETA) for x in w)
        return w

    def apply12(self, v):
        """Image of a Z[zeta_12]-entried coordinate vector."""
        cv = [x if isinstance(x, Cyclo12) else Cyclo12.from_eis(x) for x in v]
        rows = []
        for row in self.mat:
            acc = Cyclo12()
            for a, x in zip(row, cv):
                if a:
                    acc = acc + Cyclo12.from_eis(a) * x
            rows.append(acc)
        th = Cyclo12.from_eis(THETA)
        for _ in range(self.k):
            rows = [(x * (-th)).divide_exact_int(3) for x in rows]
        return tuple(rows)

    def is_identity(self) -> bool:
        return self.k == 0 and self.mat == mat_identity(self.n)

    def scalar(self):
        """The scalar s when self == s * I, else None."""
        if self.k != 0:
            return None
        s = self.mat[0][0]
        return s if self.mat == mat_scalar(self.n, s) else None

    def inverse(self) -> "AutMatrix":
        # value = mat/theta^k, so inverse = theta^k * mat^{-1}; clear the
        # rational denominators of mat^{-1} with theta powers.
        cur = mat_inverse(self.mat)
        j = 0
        while not all(_is_integral_pair(x) for row in cur for x in row):
            cur = tuple(tuple(THETA * x for x in row) for row in cur)
            j += 1
            if j > 14 * (self.k + 2):
                raise ValueError("inverse not theta-integral; not a lattice map")
        mat = tuple(tuple(Eis(int(x.a), int(x.b)) for x in row) for row in cur)
        if j >= self.k:
            return AutMatrix(mat, j - self.k)
        extra = THETA ** (self.k - j)
        return AutMatrix(tuple(tuple(extra * x for x in row) for row in mat))

    def conj_transpose(self) -> "AutMatrix":
        if self.k:
            raise ValueError("conj_transpose only for integral matrices")
        return AutMatrix(mat_conj_transpose(self.mat))

    def preserves_form(self, gram: EMatrix) -> bool:
        """Exact check of conj(M)^T G M == G (G integral Hermitian)."""
        mh = mat_conj_transpose(self.mat)
        lhs = mat_mul(mh, mat_mul(gram, self.mat))
        scale = 3 ** self.k  # conj(theta^k) theta^k = 3^k
        rhs = tuple(tuple(x * scale for x in row) for row in gram)
        return lhs == rhs

    def real_form(self):
        """The underlying 2n x 2n integer matrix divided by 3^(k/2)...

        Returns (rows, den) with rows a 2n x 2n integer matrix over the
        Z-basis (e_1, w e_1, e_2, w e_2, ...) and den an integer such that
        the real matrix is rows/den.  Multiplication by a + bw acts on the
        (1, w) column pair as [[a, -b], [b, a - b]].
        """
        n = self.n
        rows = [[0] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            for j in range(n):
                x = self.mat[i][j]
                a, b = x.a, x.b
                rows[2 * i][2 * j] = a
                rows[2 * i][2 * j + 1] = -b
                rows[2 * i + 1][2 * j] = b
                rows[2 * i + 1][2 * j + 1] = a - b
        den = 1
        if self.k:
            # divide by theta^k: multiply by (-theta/3)^k in integer form
            th = [[1, -2], [2, -1]]
            for _ in range(self.k):
                rows = _int_mat_mul(rows, _theta_inverse_scaled(n, th))
                den *= 3
        return rows, den


def _theta_inverse_scaled(n, th):
    """Block-diagonal integer matrix of multiplication by -theta = 3*theta^{-1}."""
    size = 2 * n
    m = [[0] * size for _ in range(size)]
    for i in range(n):
        m[2 * i][2 * i] = -th[0][0]
        m[2 * i][2 * i + 1] = -th[0][1]
        m[2 * i + 1][2 * i] = -th[1][0]
        m[2 * i + 1][2 * i + 1] = -th[1][1]
    return m


def _int_mat_mul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def _is_integral_pair(x: Eis) -> bool:
    a, b = x.a, x.b
    if isinstance(a, Fraction) and a.denominator != 1:
        return False
    if isinstance(b, Fraction) and b.denominator != 1:
        return False
    return True


def int_charpoly(m) -> list:
    """Characteristic polynomial of an integer matrix (Faddeev-LeVerrier).

    Returns coefficients [c_0, ..., c_n] with p(x) = sum c_i x^i and
    leading coefficient 1.  All arithmetic is exact.
    """
    n = len(m)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = [[1 if i == j else 0 for j in range(n)] for i in range(n)]  # M_0 = I
    am = m
    for k in range(1, n + 1):
        amk = _int_mat_mul(am, mk) if k > 1 else [row[:] for row in m]
        tr = sum(amk[i][i] for i in range(n))
        c, r = divmod(tr, k)
        assert r == 0, "Faddeev-LeVerrier divisibility failed"
        c = -c
        coeffs[n - k] = c
        if k < n:
            mk = [row[:] for row in amk]
            for i in range(n):
                mk[i][i] += c
    return coeffs
