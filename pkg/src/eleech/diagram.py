"""The 26-root diagram of L = 3E8+H, its projective-plane structure,
diagram automorphisms, the fixed lattice F, the Weyl vector and heights.

The 26 roots live in the coordinate system 3E8+H: three E8 blocks of four
coordinates followed by a hyperbolic pair.  Node adjacency is computed
from exact inner products and realizes the incidence graph of P2(F3):
every incident (point, line) pair of roots pairs to -w*theta exactly.

The scaled Weyl representative rho_hat = Sigma_P + xi * Sigma_L (26 times
the Weyl vector) has Z[zeta_12] coordinates; every height statement is
made on exact squares in Q(sqrt 3).
"""

from __future__ import annotations

from fractions import Fraction
from importlib import resources
from itertools import product

from .rings import (
    Cyclo12,
    Eis,
    SqrtThree,
    THETA,
    OMEGA,
    OMEGA2,
    ONE,
    ZERO,
    XI,
    SQRT3_C as SQRT3_C12,
)
from .linalg import AutMatrix, Basis, FORM_E8H
from .reflections import aut_from_rational

E = Eis
_O = ZERO
_1 = ONE
W = OMEGA
W2 = OMEGA2
MTW2 = E(-1, 1)   # -theta * w^2
TW2 = E(1, -1)    # theta * w^2

NODE_NAMES = (
    "a",
    "c1", "c2", "c3",
    "e1", "e2", "e3",
    "a1", "a2", "a3",
    "g1", "g2", "g3",
    "f",
    "f1", "f2", "f3",
    "b1", "b2", "b3",
    "z1", "z2", "z3",
    "d1", "d2", "d3",
)

POINT_NAMES = frozenset(
    ["a", "c1", "c2", "c3", "e1", "e2", "e3", "a1", "a2", "a3", "g1", "g2", "g3"]
)


def _blocks(i, block_i=None, block_jk=None):
    """Place 4-entry blocks at position i (1-based) and at the other two."""
    out = [[_O] * 4, [_O] * 4, [_O] * 4]
    if block_i is not None:
        out[i - 1] = list(block_i)
    if block_jk is not None:
        j = i % 3
        k = (i + 1) % 3
        out[j] = list(block_jk)
        out[k] = list(block_jk)
    return out


def _mk(blocks, alpha=_O, beta=_O):
    v = []
    for b in blocks:
        v.extend(b)
    v.append(alpha)
    v.append(beta)
    return tuple(v)


def _build_roots():
    roots = {}
    roots["a"] = _mk(_blocks(1), alpha=_1, beta=W2)
    for i in (1, 2, 3):
        roots[f"c{i}"] = _mk(_blocks(i, block_i=(MTW2, _O, _O, _O)))
        roots[f"e{i}"] = _mk(_blocks(i, block_i=(_O, MTW2, _O, _O)))
        roots[f"a{i}"] = _mk(
            _blocks(i, block_jk=(_O, _O, _O, MTW2)), alpha=W, beta=W2
        )
        roots[f"g{i}"] = _mk(
            _blocks(i, block_i=(_O, _O, _O, MTW2), block_jk=(_O, _O, TW2, MTW2)),
            alpha=E(0, 2),
            beta=E(-2, -2),
        )
        roots[f"f{i}"] = _mk(_blocks(i, block_i=(_O, _1, _1, _1)))
        roots[f"b{i}"] = _mk(
            _blocks(i, block_i=(_1, _O, _1, E(-1, 0))), alpha=E(-1, 0)
        )
        roots[f"z{i}"] = _mk(
            _blocks(i, block_i=(_O, _1, _1, E(-2, 0)), block_jk=(_1, _O, _1, E(-1, 0))),
            alpha=MTW2,
            beta=E(-1, -2),
        )
        roots[f"d{i}"] = _mk(_blocks(i, block_i=(_1, _1, E(-1, 0), _O)))
    roots["f"] = _mk(
        [(_O, _1, _1, E(-2, 0))] * 3, alpha=E(-2, 1), beta=E(-1, -2)
    )
    return roots


class DiagramNode:
    """A vertex of D: a named root plus its P2(F3) point or line."""

    __slots__ = ("index", "name", "kind", "root", "triple")

    def __init__(self, index, name, kind, root, triple):
        self.index = index
        self.name = name
        self.kind = kind  # "point" | "line"
        self.root = root
        self.triple = triple

    def __repr__(self):
        return f"DiagramNode({self.index}, {self.name!r}, {self.kind!r})"


class ProjPlane:
    """P2(F3): 13 point triples, 13 line triples, incidence l . x = 0.

    Triples are canonical (first nonzero entry 1) tuples over {0, 1, 2}.
    """

    def __init__(self):
        self.triples = _canonical_triples()
        self.incidence = {
            (l, x): _dot3(l, x) == 0 for l in self.triples for x in self.triples
        }

    def on(self, line, point) -> bool:
        return self.incidence[(line, point)]

    def points_on(self, line):
        return [x for x in self.triples if self.on(line, x)]

    def lines_through(self, point):
        return [l for l in self.triples if self.on(l, point)]


def _canonical_triples():
    out = []
    for t in product((0, 1, 2), repeat=3):
        if t == (0, 0, 0):
            continue
        nz = next(x for x in t if x)
        if nz == 1:
            out.append(t)
    return tuple(out)


def _dot3(u, v) -> int:
    return (u[0] * v[0] + u[1] * v[1] + u[2] * v[2]) % 3


def _canon_triple(t):
    t = tuple(x % 3 for x in t)
    nz = next((x for x in t if x), 0)
    if nz == 0:
        raise ValueError("zero triple")
    if nz == 2:
        t = tuple((2 * x) % 3 for x in t)
    return t


class Diagram:
    """The 26 nodes, their adjacency, constants and automorphism builders."""

    def __init__(self):
        raw = _build_roots()
        self.nodes = []
        labeling = _load_labeling()
        plane = ProjPlane()
        for idx, name in enumerate(NODE_NAMES):
            kind = "point" if name in POINT_NAMES else "line"
            self.nodes.append(
                DiagramNode(idx, name, kind, raw[name], labeling[name])
            )
        self.plane = plane
        self.by_name = {n.name: n for n in self.nodes}
        self.form = FORM_E8H
        self.points = [n for n in self.nodes if n.kind == "point"]
        self.lines = [n for n in self.nodes if n.kind == "line"]
        self._adj = None
        self._gram = None
        self._basis = None
        self._constants = None

    # -- adjacency ---------------------------------------------------------

    def gram(self):
        if self._gram is None:
            roots = [n.root for n in self.nodes]
            self._gram = tuple(
                tuple(self.form.ip(u, v) for v in roots) for u in roots
            )
        return self._gram

    def adjacency(self):
        """26x26 boolean matrix: |<r_i, r_j>|^2 = 3."""
        if self._adj is None:
            g = self.gram()
            self._adj = tuple(
                tuple(i != j and g[i][j].norm() == 3 for j in range(26))
                for i in range(26)
            )
        return self._adj

    def neighbors(self, idx):
        return [j for j in range(26) if self.adjacency()[idx][j]]

    # -- node-root basis ---------------------------------------------------

    def root_basis(self):
        """14 nodes whose roots form a Q(w)-basis, with exact solver."""
        if self._basis is None:
            chosen = []
            for n in self.nodes:
                trial = chosen + [n]
                if _rank([m.root for m in trial]) == len(trial):
                    chosen.append(n)
                if len(chosen) == 14:
                    break
            self._basis = (tuple(chosen), Basis([n.root for n in chosen]))
        return self._basis

    def aut_from_node_images(self, image):
        """The lattice map sending node root i to image(i) (an exact vector).

        image: callable index -> coordinate vector.  The map is built from
        14 independent roots and then verified on all 26.
        """
        chosen, basis = self.root_basis()
        img_cols = tuple(zip(*[image(n.index) for n in chosen]))
        from .linalg import mat_mul

        m = mat_mul(img_cols, basis._inv)
        aut = aut_from_rational(m)
        for n in self.nodes:
            if aut.apply(n.root) != tuple(image(n.index)):
                raise ValueError("node images are not linearly consistent")
        return aut

    # -- diagram automorphisms ----------------------------------------------

    def g_action(self, g) -> AutMatrix:
        """The lattice automorphism induced by g in GL3(F3) mod scalars.

        Points map by x -> g x, lines by l -> l g^{-1}; the node permutation
        extends linearly to L and preserves the form.
        """
        ginv = _inv3(g)
        if ginv is None:
            raise ValueError("g is not invertible over F_3")
        perm = {}
        for n in self.nodes:
            if n.kind == "point":
                t = _canon_triple(_matvec3(g, n.triple))
                perm[n.index] = self._point_by_triple(t).index
            else:
                t = _canon_triple(_vecmat3(n.triple, ginv))
                perm[n.index] = self._line_by_triple(t).index
        aut = self.aut_from_node_images(lambda i: self.nodes[perm[i]].root)
        return aut

    def sigma(self) -> AutMatrix:
        """The order-12 lift of the polarity: x -> -w l, l -> x (same triple)."""

        def image(i):
            n = self.nodes[i]
            if n.kind == "point":
                other = self._line_by_triple(n.triple)
                return tuple(-W * x for x in other.root)
            other = self._point_by_triple(n.triple)
            return other.root

        return self.aut_from_node_images(image)

    def _point_by_triple(self, t):
        for n in self.points:
            if n.triple == t:
                return n
        raise KeyError(t)

    def _line_by_triple(self, t):
        for n in self.lines:
            if n.triple == t:
                return n
        raise KeyError(t)

    # -- constants -----------------------------------------------------------

    def constants(self):
        if self._constants is None:
            self._constants = DiagramConstants(self)
        return self._constants

    def verify_linear_relations(self) -> bool:
        """sqrt3 rho_i + Sigma_i is one fixed vector over the lines (w_P)
        and one fixed vector over the points (xi w_L), exactly.

        The twelve independent differences of these relations generate all
        linear relations among the 26 roots.
        """
        c = self.constants()
        adj = self.adjacency()
        for l in self.lines:
            s = tuple((W2 * THETA) * x for x in l.root)  # sqrt3 xi l = w^2 theta l
            for p in self.points:
                if adj[l.index][p.index]:
                    s = tuple(a + b for a, b in zip(s, p.root))
            if s != c.w_p:
                return False
        want = tuple(XI * Cyclo12.from_eis(x) for x in c.w_l)
        for p in self.points:
            s = tuple(SQRT3_C12 * Cyclo12.from_eis(x) for x in p.root)
            for l in self.lines:
                if adj[p.index][l.index]:
                    s = tuple(a + XI * Cyclo12.from_eis(b) for a, b in zip(s, l.root))
            if s != want:
                return False
        return True

    def rho_vec(self, idx):
        """rho_i as a Z[zeta_12] vector: points as-is, lines times xi."""
        n = self.nodes[idx]
        cv = tuple(Cyclo12.from_eis(x) for x in n.root)
        if n.kind == "line":
            cv = tuple(XI * x for x in cv)
        return cv

    def height_sq(self, r) -> SqrtThree:
        """Exact ht(r)^2 = |<rho_hat, r>|^2 / (4 sqrt3 - 3)^2."""
        c = self.constants()
        ip = self.form.ip12(c.rho_hat, r)
        num = ip.abs_sq()
        return num / c.height_den

    def c_squared(self, u, v) -> SqrtThree:
        """c(u,v)^2 = |<u,v>|^2 / (|u|^2 |v|^2), exact in Q(sqrt 3)."""
        nu = self.form.ip12(u, u).to_sqrt3()
        nv = self.form.ip12(v, v).to_sqrt3()
        if not nu or not nv:
            raise ValueError("c^2 needs nonzero-norm arguments")
        return self.form.ip12(u, v).abs_sq() / (nu * nv)


class DiagramConstants:
    """w_P, w_L, the sums Sigma_P / Sigma_L, and the Weyl representatives."""

    def __init__(self, diagram: Diagram):
        form = diagram.form
        self.w_p = _sum_vectors(
            [tuple((W2 * THETA) * x for x in diagram.lines[0].root)]
            + [p.root for p in _points_on_line(diagram, diagram.lines[0])]
        )
        self.w_l = _sum_vectors(
            [tuple((-W * THETA) * x for x in diagram.points[0].root)]
            + [l.root for l in _lines_through_point(diagram, diagram.points[0])]
        )
        self.sigma_p = _sum_vectors([p.root for p in diagram.points])
        self.sigma_l = _sum_vectors([l.root for l in diagram.lines])
        sp = tuple(Cyclo12.from_eis(x) for x in self.sigma_p)
        sl = tuple(Cyclo12.from_eis(x) for x in self.sigma_l)
        self.rho_hat = tuple(p + XI * l for p, l in zip(sp, sl))
        self.rho_hat_minus = tuple(p - XI * l for p, l in zip(sp, sl))
        # |rho_hat|^2 = 26 (4 sqrt3 - 3); heights divide by (4 sqrt3 - 3)^2
        self.height_den = SqrtThree(-3, 4) * SqrtThree(-3, 4)
        self.form = form

    def fixed_lattice(self):
        from .lattices import HermitianLattice

        return HermitianLattice("F", (self.w_p, self.w_l), self.form.ip)


def _points_on_line(diagram, line_node):
    return [p for p in diagram.points if diagram.adjacency()[line_node.index][p.index]]


def _lines_through_point(diagram, point_node):
    return [l for l in diagram.lines if diagram.adjacency()[point_node.index][l.index]]


def _sum_vectors(vs):
    out = list(vs[0])
    for v in vs[1:]:
        for i, x in enumerate(v):
            out[i] = out[i] + x
    return tuple(out)


def _rank(vectors):
    rows = [[Eis(Fraction(x.a), Fraction(x.b)) for x in v] for v in vectors]
    rank = 0
    ncols = len(rows[0])
    pivots = []
    for row in rows:
        for pcol, prow in pivots:
            if row[pcol]:
                f = row[pcol].frac_div(prow[pcol])
                row = [x - f * y for x, y in zip(row, prow)]
        nz = next((i for i, x in enumerate(row) if x), None)
        if nz is not None:
            pivots.append((nz, row))
            rank += 1
    return rank


# ---------------------------------------------------------------------------
# numeric local-maximum probe (floating point diagnostic, not acceptance)


def _to_complex_vec(v):
    w = complex(-0.5, 3 ** 0.5 / 2)
    out = []
    for x in v:
        if isinstance(x, Cyclo12):
            c0, c1, c2, c3 = x.c
            z = complex(3 ** 0.5 / 2, 0.5)  # zeta_12
            out.append(c0 + c1 * z + c2 * z * z + c3 * z ** 3)
        else:
            out.append(x.a + x.b * w)
    return out


def _cip(u, v):
    s = 0j
    for i in range(12):
        s += u[i].conjugate() * v[i]
    th = complex(0.0, 3 ** 0.5)
    h = u[12].conjugate() * (-th) * v[13] + u[13].conjugate() * th * v[12]
    return h - s


def local_max_probe(diagram, samples=1000, eps=1e-4, tol=1e-9, seed=0):
    """Numeric check that the Weyl point locally maximizes the distance
    to the 26 mirrors: generic perturbations do not raise the minimum
    sinh^2-distance, and the special direction i*rho_minus lowers every
    single mirror distance.  Returns a report dict (diagnostic only)."""
    import random as _random

    rng = _random.Random(seed)
    rho = _to_complex_vec(diagram.constants().rho_hat)
    rho_m = _to_complex_vec(diagram.constants().rho_hat_minus)
    mirrors = [_to_complex_vec(n.root) for n in diagram.nodes]

    def dists(x):
        nx = _cip(x, x).real
        out = []
        for r in mirrors:
            ip = _cip(x, r)
            out.append((abs(ip) ** 2) / (nx * 3.0))  # -c^2 = sinh^2 distance
        return out

    base = dists(rho)
    base_min = min(base)
    increases = 0
    for _ in range(samples):
        v = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(14)]
        x = [r + eps * vv for r, vv in zip(rho, v)]
        if min(dists(x)) > base_min + tol:
            increases += 1
    # the direction i * rho_minus is the one place the first-order argument
    # is silent; the exact second-order computation (see
    # weyl_second_order_sign) shows every mirror distance grows there.
    x = [r + eps * complex(0, 1) * m for r, m in zip(rho, rho_m)]
    special = dists(x)
    special_all_drop = all(s < b for s, b in zip(special, base))
    special_all_increase = all(s > b for s, b in zip(special, base))
    zero = dists([r + 0.0 for r in rho])
    return {
        "samples": samples,
        "eps": eps,
        "tol": tol,
        "increases": increases,
        "special_all_drop": special_all_drop,
        "special_all_increase": special_all_increase,
        "zero_shift_unchanged": max(abs(a - b) for a, b in zip(zero, base)) == 0.0,
        "base_min": base_min,
    }


def weyl_second_order_sign(diagram) -> int:
    """Exact sign of d/d(eps^2) of sinh^2 d(rho + i eps rho_minus, mirror)
    at eps = 0 (the same for all 26 mirrors).

    With A = <rho_hat, rho_j>, B = <rho_hat_minus, rho_j> (both real up to
    the sign bookkeeping) and N+ > 0 > N- the Weyl norms, the ratio
    (A^2 + e B^2)/(3(N+ + e N-)) has derivative (B^2 N+ - A^2 N-)/(3 N+^2)
    at e = 0; both terms are positive, so every mirror distance increases
    along this direction.
    """
    a = SqrtThree(-3, 4)
    b = SqrtThree(-3, -4)
    n_plus = SqrtThree(-78, 104)
    n_minus = SqrtThree(-78, -104)
    # orthogonality of the two Weyl representatives makes the cross terms
    # vanish; assert it rather than assume it
    c = diagram.constants()
    assert not diagram.form.ip12(c.rho_hat, c.rho_hat_minus)
    return (b * b * n_plus - a * a * n_minus).sign()


# ---------------------------------------------------------------------------
# plane labeling: pinned assignment node name -> triple


def data_text(name: str) -> str:
    """Contents of a shipped data file, honoring ELEECH_DATA_DIR."""
    import os

    override = os.environ.get("ELEECH_DATA_DIR")
    if override:
        path = os.path.join(override, name)
        if os.path.exists(path):
            with open(path) as f:
                return f.read()
    return resources.files("eleech.data").joinpath(name).read_text()


def _load_labeling():
    text = data_text("plane_labeling.txt")
    out = {}
    for line in text.strip().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        name, a, b, c = line.split()
        out[name] = (int(a), int(b), int(c))
    return out


def find_labeling(adjacency, node_kinds, names):
    """Search a triple assignment making adjacency equal incidence.

    Backtracking over point assignments; each line then has to match the
    unique plane line through its four point neighbours.  Deterministic:
    first solution in lexicographic candidate order.
    """
    plane = ProjPlane()
    pts = [i for i, k in enumerate(node_kinds) if k == "point"]
    lns = [i for i, k in enumerate(node_kinds) if k == "line"]
    line_blocks = {
        l: frozenset(p for p in pts if adjacency[l][p]) for l in lns
    }
    assign = {}
    used = set()

    def line_of(p1, p2):
        for l in plane.triples:
            if _dot3(l, p1) == 0 and _dot3(l, p2) == 0:
                return l
        return None

    def consistent():
        for l, block in line_blocks.items():
            placed = [assign[p] for p in block if p in assign]
            if len(placed) >= 2:
                pl = line_of(placed[0], placed[1])
                if pl is None or any(_dot3(pl, x) for x in placed):
                    return False
        return True

    def bt(k):
        if k == len(pts):
            return True
        p = pts[k]
        for t in plane.triples:
            if t in used:
                continue
            assign[p] = t
            used.add(t)
            if consistent() and bt(k + 1):
                return True
            del assign[p]
            used.discard(t)
        return False

    if not bt(0):
        raise RuntimeError("no labeling found; adjacency is not P2(F3)")
    out = {}
    for p in pts:
        out[names[p]] = assign[p]
    for l in lns:
        placed = [assign[p] for p in line_blocks[l]]
        pl = line_of(placed[0], placed[1])
        assert pl is not None and all(_dot3(pl, x) == 0 for x in placed)
        out[names[l]] = pl
    return out


# ---------------------------------------------------------------------------
# F3 matrix helpers and PGL3(F3)


def _matvec3(g, x):
    return tuple(sum(g[i][j] * x[j] for j in range(3)) % 3 for i in range(3))


def _vecmat3(l, g):
    return tuple(sum(l[i] * g[i][j] for i in range(3)) % 3 for j in range(3))


def _det3(g) -> int:
    return (
        g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
        - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
        + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
    ) % 3

def _inv3(g):
    d = _det3(g)
    if d == 0:
        return None
    dinv = 1 if d == 1 else 2
    cof = [
        [
            (g[(i + 1) % 3][(j + 1) % 3] * g[(i + 2) % 3][(j + 2) % 3]
             - g[(i + 1) % 3][(j + 2) % 3] * g[(i + 2) % 3][(j + 1) % 3])
            for j in range(3)
        ]
        for i in range(3)
    ]
    return tuple(
        tuple((dinv * cof[j][i]) % 3 for j in range(3)) for i in range(3)
    )


def _matmul3(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) % 3 for j in range(3))
        for i in range(3)
    )


def pgl3_canon(g):
    """Scale so the first nonzero entry (row-major) is 1."""
    flat = [x for row in g for x in row]
    nz = next(x for x in flat if x)
    if nz == 2:
        return tuple(tuple((2 * x) % 3 for x in row) for row in g)
    return tuple(tuple(x % 3 for x in row) for row in g)


PGL3_ID = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def pgl3_closure(gens):
    """All elements of the subgroup generated by gens, canonicalized."""
    gens = [pgl3_canon(g) for g in gens]
    seen = {PGL3_ID}
    frontier = [PGL3_ID]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                e = pgl3_canon(_matmul3(g, h))
                if e not in seen:
                    seen.add(e)
                    nxt.append(e)
        frontier = nxt
    return seen

def pgl3_order(g) -> int:
    p = pgl3_canon(g)
    cur = p
    for k in range(1, 14):
        if cur == PGL3_ID:
            return k
        cur = pgl3_canon(_matmul3(cur, p))
    raise ValueError("order exceeds 13; not in PGL3(F3)?")


def presentation_generators():
    """A deterministic (x, y) pair realizing the PGL3(F3) presentation
    x^2 = y^3 = (xy)^13 = ((xy)^4 x y^-1)^2 (xy)^2 (x y^-1)^2 x y (x y^-1)^2 (xy)^2 x y^-1 = 1.
    """
    all_mats = []
    for flat in product((0, 1, 2), repeat=9):
        g = (flat[0:3], flat[3:6], flat[6:9])
        if _det3(g) and pgl3_canon(g) == g:
            all_mats.append(g)
    xs = [g for g in all_mats if pgl3_order(g) == 2]
    ys = [g for g in all_mats if pgl3_order(g) == 3]
    for x in xs:
        for y in ys:
            if pgl3_order(_matmul3(x, y)) != 13:
                continue
            if _long_relator_holds(x, y) and len(pgl3_closure([x, y])) == 5616:
                return x, y
    raise RuntimeError("no presentation pair found")


def _long_relator_holds(x, y) -> bool:
    yi = _inv3(y)
    xy = _matmul3(x, y)
    xyi = _matmul3(x, yi)

    def mul(*ms):
        out = PGL3_ID
        for m in ms:
            out = _matmul3(out, m)
        return out

    head = mul(xy, xy, xy, xy, xyi)
    word = mul(head, head, xy, xy, xyi, xyi, xy, xyi, xyi, xy, xy, xyi)
    return pgl3_canon(word) == PGL3_ID
