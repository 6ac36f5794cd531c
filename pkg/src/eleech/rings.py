"""Exact scalar arithmetic: Z[w], Z[zeta_12] and Q(sqrt 3).

Conventions
-----------
* ``Eis(a, b)`` is a + b*w with w = exp(2*pi*i/3), reduced by w^2 = -1 - w.
* ``theta = w - conj(w) = 1 + 2w`` satisfies theta^2 = -3, conj(theta) = -theta.
* ``Cyclo12(c0, c1, c2, c3)`` is c0 + c1*z + c2*z^2 + c3*z^3 with z a primitive
  12th root of unity, reduced by z^4 = z^2 - 1 (the 12th cyclotomic polynomial).
* ``SqrtThree(p, q)`` is p + q*sqrt(3) with rational p, q and an exact total
  order (sign decided by sign analysis and squaring, never by floating point).

Everything is immutable and hashable; no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering


class Eis:
    """Eisenstein integer a + b*w, components normally plain ints.

    Rational components (Fraction) are accepted so the same arithmetic
    drives exact linear algebra over Q(w); lattice code only ever stores
    integer components.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, *_):
        raise AttributeError("Eis is immutable")

    def __repr__(self):
        return f"Eis({self.a}, {self.b})"

    def __str__(self):
        return f"{self.a},{self.b}"

    def __hash__(self):
        return hash((self.a, self.b))

    def __eq__(self, other):
        if isinstance(other, Eis):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.a == other and self.b == 0
        return NotImplemented

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Eis(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Eis(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Eis(-self.a, -self.b)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        # (a + bw)(c + dw) = ac - bd + (ad + bc - bd) w  using w^2 = -1 - w
        a, b, c, d = self.a, self.b, other.a, other.b
        bd = b * d
        return Eis(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Eis":
        if n < 0:
            raise ValueError("negative powers live in Q(w); invert explicitly")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "Eis":
        # conj(a + bw) = (a - b) - bw
        return Eis(self.a - self.b, -self.b)

    def norm(self):
        """x * conj(x) = a^2 - ab + b^2 >= 0."""
        return self.a * self.a - self.a * self.b + self.b * self.b

    def is_unit(self) -> bool:
        return self.norm() == 1

    def is_integral(self) -> bool:
        return isinstance(self.a, int) and isinstance(self.b, int)

    def divides(self, x: "Eis") -> bool:
        """True iff x / self lies in Z[w].  self must be nonzero."""
        if not self:
            raise ZeroDivisionError("zero divisor in Eis.divides")
        n = self.norm()
        t = x * self.conj()
        return t.a % n == 0 and t.b % n == 0

    def exact_div(self, d: "Eis") -> "Eis":
        """x / d, raising ValueError when the quotient is not integral."""
        if not d:
            raise ZeroDivisionError
        n = d.norm()
        t = self * d.conj()
        qa, ra = divmod(t.a, n)
        qb, rb = divmod(t.b, n)
        if ra or rb:
            raise ValueError(f"{self} not divisible by {d}")
        return Eis(qa, qb)

    def frac_div(self, d: "Eis") -> "Eis":
        """x / d in Q(w) (Fraction components)."""
        if not d:
            raise ZeroDivisionError
        n = d.norm()
        t = self * d.conj()
        return Eis(Fraction(t.a, n), Fraction(t.b, n))

    def __divmod__(self, d: "Eis"):
        """Euclidean division: q, r with x = q*d + r and norm(r) < norm(d).

        Rounding each Q(w)-coordinate to the nearest integer gives
        norm(r/d) <= 3/4 < 1, so Z[w] is norm-Euclidean.
        """
        if not d:
            raise ZeroDivisionError
        n = d.norm()
        t = self * d.conj()
        q = Eis(_round_div(t.a, n), _round_div(t.b, n))
        return q, self - q * d

    def __mod__(self, d: "Eis") -> "Eis":
        return divmod(self, d)[1]

    def mod_theta(self) -> int:
        """Image in Z[w]/theta = F_3 as an int in {0, 1, 2}; w maps to 1."""
        return (self.a + self.b) % 3

    def key(self):
        """Total-order key: by norm, then a, then b."""
        return (self.norm(), self.a, self.b)


def _coerce(x):
    if isinstance(x, Eis):
        return x
    if isinstance(x, (int, Fraction)):
        return Eis(x, 0)
    return None


def _round_div(a, n):
    """Nearest integer to a/n (n > 0), ties toward +infinity."""
    return (2 * a + n) // (2 * n)


ZERO = Eis(0, 0)
ONE = Eis(1, 0)
OMEGA = Eis(0, 1)
OMEGA2 = Eis(-1, -1)
THETA = Eis(1, 2)  # w - conj(w) = sqrt(-3)

#: The unit group of Z[w]: +-1, +-w, +-w^2 (six elements).
UNITS = (ONE, OMEGA, OMEGA2, -ONE, -OMEGA, -OMEGA2)

_UNIT_NAMES = {ONE: "1", -ONE: "-1", OMEGA: "w", -OMEGA: "-w",
               OMEGA2: "w2", -OMEGA2: "-w2"}
_NAME_UNITS = {v: k for k, v in _UNIT_NAMES.items()}


def unit_name(u: Eis) -> str:
    return _UNIT_NAMES[u]


def unit_from_name(s: str) -> Eis:
    return _NAME_UNITS[s]


def eis_gcd(x: Eis, y: Eis) -> Eis:
    """A gcd in the Euclidean domain Z[w] (well defined up to units)."""
    while y:
        x, y = y, x % y
    return x


class Cyclo12:
    """Element of Z[zeta_12] in the basis 1, z, z^2, z^3 with z^4 = z^2 - 1."""

    __slots__ = ("c",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        object.__setattr__(self, "c", (c0, c1, c2, c3))

    def __setattr__(self, *_):
        raise AttributeError("Cyclo12 is immutable")

    def __repr__(self):
        return f"Cyclo12{self.c}"

    def __hash__(self):
        return hash(self.c)

    def __eq__(self, other):
        other = _coerce12(other)
        if other is None:
            return NotImplemented
        return self.c == other.c

    def __bool__(self):
        return any(self.c)

    def __add__(self, other):
        other = _coerce12(other)
        if other is None:
            return NotImplemented
        return Cyclo12(*(x + y for x, y in zip(self.c, other.c)))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce12(other)
        if other is None:
            return NotImplemented
        return Cyclo12(*(x - y for x, y in zip(self.c, other.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Cyclo12(*(-x for x in self.c))

    def __mul__(self, other):
        other = _coerce12(other)
        if other is None:
            return NotImplemented
        a0, a1, a2, a3 = self.c
        b0, b1, b2, b3 = other.c
        # convolution up to degree 6
        d0 = a0 * b0
        d1 = a0 * b1 + a1 * b0
        d2 = a0 * b2 + a1 * b1 + a2 * b0
        d3 = a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0
        d4 = a1 * b3 + a2 * b2 + a3 * b1
        d5 = a2 * b3 + a3 * b2
        d6 = a3 * b3
        # z^4 = z^2 - 1, z^5 = z^3 - z, z^6 = -1
        return Cyclo12(d0 - d4 - d6, d1 - d5, d2 + d4, d3 + d5)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Cyclo12":
        out = Cyclo12(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "Cyclo12":
        # conj(z) = z - z^3, conj(z^2) = 1 - z^2, conj(z^3) = -z^3
        c0, c1, c2, c3 = self.c
        return Cyclo12(c0 + c2, c1, -c2, -c1 - c3)

    def divide_exact_int(self, n: int) -> "Cyclo12":
        out = []
        for x in self.c:
            q, r = divmod(x, n)
            if r:
                raise ValueError(f"{self} not divisible by {n}")
            out.append(q)
        return Cyclo12(*out)

    @classmethod
    def from_eis(cls, x: Eis) -> "Cyclo12":
        # w = z^2 - 1
        return cls(x.a - x.b, 0, x.b, 0)

    def to_eis(self) -> Eis:
        c0, c1, c2, c3 = self.c
        if c1 or c3:
            raise ValueError(f"{self} is not in Z[w]")
        return Eis(c0 + c2, c2)

    def to_sqrt3(self) -> "SqrtThree":
        """Exact conversion for totally real elements (in Z[sqrt 3])."""
        c0, c1, c2, c3 = self.c
        if c2 != 0 or c1 != -2 * c3:
            raise ValueError(f"{self} is not in Z[sqrt 3]")
        return SqrtThree(c0, -c3)

    def abs_sq(self) -> "SqrtThree":
        """x * conj(x) as an exact element of Z[sqrt 3] (>= 0)."""
        return (self * self.conj()).to_sqrt3()


def _coerce12(x):
    if isinstance(x, Cyclo12):
        return x
    if isinstance(x, Eis):
        return Cyclo12.from_eis(x)
    if isinstance(x, (int, Fraction)):
        return Cyclo12(x)
    return None


ZETA = Cyclo12(0, 1, 0, 0)
XI = Cyclo12(0, 1, 0, -1)      # e^{-pi i/6} = zeta^{-1}
SQRT3_C = Cyclo12(0, 2, 0, -1)  # zeta + zeta^{-1}
I_C = Cyclo12(0, 0, 0, 1)


@total_ordering
class SqrtThree:
    """p + q*sqrt(3) with rational p, q; exactly ordered."""

    __slots__ = ("p", "q")

    def __init__(self, p=0, q=0):
        object.__setattr__(self, "p", Fraction(p))
        object.__setattr__(self, "q", Fraction(q))

    def __setattr__(self, *_):
        raise AttributeError("SqrtThree is immutable")

    def __repr__(self):
        return f"SqrtThree({self.p}, {self.q})"

    def __hash__(self):
        return hash((self.p, self.q))

    def sign(self) -> int:
        p, q = self.p, self.q
        if p == 0 and q == 0:
            return 0
        if p >= 0 and q >= 0:
            return 1
        if p <= 0 and q <= 0:
            return -1
        # opposite signs: compare p^2 with 3 q^2
        d = p * p - 3 * q * q
        big = 1 if d > 0 else (-1 if d < 0 else 0)
        return big if p > 0 else -big

    def __eq__(self, other):
        other = _coerce_s3(other)
        if other is None:
            return NotImplemented
        return self.p == other.p and self.q == other.q

    def __lt__(self, other):
        other = _coerce_s3(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() < 0

    def __bool__(self):
        return bool(self.p) or bool(self.q)

    def __add__(self, other):
        other = _coerce_s3(other)
        if other is None:
            return NotImplemented
        return SqrtThree(self.p + other.p, self.q + other.q)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_s3(other)
        if other is None:
            return NotImplemented
        return SqrtThree(self.p - other.p, self.q - other.q)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return SqrtThree(-self.p, -self.q)

    def __mul__(self, other):
        other = _coerce_s3(other)
        if other is None:
            return NotImplemented
        return SqrtThree(self.p * other.p + 3 * self.q * other.q,
                         self.p * other.q + self.q * other.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_s3(other)
        if other is None:
            return NotImplemented
        d = other.p * other.p - 3 * other.q * other.q
        if d == 0:
            raise ZeroDivisionError
        num = self * SqrtThree(other.p, -other.q)
        return SqrtThree(num.p / d, num.q / d)

    def galois_conj(self) -> "SqrtThree":
        return SqrtThree(self.p, -self.q)

    def to_float(self) -> float:
        return float(self.p) + float(self.q) * 3 ** 0.5


def _coerce_s3(x):
    if isinstance(x, SqrtThree):
        return x
    if isinstance(x, (int, Fraction)):
        return SqrtThree(x, 0)
    return None
