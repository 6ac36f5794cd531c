import random
from fractions import Fraction

import pytest

from eleech.rings import (
    Eis, Cyclo12, SqrtThree,
    ONE, OMEGA, OMEGA2, THETA, UNITS, ZETA, XI, SQRT3_C, I_C,
    eis_gcd, unit_name, unit_from_name,
)


def test_unit_group_identities():
    assert OMEGA * OMEGA2 == ONE
    assert OMEGA ** 3 == ONE
    assert OMEGA2 == OMEGA * OMEGA
    assert len(set(UNITS)) == 6
    assert all(u.is_unit() for u in UNITS)


def test_theta_squared_is_minus_three():
    assert THETA == Eis(1, 2)
    assert THETA * THETA == Eis(-3, 0)
    assert THETA.conj() == -THETA


def test_norm_example():
    # norm(2 + w) = (2 + w)(1 - w) = 3
    x = Eis(2, 1)
    assert x.conj() == Eis(1, -1)
    assert x * x.conj() == Eis(3, 0)
    assert x.norm() == 3


def test_conj_involutive_automorphism():
    random.seed(2)
    for _ in range(300):
        x = Eis(random.randint(-40, 40), random.randint(-40, 40))
        y = Eis(random.randint(-40, 40), random.randint(-40, 40))
        assert x.conj().conj() == x
        assert (x + y).conj() == x.conj() + y.conj()
        assert (x * y).conj() == x.conj() * y.conj()
        assert x.norm() * y.norm() == (x * y).norm()


def test_ring_axioms_random_triples():
    random.seed(3)
    for _ in range(200):
        a, b, c = (Eis(random.randint(-9, 9), random.randint(-9, 9)) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def test_divides():
    assert THETA.divides(Eis(3, 0))           # 3 = -theta^2
    assert not THETA.divides(ONE)
    assert THETA.divides(THETA)
    with pytest.raises(ZeroDivisionError):
        Eis(0, 0).divides(ONE)


def test_euclidean_division():
    random.seed(4)
    for _ in range(500):
        x = Eis(random.randint(-99, 99), random.randint(-99, 99))
        d = Eis(random.randint(-9, 9), random.randint(-9, 9))
        if not d:
            continue
        q, r = divmod(x, d)
        assert q * d + r == x
        assert r.norm() < d.norm()


def test_gcd_divides_both():
    random.seed(5)
    for _ in range(100):
        x = Eis(random.randint(-30, 30), random.randint(-30, 30))
        y = Eis(random.randint(-30, 30), random.randint(-30, 30))
        if not x and not y:
            continue
        g = eis_gcd(x, y)
        assert g.divides(x) or not x
        assert g.divides(y) or not y


def test_unit_names_roundtrip():
    for u in UNITS:
        assert unit_from_name(unit_name(u)) == u


def test_cyclo12_reduction_polynomial():
    # zeta^4 = zeta^2 - 1 pins all the identities
    assert ZETA ** 4 == ZETA * ZETA - Cyclo12(1)
    assert ZETA ** 12 == Cyclo12(1)
    assert ZETA ** 6 == Cyclo12(-1)


def test_xi_identities():
    assert XI * ZETA == Cyclo12(1)            # xi = zeta^{-1}
    assert XI * XI == Cyclo12.from_eis(-OMEGA)
    assert XI ** 12 == Cyclo12(1)
    assert SQRT3_C * SQRT3_C == Cyclo12(3)
    assert SQRT3_C * I_C == Cyclo12.from_eis(THETA)


def test_eisenstein_embedding_homomorphism():
    random.seed(6)
    assert Cyclo12.from_eis(OMEGA) == ZETA * ZETA - Cyclo12(1)
    for _ in range(200):
        x = Eis(random.randint(-20, 20), random.randint(-20, 20))
        y = Eis(random.randint(-20, 20), random.randint(-20, 20))
        assert Cyclo12.from_eis(x + y) == Cyclo12.from_eis(x) + Cyclo12.from_eis(y)
        assert Cyclo12.from_eis(x * y) == Cyclo12.from_eis(x) * Cyclo12.from_eis(y)
        assert Cyclo12.from_eis(x.conj()) == Cyclo12.from_eis(x).conj()
        assert Cyclo12.from_eis(x).to_eis() == x


def test_cyclo12_conj_involution():
    random.seed(7)
    for _ in range(200):
        x = Cyclo12(*(random.randint(-9, 9) for _ in range(4)))
        y = Cyclo12(*(random.randint(-9, 9) for _ in range(4)))
        assert x.conj().conj() == x
        assert (x * y).conj() == x.conj() * y.conj()
        assert x.abs_sq().sign() >= 0


def test_sqrt3_examples():
    assert SqrtThree(Fraction(-3, 26), Fraction(4, 26)).sign() > 0
    assert SqrtThree(2, 0) > SqrtThree(0, 1)
    x = SqrtThree(5, -7)
    assert not x < x and not x > x


def test_sqrt3_matches_float_on_clear_gaps():
    random.seed(8)
    for _ in range(10_000):
        p = Fraction(random.randint(-10 ** 6, 10 ** 6), random.randint(1, 997))
        q = Fraction(random.randint(-10 ** 6, 10 ** 6), random.randint(1, 997))
        s = SqrtThree(p, q)
        f = s.to_float()
        if abs(f) > 1e-6:
            assert (s.sign() > 0) == (f > 0)


def test_sqrt3_field_operations():
    random.seed(9)
    for _ in range(200):
        a = SqrtThree(random.randint(-9, 9), random.randint(-9, 9))
        b = SqrtThree(random.randint(-9, 9), random.randint(-9, 9))
        if b:
            assert (a / b) * b == a
        assert a * b == b * a
        assert (a - b) + b == a
