import random
from itertools import product

from eleech.rings import Eis, ONE, OMEGA, THETA, ZERO
from eleech.lattices import (
    leech_contains, e8_contains, leech_ip, e8_ip, h_ip,
    shell_e8, first_shell_by_coset_search,
    flat_norm6, flat_re_ip2, from_flat, to_flat,
    leech_basis, e8_basis,
    lattice_lambda, lattice_e8, lattice_h, lattice_leech_h, lattice_3e8_h,
    affine_e8_check, is_primitive, in_l_e8h,
)

Z12 = (ZERO,) * 12


def vec12(**kw):
    v = list(Z12)
    for k, x in kw.items():
        v[int(k[1:])] = x
    return tuple(v)


def test_leech_contains_zero():
    w = leech_contains(Z12)
    assert w == (0, (0,) * 12, (ZERO,) * 12)


def test_leech_contains_3_minus3():
    v = vec12(i0=Eis(3, 0), i1=Eis(-3, 0))
    w = leech_contains(v)
    assert w is not None and w[0] == 0
    assert leech_ip(v, v) == Eis(-6, 0)


def test_leech_rejects_3e1():
    assert leech_contains(vec12(i0=Eis(3, 0))) is None


def test_leech_witness_reconstructs():
    random.seed(0)
    basis = leech_basis()
    for _ in range(50):
        v = Z12
        for row in basis:
            c = Eis(random.randint(-2, 2), random.randint(-2, 2))
            v = tuple(x + c * y for x, y in zip(v, row))
        m, c, z = leech_contains(v)
        rebuilt = tuple(
            Eis(m, 0) + THETA * Eis(ci, 0) + Eis(3, 0) * zi for ci, zi in zip(c, z)
        )
        assert rebuilt == v


def test_e8_membership_examples():
    assert e8_contains((THETA, ZERO, ZERO, ZERO))
    assert e8_contains((ONE, ONE, Eis(-1, 0), ZERO))  # tetracode generator lift
    assert not e8_contains((ONE, ZERO, ZERO, ZERO))


def test_e8_shell_240():
    assert len(shell_e8()) == 240


def test_e8_shell_no_norm_one():
    # minimal norm is -3: nothing of coordinate norm sum 1 or 2 in E8
    cands = [Eis(0, 0)] + [u for u in (ONE, OMEGA, -ONE, -OMEGA, Eis(-1, -1), Eis(1, 1))]
    found = [
        v for v in product(cands, repeat=4)
        if sum(x.norm() for x in v) in (1, 2) and e8_contains(v)
    ]
    assert found == []


def test_leech_shell_vs_small_box_oracle(shell):
    """Naive box search on 2-coordinate supports agrees with the shell."""
    shell_set = set(shell)
    norms_le_18 = [
        Eis(a, b)
        for a in range(-5, 6)
        for b in range(-5, 6)
        if Eis(a, b).norm() <= 18
    ]
    for i, j in ((0, 1), (3, 7), (10, 11)):
        brute = set()
        for x in norms_le_18:
            for y in norms_le_18:
                v = list(Z12)
                v[i], v[j] = x, y
                v = tuple(v)
                if leech_contains(v) is not None and leech_ip(v, v) == Eis(-6, 0):
                    brute.add(to_flat(v))
        from_shell = {
            f for f in shell_set
            if all(f[2 * k] == 0 and f[2 * k + 1] == 0 for k in range(12) if k not in (i, j))
        }
        assert brute == from_shell


def test_leech_shell_count_and_methods_agree(shell):
    assert len(shell) == 196560
    assert len(set(shell)) == 196560
    assert set(shell) == first_shell_by_coset_search()


def test_shell_members_all_contained(shell):
    random.seed(1)
    for f in random.sample(shell, 2000):
        assert flat_norm6(f)
        assert leech_contains(from_flat(f)) is not None


def test_discriminants():
    assert lattice_lambda().discriminant() == 729        # 3^6
    assert lattice_e8().discriminant() == 9
    assert lattice_h().discriminant() == 3
    assert lattice_leech_h().discriminant() == 2187      # 3^7
    assert lattice_3e8_h().discriminant() == 2187


def test_basis_rows_in_lattices():
    for row in leech_basis():
        assert leech_contains(row) is not None
    for row in e8_basis():
        assert e8_contains(row)


def test_theta_divides_all_inner_products():
    random.seed(2)
    L = lattice_leech_h()
    for _ in range(10_000):
        u = L.basis[random.randrange(14)]
        v = L.basis[random.randrange(14)]
        assert THETA.divides(L.ip(u, v))


def test_real_form_even_norms():
    random.seed(3)
    L = lattice_leech_h()
    for _ in range(1000):
        v = (ZERO,) * 14
        for row in random.sample(L.basis, 4):
            c = Eis(random.randint(-2, 2), random.randint(-2, 2))
            v = tuple(x + c * y for x, y in zip(v, row))
        n = L.ip(v, v)
        assert n.b == 0 and n.a % 3 == 0
        # real norm (2/3) * n is an even integer
        assert (2 * n.a // 3) % 2 == 0


def test_lambda_sampled_norms_at_most_minus_6():
    random.seed(4)
    basis = leech_basis()
    for _ in range(500):
        v = Z12
        for row in basis:
            c = Eis(random.randint(-1, 1), random.randint(-1, 1))
            v = tuple(x + c * y for x, y in zip(v, row))
        if any(v):
            assert leech_ip(v, v).a <= -6


def test_h_cell_form():
    assert h_ip((ONE, ZERO), (ZERO, ONE)) == -THETA
    assert h_ip((ONE, Eis(-1, -1)), (ONE, Eis(-1, -1))) == Eis(-3, 0)


def test_affine_e8_check_from_diagram(diagram):
    for i in (1, 2, 3):
        c = diagram.by_name[f"c{i}"].root
        d = diagram.by_name[f"d{i}"].root
        e = diagram.by_name[f"e{i}"].root
        f = diagram.by_name[f"f{i}"].root
        lam = Eis(2, 1)
        bprime = tuple(
            -(lam * cc + Eis(2, 0) * dd + lam * ee + ff)
            for cc, dd, ee, ff in zip(c, d, e, f)
        )
        assert in_l_e8h(bprime)
        assert affine_e8_check(c, d, e, f, bprime, diagram.form.ip)
        # a consistent unit rescaling keeps the relation
        u = OMEGA
        assert affine_e8_check(
            tuple(u * x for x in c), tuple(u * x for x in d),
            tuple(u * x for x in e), tuple(u * x for x in f),
            tuple(u * x for x in bprime), diagram.form.ip,
        )


def test_affine_e8_check_rejects_zero(diagram):
    z = (ZERO,) * 14
    assert not affine_e8_check(z, z, z, z, z, diagram.form.ip)


def test_primitivity():
    assert is_primitive((ONE, THETA))
    assert not is_primitive((THETA, Eis(3, 0)))
