import random

import pytest

from eleech.rings import Eis, ONE, OMEGA, OMEGA2, THETA, ZERO
from eleech.linalg import (
    hermitian_ip, mat_det, mat_inverse, mat_mul, mat_identity,
    AutMatrix, mat_scalar, int_charpoly, Basis, FORM_E8H, FORM_LEECH_H,
)

H_GRAM = ((ZERO, -THETA), (THETA, ZERO))


def test_hermitian_ip_h_cell():
    # conj-linear first argument: <(1,0),(0,1)> = conj(theta) = -theta
    assert hermitian_ip((ONE, ZERO), (ZERO, ONE), H_GRAM) == -THETA


def test_hermitian_ip_r1_norm():
    r1 = (ONE, OMEGA2)
    assert hermitian_ip(r1, r1, H_GRAM) == Eis(-3, 0)


def test_hermitian_ip_zero_vector():
    assert hermitian_ip((ONE, OMEGA), (ZERO, ZERO), H_GRAM) == ZERO


def test_hermitian_ip_conjugate_symmetry():
    random.seed(0)
    for _ in range(100):
        u = tuple(Eis(random.randint(-5, 5), random.randint(-5, 5)) for _ in range(2))
        v = tuple(Eis(random.randint(-5, 5), random.randint(-5, 5)) for _ in range(2))
        assert hermitian_ip(u, v, H_GRAM) == hermitian_ip(v, u, H_GRAM).conj()


def test_hermitian_ip_dimension_mismatch():
    with pytest.raises(ValueError):
        hermitian_ip((ONE,), (ONE, ZERO), H_GRAM)


def test_mat_det_and_inverse():
    random.seed(1)
    for _ in range(30):
        m = tuple(
            tuple(Eis(random.randint(-3, 3), random.randint(-3, 3)) for _ in range(4))
            for _ in range(4)
        )
        d = mat_det(m)
        if not d:
            continue
        inv = mat_inverse(m)
        prod = mat_mul(m, inv)
        assert all(
            prod[i][j] == (1 if i == j else 0) for i in range(4) for j in range(4)
        )


def test_aut_matrix_theta_reduction():
    a = AutMatrix(mat_scalar(3, THETA), 1)
    assert a.k == 0 and a.is_identity()


def test_aut_matrix_pow_and_inverse():
    w = AutMatrix(mat_scalar(4, OMEGA))
    assert (w ** 3).is_identity()
    assert (w ** -1) @ w == AutMatrix.identity(4)
    assert w.scalar() == OMEGA


def test_int_charpoly_triangular():
    m = [[2, 1, 0], [0, 3, 0], [1, 0, 1]]
    assert int_charpoly(m) == [-6, 11, -6, 1]


def test_real_form_multiplicativity():
    a = AutMatrix(mat_scalar(2, Eis(1, 1)))
    rows, den = a.real_form()
    assert den == 1
    # multiplication by 1 + w on the (1, w) basis: 1 -> 1 + w, w -> w + w^2 = -1
    assert rows[0][0] == 1 and rows[1][0] == 1
    assert rows[0][1] == -1 and rows[1][1] == 0


def test_basis_solbecause_roundtrip(diagram):
    chosen, basis = diagram.root_basis()
    v = diagram.by_name["z2"].root
    t = basis.integral_coeffs(v) or basis.coeffs(v)
    rebuilt = [ZERO] * 14
    for c, node in zip(t, chosen):
        for i in range(14):
            rebuilt[i] = rebuilt[i] + c * node.root[i]
    assert tuple(rebuilt) == v


def test_forms_disagree_only_by_scaling():
    v = (ZERO,) * 12 + (ONE, OMEGA2)
    assert FORM_E8H.ip(v, v) == FORM_LEECH_H.ip(v, v) == Eis(-3, 0)
