import random
from fractions import Fraction

import numpy as np
import pytest

from conftest import rand_rational_matrix
from dimvar import (SubspaceBasis, column_space_basis, in_span, j_matrix,
                    kron, mat, matrix_exponential_apply, ones_vector,
                    parse_scalar, rank, vec)
from dimvar.numerics import eye, inverse, solve, to_float, zeros


def test_parse_scalar_grammar():
    assert parse_scalar("3") == 3
    assert parse_scalar("3/2") == Fraction(3, 2)
    assert parse_scalar("0.75") == Fraction(3, 4)
    assert parse_scalar(" -7/3 ") == Fraction(-7, 3)
    with pytest.raises(ValueError):
        parse_scalar("abc")


def test_ones_and_j():
    assert ones_vector(3).tolist() == [1, 1, 1]
    assert j_matrix(1).tolist() == [[1]]
    J2 = j_matrix(2)
    assert np.array_equal(J2 @ J2, J2)  # idempotent
    assert np.array_equal(j_matrix(3) @ ones_vector(3), ones_vector(3))
    with pytest.raises(ValueError):
        j_matrix(0)
    with pytest.raises(ValueError):
        ones_vector(0)


def test_kron_identity_and_block():
    B = mat([[1, 2], [3, 4]])
    assert np.array_equal(kron(eye(1), B), B)
    # [[0,1],[0,0]] (x) J_3: upper-right 3x3 block all 1/3
    K = kron(mat([[0, 1], [0, 0]]), j_matrix(3))
    assert K.shape == (6, 6)
    for i in range(3):
        for j in range(3):
            assert K[i, 3 + j] == Fraction(1, 3)
    assert sum(1 for x in K.flat if x != 0) == 9
    # column vector case
    v = kron(mat([[0], [1]]), ones_vector(3).reshape(-1, 1))
    assert v[:, 0].tolist() == [0, 0, 0, 1, 1, 1]


def test_kron_associativity_random():
    rng = random.Random(7)
    for _ in range(20):
        A = rand_rational_matrix(rng, rng.randint(1, 3), rng.randint(1, 3))
        B = rand_rational_matrix(rng, rng.randint(1, 3), rng.randint(1, 3))
        C = rand_rational_matrix(rng, rng.randint(1, 2), rng.randint(1, 2))
        assert np.array_equal(kron(kron(A, B), C), kron(A, kron(B, C)))


@pytest.mark.parametrize("a", range(1, 7))
@pytest.mark.parametrize("b", range(1, 7))
def test_j_kron_multiplicativity(a, b):
    assert np.array_equal(kron(j_matrix(a), j_matrix(b)), j_matrix(a * b))


def test_rank_basic():
    assert rank(zeros((3, 3))) == 0
    assert rank(eye(4)) == 4
    M = mat([[1, 2], [2, 4]])
    assert rank(M) == 1


def test_rank_transpose_random():
    rng = random.Random(11)
    for _ in range(40):
        M = rand_rational_matrix(rng, rng.randint(1, 8), rng.randint(1, 8),
                                 -5, 5)
        assert rank(M) == rank(M.T)


def test_rank_backends_agree():
    rng = random.Random(13)
    for _ in range(40):
        M = rand_rational_matrix(rng, rng.randint(1, 8), rng.randint(1, 8),
                                 -5, 5)
        assert rank(M) == rank(to_float(M))


def test_column_space_basis():
    S = column_space_basis(mat([[0, 1], [1, 0]]))
    assert S.dim == 2
    S = column_space_basis(mat([[1, 2], [2, 4]]))
    assert S.dim == 1
    assert S.basis[:, 0].tolist() == [1, 2]
    # basis columns always independent
    rng = random.Random(17)
    for _ in range(30):
        M = rand_rational_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        S = column_space_basis(M)
        assert rank(S.basis) == S.dim


def test_in_span():
    S = column_space_basis(mat([[0], [1]]))
    assert in_span(S, vec([0, 0]))
    assert not in_span(S, vec([1, 0]))
    assert in_span(SubspaceBasis.zero(2), vec([0, 0]))
    with pytest.raises(ValueError):
        in_span(S, vec([1, 2, 3]))


def test_solve_and_inverse_exact():
    A = mat([[2, 1], [1, 1]])
    x = solve(A, vec([3, 2]))
    assert x.tolist() == [1, 1]
    assert np.array_equal(A @ inverse(A), eye(2))
    with pytest.raises(ValueError):
        solve(mat([[1, 1], [1, 1]]), vec([1, 0]))


def test_matrix_exponential_apply():
    v = np.array([1.0, 2.0])
    out = matrix_exponential_apply(np.zeros((2, 2)), 3.0, v)
    assert np.allclose(out, v)
    out = matrix_exponential_apply(np.array([[1.0]]), 1.0, np.array([1.0]))
    assert abs(out[0] - np.e) < 1e-8
    # nilpotent: e^{A} = I + A exactly
    A = np.array([[0.0, 1.0], [0.0, 0.0]])
    out = matrix_exponential_apply(A, 1.0, np.array([0.0, 1.0]))
    assert np.allclose(out, [1.0, 1.0], atol=1e-12)
    with pytest.raises(TypeError):
        matrix_exponential_apply(mat([[1]]), 1.0, vec([1]))
