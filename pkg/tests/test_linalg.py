import random
from fractions import Fraction as F

import pytest

from crflat import ExactMatrix, GaussianRational, nullspace, solve
from crflat.errors import (
    InconsistentSystemError,
    PreconditionError,
    UnderdeterminedSystemError,
)

from conftest import rand_gaussian, rand_matrix

G = GaussianRational


def test_solve_identity():
    a = ExactMatrix.identity(3)
    b = [G(1), G(0, 1), G(F(1, 2))]
    assert solve(a, b) == b


def test_solve_two_by_two():
    a = ExactMatrix.from_rows([[1, 1], [1, -1]])
    assert solve(a, [2, 0]) == [G(1), G(1)]


def test_solve_inconsistent():
    a = ExactMatrix.from_rows([[1, 1], [2, 2]])
    with pytest.raises(InconsistentSystemError):
        solve(a, [1, 3])


def test_solve_underdetermined():
    a = ExactMatrix.from_rows([[1, 1], [2, 2]])
    with pytest.raises(UnderdeterminedSystemError):
        solve(a, [1, 2])


def test_solve_rectangular_consistent():
    # overdetermined but consistent: redundant third row
    a = ExactMatrix.from_rows([[1, 0], [0, 1], [1, 1]])
    assert solve(a, [2, 3, 5]) == [G(2), G(3)]


def test_solve_shape_checks():
    a = ExactMatrix.from_rows([[1, 0]])
    with pytest.raises(PreconditionError):
        solve(a, [1, 2])


def test_nullspace_identity_and_zero():
    assert nullspace(ExactMatrix.identity(3)) == []
    basis = nullspace(ExactMatrix.zero(2, 2))
    assert len(basis) == 2


def test_nullspace_one_relation():
    basis = nullspace(ExactMatrix.from_rows([[1, -1]]))
    assert basis == [[G(1), G(1)]]


def test_nullspace_vectors_are_in_kernel():
    rng = random.Random(4)
    for _ in range(40):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        a = ExactMatrix(rows, cols, [rand_gaussian(rng) for _ in range(rows * cols)])
        basis = nullspace(a)
        for v in basis:
            assert all(not x for x in a.matvec(v))
        assert a.rank() + len(basis) == cols  # rank-nullity, exact


def test_solve_substitutes_back():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(1, 4)
        a = rand_matrix(rng, n)
        if a.det().is_zero():
            continue
        x = [rand_gaussian(rng) for _ in range(n)]
        b = a.matvec(x)
        assert solve(a, b) == x


def test_inverse_and_det():
    rng = random.Random(6)
    for _ in range(30):
        a = rand_matrix(rng, 3)
        d = a.det()
        if d.is_zero():
            with pytest.raises(PreconditionError):
                a.inverse()
            continue
        inv = a.inverse()
        assert a * inv == ExactMatrix.identity(3)
        assert (a * a).det() == d * d


def test_conj_transpose_and_hermitian():
    a = ExactMatrix.from_rows([[1, G(2, 1)], [G(2, -1), -3]])
    assert a.is_hermitian()
    assert a.conj_transpose() == a
    b = ExactMatrix.from_rows([[0, 1], [0, 0]])
    assert not b.is_hermitian()


def test_to_literal():
    a = ExactMatrix.from_rows([[0, G(0, 1)], [G(F(1, 2)), 0]])
    assert a.to_literal() == "[[0, 1 i], [1/2, 0]]"
