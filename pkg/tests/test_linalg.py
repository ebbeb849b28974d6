import random
from fractions import Fraction

import pytest

from bocskit.linalg import Matrix, frac, rref_rows, in_span


def test_rref_identity():
    m = Matrix.identity(2)
    r, rank, pivots = m.rref()
    assert r == m
    assert rank == 2
    assert pivots == (0, 1)


def test_rref_zero():
    m = Matrix.zero(3, 3)
    r, rank, pivots = m.rref()
    assert r == m
    assert rank == 0
    assert pivots == ()


def test_rref_rank_one():
    m = Matrix.from_rows([[1, 2], [2, 4]])
    r, rank, _ = m.rref()
    assert r == Matrix.from_rows([[1, 2], [0, 0]])
    assert rank == 1


def test_kernel_identity_empty():
    assert Matrix.identity(4).kernel_basis() == []


def test_kernel_zero_map():
    basis = Matrix.zero(2, 3).kernel_basis()
    assert len(basis) == 3


def test_kernel_line():
    basis = Matrix.from_rows([[1, 1]]).kernel_basis()
    assert len(basis) == 1
    v = basis[0]
    assert v[0] * 1 + v[1] * 1 == 0
    assert v != (0, 0)


def test_solve_identity():
    m = Matrix.identity(2)
    assert m.solve([frac(3), frac(4)]) == (3, 4)


def test_solve_underdetermined():
    m = Matrix.from_rows([[1, 1]])
    v = m.solve([frac(2)])
    assert v is not None
    assert v[0] + v[1] == 2


def test_solve_inconsistent():
    m = Matrix.from_rows([[0, 0]])
    assert m.solve([frac(1)]) is None


def _random_matrix(rng, rows, cols):
    return Matrix(rows, cols,
                  [[Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                    for _ in range(cols)] for _ in range(rows)])


@pytest.mark.parametrize("seed", range(20))
def test_random_properties(seed):
    rng = random.Random(seed)
    rows = rng.randint(1, 6)
    cols = rng.randint(1, 6)
    m = _random_matrix(rng, rows, cols)

    r, rank, _ = m.rref()
    assert r.rref()[0] == r, "rref must be idempotent"
    assert rank == m.transpose().rank(), "row rank equals column rank"
    assert len(m.kernel_basis()) + rank == cols

    rhs = m.apply(tuple(Fraction(rng.randint(-3, 3)) for _ in range(cols)))
    v = m.solve(rhs)
    assert v is not None
    assert m.apply(v) == rhs


@pytest.mark.parametrize("seed", range(10))
def test_solve_random_consistency(seed):
    rng = random.Random(100 + seed)
    m = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
    rhs = tuple(Fraction(rng.randint(-3, 3)) for _ in range(m.rows))
    v = m.solve(rhs)
    if v is not None:
        assert m.apply(v) == rhs


def test_in_span():
    rows, pivots = rref_rows([[frac(1), frac(0)], [frac(0), frac(1)]], 2)
    assert in_span([frac(5), frac(-7)], rows, pivots)
    rows, pivots = rref_rows([[frac(1), frac(1)]], 2)
    assert not in_span([frac(1), frac(0)], rows, pivots)


def test_matmul_and_blocks():
    a = Matrix.from_rows([[1, 2], [3, 4]])
    b = Matrix.from_rows([[0, 1], [1, 0]])
    assert a @ b == Matrix.from_rows([[2, 1], [4, 3]])
    assert a.hstack(b).cols == 4
    assert a.vstack(b).rows == 4
    assert a.column_space_basis() == [a.column(0), a.column(1)]
