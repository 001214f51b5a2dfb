from __future__ import annotations

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from blockcenter.errors import SingularMatrix
from blockcenter.exact_linalg import (
    IntMatrix,
    RatMatrix,
    complete_to_unimodular,
    elementary_divisors,
    integer_kernel_basis,
    rat_inverse,
    row_lattice_basis,
    same_lattice,
    smith_normal_form,
    solve_integral,
)


def int_matrices(max_dim=6, lo=-9, hi=9):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def test_snf_of_cartan_x(cartan_x):
    res = smith_normal_form(cartan_x)
    assert res.diagonal == (4, 4, 16)
    assert res.u @ cartan_x @ res.v == res.d
    assert res.u.det() in (1, -1) and res.v.det() in (1, -1)


def test_small_snf_examples():
    assert elementary_divisors(IntMatrix.from_rows([[2, 0], [0, 3]])) == [1, 6]
    assert elementary_divisors(IntMatrix.from_rows([[0, 0], [0, 0]])) == []
    assert smith_normal_form(IntMatrix.from_rows([[6, 4], [4, 2]])).rank == 2


def test_inverse_of_cartan_x(cartan_x):
    inv = rat_inverse(cartan_x) * 16
    assert inv == RatMatrix.from_rows([[3, -1, -1], [-1, 3, -1], [-1, -1, 3]])


def test_singular_inverse_raises():
    with pytest.raises(SingularMatrix):
        rat_inverse(IntMatrix.from_rows([[1, 2], [2, 4]]))


def test_ratmatrix_rejects_floats():
    with pytest.raises(TypeError):
        RatMatrix.from_rows([[0.5]])


def test_kernel_examples():
    assert integer_kernel_basis(IntMatrix.from_rows([[1, -1]])).tolist() in ([[1, 1]], [[-1, -1]])
    assert integer_kernel_basis(IntMatrix.identity(3)).rows == 0


def test_solve_integral_detects_non_integral_solution():
    a = IntMatrix.from_rows([[2, 0], [0, 2]])
    assert solve_integral(a, IntMatrix.from_rows([[1], [0]])) is None
    x = solve_integral(a, IntMatrix.from_rows([[4], [2]]))
    assert x.tolist() == [[2], [1]]


def test_complete_to_unimodular_first_column():
    m = complete_to_unimodular([3, 5, 7])
    assert m.col(0) == (3, 5, 7)
    assert m.det() in (1, -1)


def test_row_lattice_basis_matches_hnf_oracle():
    gens = IntMatrix.from_rows([[2, 4, 6], [4, 6, 8], [6, 8, 12]])
    basis = row_lattice_basis(gens)
    assert oracles.same_lattice(basis.tolist(), gens.tolist())


@settings(max_examples=1000)
@given(int_matrices())
def test_snf_postconditions(rows):
    a = IntMatrix.from_rows(rows)
    res = smith_normal_form(a)
    assert res.u.is_unimodular() and res.v.is_unimodular()
    assert res.u @ a @ res.v == res.d
    for i in range(res.d.rows):
        for j in range(res.d.cols):
            if i != j:
                assert res.d[i, j] == 0
    d = [x for x in res.diagonal if x]
    assert list(res.diagonal) == d + [0] * (len(res.diagonal) - len(d))
    assert all(x > 0 for x in d)
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
    assert len(d) == a.rank()


@settings(max_examples=150)
@given(int_matrices(max_dim=4, lo=-6, hi=6))
def test_elementary_divisors_match_determinantal_divisors(rows):
    assert elementary_divisors(IntMatrix.from_rows(rows)) == oracles.determinantal_divisors(rows)


@settings(max_examples=200)
@given(int_matrices(max_dim=6, lo=-5, hi=5))
def test_kernel_is_saturated(rows):
    a = IntMatrix.from_rows(rows)
    k = integer_kernel_basis(a)
    assert k.rows == a.cols - a.rank()
    if k.rows == 0:
        return
    assert a @ k.T == IntMatrix.zeros(a.rows, k.rows)
    # saturated: the kernel lattice has trivial elementary divisors and equals the oracle's
    assert elementary_divisors(k) == [1] * k.rows
    assert oracles.same_lattice(k.tolist(), oracles.column_kernel(rows))


@settings(max_examples=200)
@given(int_matrices(max_dim=5, lo=-5, hi=5), st.lists(st.integers(-4, 4), min_size=5, max_size=5))
def test_solve_integral_roundtrip(rows, xs):
    a = IntMatrix.from_rows(rows)
    x = IntMatrix(a.cols, 1, xs[:a.cols] + [0] * (a.cols - len(xs[:a.cols])))
    b = a @ x
    sol = solve_integral(a, b)
    assert sol is not None and a @ sol == b


@settings(max_examples=200)
@given(st.lists(st.integers(-20, 20), min_size=2, max_size=6).filter(
    lambda v: any(v) and gcd(*v) == 1))
def test_complete_to_unimodular_property(v):
    m = complete_to_unimodular(v)
    assert m.col(0) == tuple(v) and m.is_unimodular()


@settings(max_examples=100)
@given(int_matrices(max_dim=4, lo=-5, hi=5), st.integers(0, 10**6))
def test_same_lattice_is_basis_independent(rows, seed):
    import random
    a = IntMatrix.from_rows(rows)
    rng = random.Random(seed)
    n = a.cols
    # random unimodular column operation
    u = IntMatrix.identity(n)
    if n > 1:
        i, j = rng.sample(range(n), 2)
        e = [[int(r == c) for c in range(n)] for r in range(n)]
        e[i][j] = rng.randint(-3, 3)
        u = IntMatrix.from_rows(e)
    assert same_lattice(a, a @ u)


def test_fraction_arithmetic_is_exact():
    m = RatMatrix.from_rows([[Fraction(1, 3), 0], [0, Fraction(2, 7)]])
    assert (m @ rat_inverse(m)) == RatMatrix.identity(2)
    assert m.det() == Fraction(2, 21)
