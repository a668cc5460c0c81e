import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from macwork.exactcore.linalg import InconsistentSystemError, kernel_basis, mat_vec, rank, solve_linear
from macwork.exactcore.mpoly import MPoly, a, b, x, y
from macwork.exactcore.ratfunc import RatFunc
from macwork.exactcore.subspace import RowSpace, intersect_all, rational_reconstruct

from oracles import naive_rank

q, t = RatFunc.q(), RatFunc.t()


def random_matrix(rng, fractions=False):
    r, c = rng.randint(1, 6), rng.randint(1, 6)
    # low rank often enough to be interesting
    k = rng.randint(0, min(r, c))
    basis = [[rng.randint(-3, 3) for _ in range(c)] for _ in range(k)]
    rows = []
    for _ in range(r):
        row = [sum(rng.randint(-2, 2) * v[j] for v in basis) for j in range(c)] if basis else [0] * c
        if rng.random() < 0.3:
            row[rng.randrange(c)] += rng.randint(-5, 5)
        if fractions:
            row = [Fraction(v, rng.randint(1, 4)) for v in row]
        rows.append(row)
    return rows


def test_rank_matches_naive_elimination():
    rng = random.Random(20240601)
    for trial in range(150):
        M = random_matrix(rng, fractions=trial % 2 == 1)
        want = naive_rank(M)
        assert rank(M) == want
        sparse = [{j: v for j, v in enumerate(row) if v} for row in M]
        assert RowSpace(sparse, len(M[0])).dim == want


def test_kernel_and_solve_random():
    rng = random.Random(7)
    for _ in range(120):
        M = random_matrix(rng)
        ncols = len(M[0])
        K = kernel_basis(M, ncols)
        assert len(K) == ncols - naive_rank(M)
        for v in K:
            assert all(c == 0 for c in mat_vec(M, v))
        xs = [rng.randint(-3, 3) for _ in range(ncols)]
        rhs = mat_vec(M, xs)
        sol = solve_linear(M, rhs, ncols)
        assert mat_vec(M, sol.x) == rhs
        assert sol.kernel_dim == len(K)


def test_solve_inconsistent():
    with pytest.raises(InconsistentSystemError):
        solve_linear([[1, 1], [2, 2]], [1, 3])


def test_symbolic_kernel():
    K = kernel_basis([[1, q, t], [q, 1, q * t]], 3)
    assert len(K) == 1
    v = K[0]
    for row in ([1, q, t], [q, 1, q * t]):
        assert sum((c * w for c, w in zip(row, v)), RatFunc(0)).is_zero()


def test_symbolic_rank_generic_vs_special():
    M = [[1, q], [q, 1]]
    assert rank(M) == 2
    assert naive_rank([[1, 1], [1, 1]]) == 1


def test_rowspace_intersection_matches_dimension_formula():
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(2, 6)
        A = [{j: rng.randint(-2, 2) for j in range(n)} for _ in range(rng.randint(1, n))]
        B = [{j: rng.randint(-2, 2) for j in range(n)} for _ in range(rng.randint(1, n))]
        SA, SB = RowSpace(A, n), RowSpace(B, n)
        inter = intersect_all([SA, SB], n)
        assert inter.dim == SA.dim + SB.dim - (SA + SB).dim
        assert inter.issubspace(SA) and inter.issubspace(SB)
        for row in inter.rows:
            assert SA.contains(row) and SB.contains(row)


def test_rowspace_reduce_and_coordinates():
    S = RowSpace([{0: 1, 1: 2}, {1: 1, 2: 1}], 3)
    v = {0: 1, 1: 3, 2: 1}
    assert S.contains(v)
    coords = S.coordinates(v)
    rebuilt = {}
    for c, row in zip(coords, S.rows):
        for j, val in row.items():
            rebuilt[j] = rebuilt.get(j, 0) + c * val
    assert {j: c for j, c in rebuilt.items() if c} == v
    with pytest.raises(ValueError):
        S.coordinates({0: 1})
    ann = S.annihilator()
    assert ann.dim == 1


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_rational_reconstruction(num, den):
    m = (1 << 61) - 1
    f = Fraction(num, den)
    a_ = f.numerator * pow(f.denominator, -1, m) % m
    assert rational_reconstruct(a_, m) == f


def test_large_entries_force_crt():
    big = 10**40 + 7
    M = [{0: big, 1: 1}, {0: 1, 1: big}, {0: big + 1, 1: big + 1}]
    S = RowSpace(M, 2)
    assert S.dim == 2
    T = RowSpace([{0: big, 1: 3, 2: Fraction(1, big)}], 3)
    assert T.rows[0][2] == Fraction(1, big * big)


# -- polynomials -------------------------------------------------------------

small = st.integers(-3, 3)


@st.composite
def mpolys(draw):
    terms = draw(st.lists(st.tuples(small, st.integers(0, 2), st.integers(0, 2), st.integers(0, 1)), max_size=4))
    p = MPoly.const(0)
    for c, i, j, k in terms:
        p = p + MPoly.const(c) * x(1) ** i * y(2) ** j * a(1) ** k
    return p


@settings(max_examples=60)
@given(mpolys(), mpolys(), mpolys())
def test_mpoly_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f - f == MPoly.const(0)
    assert (f * g).diff(("x", 1)) == f.diff(("x", 1)) * g + f * g.diff(("x", 1))


def test_mpoly_substitute_and_bidegree():
    p = (a(1) - x(2)) * (b(1) - y(2))
    assert p.is_bihomogeneous() and p.bidegree() == (1, 1)
    assert p.substitute({("a", 1): x(2)}).is_zero()
    assert (x(1) + y(1)).is_bihomogeneous() is False


@settings(max_examples=40)
@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=3))
def test_ratfunc_field_ops(terms):
    f = RatFunc(0)
    for c, i, j in terms:
        f = f + RatFunc.monomial(i, j, c)
    g = 1 + q * t
    assert (f * g) / g == f
    assert f.swap_qt().swap_qt() == f
    assert f.invert_t().invert_t() == f
    assert (f + g).evaluate(q=1, t=1) == f.evaluate(q=1, t=1) + g.evaluate(q=1, t=1)


def test_ratfunc_laurent():
    f = RatFunc.monomial(-1, 2)
    assert not f.is_polynomial()
    assert f.is_laurent_polynomial()
    assert (f * q).is_polynomial()
    assert str(q + t).replace(" ", "") in ("q+t", "t+q")
