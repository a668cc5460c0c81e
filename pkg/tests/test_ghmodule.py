from fractions import Fraction
from math import comb, factorial

import pytest

from macwork.exactcore.mpoly import MPoly, mono, x, y
from macwork.exactcore.ratfunc import RatFunc
from macwork.ghmodule import (
    _act, _diff, alternate, apply_operator, bidegree_monomials, bigraded_frobenius, delta_D, delta_mu,
    diagonal_coinvariants_dims, dims_json, dmu_basis, jmu_annihilator, slice_trace,
    to_mpoly, verify_f_equals_h, y_degree_zero_part,
)
from macwork.macdonald import q0_specialization
from macwork.partcomb import conjugate, enumerate_partitions, permutation_of_type, syt_count

SMALL = [mu for n in range(1, 6) for mu in enumerate_partitions(n)]
UP_TO_4 = [mu for n in range(1, 5) for mu in enumerate_partitions(n)]


def test_delta_small():
    assert delta_D([(0, 0), (0, 1)]).value == y(2) - y(1)
    assert delta_D([(0, 0), (1, 0)]).value == x(2) - x(1)
    with pytest.raises(ValueError):
        delta_D([(0, 0), (0, 0)])


def test_dims_of_two_one():
    dims = dmu_basis((2, 1)).dims()
    assert dims == {(0, 0): 1, (0, 1): 2, (1, 0): 2, (1, 1): 1}
    assert dims_json((2, 1), dims) == {"mu": [2, 1], "dims": {"(0,0)": 1, "(0,1)": 2, "(1,0)": 2, "(1,1)": 1}, "total": 6}


@pytest.mark.parametrize("mu", SMALL, ids=str)
def test_n_factorial(mu):
    assert dmu_basis(mu).total == factorial(mu.size)


@pytest.mark.parametrize("mu", [m for m in SMALL if m.size <= 4], ids=str)
def test_closed_under_derivatives_and_transpose_symmetric(mu):
    space = dmu_basis(mu)
    n = mu.size
    for (r, s), sl in space.slices.items():
        for p in sl.polys():
            for k in range(2 * n):
                d = _diff(p, k)
                if d:
                    target = (r - 1, s) if k < n else (r, s - 1)
                    assert space.slices[target].contains(d)
    dual = dmu_basis(conjugate(mu)).dims()
    assert {(s, r): v for (r, s), v in space.dims().items()} == dual


@pytest.mark.parametrize("mu", [(2, 1), (2, 2), (3, 1)], ids=str)
def test_trace_matches_coordinate_solve(mu):
    """Pivot read-off traces agree with solving for the matrix of w."""
    space = dmu_basis(mu)
    n = sum(mu)
    for sl in space.slices.values():
        for tau in enumerate_partitions(n):
            w = permutation_of_type(tau)
            tr = Fraction(0)
            for i, row in enumerate(sl.space.rows):
                image = {sl.index[_act(w, sl.index.keys[j], n)]: c for j, c in row.items()}
                tr += sl.space.coordinates(image)[i]
            assert tr == slice_trace(sl, w, n)


@pytest.mark.parametrize("mu", SMALL, ids=str)
def test_frobenius_at_one_is_regular_representation(mu):
    F = bigraded_frobenius(mu).flatten()
    for lam in enumerate_partitions(mu.size):
        assert F.coeff(lam).evaluate(q=1, t=1) == RatFunc(syt_count(lam))


@pytest.mark.parametrize("mu", UP_TO_4, ids=str)
def test_frobenius_equals_htilde(mu):
    rep = verify_f_equals_h(mu)
    assert rep.equal, rep.to_json()
    assert rep.to_json()["first_discrepancy"] is None


@pytest.mark.parametrize("mu", UP_TO_4, ids=str)
def test_y_degree_zero_is_q_zero(mu):
    assert y_degree_zero_part(bigraded_frobenius(mu)) == q0_specialization(mu)


@pytest.mark.long
@pytest.mark.parametrize("mu", enumerate_partitions(5), ids=str)
def test_frobenius_equals_htilde_n5(mu):
    assert verify_f_equals_h(mu).equal


@pytest.mark.long
@pytest.mark.parametrize("mu", enumerate_partitions(6), ids=str)
def test_n_factorial_n6(mu):
    assert dmu_basis(mu).total == 720


@pytest.mark.parametrize("mu", [(2, 1), (3, 1), (2, 2), (2, 1, 1)], ids=str)
def test_apolarity_is_a_perfect_pairing(mu):
    n = sum(mu)
    dmu = dmu_basis(mu)
    top = max(r for r, _ in dmu.slices), max(s for _, s in dmu.slices)
    J = jmu_annihilator(mu, (top[0] + 1, top[1] + 1), dmu)
    delta = delta_mu(mu).value
    for (r, s), sl in J.slices.items():
        d = dmu.slices[(r, s)].space.dim if (r, s) in dmu.slices else 0
        assert sl.space.dim + d == len(bidegree_monomials(n, r, s))
    # operators from J kill Delta_mu (dual route to the annihilator)
    for (r, s), sl in J.slices.items():
        for p in sl.polys()[:3]:
            assert apply_operator(to_mpoly(p, n), delta, n).is_zero()


def test_cutoff_below_top_rejected():
    with pytest.raises(ValueError):
        jmu_annihilator((2, 1), (0, 0))


def test_alternation_is_projector_up_to_scale():
    g = x(1) ** 2 * y(2) + 3 * x(3) * y(1) ** 2
    once = alternate(g, 3)
    assert alternate(once, 3) == once * factorial(3)
    # an alternant of a monomial is +- Delta_D for the corresponding cells
    m = MPoly.monomial(mono((("x", 2), 1), (("y", 3), 1)))
    D = delta_D([(0, 0), (1, 0), (0, 1)]).value
    assert alternate(m, 3) in (D, -D)


@pytest.mark.parametrize("n,total", [(1, 1), (2, 3), (3, 16)])
def test_diagonal_coinvariants_small(n, total):
    dims = diagonal_coinvariants_dims(n)
    assert sum(dims.values()) == total == (n + 1) ** (n - 1)
    assert dims == {(s, r): v for (r, s), v in dims.items()}
    # y-degree zero is the classical coinvariant ring: [n]_t!
    row = [dims.get((r, 0), 0) for r in range(comb(n, 2) + 1)]
    poly = [1]
    for k in range(1, n + 1):
        new = [0] * (len(poly) + k - 1)
        for i, c in enumerate(poly):
            for j in range(k):
                new[i + j] += c
        poly = new
    assert row == poly


def test_diagonal_coinvariants_four():
    assert sum(diagonal_coinvariants_dims(4).values()) == 125
