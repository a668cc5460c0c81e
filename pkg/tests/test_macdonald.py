import pytest

from macwork.exactcore.ratfunc import RatFunc
from macwork.macdonald import (
    htilde, ktilde_table, ktilde_to_k, local_hilbert_denominator, nonnegative_integer_violation,
    positivity_report, q0_specialization,
)
from macwork.partcomb import Partition, conjugate, enumerate_partitions, n_stat, syt_count

from oracles import fake_degree_coefficients

q, t = RatFunc.q(), RatFunc.t()


def poly_in(var, coeffs):
    out = RatFunc(0)
    for k, c in enumerate(coeffs):
        out = out + c * var**k
    return out


def test_two_row_examples():
    assert htilde((2,)).to_json() == {"mu": [2], "coeffs": {"[2]": "1", "[1,1]": "q"}}
    assert htilde((1, 1)).to_json() == {"mu": [1, 1], "coeffs": {"[2]": "1", "[1,1]": "t"}}
    h = htilde((2, 1))
    assert h.coeff((3,)) == RatFunc(1)
    assert h.coeff((2, 1)) == q + t
    assert h.coeff((1, 1, 1)) == q * t


def test_four_box_example():
    h = htilde((3, 1))
    assert h.coeff((4,)) == RatFunc(1)
    assert h.coeff((3, 1)) == q + q**2 + t
    assert h.coeff((2, 2)) == q**2 + q * t
    assert h.coeff((2, 1, 1)) == q**3 + q * t + q**2 * t
    assert h.coeff((1, 1, 1, 1)) == q**3 * t


@pytest.mark.parametrize("n", range(1, 7))
def test_single_row_and_column_are_fake_degrees(n):
    row, col = htilde((n,)), htilde((1,) * n)
    for lam in enumerate_partitions(n):
        coeffs = fake_degree_coefficients(tuple(lam))
        assert row.coeff(lam) == poly_in(q, coeffs)
        assert col.coeff(lam) == poly_in(t, coeffs)


@pytest.mark.parametrize("n", range(1, 7))
def test_positivity_and_syt_specialization(n):
    rep = positivity_report(n)
    assert rep.all_positive, rep.violations
    assert not rep.specialization_mismatches
    assert rep.checked == len(enumerate_partitions(n)) ** 2


@pytest.mark.parametrize("n", range(1, 7))
def test_conjugation_symmetry(n):
    table = ktilde_table(n)
    for mu in table.partitions:
        for lam in table.partitions:
            assert table[(lam, mu)] == table[(lam, conjugate(mu))].swap_qt()


@pytest.mark.parametrize("n", range(1, 7))
def test_k_conversion_degree_bound(n):
    table = ktilde_table(n)
    for mu in table.partitions:
        K = ktilde_to_k(mu, table)
        for lam, k in K.items():
            assert k.is_polynomial()
            if not k.is_zero():
                assert k.degree_in("t") <= n_stat(mu)
            assert k.evaluate(q=1, t=1) == RatFunc(syt_count(lam))


def test_violation_messages():
    assert nonnegative_integer_violation(q + t) is None
    assert "coefficient" in nonnegative_integer_violation(q - t)
    assert "polynomial" in nonnegative_integer_violation(RatFunc(1) / (1 - q))


def test_q0_specialization_of_single_row():
    f = q0_specialization((3,))
    assert f.coeff((3,)) == RatFunc(1)
    assert f.coeff((2, 1)).is_zero()


def test_local_denominator():
    assert local_hilbert_denominator((1,)) == (1 - t) * (1 - q)
    d = local_hilbert_denominator((2,))
    # cells (0,0): a=1,l=0 and (0,1): a=0,l=0
    want = (1 - RatFunc.monomial(-1, 1)) * (1 - q**2) * (1 - t) * (1 - q)
    assert d == want


def test_results_are_json_stable():
    a = htilde(Partition([2, 2])).to_json()
    htilde.cache_clear()
    b = htilde(Partition([2, 2])).to_json()
    assert a == b
