import pytest
from hypothesis import given, settings, strategies as st

from macwork.exactcore.ratfunc import RatFunc
from macwork.partcomb import enumerate_partitions
from macwork.symfunc import (
    BASES, Alphabet, SymFunc, coeff_str, parse_partition_key, partition_key, plethystic_eval,
    principal_value_at_one,
)

q, t = RatFunc.q(), RatFunc.t()


def s(*lam):
    return SymFunc.basis_element("s", lam)


def test_small_transitions():
    assert SymFunc.basis_element("h", (2,)).to("s") == s(2)
    assert SymFunc.basis_element("e", (2,)).to("s") == s(1, 1)
    assert SymFunc.basis_element("p", (2,)).to("s") == s(2) - s(1, 1)
    m = s(2, 1).to("m")
    assert m.coeff((2, 1)) == RatFunc(1) and m.coeff((1, 1, 1)) == RatFunc(2) and m.coeff((3,)).is_zero()


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("basis", BASES)
def test_round_trips(n, basis):
    for lam in enumerate_partitions(n):
        f = SymFunc.basis_element(basis, lam)
        for other in BASES:
            assert f.to(other).to(basis) == f


def test_product_pieri():
    # h_1 * s_(2,1) = s_(3,1) + s_(2,2) + s_(2,1,1)
    prod = (SymFunc.basis_element("h", (1,)) * s(2, 1)).to("s")
    assert prod == s(3, 1) + s(2, 2) + s(2, 1, 1)


def test_plethysm_and_value_at_one():
    # s_(2)[X(1-q)] = s_2 - q s_11 ... check the s_2 coefficient is 1 - q
    f = plethystic_eval(s(2), Alphabet(1 - q))
    assert f.coeff((2,)) == 1 - q
    assert f.coeff((1, 1)) == q * q - q
    assert principal_value_at_one(s(2, 1)) == RatFunc(0)
    assert principal_value_at_one(s(3)) == RatFunc(1)


@settings(max_examples=30)
@given(st.integers(1, 5).flatmap(lambda n: st.sampled_from(enumerate_partitions(n))))
def test_value_at_one_picks_single_row(lam):
    want = RatFunc(1) if len(lam) == 1 else RatFunc(0)
    assert principal_value_at_one(SymFunc.basis_element("s", lam)) == want


def test_keys_and_strings():
    assert partition_key((2, 1)) == "[2,1]"
    assert parse_partition_key("[2,1]") == (2, 1)
    assert coeff_str(q + t) == "q+t"
    assert coeff_str(q * t) == "q*t"
    j = (s(2) + s(1, 1).scale(q)).to_json()
    assert j == {"basis": "s", "n": 2, "coeffs": {"[2]": "1", "[1,1]": "q"}}
