import pytest
from hypothesis import given, settings, strategies as st

from macwork.exactcore.mpoly import MPoly, a, b, x, y
from macwork.exactcore.subspace import Indexer, RowSpace
from macwork.polygraph import (
    ArrangementSpec, GeneratedIdeal, ImageEngine, Ring, all_maps, arrangement_ideal, component_ideal,
    freeness_certificate, generic_hs_check, hilbert_identity, hilbert_data, jpower_check, membership_rule, n2_basis,
    n2_common_basis, n2_ideal_generators_check, p_basis_element, pair_enumerator, theta,
    univariate_polygraph_basis, y_arrangement_spec, y_generic_check, y_generic_enumerator, y_parameter_triples,
    z1_product_check, z_spec,
)


def slice_of(ring, polys, d, e):
    idx = Indexer(ring.monomials(d, e))
    return RowSpace([{idx[k]: c for k, c in ring.to_dict(p).items()} for p in polys], len(idx)), idx


def test_component_ideal_examples():
    sl = component_ideal(1, 1, (1,), frozenset(), (1, 0))
    ring = Ring.polygraph(1, 1)
    want, _ = slice_of(ring, [a(1) - x(1)], 1, 0)
    assert sl.space == want
    sl = component_ideal(2, 1, (2,), frozenset(), (0, 1))
    want, _ = slice_of(Ring.polygraph(2, 1), [b(1) - y(2)], 0, 1)
    assert sl.space == want
    sl = component_ideal(2, 0, (), frozenset({1}), (1, 0))
    want, _ = slice_of(Ring.polygraph(2, 0), [x(1)], 1, 0)
    assert sl.space == want


def test_spec_validation_and_trivial_cases():
    with pytest.raises(ValueError):
        ArrangementSpec(2, 1, (((3,), frozenset()),))
    assert y_arrangement_spec(2, 1, 0, 2, 1).components == z_spec(2, 1).components
    assert y_arrangement_spec(2, 1, 3, 2, 0).components == ()
    # m = r = n with k > 0 leaves no room
    assert y_arrangement_spec(2, 1, 2, 2, 1).components == ()
    assert hilbert_data(y_arrangement_spec(2, 1, 3, 2, 0), 2, 2).h[(0, 0)] == 0


def test_z1_is_a_plane():
    h = hilbert_data(z_spec(1, 0), 4, 4).h
    assert all(v == 1 for v in h.values())
    h = hilbert_data(z_spec(1, 2), 3, 3).h
    assert all(v == 1 for v in h.values())


def test_z21_intersection_is_product_in_degree_two_zero():
    ideal = arrangement_ideal(z_spec(2, 1), 2, 0)
    ring = ideal.ring
    prods = [p * q for p in (a(1) - x(1), b(1) - y(1)) for q in (a(1) - x(2), b(1) - y(2))]
    prod = GeneratedIdeal(ring, prods)
    assert ideal.slices[(2, 0)].space == prod.slice(2, 0).space


def test_y110_is_z_plus_x1():
    n, l, D = 2, 1, 2
    zi = arrangement_ideal(z_spec(n, l), D, D)
    yi = arrangement_ideal(y_arrangement_spec(n, l, 1, 1, 0), D, D)
    ring = zi.ring
    for (d, e), sl in yi.slices.items():
        rows = list(zi.slices[(d, e)].space.nums)
        if d >= 1:
            for p in ring.monomials(d - 1, e):
                rows.append(sl.vector(ring.times_var({p: 1}, ring.pos[("x", 1)])))
        assert RowSpace(rows, len(sl.index)) == sl.space


DUAL_SPECS = [
    (z_spec(2, 1), 3, 3),
    (z_spec(2, 2), 2, 2),
    (z_spec(3, 1), 2, 2),
    (y_arrangement_spec(2, 1, 1, 2, 0), 3, 3),
    (y_arrangement_spec(2, 1, 1, 1, 1), 3, 3),
    (y_arrangement_spec(2, 2, 2, 2, 0), 2, 2),
    (y_arrangement_spec(3, 1, 2, 3, 1), 2, 2),
]


@pytest.mark.parametrize("spec,Dx,Dy", DUAL_SPECS)
def test_image_rank_matches_ideal_intersection(spec, Dx, Dy):
    ideal = arrangement_ideal(spec, Dx, Dy)
    assert ideal.quotient_dims() == hilbert_data(spec, Dx, Dy).h


@pytest.mark.parametrize("spec,Dx,Dy", DUAL_SPECS)
def test_translation_reduction_matches_full_engine(spec, Dx, Dy):
    data = hilbert_data(spec, Dx, Dy)
    full = ImageEngine(spec)
    for (d, e), v in data.h.items():
        assert full.h(d, e) == v
        assert full.g(d, e) == data.g[(d, e)]


@st.composite
def small_specs(draw):
    n = draw(st.integers(1, 2))
    l = draw(st.integers(0, 2))
    maps = all_maps(n, l)
    comps = draw(st.lists(
        st.tuples(st.sampled_from(maps), st.frozensets(st.integers(1, n), max_size=n)),
        min_size=1, max_size=3, unique=True))
    return ArrangementSpec(n, l, tuple(comps))


@settings(max_examples=25, deadline=None)
@given(small_specs())
def test_random_arrangements_dual_route(spec):
    ideal = arrangement_ideal(spec, 2, 2)
    assert ideal.quotient_dims() == hilbert_data(spec, 2, 2).h
    # monotonicity: the arrangement ideal lies in each component ideal
    for f, T in spec.components:
        for bd, sl in ideal.slices.items():
            comp = component_ideal(spec.n, spec.l, f, T, bd)
            assert sl.space.issubspace(comp.space)


def test_ideals_are_closed_under_variables():
    ideal = arrangement_ideal(y_arrangement_spec(2, 1, 1, 2, 1), 2, 2)
    assert ideal.is_closed_under_variables()
    assert ideal.contains(x(1)) is False
    assert ideal.contains(x(1) * x(2))
    assert ideal.contains((a(1) - x(1)) * (a(1) - x(2)))
    with pytest.raises(ValueError):
        ideal.contains(x(1) ** 3)


def test_generic_small_values():
    rep = generic_hs_check(2, 1, 3)
    assert rep.passed and rep.stabilized[:2] == [2, 4]
    rep = generic_hs_check(1, 2, 3)
    assert rep.passed and rep.stabilized == [1, 1, 1, 1]
    assert rep.to_json()["first_discrepancy"] is None


@pytest.mark.parametrize("n,l", [(2, 1), (2, 2)])
def test_y_generic_enumerators(n, l):
    assert y_generic_enumerator(n, l, 0, 0, 0, 4) == pair_enumerator(n, l, 4)
    assert y_generic_enumerator(n, l, 3, 2, 0, 4) == [0] * 5
    for m, r, k in y_parameter_triples(n, l):
        res = y_generic_check(n, l, m, r, k, 3, 6)
        assert res["pass"], (m, r, k, res)


def test_y_generic_three_points():
    for m, r, k in [(1, 1, 0), (1, 3, 1), (2, 3, 0), (3, 3, 0)]:
        assert y_generic_check(3, 1, m, r, k, 2, 6)["pass"]


def test_freeness_examples():
    assert freeness_certificate(z_spec(1, 2), 3, 3).passed
    cert = freeness_certificate(y_arrangement_spec(2, 0, 2, 2, 0), 6, 6)
    assert cert.to_json() == {"check": "freeness", "pass": True, "first_discrepancy": None}
    # the face ring of x1 x2 = 0 is y-free as well
    cert = freeness_certificate(y_arrangement_spec(2, 0, 1, 2, 0), 6, 6)
    assert cert.passed


def test_hilbert_identity_detects_torsion():
    # k[y]/(y): h = g = 1 in degree 0 only, which a free module cannot have
    h = {(0, 0): 1, (0, 1): 0, (0, 2): 0}
    g = {(0, 0): 1, (0, 1): 0, (0, 2): 0}
    first = hilbert_identity(h, g, 1, 0, 2)
    assert first == {"d": 0, "e": 1, "h": 0, "g_over_free": 1}


def test_hilbert_json_shape():
    # (1,1): nine monomials, and only (a1-x1)(b1-y2), (a1-x2)(b1-y1) vanish
    j = hilbert_data(z_spec(2, 1), 1, 1).to_json()
    assert j == {"spec": "Z", "n": 2, "l": 1, "Dx": 1, "Dy": 1,
                 "hilbert": {"(0,0)": 1, "(0,1)": 3, "(1,0)": 3, "(1,1)": 7}}


def test_theta_and_basis_examples():
    assert theta(x(1) + 2 * y(2) + a(1)) == x(2) + 2 * y(1) + a(1)
    assert theta(x(1) * y(3), 3) == x(2) * y(1)
    assert p_basis_element((0, 0), (2,)) == MPoly.const(1)
    assert p_basis_element((0, 0), (1,)) == b(1) - y(2)
    assert p_basis_element((0, 0), ()) == MPoly.const(1)
    for e in [(0, 3), (2, 1), (3, 0)]:
        p = p_basis_element(e, ())
        assert p == x(1) ** e[0] * x(2) ** e[1]
    assert p_basis_element((0, 1), (1,)) == a(1) - x(1) - x(2)
    assert p_basis_element((0, 2), (1,)) == x(2) * (a(1) - x(1) - x(2))
    assert len(n2_basis(2, 3)) == 4 * (1 + 2 + 3 + 4)


def test_membership_rule():
    assert membership_rule((0, 0), (1,), 1, 2, 1) is False
    assert membership_rule((1, 1), (1,), 1, 2, 0) is True
    assert membership_rule((0, 0), (1,), 1, 1, 1) is True


@pytest.mark.parametrize("l", [0, 1, 2])
def test_n2_common_basis(l):
    cert = n2_common_basis(l, 4, 4)
    assert cert.passed, cert.to_json()


@pytest.mark.parametrize("l", [1, 2])
def test_n2_generators(l):
    for m, r, k in [(2, 2, 0)] + [(1, 2, k) for k in range(l + 1)] + [(1, 1, k) for k in range(l + 1)]:
        cert = n2_ideal_generators_check(l, m, r, k, 4, 4)
        assert cert.passed, cert.to_json()


def test_n2_generators_unknown_case():
    with pytest.raises(ValueError):
        n2_ideal_generators_check(1, 2, 2, 1)


@pytest.mark.parametrize("n", [2, 3])
def test_z1_product(n):
    assert z1_product_check(n, 3, 3).passed


@pytest.mark.parametrize("n,l", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_univariate_basis(n, l):
    cert = univariate_polygraph_basis(n, l, 5)
    assert cert.passed, cert.to_json()
    assert len(cert.details["basis"]) == n**l


def test_jpower_small():
    rep = jpower_check(2, 1, 3, 3)
    assert rep.passed and rep.contained
    with pytest.raises(ValueError):
        jpower_check(1, 1)


@pytest.mark.long
def test_jpower_three_squared():
    rep = jpower_check(3, 2, 5, 5)
    assert rep.passed, rep.to_json()
