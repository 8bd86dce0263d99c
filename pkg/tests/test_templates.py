from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tiling_disc.errors import ParameterError, StructureError
from tiling_disc.graph import EdgeLabeling, Graph, Kind, classify_clique, swap_identity_holds
from tiling_disc.templates import (
    CSV_HEADER, SCENARIOS, GadgetSpec, KrTemplate, adjacent_swap, build_gadget, build_K1_K2,
    canonical_cycle, cycle_orders, evaluate_gadget, expected_difference, find_discrepant_swap,
    hamilton_window_template, sweep, template_discrepancy, template_discrepancy_by_edges,
    template_discrepancy_by_kind, validate_template, window_discrepancies,
)

from conftest import complete_labelings


def two_cliques(r, sign=1):
    n = 2 * (r + 1)
    edges = list(combinations(range(r + 1), 2)) + list(combinations(range(r + 1, n), 2))
    g = Graph.from_edges(n, edges)
    return EdgeLabeling.constant(g, sign)


# validation

def test_validate_two_k4s():
    f = two_cliques(3)
    cliques = [c for half in (range(4), range(4, 8)) for c in combinations(half, 3)] * 3
    rep = validate_template(KrTemplate.from_cliques(f, 3, cliques))
    assert rep.valid and (rep.s, rep.s_prime) == (24, 9)


def test_validate_single_triangle_is_invalid():
    f = EdgeLabeling.constant(Graph.complete(6), 1)
    rep = validate_template(KrTemplate.from_cliques(f, 3, [(0, 1, 2)]))
    assert not rep.valid and rep.bad_vertex == 3 and rep.s_prime is None


def test_validate_rejects_non_cliques():
    f = two_cliques(3)
    with pytest.raises(StructureError):
        validate_template(KrTemplate.from_cliques(f, 3, [(0, 1, 4)]))
    with pytest.raises(StructureError):
        validate_template(KrTemplate.from_cliques(f, 3, [(0, 1)]))


def test_case1_k2_coverage():
    _, t2 = build_K1_K2(GadgetSpec(4, "Case1", 0))
    rep = validate_template(t2)
    assert rep.valid and (rep.s, rep.s_prime) == (40, 16)


def test_discrepancy_requires_valid_template():
    f = EdgeLabeling.constant(Graph.complete(6), 1)
    with pytest.raises(StructureError):
        template_discrepancy(KrTemplate.from_cliques(f, 3, [(0, 1, 2)]))


def test_from_counts_merges_orderings():
    f = EdgeLabeling.constant(Graph.complete(4), 1)
    t = KrTemplate.from_counts(f, 2, {(1, 0): 2, (0, 1): 1, (2, 3): 0})
    assert t.members == (((0, 1), 3),) and t.multiplicity((1, 0)) == 3 and t.s == 3


# discrepancy routes

def test_all_plus_template():
    f = two_cliques(4)
    t = KrTemplate.from_cliques(f, 4, [c for h in (range(5), range(5, 10)) for c in combinations(h, 4)])
    assert template_discrepancy(t) == t.s * 6


def test_case2a_values_and_profile():
    t1, t2 = build_K1_K2(GadgetSpec(3, "Case2a"))
    assert template_discrepancy(t1) == 0 and template_discrepancy(t2) == -6
    assert sorted(k for _, k in t2.members) == sorted([5] + [2] * 3 + [1] * 3 + [3] * 3 + [1])
    assert t2.s == 24
    t1, t2 = build_K1_K2(GadgetSpec(3, "Case2b"))
    assert template_discrepancy(t1) == 0 and template_discrepancy(t2) == -12


ALL_SPECS = [GadgetSpec(r, sc, i) for sc in SCENARIOS if sc not in ("Case2a", "Case2b")
             for r in range(3 if sc != "Case1" else 4, 9) for i in range(r)]
ALL_SPECS += [GadgetSpec(3, "Case2a"), GadgetSpec(3, "Case2b")]


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: f"{s.scenario}-{s.r}-{s.i}")
def test_summation_routes_agree(spec):
    for t in build_K1_K2(spec):
        d = template_discrepancy(t)
        assert template_discrepancy_by_edges(t) == d == template_discrepancy_by_kind(t)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: f"{s.scenario}-{s.r}-{s.i}")
def test_recipes_use_only_host_cliques(spec):
    g, f = build_gadget(spec)
    for t in build_K1_K2(spec):
        assert t.host == f
        assert all(g.is_clique(c) and len(c) == spec.r for c, _ in t.members)
        rep = validate_template(t)
        assert (rep.s, rep.s_prime) == (2 * spec.r * (spec.r + 1), spec.r ** 2)


def test_avoid_head_goldens():
    # frozen from direct summation, cross-checked by the kind-census route above
    got = {(row.r, row.i): (row.disc_K1, row.diff) for row in sweep(3, 8, ["ObsC_AvoidHead"])}
    assert len(got) == sum(range(3, 9))
    for (r, i), (d1, diff) in got.items():
        assert d1 == 2 * r * r * (r - 1)
        assert diff == 2 * i * r - r * (r - 1)


def test_with_head_fallback_value():
    row = evaluate_gadget(GadgetSpec(3, "ObsC_WithHead", 2))
    assert row.expected is None and row.diff == 6 and row.match


# gadget structure

def cross(spec):
    g, f = build_gadget(spec)
    r = spec.r
    return {v: f(0, v) for v in range(r + 1, 2 * r + 2) if g.has_edge(0, v)}, f


def test_obsb_layout():
    c, f = cross(GadgetSpec(4, "ObsB", 2, attach=3))
    assert sorted(c.values()) == [-1, 1, 1]
    assert classify_clique(f, range(5, 10)).kind is Kind.ALL_MINUS
    assert classify_clique(f, range(5)).kind is Kind.ALL_PLUS


def test_case2a_layout():
    g, f = build_gadget(GadgetSpec(3, "Case2a"))
    c, _ = cross(GadgetSpec(3, "Case2a"))
    assert g.n == 8 and len(c) == 4 and c[4] == -1 and sorted(c.values()) == [-1, 1, 1, 1]
    assert classify_clique(f, range(4)) == (Kind.PLUS_STAR, 0)
    assert classify_clique(f, range(4, 8)) == (Kind.MINUS_STAR, 4)
    c, _ = cross(GadgetSpec(3, "Case2b"))
    assert c[4] == 1 and sorted(c.values()) == [-1, -1, -1, 1]


def test_case1_layout():
    c, f = cross(GadgetSpec(4, "Case1", 0))
    assert c == {6: 1, 7: 1, 8: 1}
    c, _ = cross(GadgetSpec(4, "Case1", 2))
    assert sorted(c.values()) == [-1, -1, 1] and 5 not in c


@pytest.mark.parametrize("r", range(3, 9))
def test_odd_attach_counts(r):
    for sc in ("ObsB", "ObsC_AvoidHead", "ObsC_WithHead"):
        c, _ = cross(GadgetSpec(r, sc, 0))
        assert len(c) == (r - 1 if r % 2 == 0 else r)
        if sc == "ObsC_AvoidHead":
            assert r + 1 not in c


@pytest.mark.parametrize("kwargs", [
    dict(r=3, scenario="ObsB", i=0, attach=2),
    dict(r=4, scenario="ObsB", i=0, attach=4),
    dict(r=3, scenario="Case1", i=0),
    dict(r=4, scenario="Case2a"),
    dict(r=3, scenario="Case2a", i=1),
    dict(r=4, scenario="ObsB", i=4),
    dict(r=4, scenario="ObsB"),
    dict(r=2, scenario="ObsB", i=0),
    dict(r=4, scenario="Mystery", i=0),
])
def test_spec_rejections(kwargs):
    with pytest.raises(ParameterError):
        GadgetSpec(**kwargs)


def test_expected_difference_examples():
    assert expected_difference(GadgetSpec(4, "ObsB", 0)) == -12
    assert expected_difference(GadgetSpec(3, "Case2a")) == -6
    assert expected_difference(GadgetSpec(3, "Case2b")) == -12
    assert expected_difference(GadgetSpec(5, "ObsC_AvoidHead", 1)) is None


def test_sweep_rows_all_match():
    rows = sweep(3, 8)
    assert all(r.match for r in rows)
    assert {r.scenario for r in rows} == set(SCENARIOS)
    for r in rows:
        if r.expected is not None:
            assert r.diff == r.expected
    line = rows[0].as_csv()
    assert len(line.split(",")) == len(CSV_HEADER.split(","))
    with pytest.raises(ParameterError):
        sweep(3, 4, ["Bogus"])


# Hamilton windows

def test_cycle_order_count():
    assert len(list(cycle_orders(5))) == 12
    assert len(list(cycle_orders(6))) == 60


@settings(max_examples=100, deadline=None)
@given(st.permutations(range(6)), st.integers(0, 5), st.booleans())
def test_canonical_cycle_is_rotation_reflection_invariant(perm, shift, flip):
    c = list(perm)
    d = c[shift:] + c[:shift]
    if flip:
        d = d[::-1]
    assert canonical_cycle(c) == canonical_cycle(d)
    assert canonical_cycle(c) in set(cycle_orders(6))


def test_window_template_examples():
    f = EdgeLabeling.constant(Graph.complete(5), 1)
    t = hamilton_window_template(f, (0, 1, 2, 3, 4), 3)
    assert template_discrepancy(t) == 15
    assert validate_template(t).s_prime == 3
    with pytest.raises(ParameterError):
        hamilton_window_template(f, (0, 1, 1, 3, 4), 3)
    with pytest.raises(ParameterError):
        hamilton_window_template(f, (0, 1, 2, 3, 4), 5)


def test_star_is_order_invariant():
    g = Graph.complete(5)
    f = EdgeLabeling(g, {e: (1 if 0 in e else -1) for e in g.edges()})
    assert len(set(window_discrepancies(f, 3).values())) == 1
    assert find_discrepant_swap(f, 3) is None


def test_violator_has_discrepant_swap():
    g = Graph.complete(5)
    f = EdgeLabeling(g, {e: (-1 if e == (0, 1) else 1) for e in g.edges()})
    assert not swap_identity_holds(f)
    c1, c2 = find_discrepant_swap(f, 3)
    assert c2 in {adjacent_swap(c1, j) for j in range(5)}
    d1 = template_discrepancy(hamilton_window_template(f, c1, 3))
    d2 = template_discrepancy(hamilton_window_template(f, c2, 3))
    assert d1 != d2


@settings(max_examples=25, deadline=None)
@given(complete_labelings(6))
def test_window_invariance_iff_swap_identity_k6(f):
    invariant = len(set(window_discrepancies(f, 3).values())) == 1
    assert invariant == swap_identity_holds(f)
