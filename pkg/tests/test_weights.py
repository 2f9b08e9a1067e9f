"""Tests for admissible weights, U(1) networks, polytopes and fiber data.

Counts are cross-checked against the trigonometric closed form evaluated
directly with math.sin (independent of the fusion module).
"""

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from verlinde.graphs import (
    TrivalentGraph,
    dumbbell_graph,
    enumerate_trivalent,
    theta_graph,
)
from verlinde.weights import (
    InvariantViolation,
    WeightFunction,
    bs_asymptotics,
    enumerate_weights,
    fiber_stabilizers,
    is_admissible,
    level1_networks,
    polytope,
    polytope_volume,
    u1_networks,
    verlinde_count_check,
    weights_from_json,
    weights_to_json,
)


def closed_form_count(g, k):
    """Trigonometric Verlinde sum, evaluated in floating point and rounded."""
    total = ((k + 2) / 2) ** (g - 1) * sum(
        math.sin(n * math.pi / (k + 2)) ** (2 - 2 * g) for n in range(1, k + 2)
    )
    return round(total)


def w(graph, k, numerators):
    """Weight from numerators over 2k, in edge-id order."""
    den = 2 * k
    return WeightFunction(
        graph, k, dict(zip(graph.edge_ids(), (Fraction(n, den) for n in numerators)))
    )


# ---------------------------------------------------------------------------
# admissibility
# ---------------------------------------------------------------------------


def test_theta_level1_examples():
    g = theta_graph()
    ok, _ = is_admissible(w(g, 1, (1, 1, 0)))
    assert ok
    bad, report = is_admissible(w(g, 1, (1, 0, 0)))
    assert not bad
    assert report


def test_dumbbell_sum_bound():
    g = dumbbell_graph()
    # both loops and the bridge at 1/2: vertex sum 3/2 > 1
    ok, report = is_admissible(w(g, 2, (2, 2, 2)))
    assert not ok
    assert any("sum" in r for r in report)


def test_out_of_range_value_rejected():
    g = theta_graph()
    with pytest.raises(ValueError):
        WeightFunction(g, 1, {e: Fraction(3, 4) for e in g.edge_ids()})
    with pytest.raises(ValueError):
        WeightFunction(g, 2, {e: Fraction(-1, 4) for e in g.edge_ids()})


def test_loop_counted_twice():
    g = dumbbell_graph()
    # parity at a loop vertex is 2*loop + bridge
    ok, _ = is_admissible(w(g, 2, (1, 1, 2)))
    assert ok  # 2*(1/4) + 1/2 = 1 is in (1/2)Z and sum stays at 1
    ok2, report = is_admissible(w(g, 2, (1, 1, 1)))
    assert not ok2  # 2*(1/4) + 1/4 = 3/4 not in (1/2)Z
    assert any("parity" in r for r in report)


# ---------------------------------------------------------------------------
# enumeration and Verlinde counts
# ---------------------------------------------------------------------------


def test_theta_small_counts():
    assert len(enumerate_weights(theta_graph(), 1)) == 4
    assert len(enumerate_weights(theta_graph(), 2)) == 10


def test_dumbbell_matches_theta():
    assert len(enumerate_weights(dumbbell_graph(), 2)) == 10


@pytest.mark.parametrize("k", range(1, 13))
def test_genus2_graph_independence(k):
    n_theta = len(enumerate_weights(theta_graph(), k))
    n_dumb = len(enumerate_weights(dumbbell_graph(), k))
    assert n_theta == n_dumb == closed_form_count(2, k)


@pytest.mark.parametrize("k", range(1, 7))
def test_genus3_graph_independence(k):
    counts = {len(enumerate_weights(g, k)) for g in enumerate_trivalent(3)}
    assert counts == {closed_form_count(3, k)}


def test_verlinde_count_check_spots():
    assert verlinde_count_check(2, 1) == 4
    assert verlinde_count_check(2, 2) == 10
    assert verlinde_count_check(3, 1) == 8
    assert verlinde_count_check(3, 2) == 36


def test_enumeration_is_sorted_and_unique():
    ws = enumerate_weights(theta_graph(), 3)
    keys = [tuple(wf.values[e] for e in theta_graph().edge_ids()) for wf in ws]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_boundary_labels():
    # one vertex carrying a loop and a parabolic leg
    g = TrivalentGraph.from_edges(1, [(0, 0)], parabolic=[0])
    leg = g.parabolic_darts()[0]
    ws = enumerate_weights(g, 2, boundary={leg: Fraction(0)})
    assert len(ws) == 3  # loop value free, leg pinned at 0
    with pytest.raises(ValueError):
        enumerate_weights(g, 2)  # legs need prescribed values


def test_level_monotonicity():
    # a level-k coloring stays admissible at any higher level
    for wf in enumerate_weights(theta_graph(), 2):
        nums = [wf.values[e] * 4 for e in theta_graph().edge_ids()]
        for k2 in (3, 5, 8):
            scaled = {
                e: Fraction(int(n), 2 * k2)
                for e, n in zip(theta_graph().edge_ids(), nums)
            }
            ok, _ = is_admissible(WeightFunction(theta_graph(), k2, scaled))
            assert ok


# ---------------------------------------------------------------------------
# U(1) and level-1 networks
# ---------------------------------------------------------------------------


def test_u1_counts_examples():
    assert u1_networks(theta_graph(), 2).count == 4
    assert u1_networks(dumbbell_graph(), 3).count == 9
    assert u1_networks(theta_graph(), 1).count == 1


@pytest.mark.parametrize("gg", [2, 3])
@pytest.mark.parametrize("k", [1, 2, 3, 5, 8, 12])
def test_u1_counts_are_k_pow_g(gg, k):
    for graph in enumerate_trivalent(gg):
        fam = u1_networks(graph, k)
        assert fam.count == k**gg
        assert len(fam.flows) == k**gg


def test_u1_kirchhoff():
    g = dumbbell_graph()
    k = 4
    for flow in u1_networks(g, k).flows:
        for v in range(g.n_vertices):
            total = 0
            for d in g.star(v):
                e = g.edge_of(d)
                total += flow[e] if d == e else -flow[e]
            assert total % k == 0


def test_u1_cycle_coordinates_biject():
    g = theta_graph()
    k = 3
    fam = u1_networks(g, k)
    coords = {fam.coordinates(flow) for flow in fam.flows}
    assert len(coords) == k ** 2
    assert coords == set(itertools.product(range(k), repeat=2))


def test_level1_theta():
    g = theta_graph()
    e1, e2, e3 = g.edge_ids()
    nets = {frozenset(s) for s in level1_networks(g)}
    assert nets == {
        frozenset(),
        frozenset({e1, e2}),
        frozenset({e1, e3}),
        frozenset({e2, e3}),
    }


def test_level1_dumbbell():
    g = dumbbell_graph()
    loops = {e for e in g.edge_ids() if g.is_loop(e)}
    nets = {frozenset(s) for s in level1_networks(g)}
    assert nets == {frozenset(s) for r in range(3) for s in itertools.combinations(loops, r)}


@pytest.mark.parametrize("gg", [2, 3])
def test_level1_count_and_weights(gg):
    for graph in enumerate_trivalent(gg):
        nets = level1_networks(graph)
        assert len(nets) == 2**gg
        supports = {
            frozenset(e for e, val in wf.values.items() if val)
            for wf in enumerate_weights(graph, 1)
        }
        assert supports == {frozenset(s) for s in nets}


# ---------------------------------------------------------------------------
# polytope and asymptotics
# ---------------------------------------------------------------------------


def test_polytope_contains_weights():
    g = theta_graph()
    p = polytope(g)
    for wf in enumerate_weights(g, 3):
        assert p.contains(wf.values)
    assert p.contains({e: Fraction(0) for e in g.edge_ids()})


def test_polytope_volume_genus2():
    assert polytope_volume(polytope(theta_graph())) == Fraction(1, 24)
    assert polytope_volume(polytope(dumbbell_graph())) == Fraction(1, 24)


def test_lattice_census_matches_enumeration():
    g = theta_graph()
    p = polytope(g)
    for k in (1, 2, 3):
        pts = []
        den = 2 * k
        for nums in itertools.product(range(k + 1), repeat=3):
            vals = dict(zip(g.edge_ids(), (Fraction(n, den) for n in nums)))
            # parity sublattice: vertex sums in (1/k)Z
            parity = all(
                sum(vals[g.edge_of(d)] for d in g.star(v)) % Fraction(1, k) == 0
                for v in range(g.n_vertices)
            )
            if parity and p.contains(vals):
                pts.append(nums)
        counted = {
            tuple(int(wf.values[e] * den) for e in g.edge_ids())
            for wf in enumerate_weights(g, k)
        }
        assert set(pts) == counted


def test_bs_asymptotics_genus2():
    rep = bs_asymptotics(2, range(1, 10))
    assert rep.leading_coefficient == Fraction(1, 6)
    assert rep.density_times_volume == Fraction(1, 6)
    assert rep.consistent


def test_bs_asymptotics_genus3():
    rep = bs_asymptotics(3, range(1, 12))
    assert rep.degree == 6
    assert rep.leading_coefficient == rep.density_times_volume
    assert rep.consistent


def test_bs_asymptotics_short_range_warns():
    rep = bs_asymptotics(2, range(1, 3))
    assert rep.fit_warning


# ---------------------------------------------------------------------------
# fiber stabilizers
# ---------------------------------------------------------------------------


def test_fiber_theta_boundary_stratum():
    g = theta_graph()
    rep = fiber_stabilizers(w(g, 2, (2, 1, 1)))
    assert list(rep.edge_stabilizers.values()) == ["SU2", "U1", "U1"]
    assert list(rep.vertex_stabilizers.values()) == ["U1", "U1"]
    assert rep.tps == (1, 0, 1)
    assert rep.h1 == (1, 0)
    assert rep.gw == "Z2"


def test_fiber_theta_interior():
    g = theta_graph()
    rep = fiber_stabilizers(w(g, 4, (2, 2, 2)))
    assert set(rep.edge_stabilizers.values()) == {"U1"}
    assert set(rep.vertex_stabilizers.values()) == {"Z2"}
    assert rep.tps == (3, 0, 0)
    assert rep.h1 == (3, 0)


def test_fiber_dumbbell_interior():
    g = dumbbell_graph()
    rep = fiber_stabilizers(w(g, 4, (2, 2, 2)))
    assert rep.tps == (3, 0, 0)


def test_fiber_vacuum_not_certified():
    g = theta_graph()
    rep = fiber_stabilizers(w(g, 2, (0, 0, 0)))
    assert set(rep.edge_stabilizers.values()) == {"SU2"}
    assert set(rep.vertex_stabilizers.values()) == {"SU2"}
    assert rep.tps is None
    assert "nonabelian" in rep.reason


def test_fiber_double_coset_not_certified():
    g = dumbbell_graph()
    rep = fiber_stabilizers(w(g, 4, (2, 2, 4)))
    assert rep.tps is None
    assert "coset" in rep.reason


def test_fiber_rejects_inadmissible():
    g = theta_graph()
    with pytest.raises(ValueError):
        fiber_stabilizers(w(g, 2, (1, 1, 1)))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_fiber_report_coherent(k):
    for graph in [theta_graph(), dumbbell_graph()]:
        for wf in enumerate_weights(graph, k):
            rep = fiber_stabilizers(wf)
            assert set(rep.edge_stabilizers.values()) <= {"U1", "SU2"}
            assert set(rep.vertex_stabilizers.values()) <= {"Z2", "U1", "SU2"}
            # a report either certifies a product form or explains why not
            assert (rep.tps is None) == (rep.reason is not None)
            if rep.tps is not None:
                t, p, s = rep.tps
                assert rep.h1 == (t, p)


def test_invariant_violation_carries_witness():
    err = InvariantViolation("count mismatch", witness=("dumbbell", 3))
    assert isinstance(err, Exception)
    assert err.witness == ("dumbbell", 3)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def test_weight_json_roundtrip():
    g = theta_graph()
    ws = enumerate_weights(g, 2)
    blob = weights_to_json(ws)
    back = weights_from_json(g, blob)
    assert len(back) == len(ws)
    assert all(a.values == b.values and a.level == b.level for a, b in zip(ws, back))


# ---------------------------------------------------------------------------
# property tests
# ---------------------------------------------------------------------------


@given(st.integers(1, 6), st.data())
@settings(max_examples=60, deadline=None)
def test_admissible_iff_polytope_and_parity(k, data):
    g = dumbbell_graph()
    nums = data.draw(
        st.tuples(*[st.integers(0, k) for _ in g.edge_ids()])
    )
    wf = w(g, k, nums)
    ok, _ = is_admissible(wf)
    p = polytope(g)
    parity = all(
        sum(wf.values[g.edge_of(d)] for d in g.star(v)) % Fraction(1, k) == 0
        for v in range(g.n_vertices)
    )
    assert ok == (p.contains(wf.values) and parity)
