"""End-to-end battery: every computational route cross-checked at full scale.

One test per headline claim, each a single pass/fail line under pytest -v.
Exact statements are asserted as integer or rational equalities; numerical
ones carry their stated tolerances.
"""

import itertools
import math
import time
from fractions import Fraction
from math import comb

import numpy as np

from verlinde import fusion, gauge, graphs, modular, newstead, thetacst, weights
from verlinde.su2reps import admissible_triple


def random_period(rng, g):
    re = rng.uniform(-0.5, 0.5, size=(g, g))
    s = rng.uniform(-0.5, 0.5, size=(g, g))
    return thetacst.PeriodMatrix(0.5 * (re + re.T) + 1j * (s @ s.T + np.eye(g)))


def admissible_colorings(graph, cap):
    eids = graph.edge_ids()
    stars = [
        tuple(graph.edge_of(d) for d in graph.star(v)) for v in range(graph.n_vertices)
    ]
    return [
        dict(zip(eids, combo))
        for combo in itertools.product(range(cap + 1), repeat=len(eids))
        if all(admissible_triple(*(dict(zip(eids, combo))[e] for e in st)) for st in stars)
    ]


def test_verlinde_triple_agreement():
    # weight enumeration on every graph = character sum = closed form, exactly
    start = time.monotonic()
    spots = {(2, 1): 4, (2, 2): 10, (3, 1): 8, (3, 2): 36}
    for g in (2, 3):
        for k in range(1, 9):
            count = weights.verlinde_count_check(g, k)
            assert count == fusion.verlinde(g, k, via="characters")
            assert count == fusion.verlinde(g, k, via="closed")
            if (g, k) in spots:
                assert count == spots[(g, k)]
    assert time.monotonic() - start < 30.0


def test_graph_independence_of_weight_counts():
    theta, bell = graphs.theta_graph(), graphs.dumbbell_graph()
    for k in range(1, 13):
        assert len(weights.enumerate_weights(theta, k)) == len(
            weights.enumerate_weights(bell, k)
        )


def test_genus_two_closed_form():
    for k in range(1, 41):
        assert fusion.verlinde(2, k, via="closed") == (k + 2) * ((k + 2) ** 2 - 1) // 6
    # leading coefficient 1/6 = lattice density 4 times polytope volume 1/24
    vol = weights.polytope_volume(weights.polytope(graphs.theta_graph()))
    assert vol == Fraction(1, 24)
    assert 4 * vol == Fraction(1, 6)


def test_u1_network_counts():
    cases = [graphs.TrivalentGraph.from_edges(1, [(0, 0)])]
    cases += graphs.enumerate_trivalent(2) + graphs.enumerate_trivalent(3)
    for graph in cases:
        g = graphs.genus(graph)
        for k in range(1, 13):
            assert weights.u1_networks(graph, k).count == k**g


def test_theta_numerics():
    # spot value against a directly summed series
    oracle = math.fsum(math.exp(-math.pi * n * n) for n in range(-10, 11))
    got = thetacst.theta_char(thetacst.ThetaCharacteristic(1, (0,)), [[1j]], [0.0])
    assert abs(got - 1.0864348112) < 1e-9
    assert abs(got - oracle) < 1e-12

    # quasi-periodicity under z -> z + p + Omega q, gauged against the sides
    rng = np.random.default_rng(7)
    for _ in range(20):
        g = int(rng.integers(1, 3))
        k = int(rng.integers(1, 4))
        om = random_period(rng, g)
        char = thetacst.ThetaCharacteristic(
            k, tuple(int(c) for c in rng.integers(0, k, size=g))
        )
        z = rng.uniform(-0.5, 0.5, size=g) + 1j * rng.uniform(-0.3, 0.3, size=g)
        p = rng.integers(-1, 2, size=g)
        q = rng.integers(-1, 2, size=g)
        lhs = thetacst.theta_char(char, om, z + p + om.matrix @ q)
        factor = np.exp(
            2j * np.pi * np.dot(char.vector, p)
            - 1j * np.pi * k * (q @ om.matrix @ q)
            - 2j * np.pi * k * np.dot(q, z)
        )
        rhs = factor * thetacst.theta_char(char, om, z)
        assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(rhs))

    # the time-1/k transform of the coset delta series is the theta series
    rng = np.random.default_rng(11)
    for k, om in ((1, thetacst.PeriodMatrix([[1j]])), (2, thetacst.PeriodMatrix([[0.25 + 0.8j]]))):
        for ch in range(k):
            series = thetacst.abelian_cst(
                thetacst.delta_distribution((ch,), k), om, 1.0 / k
            )
            char = thetacst.ThetaCharacteristic(k, (ch,))
            for _ in range(10):
                z = [complex(rng.uniform(-1, 1), rng.uniform(-0.2, 0.2))]
                got = thetacst.evaluate_series(series, z)
                assert abs(got - thetacst.theta_char(char, om, z)) < 1e-10


def test_gauge_invariance():
    rng = np.random.default_rng(0)
    for graph in graphs.enumerate_trivalent(2):
        conn = gauge.random_connection(graph, rng)
        nets = [gauge.spin_network(graph, c) for c in admissible_colorings(graph, 4)]
        base = [gauge.spin_network_value(snf, conn) for snf in nets]
        for _ in range(100):
            moved = gauge.gauge_act(conn, gauge.random_transform(graph, rng))
            for snf, ref in zip(nets, base):
                assert abs(gauge.spin_network_value(snf, moved) - ref) < 1e-10


def test_modular_data():
    for k in range(1, 7):
        rep = modular.residual_report(k)
        for key in ("orthogonality", "symmetry", "pentagon", "yang_baxter"):
            assert rep[key] < 1e-9, f"level {k} {key}: {rep[key]}"
        assert rep["s_unitarity"] < 1e-12
    for k in range(1, 9):
        assert modular.heegaard_invariant(modular.heegaard_word(""), k) == 1.0
        s = modular.heegaard_invariant(modular.heegaard_word("S"), k)
        expect = math.sqrt(2.0 / (k + 2)) * math.sin(math.pi / (k + 2))
        assert abs(s - expect) < 1e-10


def test_newstead_exactness():
    assert newstead.n0(3, 0) == -8
    for m in range(2, 42):
        assert sum(comb(m, j) * newstead.bernoulli(j) for j in range(m)) == 0
    for a in range(31):
        for b in range(a + 1):
            mono = newstead.NewsteadMonomial(a, b, 0)
            if mono.degree > 30:
                continue
            lifted = newstead.NewsteadMonomial(a, b, 1)
            assert newstead.normalized_value(lifted) == newstead.normalized_value(mono)
            if mono.degree % 3 == 0:
                g = mono.degree // 3 + 2
                assert newstead.unnormalize(g, lifted) == g * newstead.unnormalize(
                    g - 1, mono
                )


def test_fusion_factorization():
    for g in (2, 3):
        graph = graphs.multi_theta(g)
        for k in range(1, 7):
            assert fusion.rk(g, (), k) == len(weights.enumerate_weights(graph, k))
    for k in range(1, 9):
        ring = fusion.FusionRing(k)
        for a, b, c, d in itertools.product(ring.labels, repeat=4):
            left = sum(ring.N(a, b, e) * ring.N(e, c, d) for e in ring.labels)
            right = sum(ring.N(b, c, f) * ring.N(a, f, d) for f in ring.labels)
            assert left == right
        worst = 0.0
        for n in range(1, k + 2):
            chi = [fusion.character(k, n, m) for m in ring.labels]
            for a, b in itertools.product(ring.labels, repeat=2):
                total = sum(ring.N(a, b, c) * chi[c] for c in ring.labels)
                worst = max(worst, abs(total - chi[a] * chi[b]))
        assert worst < 1e-10


def test_graph_calculus():
    faces, h = graphs.trace_faces(graphs.theta_graph(), graphs.planar_theta_ribbon())
    assert h == 0
    assert len(faces) == 3
    for g in (2, 3):
        assert len(graphs.move_graph_components(g)) == 1
    for g in (2, 3, 4):
        for rep in graphs.enumerate_trivalent(g):
            assert graphs.eulerian_invariant(rep) % 2 == (g - 1) % 2
