"""Admissible edge weights on trivalent graphs.

A level-k weight assigns each edge a value in (1/2k)*{0..k}.  At every
vertex the three incident values (a loop counts twice) must satisfy the
parity, sum and quantum triangle conditions.  This module enumerates the
admissible set, builds the continuous moment polytope it discretizes,
counts U(1) and level-1 analogues, fits the leading growth of the count
in k, and classifies the stabilizer data of the torus fibers sitting
over a weight.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .graphs import TrivalentGraph, enumerate_trivalent, multi_theta


class InvariantViolation(Exception):
    """A quantity that must agree between independent routes did not."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# -- weight functions ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class WeightFunction:
    """Edge weights at a fixed level, stored as exact fractions."""

    graph: TrivalentGraph
    level: int
    values: dict

    def __post_init__(self):
        k = self.level
        if isinstance(k, bool) or not isinstance(k, int) or k < 1:
            raise ValueError("level must be a positive integer")
        ids = _weight_edge_ids(self.graph)
        if set(self.values) != set(ids):
            raise ValueError("weights must cover every edge exactly once")
        vals = {}
        for e in ids:
            val = Fraction(self.values[e])
            num = val * 2 * k
            if num.denominator != 1 or not 0 <= num <= k:
                raise ValueError(
                    f"edge {e}: value {val} not in (1/{2 * k})*{{0..{k}}}"
                )
            vals[e] = val
        object.__setattr__(self, "values", vals)

    def numerators(self):
        """Values scaled by 2k, in edge-id order."""
        return tuple(
            int(self.values[e] * 2 * self.level) for e in _weight_edge_ids(self.graph)
        )


def _vertex_flag_edges(graph, v):
    # edge ids of the three flags at v; a loop appears twice
    return tuple(graph.edge_of(d) for d in graph.star(v))


def _weight_edge_ids(graph):
    # weights live on internal edges and parabolic legs alike
    return sorted(graph.edge_ids() + graph.parabolic_darts())


def is_admissible(w):
    """Check the vertex conditions; returns (ok, list of violations)."""
    graph, k = w.graph, w.level
    problems = []
    for v in range(graph.n_vertices):
        trip = [w.values[e] for e in _vertex_flag_edges(graph, v)]
        total = sum(trip)
        if total % Fraction(1, k) != 0:
            problems.append(f"vertex {v}: parity, sum {total} not in (1/{k})Z")
        if total > 1:
            problems.append(f"vertex {v}: sum {total} exceeds 1")
        for i in range(3):
            w3 = trip[i]
            w1, w2 = (trip[j] for j in range(3) if j != i)
            if not abs(w1 - w2) <= w3 <= min(w1 + w2, 2 - w1 - w2):
                problems.append(f"vertex {v}: triangle fails at flag {i}")
                break
    return not problems, problems


def enumerate_weights(graph, k, boundary=None):
    """All admissible level-k weights, sorted by numerator tuple.

    Parabolic legs must be pinned through `boundary`, a mapping from leg
    dart (or its edge id) to the prescribed value.
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ValueError("level must be a positive integer")
    edges = _weight_edge_ids(graph)
    legs = {graph.edge_of(d) for d in graph.parabolic_darts()}
    preset = {}
    for key, val in (boundary or {}).items():
        e = graph.edge_of(key)
        num = Fraction(val) * 2 * k
        if num.denominator != 1 or not 0 <= num <= k:
            raise ValueError(f"boundary value {val} out of range at level {k}")
        preset[e] = int(num)
    if legs - set(preset):
        raise ValueError("parabolic legs need prescribed boundary values")

    flag_lists = [_vertex_flag_edges(graph, v) for v in range(graph.n_vertices)]
    position = {e: i for i, e in enumerate(edges)}
    # vertex becomes checkable once its latest edge is assigned
    full_at = [[] for _ in edges]
    for v, flags in enumerate(flag_lists):
        full_at[max(position[e] for e in flags)].append(v)
    # loop vertices allow one early cut: third value known, loop still free
    loop_cut_at = [[] for _ in edges]
    for v, flags in enumerate(flag_lists):
        if len(set(flags)) == 2:
            loop = next(e for e in flags if flags.count(e) == 2)
            other = next(e for e in flags if flags.count(e) == 1)
            if position[other] < position[loop]:
                loop_cut_at[position[other]].append((v, other))

    nums = {}
    out = []

    def vertex_ok(v):
        a, b, c = (nums[e] for e in flag_lists[v])
        total = a + b + c
        return total % 2 == 0 and total <= 2 * k and 2 * max(a, b, c) <= total

    def dfs(i):
        if i == len(edges):
            out.append(tuple(nums[e] for e in edges))
            return
        e = edges[i]
        choices = (preset[e],) if e in preset else range(k + 1)
        for n in choices:
            nums[e] = n
            if all(vertex_ok(v) for v in full_at[i]) and all(
                nums[other] % 2 == 0 for _, other in loop_cut_at[i]
            ):
                dfs(i + 1)
        del nums[e]

    dfs(0)
    den = 2 * k
    return [
        WeightFunction(graph, k, {e: Fraction(n, den) for e, n in zip(edges, tup)})
        for tup in sorted(out)
    ]


def verlinde_count_check(g, k):
    """Count weights on every genus-g graph and demand full agreement.

    The common count is also matched against the trigonometric closed
    form; any mismatch raises InvariantViolation with a witness.
    """
    if g not in (2, 3, 4):
        raise ValueError("cross-check supports genus 2..4")
    if isinstance(k, bool) or not isinstance(k, int) or not 1 <= k <= 10:
        raise ValueError("cross-check supports level 1..10")
    counts = [(graph, len(enumerate_weights(graph, k))) for graph in enumerate_trivalent(g)]
    baseline = counts[0][1]
    for graph, n in counts:
        if n != baseline:
            raise InvariantViolation(
                f"genus {g} level {k}: count {n} != {baseline}", witness=graph
            )
    closed = ((k + 2) / 2) ** (g - 1) * sum(
        math.sin(n * math.pi / (k + 2)) ** (2 - 2 * g) for n in range(1, k + 2)
    )
    if abs(closed - baseline) > 1e-6:
        raise InvariantViolation(
            f"genus {g} level {k}: enumeration {baseline} vs closed form {closed}",
            witness=counts[0][0],
        )
    return baseline


# -- U(1) and level-1 analogues ----------------------------------------------


def _spanning_tree(graph):
    # BFS tree as (child, parent, edge) records rooted at vertex 0
    parent = {0: None}
    records = []
    frontier = [0]
    tree_edges = set()
    while frontier:
        nxt = []
        for v in frontier:
            for d in graph.star(v):
                e = graph.edge_of(d)
                u = graph.vertex_of[graph.involution[d]]
                if u not in parent and graph.involution[d] != d:
                    parent[u] = v
                    tree_edges.add(e)
                    records.append((u, v, e))
                    nxt.append(u)
        frontier = nxt
    if len(parent) != graph.n_vertices:
        raise ValueError("graph must be connected")
    return records, tree_edges


@dataclass(frozen=True, eq=False)
class U1NetworkFamily:
    """All mod-k flows on a graph, coordinatized by a chord basis."""

    graph: TrivalentGraph
    level: int
    flows: tuple
    cycle_basis: tuple

    @property
    def count(self):
        return len(self.flows)

    def coordinates(self, flow):
        """Chord values of a flow; a bijection onto (Z_k)^g."""
        return tuple(flow[e] for e in self.cycle_basis)


def u1_networks(graph, k):
    """Mod-k edge flows with Kirchhoff condition at every vertex.

    Edges are oriented out of the lower dart; loops are unconstrained.
    Chord values on the complement of a spanning tree parametrize the
    family, so the count is k**genus.
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ValueError("level must be a positive integer")
    if graph.parabolic_darts():
        raise ValueError("flows are defined for graphs without legs")
    records, tree_edges = _spanning_tree(graph)
    chords = [e for e in graph.edge_ids() if e not in tree_edges]
    flows = []
    for combo in itertools.product(range(k), repeat=len(chords)):
        flow = dict(zip(chords, combo))
        # solve tree values from the leaves inward
        for child, parent_v, e in reversed(records):
            total = 0
            for d in graph.star(child):
                ee = graph.edge_of(d)
                if ee == e:
                    continue
                total += flow[ee] if d == ee else -flow[ee]
            sign = 1 if graph.vertex_of[e] == child else -1
            flow[e] = (-sign * total) % k
        flows.append(flow)
    return U1NetworkFamily(graph, k, tuple(flows), tuple(chords))


def level1_networks(graph):
    """Even subgraphs: the 2**genus supports of level-1 weights."""
    if graph.parabolic_darts():
        raise ValueError("even subgraphs are defined for graphs without legs")
    records, tree_edges = _spanning_tree(graph)
    parent_edge = {child: (parent_v, e) for child, parent_v, e in records}
    chords = [e for e in graph.edge_ids() if e not in tree_edges]

    def fundamental_cycle(e):
        if graph.is_loop(e):
            return frozenset([e])
        u = graph.vertex_of[e]
        v = graph.vertex_of[graph.involution[e]]
        ancestors = set()
        x = u
        while x is not None:
            ancestors.add(x)
            x = parent_edge.get(x, (None, None))[0]
        cyc = {e}
        while v not in ancestors:
            pv, te = parent_edge[v]
            cyc.add(te)
            v = pv
        while u != v:
            pu, te = parent_edge[u]
            cyc.add(te)
            u = pu
        return frozenset(cyc)

    basis = [fundamental_cycle(e) for e in chords]
    nets = set()
    for picks in itertools.product((0, 1), repeat=len(basis)):
        acc = frozenset()
        for bit, cyc in zip(picks, basis):
            if bit:
                acc = acc ^ cyc
        nets.add(acc)
    return sorted(nets, key=lambda s: (len(s), sorted(s)))


# -- moment polytope ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MomentPolytope:
    """H-representation sum(coeffs * w) <= rhs over edge coordinates."""

    graph: TrivalentGraph
    inequalities: tuple

    def contains(self, values):
        for _, coeffs, rhs in self.inequalities:
            if sum(c * values[e] for e, c in coeffs.items()) > rhs:
                return False
        return True


def polytope(graph):
    """Continuous weight polytope in [0, 1/2]^edges."""
    ineqs = []
    for e in _weight_edge_ids(graph):
        ineqs.append((f"w[{e}] >= 0", {e: -1}, Fraction(0)))
        ineqs.append((f"w[{e}] <= 1/2", {e: 1}, Fraction(1, 2)))
    for v in range(graph.n_vertices):
        flags = _vertex_flag_edges(graph, v)
        total = {}
        for e in flags:
            total[e] = total.get(e, 0) + 1
        ineqs.append((f"vertex {v}: sum <= 1", dict(total), Fraction(1)))
        ineqs.append((f"vertex {v}: sum <= 2", dict(total), Fraction(2)))
        for i in range(3):
            coeffs = {}
            for j, e in enumerate(flags):
                coeffs[e] = coeffs.get(e, 0) + (1 if j == i else -1)
            if any(coeffs.values()):
                ineqs.append((f"vertex {v}: triangle {i}", coeffs, Fraction(0)))
    return MomentPolytope(graph, tuple(ineqs))


def _bfs_vertices(graph):
    order, seen = [], set()
    for root in range(graph.n_vertices):
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for d in graph.star(v):
                u = graph.vertex_of[graph.involution[d]]
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return order


def _dilation_count(graph, t):
    # integer points of the dilated polytope in c = 2w coordinates:
    # c_e in [0,t], and at each vertex sum <= 2t with 2*max <= sum
    if t == 0:
        return 1
    order = _bfs_vertices(graph)
    processed = set()
    open_edges = []
    states = {(): 1}
    for v in order:
        flags = _vertex_flag_edges(graph, v)
        fresh = sorted({e for e in flags if e not in open_edges})
        # where each flag value will come from
        sources = []
        for e in flags:
            if e in fresh:
                sources.append((1, fresh.index(e)))
            else:
                sources.append((0, open_edges.index(e)))
        processed.add(v)
        keep = []
        for i, e in enumerate(open_edges):
            u1, u2 = graph.vertex_of[e], graph.vertex_of[graph.involution[e]]
            if not (u1 in processed and u2 in processed):
                keep.append(i)
        fresh_keep = []
        for j, e in enumerate(fresh):
            u1, u2 = graph.vertex_of[e], graph.vertex_of[graph.involution[e]]
            if not (u1 in processed and u2 in processed):
                fresh_keep.append(j)
        new_states = {}
        for key, cnt in states.items():
            for combo in itertools.product(range(t + 1), repeat=len(fresh)):
                a, b, c = (key[i] if src == 0 else combo[i] for src, i in sources)
                total = a + b + c
                if total > 2 * t or 2 * max(a, b, c) > total:
                    continue
                nk = tuple(key[i] for i in keep) + tuple(combo[j] for j in fresh_keep)
                new_states[nk] = new_states.get(nk, 0) + cnt
        open_edges = [open_edges[i] for i in keep] + [fresh[j] for j in fresh_keep]
        states = new_states
    return sum(states.values())


@dataclass(frozen=True)
class VolumeEstimate:
    """Monte Carlo volume with a Hoeffding confidence interval."""

    volume: float
    half_width: float
    confidence: float
    samples: int


def polytope_volume(p, method="auto", seed=0, samples=200_000, confidence=0.999):
    """Euclidean volume of the weight polytope.

    Exact (Fraction) by lattice-point interpolation when the graph has at
    most six edges; otherwise a VolumeEstimate from certified sampling.
    """
    graph = p.graph
    n_edges = len(graph.edge_ids())
    if method not in ("auto", "exact", "monte-carlo"):
        raise ValueError("method must be auto, exact or monte-carlo")
    if method == "exact" or (method == "auto" and n_edges <= 6):
        seq = [_dilation_count(graph, 2 * s) for s in range(n_edges + 2)]
        diffs = [seq]
        for _ in range(n_edges + 1):
            prev = diffs[-1]
            diffs.append([b - a for a, b in zip(prev, prev[1:])])
        if diffs[n_edges + 1][0] != 0:
            raise InvariantViolation(
                "dilation counts are not polynomial at even steps", witness=graph
            )
        leading = Fraction(diffs[n_edges][0], math.factorial(n_edges))
        return leading / Fraction(4) ** n_edges

    import numpy as np

    rng = np.random.default_rng(seed)
    pts = rng.uniform(0.0, 0.5, size=(samples, n_edges))
    cols = {e: i for i, e in enumerate(graph.edge_ids())}
    rows, rhs = [], []
    for _, coeffs, bound in p.inequalities:
        row = [0.0] * n_edges
        for e, c in coeffs.items():
            row[cols[e]] = float(c)
        rows.append(row)
        rhs.append(float(bound))
    inside = np.all(pts @ np.array(rows).T <= np.array(rhs) + 1e-12, axis=1)
    frac = float(inside.mean())
    hw = math.sqrt(math.log(2.0 / (1.0 - confidence)) / (2.0 * samples))
    box = 0.5**n_edges
    return VolumeEstimate(frac * box, hw * box, confidence, samples)


# -- growth of the count ------------------------------------------------------


@dataclass(frozen=True)
class AsymptoticsReport:
    """Leading-order fit of the weight count against 2^g times volume."""

    genus: int
    ks: tuple
    counts: tuple
    degree: int
    leading_coefficient: object
    density_times_volume: object
    consistent: bool
    fit_warning: bool
    note: str


def _newton_coefficients(xs, ys):
    # divided differences f[x0..xd] for d = 0..len-1
    level = [Fraction(y) for y in ys]
    coeffs = [level[0]]
    for d in range(1, len(xs)):
        level = [
            (level[i + 1] - level[i]) / (xs[i + d] - xs[i])
            for i in range(len(level) - 1)
        ]
        coeffs.append(level[0])
    return coeffs


def bs_asymptotics(g, k_range):
    """Fit count(k) ~ C * k^(3g-3) and compare C with 2^g * volume.

    The parity sublattice has index 2^(V-1) in (Z/2k)^E, which leaves a
    point density of 2^g relative to the polytope volume in w
    coordinates; a bare volume normalization undercounts by that factor.
    """
    if isinstance(g, bool) or not isinstance(g, int) or g < 2:
        raise ValueError("genus must be an integer >= 2")
    ks = sorted(set(int(k) for k in k_range))
    if not ks or ks[0] < 1:
        raise ValueError("levels must be positive")
    graph = multi_theta(g)
    counts = [len(enumerate_weights(graph, k)) for k in ks]
    degree = 3 * g - 3
    vol = polytope_volume(polytope(graph))
    note = (
        "count ~ C k^(3g-3) with C = 2^g * vol; the bare volume "
        "normalization misses the parity-density factor 2^g"
    )

    if isinstance(vol, VolumeEstimate):
        density = 2**g * vol.volume
        tol = 2**g * vol.half_width
    else:
        density = Fraction(2**g) * vol
        tol = 0

    if len(ks) < degree + 2:
        lead = Fraction(counts[-1], ks[-1] ** degree)
        return AsymptoticsReport(
            g, tuple(ks), tuple(counts), degree, lead, density, False, True,
            note + "; too few levels for a certified polynomial fit",
        )

    coeffs = _newton_coefficients(ks, counts)
    if any(c != 0 for c in coeffs[degree + 1 :]):
        return AsymptoticsReport(
            g, tuple(ks), tuple(counts), degree, coeffs[degree], density,
            False, False, note + "; counts are not degree-(3g-3) polynomial",
        )
    lead = coeffs[degree]
    if tol:
        consistent = abs(float(lead) - density) <= tol
    else:
        consistent = lead == density
    return AsymptoticsReport(
        g, tuple(ks), tuple(counts), degree, lead, density, consistent, False, note
    )


# -- fiber stabilizers --------------------------------------------------------


_GROUP_DIM = {"Z2": 0, "U1": 1, "SU2": 3}
_GROUP_RANK = {"Z2": 0, "U1": 1, "SU2": 2}


@dataclass(frozen=True)
class FiberReport:
    """Stabilizer groups over a weight and, when certified, the fiber shape.

    tps = (t, p, s) describes T^t x [(S^3)^p x (S^2)^s] / G_w; h1 is the
    pair (free rank, number of Z2 summands).  When the reduction cannot
    certify a product form, tps is None and reason says why.
    """

    edge_stabilizers: dict
    vertex_stabilizers: dict
    product_description: str
    tps: tuple
    gw: str
    h1: tuple
    reason: str


def _is_central(val):
    return val == 0 or val == Fraction(1, 2)


def _vertex_group(trip):
    if all(_is_central(x) for x in trip):
        return "SU2"
    a, b, c = sorted(trip)
    if c == a + b or a + b + c == 1:
        return "U1"
    return "Z2"


def _rank(rows):
    rows = [list(r) for r in rows if any(r)]
    rank, col, width = 0, 0, (len(rows[0]) if rows else 0)
    while rows and col < width:
        pivot = next((i for i, r in enumerate(rows) if r[col]), None)
        if pivot is None:
            col += 1
            continue
        rows[0], rows[pivot] = rows[pivot], rows[0]
        top = rows[0]
        for r in rows[1:]:
            if r[col]:
                f = Fraction(r[col], top[col])
                for j in range(col, width):
                    r[j] -= f * top[j]
        rows = rows[1:]
        rank += 1
        col += 1
    return rank


def fiber_stabilizers(w):
    """Stabilizer data of the fiber over an admissible weight.

    Central edge values keep the full SU(2); others break to U(1).  A
    vertex keeps SU(2) when all three values are central, U(1) when the
    triple is degenerate (a triangle or sum bound is tight), and only
    the center Z2 when strictly interior.  The product form is certified
    by gauge-fixing edges one at a time; strata where that reduction
    stalls are reported honestly with tps = None.
    """
    ok, problems = is_admissible(w)
    if not ok:
        raise ValueError("weight is not admissible: " + "; ".join(problems))
    graph = w.graph
    if graph.parabolic_darts():
        raise ValueError("fiber data is defined for graphs without legs")

    edge_stab = {
        e: "SU2" if _is_central(w.values[e]) else "U1" for e in graph.edge_ids()
    }
    vertex_stab = {}
    for v in range(graph.n_vertices):
        trip = [w.values[e] for e in _vertex_flag_edges(graph, v)]
        vertex_stab[v] = _vertex_group(trip)
        # two central values force the third and a central vertex
        central = sum(1 for x in trip if _is_central(x))
        assert central < 2 or vertex_stab[v] == "SU2"

    desc = "(%s) / (%s)" % (
        " x ".join(edge_stab[e] for e in graph.edge_ids()),
        " x ".join(vertex_stab[v] for v in range(graph.n_vertices)),
    )

    def report(tps=None, gw=None, h1=None, reason=None):
        return FiberReport(edge_stab, vertex_stab, desc, tps, gw, h1, reason)

    if any(s == "SU2" for s in vertex_stab.values()):
        return report(reason="residual nonabelian conjugation at a central vertex")

    edges = graph.edge_ids()
    if all(s == "U1" for s in edge_stab.values()):
        # torus fiber: vertex circles translate edge phases
        cols = {e: i for i, e in enumerate(edges)}
        rows = []
        for v, s in vertex_stab.items():
            if s != "U1":
                continue
            row = [0] * len(edges)
            for d in graph.star(v):
                e = graph.edge_of(d)
                row[cols[e]] += 1 if d == e else -1
            rows.append(row)
        t = len(edges) - (_rank(rows) if rows else 0)
        return report(tps=(t, 0, 0), gw="finite translations, absorbed", h1=(t, 0))

    # gauge-fix edges whose stabilizer equals the larger endpoint group
    group_of = dict(vertex_stab)
    ends = {}
    for e in edges:
        ends[e] = (graph.vertex_of[e], graph.vertex_of[graph.involution[e]])
    order = _GROUP_RANK
    live = set(edges)
    while True:
        pick = None
        for e in sorted(live):
            u, v = ends[e]
            if u == v:
                continue
            umax = max(group_of[u], group_of[v], key=order.get)
            if edge_stab[e] == umax:
                pick = e
                break
        if pick is None:
            break
        u, v = ends[pick]
        merged = min(group_of[u], group_of[v], key=order.get)
        live.discard(pick)
        group_of[u] = merged
        for e in live:
            a, b = ends[e]
            ends[e] = (u if a == v else a, u if b == v else b)
        del group_of[v]

    stalled = [e for e in live if ends[e][0] != ends[e][1]]
    if stalled:
        if any(edge_stab[e] == "SU2" for e in stalled):
            return report(reason="double-coset interval between abelian stabilizers")
        return report(reason="reduction stalled on a finite residual action")
    if len(group_of) != 1:
        return report(reason="reduction left several components")
    residual = next(iter(group_of.values()))
    loops = [edge_stab[e] for e in sorted(live)]
    su2_loops = loops.count("SU2")
    t = loops.count("U1")
    if residual == "SU2":
        return report(reason="residual nonabelian conjugation")
    if su2_loops == 0:
        return report(tps=(t, 0, 0), gw="trivial", h1=(t, 0))
    if su2_loops == 1 and residual == "U1":
        # circle conjugation flattens the 3-sphere to a half 2-sphere
        return report(tps=(t, 0, 1), gw="Z2", h1=(t, 0))
    if su2_loops == 1:
        return report(reason="unreduced 3-sphere factor with finite residual action")
    return report(reason="multiple conjugation-coupled 3-sphere factors")


# -- serialization ------------------------------------------------------------


def weights_to_json(ws):
    """Weight list as JSON; numerators over the shared denominator 2k."""
    if not ws:
        return json.dumps({"level": None, "denominator": None, "weights": []})
    k = ws[0].level
    if any(w.level != k for w in ws):
        raise ValueError("all weights must share one level")
    den = 2 * k
    body = [
        {str(e): int(w.values[e] * den) for e in _weight_edge_ids(w.graph)} for w in ws
    ]
    return json.dumps({"level": k, "denominator": den, "weights": body}, indent=1)


def weights_from_json(graph, blob):
    """Inverse of weights_to_json against a given graph."""
    data = json.loads(blob)
    if not data["weights"]:
        return []
    k = data["level"]
    den = data["denominator"]
    if den != 2 * k:
        raise ValueError("denominator must be twice the level")
    out = []
    for entry in data["weights"]:
        vals = {int(e): Fraction(n, den) for e, n in entry.items()}
        out.append(WeightFunction(graph, k, vals))
    return out
