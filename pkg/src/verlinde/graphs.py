"""Half-edge trivalent graphs: moves, ribbon data, connections, geodesics.

A graph is stored as a dart involution plus a dart-to-vertex map.  Darts
(half-edges) are integers 0..n-1; an internal edge is an involution orbit of
size two, a parabolic leg is a fixed point.  Loops and parallel edges are
first-class, so every operation works at the dart level.  An edge is named by
its smallest dart.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass


@dataclass(frozen=True)
class TrivalentGraph:
    """Immutable half-edge graph.

    ``involution[d] == d`` marks a parabolic leg.  Vertices are labeled by
    consecutive integers.  Intermediate results of moves may carry a single
    4-valent vertex; everything else expects valence 3.
    """

    involution: tuple
    vertex_of: tuple

    def __post_init__(self):
        object.__setattr__(self, "involution", tuple(self.involution))
        object.__setattr__(self, "vertex_of", tuple(self.vertex_of))
        n = len(self.involution)
        if len(self.vertex_of) != n:
            raise ValueError("involution and vertex map disagree on dart count")
        for d, p in enumerate(self.involution):
            if not 0 <= p < n:
                raise ValueError(f"dart {d} pairs with out-of-range dart {p}")
            if self.involution[p] != d:
                raise ValueError("edge pairing is not an involution")
        if any(v < 0 for v in self.vertex_of):
            raise ValueError("negative vertex index")

    # -- basic queries -----------------------------------------------------

    @property
    def n_darts(self):
        return len(self.involution)

    @property
    def n_vertices(self):
        return max(self.vertex_of) + 1 if self.vertex_of else 0

    def star(self, v):
        """Darts at vertex v, ascending."""
        cache = self.__dict__.get("_stars")
        if cache is None:
            cache = [[] for _ in range(self.n_vertices)]
            for d, w in enumerate(self.vertex_of):
                cache[w].append(d)
            cache = tuple(tuple(s) for s in cache)
            object.__setattr__(self, "_stars", cache)
        return cache[v]

    def edges(self):
        """Internal edges as (dart, partner) pairs with dart < partner."""
        return [
            (d, self.involution[d])
            for d in range(self.n_darts)
            if self.involution[d] > d
        ]

    def edge_ids(self):
        return [d for d, _ in self.edges()]

    def parabolic_darts(self):
        return [d for d in range(self.n_darts) if self.involution[d] == d]

    def edge_of(self, d):
        return min(d, self.involution[d])

    def is_loop(self, e):
        p = self.involution[e]
        return p != e and self.vertex_of[p] == self.vertex_of[e]

    def is_trivalent(self):
        counts = [0] * self.n_vertices
        for v in self.vertex_of:
            counts[v] += 1
        return all(c == 3 for c in counts)

    def is_connected(self):
        return len(_components(self)) <= 1

    # -- construction ------------------------------------------------------

    @classmethod
    def from_edges(cls, n_vertices, edges, parabolic=()):
        """Build from a list of (u, v) pairs; loops are (v, v).

        Edge i receives darts 2i (at u) and 2i+1 (at v); parabolic legs get
        one dart each, appended after all internal darts.
        """
        inv, vert = [], []
        for u, v in edges:
            d = len(inv)
            inv += [d + 1, d]
            vert += [u, v]
        for u in parabolic:
            inv.append(len(inv))
            vert.append(u)
        used = max(vert) + 1 if vert else 0
        if used != n_vertices:
            raise ValueError("vertex count must match the labels used")
        return cls(tuple(inv), tuple(vert))


def theta_graph():
    """Two vertices joined by three parallel edges."""
    return TrivalentGraph.from_edges(2, [(0, 1), (0, 1), (0, 1)])


def dumbbell_graph():
    """Two loop vertices joined by a bridge."""
    return TrivalentGraph.from_edges(2, [(0, 0), (1, 1), (0, 1)])


def multi_theta(g):
    """Cycle of g-1 doubled-edge cells; genus g with 2g-2 vertices."""
    if g < 2:
        raise ValueError("multi-theta graphs need genus >= 2")
    n = 2 * g - 2
    edges = []
    for i in range(g - 1):
        a, b = 2 * i, 2 * i + 1
        edges += [(a, b), (a, b), (b, (b + 1) % n)]
    return TrivalentGraph.from_edges(n, edges)


def chain_graph(g):
    """Chain of g circles joined by g-1 bridges; genus g (g=2: dumbbell)."""
    if g < 2:
        raise ValueError("chain graphs need genus >= 2")
    n = 2 * g - 2
    edges = [(0, 0), (n - 1, n - 1)]
    for a in range(1, n - 2, 2):
        edges += [(a, a + 1), (a, a + 1)]
    for a in range(0, n - 1, 2):
        edges.append((a, a + 1))
    return TrivalentGraph.from_edges(n, edges)


# -- genus and components ----------------------------------------------------


def _components(graph):
    seen = set()
    comps = []
    for v0 in range(graph.n_vertices):
        if v0 in seen:
            continue
        comp = {v0}
        queue = [v0]
        while queue:
            v = queue.pop()
            for d in graph.star(v):
                w = graph.vertex_of[graph.involution[d]]
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(sorted(comp))
    return comps


def genus(graph):
    """First Betti number of the underlying 1-complex.

    For closed connected trivalent graphs this is the g with |V| = 2g-2 and
    |E| = 3g-3; parabolic legs never contribute.
    """
    return len(graph.edges()) - graph.n_vertices + len(_components(graph))


# -- canonical forms and isomorphism -----------------------------------------


def _assignments(graph, seed_perm):
    """Yield complete dart relabelings of one component, BFS order.

    The seed star is laid out per seed_perm; every newly reached vertex
    contributes its entering dart first, then the remaining darts in every
    order (backtracking branch).
    """
    order = list(seed_perm)
    new_id = {d: i for i, d in enumerate(order)}

    def rec(t):
        if t == len(order):
            yield dict(new_id)
            return
        p = graph.involution[order[t]]
        if p in new_id:
            yield from rec(t + 1)
            return
        rest = [x for x in graph.star(graph.vertex_of[p]) if x != p]
        for tail in itertools.permutations(rest):
            group = (p,) + tail
            for x in group:
                new_id[x] = len(order)
                order.append(x)
            yield from rec(t + 1)
            for x in reversed(group):
                del new_id[x]
                order.pop()

    yield from rec(0)


def _encode(graph, new_id):
    order = sorted(new_id, key=new_id.get)
    vmap = {}
    for d in order:
        v = graph.vertex_of[d]
        if v not in vmap:
            vmap[v] = len(vmap)
    inv_t = tuple(new_id[graph.involution[d]] for d in order)
    vert_t = tuple(vmap[graph.vertex_of[d]] for d in order)
    return inv_t, vert_t


def _vertex_profile(graph, v):
    # cheap relabeling-invariant used to restrict canonical seeds
    neigh = {}
    loops = 0
    for d in graph.star(v):
        w = graph.vertex_of[graph.involution[d]]
        if w == v:
            loops += 1
        else:
            neigh[w] = neigh.get(w, 0) + 1
    return (loops, tuple(sorted(neigh.values())), len(graph.star(v)))


def _canonical_data(graph):
    """Per-component (encoding, relabeling) pairs, sorted by encoding."""
    out = []
    for comp in _components(graph):
        profiles = {v: _vertex_profile(graph, v) for v in comp}
        seed_class = min(profiles.values())
        seeds = [v for v in comp if profiles[v] == seed_class]
        best = None
        best_assign = None
        for seed in seeds:
            for perm in itertools.permutations(graph.star(seed)):
                for assign in _assignments(graph, perm):
                    enc = _encode(graph, assign)
                    if best is None or enc < best:
                        best, best_assign = enc, assign
        out.append((best, best_assign))
    out.sort(key=lambda pair: pair[0])
    return out


def canonical_form(graph):
    """Relabeling-invariant encoding; equal iff graphs are isomorphic."""
    return tuple(enc for enc, _ in _canonical_data(graph))


def _canonical_relabel(graph):
    """Canonically relabeled copy plus the old-dart -> new-dart map."""
    invs, verts = [], []
    dart_map = {}
    for enc, assign in _canonical_data(graph):
        inv_t, vert_t = enc
        doff = len(invs)
        voff = max(verts) + 1 if verts else 0
        invs += [d + doff for d in inv_t]
        verts += [v + voff for v in vert_t]
        for old, local in assign.items():
            dart_map[old] = local + doff
    return TrivalentGraph(tuple(invs), tuple(verts)), dart_map


def is_isomorphic(a, b):
    return canonical_form(a) == canonical_form(b)


# -- enumeration --------------------------------------------------------------


def enumerate_trivalent(g):
    """Isomorphism-class representatives of closed connected trivalent graphs.

    Exhausts perfect matchings on the 3(2g-2) darts of 2g-2 stars with a
    symmetry cut (untouched stars are interchangeable, as are the unpaired
    darts within a star), then dedups by canonical form.
    """
    if not isinstance(g, int) or isinstance(g, bool):
        raise ValueError("genus must be an integer")
    if not 2 <= g <= 5:
        raise ValueError("supported genus range is 2..5")
    n = 2 * g - 2
    n_darts = 3 * n
    inv = [-1] * n_darts
    found = {}

    def rec(d):
        while d < n_darts and inv[d] != -1:
            d += 1
        if d == n_darts:
            graph = TrivalentGraph(
                tuple(inv), tuple(x // 3 for x in range(n_darts))
            )
            if graph.is_connected():
                key = canonical_form(graph)
                if key not in found:
                    found[key] = graph
            return
        cands = []
        untouched_taken = False
        for w in range(n):
            un = [x for x in (3 * w, 3 * w + 1, 3 * w + 2) if inv[x] == -1 and x != d]
            if not un:
                continue
            if len(un) == 3:
                if not untouched_taken:
                    cands.append(un[0])
                    untouched_taken = True
            else:
                cands.append(un[0])
        for p in cands:
            inv[d], inv[p] = p, d
            rec(d + 1)
            inv[d] = inv[p] = -1

    rec(0)
    return [found[k] for k in sorted(found)]


# -- moves --------------------------------------------------------------------


def contract_edge(graph, e, return_map=False):
    """Contract a non-loop edge, merging its endpoints (4-valent result)."""
    d0 = e
    d1 = graph.involution[e]
    if d1 == d0:
        raise ValueError("cannot contract a parabolic leg")
    u, w = graph.vertex_of[d0], graph.vertex_of[d1]
    if u == w:
        raise ValueError("cannot contract a loop")
    keep = [d for d in range(graph.n_darts) if d not in (d0, d1)]
    dart_map = {d: i for i, d in enumerate(keep)}
    lo, hi = min(u, w), max(u, w)

    def vmap(v):
        if v == hi:
            v = lo
        return v - 1 if v > hi else v

    out = TrivalentGraph(
        tuple(dart_map[graph.involution[d]] for d in keep),
        tuple(vmap(graph.vertex_of[d]) for d in keep),
    )
    return (out, dart_map) if return_map else out


def expand_vertex(graph, v, partition):
    """Split a 4-valent vertex along a 2+2 partition, inserting a new edge."""
    star = graph.star(v)
    if len(star) != 4:
        raise ValueError("expansion needs a 4-valent vertex")
    try:
        a, b = (tuple(p) for p in partition)
    except ValueError:
        raise ValueError("partition must be two pairs") from None
    if len(a) != 2 or len(b) != 2 or sorted(a + b) != sorted(star):
        raise ValueError("partition must split the star into two pairs")
    new_v = graph.n_vertices
    n = graph.n_darts
    inv = list(graph.involution) + [n + 1, n]
    vert = list(graph.vertex_of)
    for d in b:
        vert[d] = new_v
    vert += [v, new_v]
    return TrivalentGraph(tuple(inv), tuple(vert))


@dataclass(frozen=True)
class MoveResult:
    """Both results of an elementary transformation at one edge.

    edge_maps sends each old edge to its counterpart; the transformed edge
    goes to the freshly inserted one.  loop_case marks the degenerate move
    that reproduces the input.
    """

    graphs: tuple
    edge_maps: tuple
    loop_case: bool


def elementary_transformations(graph, e):
    d0 = e
    d1 = graph.involution[e]
    if graph.vertex_of[d0] == graph.vertex_of[d1]:
        ident = {x: x for x in graph.edge_ids()}
        return MoveResult((graph, graph), (ident, dict(ident)), True)
    contracted, dmap = contract_edge(graph, e, return_map=True)
    u, w = graph.vertex_of[d0], graph.vertex_of[d1]
    a, b = (dmap[d] for d in graph.star(u) if d != d0)
    c, dd = (dmap[d] for d in graph.star(w) if d != d1)
    merged = contracted.vertex_of[a]
    outs, maps = [], []
    for part in (((a, c), (b, dd)), ((a, dd), (b, c))):
        out = expand_vertex(contracted, merged, part)
        emap = {}
        for old in graph.edge_ids():
            if old == graph.edge_of(e):
                emap[old] = out.n_darts - 2
            else:
                emap[old] = out.edge_of(dmap[old])
        outs.append(out)
        maps.append(emap)
    return MoveResult(tuple(outs), tuple(maps), False)


def move_graph_components(g):
    """Connected components of the elementary-move graph on genus-g classes."""
    reps = enumerate_trivalent(g)
    keys = {canonical_form(x): i for i, x in enumerate(reps)}
    adj = {i: set() for i in range(len(reps))}
    for i, graph in enumerate(reps):
        for e in graph.edge_ids():
            if graph.is_loop(e):
                continue
            for out in elementary_transformations(graph, e).graphs:
                j = keys[canonical_form(out)]
                adj[i].add(j)
                adj[j].add(i)
    comps = []
    left = set(range(len(reps)))
    while left:
        comp = {min(left)}
        queue = [min(left)]
        while queue:
            x = queue.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    queue.append(y)
        left -= comp
        comps.append([reps[i] for i in sorted(comp)])
    return comps


# -- Eulerian systems ----------------------------------------------------------


def _count_cycles(perm):
    seen = set()
    n = 0
    for start in perm:
        if start in seen:
            continue
        d = start
        while d not in seen:
            seen.add(d)
            d = perm[d]
        n += 1
    return n


def eulerian_invariant(graph):
    """Minimal number of closed irreducible paths covering every oriented edge once.

    A system induces, at each vertex, a fixed-point-free bijection of the star
    (arrival flag to departure dart; a fixed point would be a backtrack), and
    conversely.  With 3-stars that leaves two choices per vertex, so the
    search is exact.
    """
    if graph.parabolic_darts():
        raise ValueError("Eulerian systems are defined for closed graphs")
    if not graph.is_connected():
        raise ValueError("connected graphs only")
    options = []
    for v in range(graph.n_vertices):
        s = graph.star(v)
        if len(s) != 3:
            raise ValueError("Eulerian systems need a trivalent graph")
        a, b, c = s
        options.append(({a: b, b: c, c: a}, {a: c, c: b, b: a}))
    best = None
    for choice in itertools.product(*options):
        succ = {}
        for d in range(graph.n_darts):
            f = graph.involution[d]
            succ[d] = choice[graph.vertex_of[f]][f]
        n_cycles = _count_cycles(succ)
        if best is None or n_cycles < best:
            best = n_cycles
    return best


# -- edge coloring ---------------------------------------------------------------


def _two_class_cycles(graph, coloring, pair):
    by_vertex = {v: {} for v in range(graph.n_vertices)}
    for e, c in coloring.items():
        if c not in pair:
            continue
        by_vertex[graph.vertex_of[e]][c] = e
        by_vertex[graph.vertex_of[graph.involution[e]]][c] = e
    cycles = []
    visited = set()
    for v0 in range(graph.n_vertices):
        if v0 in visited:
            continue
        cycle = []
        v, c = v0, pair[0]
        while True:
            e = by_vertex[v][c]
            cycle.append(e)
            visited.add(v)
            u0 = graph.vertex_of[e]
            u1 = graph.vertex_of[graph.involution[e]]
            v = u1 if v == u0 else u0
            c = pair[1] if c == pair[0] else pair[0]
            if v == v0 and c == pair[0]:
                break
        cycles.append(cycle)
    return cycles


def edge_chromatic(graph):
    """Edge chromatic number (3 or 4) with the even-cycle cover witness.

    When 3 colors suffice, the union of two color classes is a disjoint set
    of even simple cycles covering every vertex; that cover is returned as
    the witness, else None.
    """
    edges = graph.edge_ids()
    if any(graph.is_loop(e) for e in edges):
        raise ValueError("edge coloring requires a loopless graph")
    ends = {
        e: (graph.vertex_of[e], graph.vertex_of[graph.involution[e]])
        for e in edges
    }

    def color_with(n_colors):
        used = [set() for _ in range(graph.n_vertices)]
        coloring = {}

        def rec(i):
            if i == len(edges):
                return True
            e = edges[i]
            u, v = ends[e]
            for c in range(n_colors):
                if c in used[u] or c in used[v]:
                    continue
                used[u].add(c)
                used[v].add(c)
                coloring[e] = c
                if rec(i + 1):
                    return True
                used[u].discard(c)
                used[v].discard(c)
                del coloring[e]
            return False

        return dict(coloring) if rec(0) else None

    three = color_with(3)
    if three is not None:
        return 3, _two_class_cycles(graph, three, (1, 2))
    four = color_with(4)
    if four is None:
        raise RuntimeError("cubic loopless multigraphs are always 4-colorable")
    return 4, None


# -- ribbon structures and faces ---------------------------------------------


@dataclass
class RibbonStructure:
    """Cyclic order of the star at every vertex (tuple = rotation order)."""

    cyclic_order: dict

    def next_dart(self, v, d):
        cyc = self.cyclic_order[v]
        return cyc[(cyc.index(d) + 1) % len(cyc)]


def planar_theta_ribbon():
    return RibbonStructure({0: (0, 2, 4), 1: (1, 5, 3)})


def planar_dumbbell_ribbon():
    return RibbonStructure({0: (0, 1, 4), 1: (2, 3, 5)})


def trace_faces(graph, ribbon):
    """Face cycles of the ribbon graph and the genus of the glued surface."""
    if graph.parabolic_darts():
        raise ValueError("face tracing works on closed graphs")
    for v in range(graph.n_vertices):
        if tuple(sorted(ribbon.cyclic_order[v])) != graph.star(v):
            raise ValueError("ribbon order must permute each star")

    def nxt(d):
        f = graph.involution[d]
        return ribbon.next_dart(graph.vertex_of[f], f)

    faces = []
    seen = set()
    for d0 in range(graph.n_darts):
        if d0 in seen:
            continue
        face = []
        d = d0
        while True:
            face.append(d)
            seen.add(d)
            d = nxt(d)
            if d == d0:
                break
        faces.append(tuple(face))
    chi = graph.n_vertices - len(graph.edges()) + len(faces)
    if chi % 2:
        raise ValueError("face tracing produced odd Euler characteristic")
    return faces, (2 - chi) // 2


# -- connections and geodesics -------------------------------------------------


@dataclass
class GraphConnection:
    """Star identifications per traversed dart.

    transport[d] maps the star of the source vertex of d onto the star of its
    target; the reverse dart always carries the inverse map.
    traversal_normalized records whether transport[d][d] == involution[d]
    everywhere (the defining normalization; gauge moves may break it).
    """

    transport: dict
    traversal_normalized: bool


def ribbon_connection(graph, ribbon):
    """Connection induced by a ribbon structure.

    The traversed dart maps per the normalization, and rotating m steps at
    the source maps to rotating -m steps at the target; its geodesics are
    the ribbon faces.
    """
    transport = {}
    for d in range(graph.n_darts):
        f = graph.involution[d]
        if f == d:
            continue
        src = ribbon.cyclic_order[graph.vertex_of[d]]
        tgt = ribbon.cyclic_order[graph.vertex_of[f]]
        i0, j0 = src.index(d), tgt.index(f)
        transport[d] = {
            src[(i0 + t) % len(src)]: tgt[(j0 - t) % len(tgt)]
            for t in range(len(src))
        }
    return GraphConnection(transport, True)


def gauge_act_connection(graph, connection, gauge):
    """Discrete gauge action: transport conjugated by star bijections.

    gauge maps each vertex to a bijection of its star; the new transport of a
    dart is g(target) o transport o g(source)^{-1}.
    """
    inv_gauge = {v: {img: f for f, img in m.items()} for v, m in gauge.items()}
    transport = {}
    for d, t in connection.transport.items():
        s = graph.vertex_of[d]
        w = graph.vertex_of[graph.involution[d]]
        transport[d] = {f: gauge[w][t[inv_gauge[s][f]]] for f in t}
    normalized = all(
        transport[d][d] == graph.involution[d] for d in transport
    )
    return GraphConnection(transport, normalized)


@dataclass(frozen=True)
class Holonomy:
    mapping: tuple
    cycle_type: tuple

    @property
    def is_identity(self):
        return all(f == img for f, img in self.mapping)


def holonomy_permutation(graph, connection, darts):
    """Composite star bijection along a closed dart path, with cycle type."""
    v0 = graph.vertex_of[darts[0]]
    cur = {f: f for f in graph.star(v0)}
    pos = v0
    for d in darts:
        if graph.vertex_of[d] != pos:
            raise ValueError("darts do not form a path")
        t = connection.transport[d]
        cur = {f: t[img] for f, img in cur.items()}
        pos = graph.vertex_of[graph.involution[d]]
    if pos != v0:
        raise ValueError("path is not closed")
    lengths = []
    seen = set()
    for f0 in cur:
        if f0 in seen:
            continue
        f, n = f0, 0
        while f not in seen:
            seen.add(f)
            f = cur[f]
            n += 1
        lengths.append(n)
    return Holonomy(tuple(sorted(cur.items())), tuple(sorted(lengths)))


@dataclass(frozen=True)
class ClosedGeodesic:
    """One closed geodesic, reported once per orientation pair.

    states are the (arrival flag, departure dart) pairs along the loop; darts
    is the traversed dart sequence; monodromy_class the cycle type of the
    holonomy at the start vertex.
    """

    darts: tuple
    states: tuple
    monodromy_class: tuple
    flat: bool
    simple: bool


def geodesics(graph, connection):
    """All closed geodesics of a normalized connection.

    A state is a pair of distinct flags at a vertex (arrive, depart); the
    successor transports the arrival flag along the departure dart.  Orbits
    come in orientation-reversed pairs (swap the two flags), reported once.
    """
    if not connection.traversal_normalized:
        raise ValueError("geodesics require a normalized connection")
    states = []
    for v in range(graph.n_vertices):
        s = graph.star(v)
        states += [(x, y) for x in s for y in s if x != y]
    succ = {
        (x, y): (graph.involution[y], connection.transport[y][x])
        for (x, y) in states
    }
    orbits = []
    seen = set()
    for s0 in states:
        if s0 in seen:
            continue
        orb = []
        s = s0
        while True:
            orb.append(s)
            seen.add(s)
            s = succ[s]
            if s == s0:
                break
        orbits.append(orb)
    out = []
    taken = set()
    for orb in orbits:
        if frozenset((y, x) for (x, y) in orb) in taken:
            continue
        taken.add(frozenset(orb))
        darts = tuple(y for (_, y) in orb)
        hol = holonomy_permutation(graph, connection, darts)
        out.append(
            ClosedGeodesic(
                darts=darts,
                states=tuple(orb),
                monodromy_class=hol.cycle_type,
                flat=hol.is_identity,
                simple=len(set(darts)) == len(darts),
            )
        )
    return out


# -- large limit curve ----------------------------------------------------------


@dataclass(frozen=True)
class LLCurve:
    """Nodal-curve incidence data of a closed trivalent graph.

    One rational component per vertex (marked by its star), one node per
    edge; thickness is the minimal edge cut, which decides base-point
    freeness (>= 2) and very-ampleness (>= 3) of the canonical system.
    """

    components: tuple
    n_nodes: int
    canonical_multidegree: tuple
    arithmetic_genus: int
    thickness: int
    very_ample: bool
    base_point_free: bool


def ll_curve(graph):
    if graph.parabolic_darts():
        raise ValueError("large limit curves are built from closed graphs")
    v_count = graph.n_vertices
    edges = graph.edges()
    thickness = None
    for mask in range(1, 2 ** (v_count - 1)):
        side = {v for v in range(v_count) if (mask >> v) & 1}
        cut = sum(
            1
            for d0, d1 in edges
            if (graph.vertex_of[d0] in side) != (graph.vertex_of[d1] in side)
        )
        if thickness is None or cut < thickness:
            thickness = cut
    return LLCurve(
        components=tuple(len(graph.star(v)) for v in range(v_count)),
        n_nodes=len(edges),
        canonical_multidegree=(1,) * v_count,
        arithmetic_genus=genus(graph),
        thickness=thickness,
        very_ample=thickness >= 3,
        base_point_free=thickness >= 2,
    )


# -- serialization ----------------------------------------------------------------


def graph_to_json(graph, ribbon=None, canonical=False):
    """Serialize to the graph JSON format; loops appear as [v, v].

    With canonical=True the graph (and ribbon, if given) is relabeled to its
    canonical form first, so equal outputs mean isomorphic graphs.  Ribbon
    orders are stored as lists of edge indices; a loop's first occurrence
    refers to its lower dart.
    """
    if canonical:
        relabeled, dart_map = _canonical_relabel(graph)
        if ribbon is not None:
            ribbon = RibbonStructure(
                {
                    relabeled.vertex_of[dart_map[cyc[0]]]: tuple(
                        dart_map[d] for d in cyc
                    )
                    for cyc in ribbon.cyclic_order.values()
                }
            )
        graph = relabeled
    edges = graph.edges()
    data = {
        "vertices": graph.n_vertices,
        "edges": [
            [graph.vertex_of[d0], graph.vertex_of[d1]] for d0, d1 in edges
        ],
        "parabolic": [graph.vertex_of[d] for d in graph.parabolic_darts()],
    }
    if ribbon is not None:
        if graph.parabolic_darts():
            raise ValueError("ribbon serialization supports closed graphs only")
        eindex = {}
        for i, (d0, d1) in enumerate(edges):
            eindex[d0] = eindex[d1] = i
        data["ribbon"] = {
            str(v): [eindex[d] for d in ribbon.cyclic_order[v]]
            for v in sorted(ribbon.cyclic_order)
        }
    return json.dumps(data, sort_keys=True)


def graph_from_json(blob, with_ribbon=False):
    data = json.loads(blob)
    graph = TrivalentGraph.from_edges(
        data["vertices"],
        [tuple(e) for e in data["edges"]],
        data.get("parabolic", ()),
    )
    if not with_ribbon:
        return graph
    rib = {}
    for vs, order in data["ribbon"].items():
        v = int(vs)
        used = set()
        darts = []
        for i in order:
            cand = [
                d
                for d in (2 * i, 2 * i + 1)
                if graph.vertex_of[d] == v and d not in used
            ]
            darts.append(cand[0])
            used.add(cand[0])
        rib[v] = tuple(darts)
    return graph, RibbonStructure(rib)
