"""Lattice gauge fields on trivalent graphs.

A connection assigns one unimodular 2x2 matrix per unoriented edge,
stored at the edge id dart; the reversed orientation is the exact
adjugate inverse.  Dart d is read as the oriented edge leaving
vertex_of[d].  Spin networks contract one invariant tensor per vertex
against a kernel omega . rho(a) per edge; the pairing makes gauge
invariance an identity, not a tolerance.

Monte Carlo probes draw Haar samples from seeded per-chunk streams and
reduce in chunk order, so results do not depend on the thread count.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb, sqrt

import numpy as np

from .su2reps import AdmissibilityError, omega, wigner_3j

_CHUNK = 16384


def _as_matrix(m, what):
    arr = np.asarray(m, dtype=complex)
    if arr.shape != (2, 2):
        raise ValueError(f"{what} must be a 2x2 matrix")
    det = arr[0, 0] * arr[1, 1] - arr[0, 1] * arr[1, 0]
    if abs(det - 1) > 1e-10:
        raise ValueError(f"{what} must be unimodular, det = {det:.6g}")
    arr.setflags(write=False)
    return arr


def _inv2(m):
    # adjugate of a det-1 matrix, exact
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


def haar_su2(rng):
    """One Haar-random SU(2) element (normalized 4-Gaussian quaternion)."""
    q = rng.standard_normal(4)
    q /= math.sqrt(q @ q)
    a, b = q[0] + 1j * q[1], q[2] + 1j * q[3]
    return np.array([[a, b], [-b.conjugate(), a.conjugate()]])


def _haar_batch(rng, m):
    q = rng.standard_normal((m, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    a, b = q[:, 0] + 1j * q[:, 1], q[:, 2] + 1j * q[:, 3]
    out = np.empty((m, 2, 2), dtype=complex)
    out[:, 0, 0] = a
    out[:, 0, 1] = b
    out[:, 1, 0] = -b.conj()
    out[:, 1, 1] = a.conj()
    return out


@dataclass(frozen=True, eq=False)
class Connection:
    """Unimodular matrix per unoriented edge; orientation via `matrix`."""

    graph: object
    matrices: dict

    def __post_init__(self):
        eids = self.graph.edge_ids()
        if sorted(self.matrices) != eids:
            raise ValueError("connection must assign exactly the edge ids")
        mats = {e: _as_matrix(self.matrices[e], f"edge {e} matrix") for e in eids}
        object.__setattr__(self, "matrices", mats)

    def matrix(self, dart):
        """Holonomy of the oriented edge leaving vertex_of[dart]."""
        partner = self.graph.involution[dart]
        if partner == dart:
            raise ValueError(f"dart {dart} is a parabolic leg")
        e = min(dart, partner)
        a = self.matrices[e]
        return a if dart == e else _inv2(a)


def identity_connection(graph):
    eye = np.eye(2, dtype=complex)
    return Connection(graph, {e: eye for e in graph.edge_ids()})


def random_connection(graph, rng=0):
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    return Connection(graph, {e: haar_su2(rng) for e in graph.edge_ids()})


@dataclass(frozen=True, eq=False)
class GaugeTransform:
    """Group element per vertex, acting edgewise by a -> g(src) a g(tgt)^-1."""

    graph: object
    elements: dict

    def __post_init__(self):
        if sorted(self.elements) != list(range(self.graph.n_vertices)):
            raise ValueError("gauge transform must cover every vertex")
        els = {v: _as_matrix(m, f"vertex {v} element") for v, m in self.elements.items()}
        object.__setattr__(self, "elements", els)


def identity_transform(graph):
    eye = np.eye(2, dtype=complex)
    return GaugeTransform(graph, {v: eye for v in range(graph.n_vertices)})


def random_transform(graph, rng=0):
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    return GaugeTransform(graph, {v: haar_su2(rng) for v in range(graph.n_vertices)})


def gauge_act(conn, gt):
    if conn.graph != gt.graph:
        raise ValueError("connection and transform live on different graphs")
    graph = conn.graph
    out = {}
    for e in graph.edge_ids():
        src = gt.elements[graph.vertex_of[e]]
        tgt = gt.elements[graph.vertex_of[graph.involution[e]]]
        out[e] = src @ conn.matrices[e] @ _inv2(tgt)
    return Connection(graph, out)


def holonomy(conn, path):
    """Ordered product of edge matrices along a composable dart sequence."""
    graph = conn.graph
    cur = np.eye(2, dtype=complex)
    end = None
    for d in path:
        if not 0 <= d < graph.n_darts:
            raise ValueError(f"path uses unknown dart {d}")
        if end is not None and graph.vertex_of[d] != end:
            raise ValueError(f"path is not composable at dart {d}")
        cur = cur @ conn.matrix(d)
        end = graph.vertex_of[graph.involution[d]]
    return cur


def _angle(trace):
    half = min(1.0, max(-1.0, trace.real / 2.0))
    return math.acos(half) / math.pi


def conj_coordinates(conn):
    """Per edge, the conjugacy class angle arccos(tr/2)/pi in [0, 1]."""
    return {e: _angle(np.trace(m)) for e, m in conn.matrices.items()}


def goldman_function(images, loop):
    """Trace coordinate of a surface group representation along a loop word.

    `images` lists the 2g standard generator images in the order
    a1, b1, ..., ag, bg; the product of commutators must be the identity.
    `loop` is a word in signed generator indices (1-based).
    """
    mats = [_as_matrix(m, "representation error: generator image") for m in images]
    if not mats or len(mats) % 2:
        raise ValueError("representation error: need 2g generator images")
    rel = np.eye(2, dtype=complex)
    for i in range(0, len(mats), 2):
        a, b = mats[i], mats[i + 1]
        rel = rel @ a @ b @ _inv2(a) @ _inv2(b)
    if np.abs(rel - np.eye(2)).max() > 1e-10:
        raise ValueError("representation error: surface relator violated")
    if isinstance(loop, int):
        loop = [loop]
    cur = np.eye(2, dtype=complex)
    for w in loop:
        if not isinstance(w, int) or w == 0 or abs(w) > len(mats):
            raise ValueError(f"loop word letter {w} is out of range")
        m = mats[abs(w) - 1]
        cur = cur @ (m if w > 0 else _inv2(m))
    return _angle(np.trace(cur))


# -- spin networks ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SpinNetworkFunction:
    """Edge coloring by twice-spins plus one invariant tensor per vertex."""

    graph: object
    coloring: dict
    vertex_tensors: tuple


def spin_network(graph, coloring):
    if graph.parabolic_darts():
        raise ValueError("spin networks need closed graphs, no parabolic legs")
    if not graph.is_trivalent():
        raise ValueError("spin networks are defined on trivalent graphs")
    eids = graph.edge_ids()
    if sorted(coloring) != eids:
        raise ValueError("coloring must assign exactly the edge ids")
    for e, n in coloring.items():
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ValueError(f"edge {e} color must be a nonnegative twice-spin")
    tensors = []
    for v in range(graph.n_vertices):
        labels = tuple(coloring[graph.edge_of(d)] for d in graph.star(v))
        try:
            tensors.append(wigner_3j(*labels).tensor)
        except AdmissibilityError:
            raise AdmissibilityError(
                f"vertex {v} carries no invariant for labels {labels}"
            ) from None
    return SpinNetworkFunction(graph, dict(coloring), tuple(tensors))


def _rep_batch(n, mats):
    """Orthonormal-basis irrep matrices for a (N, 2, 2) batch."""
    a, b = mats[:, 0, 0], mats[:, 0, 1]
    c, d = mats[:, 1, 0], mats[:, 1, 1]
    out = np.zeros((len(mats), n + 1, n + 1), dtype=complex)
    for j in range(n + 1):
        left = [comb(n - j, s) * a ** (n - j - s) * c**s for s in range(n - j + 1)]
        right = [comb(j, t) * b ** (j - t) * d**t for t in range(j + 1)]
        for s, ls in enumerate(left):
            for t, rt in enumerate(right):
                out[:, s + t, j] += ls * rt
    for i in range(n + 1):
        for j in range(n + 1):
            out[:, i, j] *= sqrt(comb(n, j) / comb(n, i))
    return out


def _values_batch(snf, batch):
    """Evaluate the network on a (N, E, 2, 2) batch of connections."""
    graph = snf.graph
    bax = graph.n_darts  # einsum axis label for the batch dimension
    operands = []
    for v in range(graph.n_vertices):
        operands += [snf.vertex_tensors[v], list(graph.star(v))]
    for k, (d, p) in enumerate(graph.edges()):
        n = snf.coloring[d]
        rep = _rep_batch(n, batch[:, k])
        kernel = np.einsum("ij,bjk->bik", omega(n).astype(complex), rep)
        operands += [kernel, [bax, d, p]]
    return np.einsum(*operands, [bax], optimize=True)


def spin_network_value(snf, conn):
    """Contract the network tensors against the connection; gauge invariant."""
    if snf.graph != conn.graph:
        raise ValueError("network and connection live on different graphs")
    batch = np.stack([conn.matrices[e] for e in snf.graph.edge_ids()])[None]
    return complex(_values_batch(snf, batch)[0])


def abelian_embed(graph, phases):
    """Lift U(1) phases to the diagonal torus, one phase per edge."""
    eids = graph.edge_ids()
    if sorted(phases) != eids:
        raise ValueError("phases must be assigned per edge id")
    mats = {}
    for e in eids:
        z = np.exp(1j * phases[e])
        mats[e] = np.array([[z, 0.0], [0.0, z.conjugate()]])
    return Connection(graph, mats)


# -- Monte Carlo probes --------------------------------------------------------


def _threads(threads):
    if threads is None:
        threads = int(os.environ.get("VERLINDE_THREADS", "1") or 1)
    return max(1, threads)


def _chunks(samples, seed):
    n_chunks = (samples + _CHUNK - 1) // _CHUNK
    seqs = np.random.SeedSequence(seed).spawn(n_chunks)
    sizes = [_CHUNK] * (n_chunks - 1) + [samples - _CHUNK * (n_chunks - 1)]
    return list(zip(seqs, sizes))


def _run_chunks(job, chunks, threads):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(job, chunks))
    return [job(c) for c in chunks]


@dataclass(frozen=True)
class ProbeReport:
    """Max pointwise gap between two network functions over Haar samples."""

    max_difference: float
    at_sample: int
    separated: bool
    samples: int


def distinguishability_probe(snf1, snf2, sample_count=1000, seed=0, threads=None):
    """Probabilistic separation witness: max |f1 - f2| over random connections."""
    if snf1.graph != snf2.graph:
        raise ValueError("probe needs both networks on the same graph")
    n_edges = len(snf1.graph.edge_ids())

    def job(chunk):
        seq, m = chunk
        rng = np.random.default_rng(seq)
        batch = _haar_batch(rng, m * n_edges).reshape(m, n_edges, 2, 2)
        diff = np.abs(_values_batch(snf1, batch) - _values_batch(snf2, batch))
        k = int(np.argmax(diff))
        return float(diff[k]), k

    results = _run_chunks(job, _chunks(sample_count, seed), _threads(threads))
    best, where = 0.0, 0
    offset = 0
    for (val, k), (_, m) in zip(results, _chunks(sample_count, seed)):
        if val > best:
            best, where = val, offset + k
        offset += m
    return ProbeReport(best, where, best > 1e-6, sample_count)


@dataclass(frozen=True)
class PeterWeylReport:
    """Monte Carlo Gram matrix of network functions under Haar measure."""

    colorings: tuple
    gram: np.ndarray
    stderr: np.ndarray
    samples: int


def peter_weyl_probe(graph, colorings, samples=100_000, seed=0, threads=None):
    """Estimate the L2 inner products of network functions by Haar sampling.

    Distinct colorings are orthogonal (matrix coefficient orthogonality),
    so off-diagonal entries must vanish within a few standard errors.
    """
    snfs = [spin_network(graph, c) for c in colorings]
    n_edges = len(graph.edge_ids())
    n = len(snfs)

    def job(chunk):
        seq, m = chunk
        rng = np.random.default_rng(seq)
        batch = _haar_batch(rng, m * n_edges).reshape(m, n_edges, 2, 2)
        f = np.stack([_values_batch(s, batch) for s in snfs])
        p = (f * f.conj()).real
        return f @ f.conj().T, p @ p.T

    results = _run_chunks(job, _chunks(samples, seed), _threads(threads))
    gram_sum = np.zeros((n, n), dtype=complex)
    sq_sum = np.zeros((n, n))
    for g, s in results:
        gram_sum += g
        sq_sum += s
    gram = gram_sum / samples
    var = np.maximum(sq_sum / samples - np.abs(gram) ** 2, 0.0)
    stderr = np.sqrt(var / samples)
    return PeterWeylReport(tuple(dict(c) for c in colorings), gram, stderr, samples)


# -- JSON ----------------------------------------------------------------------


def connection_to_json(conn):
    edges = {
        str(e): [[[z.real, z.imag] for z in row] for row in np.asarray(m)]
        for e, m in conn.matrices.items()
    }
    payload = {
        "involution": list(conn.graph.involution),
        "vertex_of": list(conn.graph.vertex_of),
        "edges": edges,
    }
    return json.dumps(payload, sort_keys=True)


def connection_from_json(graph, blob):
    data = json.loads(blob)
    if tuple(data["involution"]) != graph.involution or tuple(
        data["vertex_of"]
    ) != graph.vertex_of:
        raise ValueError("serialized connection belongs to a different graph")
    mats = {
        int(e): np.array([[complex(re, im) for re, im in row] for row in m])
        for e, m in data["edges"].items()
    }
    return Connection(graph, mats)


def spin_network_to_json(snf):
    return json.dumps(
        {"coloring": {str(e): n for e, n in snf.coloring.items()}}, sort_keys=True
    )


def spin_network_from_json(graph, blob):
    data = json.loads(blob)
    return spin_network(graph, {int(e): int(n) for e, n in data["coloring"].items()})
