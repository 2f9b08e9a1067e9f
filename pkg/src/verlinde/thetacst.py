"""Theta series with characteristics and the coherent state transforms.

The abelian half works with Fourier series on R^g/Z^g relative to a period
matrix Omega: the level-k theta series with characteristic, coset delta
distributions, and the time-t transform that damps the coefficient at n by
exp(t i pi n.Omega.n), turning distributions into holomorphic sums.

The nonabelian half replaces the torus by SU(2)^g up to simultaneous
conjugation.  Functions are finite sums of matrix blocks traced against
product irreps, the Omega-weighted invariant Laplacian acts on each block by
an explicit matrix, and a colored trivalent graph yields a theta series by
flowing its holonomy function for time 1/k.
"""

import cmath
import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .gauge import spin_network
from .su2reps import AdmissibilityError, casimir, omega, rep_matrix, wigner_3j

_MAX_RADIUS = 60
_GROWTH_CLASSES = ("finite", "polynomial", "exponential")


# -- period matrices and characteristics ---------------------------------------


@dataclass(frozen=True, eq=False)
class PeriodMatrix:
    """Complex symmetric matrix with positive definite imaginary part."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise ValueError("period matrix must be square and nonempty")
        if np.abs(m - m.T).max() > 1e-12:
            raise ValueError("period matrix must be symmetric")
        try:
            np.linalg.cholesky(m.imag)
        except np.linalg.LinAlgError:
            raise ValueError("imaginary part must be positive definite") from None
        object.__setattr__(self, "matrix", m)

    @property
    def genus(self):
        return self.matrix.shape[0]


def _period(om):
    return om if isinstance(om, PeriodMatrix) else PeriodMatrix(om)


@dataclass(frozen=True)
class ThetaCharacteristic:
    """Residue vector in (Z/kZ)^g at level k, entries kept in [0, k)."""

    level: int
    vector: tuple

    def __post_init__(self):
        if not isinstance(self.level, int) or self.level < 1:
            raise ValueError("level must be a positive integer")
        vec = tuple(int(v) for v in self.vector)
        if not vec:
            raise ValueError("characteristic needs at least one entry")
        if any(v < 0 or v >= self.level for v in vec):
            raise ValueError("characteristic entries must lie in [0, level)")
        object.__setattr__(self, "vector", vec)

    @property
    def genus(self):
        return len(self.vector)


# -- theta series ---------------------------------------------------------------


def _sup_shell(g, s):
    """Lattice points of sup norm exactly s."""
    if s == 0:
        yield (0,) * g
        return
    for pt in itertools.product(range(-s, s + 1), repeat=g):
        if max(abs(c) for c in pt) == s:
            yield pt


def _label_shell(g, s):
    """Nonnegative label vectors of sup norm exactly s."""
    for pt in itertools.product(range(s + 1), repeat=g):
        if max(pt) == s:
            yield pt


def _theta_scan(char, om, z, tol, radius):
    pm = _period(om)
    if pm.genus != char.genus:
        raise ValueError("characteristic and period matrix genus differ")
    zv = np.asarray(z, dtype=complex).reshape(-1)
    if zv.shape != (pm.genus,):
        raise ValueError("argument vector has the wrong length")
    k = char.level
    l = np.asarray(char.vector, dtype=float)
    # the summand peaks near n = -(Im Omega)^{-1} Im z; only start testing
    # the tail once the shells have cleared the peak
    drift = np.linalg.solve(pm.matrix.imag, zv.imag)
    s_min = int(np.ceil(np.abs(drift).max())) + 1
    total = 0j
    small = 0
    cap = _MAX_RADIUS if radius is None else radius
    for s in range(cap + 1):
        mag = 0.0
        for n in _sup_shell(pm.genus, s):
            m = l + k * np.asarray(n, dtype=float)
            quad = m @ pm.matrix @ m / k
            term = cmath.exp(1j * math.pi * quad + 2j * math.pi * (m @ zv))
            total += term
            mag += abs(term)
        if radius is None and s >= s_min:
            small = small + 1 if mag < tol / 20 else 0
            if small >= 2:
                return total, s
    if radius is None:
        raise ValueError(
            f"theta series not converged within lattice radius {_MAX_RADIUS}"
        )
    return total, radius


def theta_char(char, om, z, tol=1e-12, radius=None):
    """Level-k theta series sum over l + k Z^g, truncated below tol.

    Each summand is exp(i pi m.(Omega/k).m + 2 pi i m.z) with m = l + k n.
    The lattice radius adapts to tol unless `radius` pins it.
    """
    value, _ = _theta_scan(char, om, z, tol, radius)
    return value


def truncation_radius(char, om, z, tol=1e-12):
    """Sup-norm radius at which the adaptive theta sum stops."""
    _, r = _theta_scan(char, om, z, tol, None)
    return r


# -- Fourier series on the torus --------------------------------------------------


@dataclass(frozen=True, eq=False)
class FourierSeries:
    """Fourier coefficients on R^g/Z^g.

    Finite series carry an explicit coefficient dict.  Coset distributions
    (unit coefficients on l + k Z^g) carry `coset=(l, k)` with coefficients
    None; `growth` records the admissible coefficient growth class.
    """

    genus: int
    coefficients: dict | None
    growth: str = "finite"
    coset: tuple | None = None

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be at least 1")
        if self.growth not in _GROWTH_CLASSES:
            raise ValueError(f"growth must be one of {_GROWTH_CLASSES}")
        if (self.coefficients is None) == (self.coset is None):
            raise ValueError("exactly one of coefficients and coset is required")
        if self.coefficients is not None:
            coeffs = {}
            for n, a in self.coefficients.items():
                key = tuple(int(v) for v in n)
                if len(key) != self.genus:
                    raise ValueError("coefficient index has the wrong length")
                coeffs[key] = complex(a)
            object.__setattr__(self, "coefficients", coeffs)
        else:
            l, k = self.coset
            l = tuple(int(v) for v in l)
            if len(l) != self.genus or k < 1 or any(v < 0 or v >= k for v in l):
                raise ValueError("coset needs residues in [0, k)")
            object.__setattr__(self, "coset", (l, k))

    def coefficient(self, n):
        n = tuple(int(v) for v in n)
        if len(n) != self.genus:
            raise ValueError("index has the wrong length")
        if self.coset is not None:
            l, k = self.coset
            return 1 if all((a - b) % k == 0 for a, b in zip(n, l)) else 0
        return self.coefficients.get(n, 0)


def delta_distribution(l, k):
    """Unit Fourier coefficients on the coset l + k Z^g."""
    return FourierSeries(len(tuple(l)), None, growth="polynomial", coset=(tuple(l), k))


def evaluate_series(series, z):
    """Pointwise sum of a finite series, coefficients times exp(2 pi i n.z)."""
    if series.coefficients is None:
        raise ValueError("only finite series evaluate pointwise")
    zv = np.asarray(z, dtype=complex).reshape(-1)
    if zv.shape != (series.genus,):
        raise ValueError("argument vector has the wrong length")
    total = 0j
    for n, a in series.coefficients.items():
        total += a * cmath.exp(2j * math.pi * (np.asarray(n, float) @ zv))
    return total


def pair_series(a, b):
    """Pair a coset distribution with a finite series coefficientwise."""
    if a.coset is None:
        a, b = b, a
    if a.coset is None or b.coefficients is None:
        raise ValueError("pairing needs one distribution and one finite series")
    if a.genus != b.genus:
        raise ValueError("series genus mismatch")
    return sum(val for n, val in b.coefficients.items() if a.coefficient(n))


def abelian_cst(series, om, t):
    """Time-t transform: the coefficient at n picks up exp(t i pi n.Omega.n).

    Coset distributions come out as finite series, materialized out to where
    the damped coefficients stop mattering; coefficient growth beyond
    polynomial leaves the domain of the transform.
    """
    pm = _period(om)
    if pm.genus != series.genus:
        raise ValueError("series and period matrix genus differ")
    if series.growth == "exponential":
        raise ValueError("transform needs at most polynomial coefficient growth")
    if t < 0:
        raise ValueError("transform time must be nonnegative")
    if t == 0:
        return series
    if series.coefficients is not None:
        damped = {
            n: a * cmath.exp(1j * math.pi * t * (np.asarray(n, float) @ pm.matrix @ n))
            for n, a in series.coefficients.items()
        }
        return FourierSeries(series.genus, damped)
    l, k = series.coset
    lv = np.asarray(l, dtype=float)
    im = pm.matrix.imag
    coeffs = {}
    small = 0
    for s in range(_MAX_RADIUS + 1):
        largest = 0.0
        for n in _sup_shell(series.genus, s):
            m = lv + k * np.asarray(n, dtype=float)
            coeffs[tuple(int(v) for v in m)] = cmath.exp(
                1j * math.pi * t * (m @ pm.matrix @ m)
            )
            # decay against a unit strip of imaginary displacement, so the
            # result still evaluates accurately at moderately complex points
            weight = math.exp(
                -math.pi * t * (m @ im @ m) + 2 * math.pi * np.abs(m).sum()
            )
            largest = max(largest, weight)
        small = small + 1 if largest < 1e-15 else 0
        if small >= 2:
            return FourierSeries(series.genus, coeffs)
    raise ValueError(
        f"damped coset series not converged within lattice radius {_MAX_RADIUS}"
    )


# -- the invariant Laplacian on block series ---------------------------------------


def _su2_generators(n):
    """Anti-hermitian su(2) basis on the (n+1)-dimensional irrep.

    Built from the ladder operators in the orthonormal basis; the basis is
    orthogonal for the Killing pairing and sum_mu X_mu^2 = -casimir(n).
    """
    dim = n + 1
    e = np.zeros((dim, dim))
    f = np.zeros((dim, dim))
    h = np.zeros((dim, dim))
    for m in range(dim):
        h[m, m] = n - 2 * m
        if m >= 1:
            e[m - 1, m] = math.sqrt(m * (n - m + 1))
        if m + 1 < dim:
            f[m + 1, m] = math.sqrt((n - m) * (m + 1))
    return (-0.5j * (e + f), -0.5 * (e - f) + 0j, -0.5j * h)


def _lifted_generators(labels):
    dims = [n + 1 for n in labels]
    lifted = []
    for a, n in enumerate(labels):
        row = []
        for x in _su2_generators(n):
            m = np.eye(1, dtype=complex)
            for i, d in enumerate(dims):
                m = np.kron(m, x if i == a else np.eye(d))
            row.append(m)
        lifted.append(row)
    return lifted


def su2_laplacian_block(labels, om):
    """Matrix of the Omega-weighted invariant Laplacian on one block.

    Vector fields act on a block by left multiplication of the lifted
    generators, so -(i/2 pi) sum_ab Omega_ab sum_mu X_mu^(a) X_mu^(b) is an
    explicit matrix; a diagonal Omega gives the scalar -laplacian_eigenvalue.
    """
    pm = _period(om)
    labels = tuple(int(n) for n in labels)
    if len(labels) != pm.genus:
        raise ValueError("labels and period matrix genus differ")
    if any(n < 0 for n in labels):
        raise ValueError("labels must be nonnegative twice-spins")
    total = int(np.prod([n + 1 for n in labels]))
    lifted = _lifted_generators(labels)
    out = np.zeros((total, total), dtype=complex)
    for a in range(pm.genus):
        for b in range(pm.genus):
            w = -1j * pm.matrix[a, b] / (2 * math.pi)
            if w == 0:
                continue
            for mu in range(3):
                out += w * (lifted[a][mu] @ lifted[b][mu])
    return out


def laplacian_eigenvalue(labels, om):
    """Heat eigenvalue of a block for diagonal Omega.

    Equals sum_a (-i Omega_aa / 2 pi) casimir(n_a); off-diagonal period
    matrices mix the block and have no single eigenvalue.
    """
    pm = _period(om)
    labels = tuple(int(n) for n in labels)
    if len(labels) != pm.genus:
        raise ValueError("labels and period matrix genus differ")
    off = pm.matrix - np.diag(np.diag(pm.matrix))
    if np.abs(off).max() > 1e-14:
        raise ValueError("eigenvalue only defined for diagonal period matrices")
    return sum(
        -1j * pm.matrix[a, a] / (2 * math.pi) * float(casimir(n))
        for a, n in enumerate(labels)
    )


# -- block series on SU(2)^g --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PWSeries:
    """Finitely many matrix blocks indexed by product-irrep labels."""

    genus: int
    blocks: dict

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be at least 1")
        blocks = {}
        for labels, b in self.blocks.items():
            key = tuple(int(n) for n in labels)
            if len(key) != self.genus or any(n < 0 for n in key):
                raise ValueError("block labels must be nonnegative twice-spins")
            m = np.asarray(b, dtype=complex)
            dim = int(np.prod([n + 1 for n in key]))
            if m.shape != (dim, dim):
                raise ValueError(
                    f"block {key} must be {dim} x {dim}, got {m.shape}"
                )
            blocks[key] = m
        object.__setattr__(self, "blocks", blocks)


@dataclass(frozen=True, eq=False)
class SchottkyPoint:
    """One unimodular matrix per handle, taken up to overall conjugation."""

    matrices: tuple

    def __post_init__(self):
        mats = []
        for m in self.matrices:
            a = np.asarray(m, dtype=complex)
            if a.shape != (2, 2):
                raise ValueError("handle matrices must be 2 x 2")
            det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
            if abs(det - 1) > 1e-9:
                raise ValueError("handle matrices must have determinant one")
            mats.append(a)
        if not mats:
            raise ValueError("need at least one handle matrix")
        object.__setattr__(self, "matrices", tuple(mats))


def _point_matrices(point, genus):
    mats = point.matrices if isinstance(point, SchottkyPoint) else tuple(
        np.asarray(m, dtype=complex) for m in point
    )
    if len(mats) != genus:
        raise ValueError("point has the wrong number of handle matrices")
    return mats


def pw_evaluate(series, point):
    """Sum over blocks of tr(rho_labels(point) . block)."""
    mats = _point_matrices(point, series.genus)
    total = 0j
    for labels, block in series.blocks.items():
        rep = np.eye(1, dtype=complex)
        for n, w in zip(labels, mats):
            rep = np.kron(rep, rep_matrix(n, w))
        total += np.trace(rep @ block)
    return complex(total)


def nonabelian_cst(series, om, t):
    """Flow a block series for time t: each block is hit by exp(t/2 Laplacian)."""
    pm = _period(om)
    if pm.genus != series.genus:
        raise ValueError("series and period matrix genus differ")
    if t < 0:
        raise ValueError("transform time must be nonnegative")
    if t == 0:
        return series
    blocks = {
        labels: expm(su2_laplacian_block(labels, pm) * (t / 2)) @ b
        for labels, b in series.blocks.items()
    }
    return PWSeries(series.genus, blocks)


# -- graph functions as single blocks ------------------------------------------------


def _spanning_tree(graph):
    """Breadth-first tree from vertex 0; returns (tree edges, chord edges)."""
    seen = {0}
    tree = set()
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for d in graph.star(v):
                p = graph.involution[d]
                if p == d:
                    continue
                u = graph.vertex_of[p]
                if u not in seen:
                    seen.add(u)
                    tree.add(graph.edge_of(d))
                    nxt.append(u)
        frontier = nxt
    if len(seen) != graph.n_vertices:
        raise ValueError("graph must be connected")
    chords = tuple(e for e in graph.edge_ids() if e not in tree)
    return tree, chords


def chord_edges(graph):
    """Edges outside a breadth-first spanning tree, in edge id order."""
    return _spanning_tree(graph)[1]


def spin_network_blocks(graph, coloring):
    """Reduce a colored graph function to one product-irrep block.

    Collapsing a spanning tree leaves one SU(2) variable per chord, and the
    holonomy function of those variables is tr(rho_labels(w) . block) with
    labels the chord colors.  Returns (labels, block).
    """
    snf = spin_network(graph, coloring)
    _, chords = _spanning_tree(graph)
    labels = tuple(int(coloring[e]) for e in chords)
    aux = {e: graph.n_darts + i for i, e in enumerate(chords)}
    operands = []
    for v in range(graph.n_vertices):
        operands += [snf.vertex_tensors[v], list(graph.star(v))]
    for d, p in graph.edges():
        kernel = omega(coloring[d]).astype(complex)
        # tree edges carry the identity holonomy; on a chord the irrep of the
        # free variable is peeled off, leaving its row index open
        operands += [kernel, [d, aux[d]] if d in aux else [d, p]]
    out = [graph.involution[e] for e in chords] + [aux[e] for e in chords]
    tensor = np.einsum(*operands, out, optimize=True)
    dim = int(np.prod([n + 1 for n in labels]))
    return labels, tensor.reshape(dim, dim)


def _check_level(graph, coloring, k):
    for v in range(graph.n_vertices):
        colors = [coloring[graph.edge_of(d)] for d in graph.star(v)]
        if sum(colors) > 2 * k:
            raise AdmissibilityError(
                f"vertex {v} colors exceed level {k}: {colors}"
            )


def _clebsch_embedding(n, m, p):
    """Isometry V_p -> V_n (x) V_m intertwining the product action."""
    t = wigner_3j(n, m, p).tensor
    return math.sqrt(p + 1) * np.einsum("abc,cd->abd", t, omega(p))


def nonabelian_theta(graph, coloring, k, om, point, cutoff=8,
                     variant="pairing", weighting="peterweyl", tol=1e-9):
    """Level-k theta value of a colored graph at a conjugation orbit.

    The graph function reduces to a single block via `spin_network_blocks`.
    The default "pairing" variant flows that block for time 1/k and traces it
    against the point.  The "product" variant instead multiplies the graph
    function by the level delta series (blocks up to `cutoff` per handle,
    weighted by dimension for "peterweyl" or by one for "plain"), flows the
    expansion, and sums the traces; the tail past `cutoff` must stay below
    tol or the sum aborts.
    """
    pm = _period(om)
    genus = len(graph.edge_ids()) - graph.n_vertices + 1
    if genus != pm.genus:
        raise ValueError("graph genus and period matrix genus differ")
    mats = _point_matrices(point, genus)
    if not isinstance(k, int) or k < 1:
        raise ValueError("level must be a positive integer")
    labels, block = spin_network_blocks(graph, coloring)
    _check_level(graph, coloring, k)
    diagonal = np.abs(pm.matrix - np.diag(np.diag(pm.matrix))).max() <= 1e-14

    def flow_trace(plabels, b):
        if diagonal:
            damped = cmath.exp(-laplacian_eigenvalue(plabels, pm) / (2 * k)) * b
        else:
            damped = expm(su2_laplacian_block(plabels, pm) / (2 * k)) @ b
        return pw_evaluate(PWSeries(genus, {plabels: damped}), mats)

    if variant == "pairing":
        return flow_trace(labels, block)
    if variant != "product":
        raise ValueError("variant must be 'pairing' or 'product'")
    if weighting not in ("peterweyl", "plain"):
        raise ValueError("weighting must be 'peterweyl' or 'plain'")

    dims = [n + 1 for n in labels]
    btensor = block.reshape(dims + dims)
    total = 0j
    shell_mag = 0.0
    for s in range(cutoff + 1):
        shell_mag = 0.0
        for mvec in _label_shell(genus, s):
            weight = np.prod([v + 1 for v in mvec]) if weighting == "peterweyl" else 1.0
            embeddings = [
                [_clebsch_embedding(n, m, p) for p in range(abs(n - m), n + m + 1, 2)]
                for n, m in zip(labels, mvec)
            ]
            for choice in itertools.product(*embeddings):
                plabels = tuple(e.shape[2] - 1 for e in choice)
                operands = [btensor, list(range(2 * genus))]
                out = []
                for i, e in enumerate(choice):
                    b_ax = 2 * genus + i
                    c_ax, c2_ax = 3 * genus + i, 4 * genus + i
                    operands += [e.conj(), [i, b_ax, c_ax]]
                    operands += [e, [genus + i, b_ax, c2_ax]]
                    out.append(c_ax)
                out += [4 * genus + i for i in range(genus)]
                bp = np.einsum(*operands, out, optimize=True)
                d = int(np.prod([p + 1 for p in plabels]))
                term = weight * flow_trace(plabels, bp.reshape(d, d))
                total += term
                shell_mag += abs(term)
    if shell_mag > tol:
        raise ValueError(
            f"product expansion tail {shell_mag:.3e} above {tol:.1e}; "
            f"cutoff {cutoff} is too small"
        )
    return total
