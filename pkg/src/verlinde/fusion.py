"""SU(2) level-k fusion ring and Verlinde numbers.

Labels are twice-spin integers 0..k.  Fusion is the Clebsch-Gordan
decomposition truncated by the level; equivalently the quotient of the
representation ring by the ideal generated by the label k+1, which
ideal_check verifies symbolically.  Verlinde numbers come out of three
routes (character sums, the trigonometric closed form, and weight
enumeration) and every call cross-asserts the exact fusion recursion.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .weights import InvariantViolation


def _check_level(k):
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ValueError("level must be a positive integer")


def clebsch_gordan(n1, n2):
    """Labels in V_{n1} (x) V_{n2}, descending from n1+n2 to |n1-n2|."""
    if n1 < 0 or n2 < 0:
        raise ValueError("labels must be nonnegative")
    return list(range(n1 + n2, abs(n1 - n2) - 1, -2))


def fuse(k, n1, n2):
    """Level-k fusion product, descending label list."""
    _check_level(k)
    if not (0 <= n1 <= k and 0 <= n2 <= k):
        raise ValueError(f"labels must lie in 0..{k}")
    top = n1 + n2 if n1 + n2 <= k else 2 * k - n1 - n2
    return list(range(top, abs(n1 - n2) - 1, -2))


@lru_cache(maxsize=None)
def _structure_table(k):
    table = {}
    for a, b in itertools.combinations_with_replacement(range(k + 1), 2):
        for c in fuse(k, a, b):
            table[a, b, c] = 1
            table[b, a, c] = 1
    return table


@dataclass(frozen=True)
class FusionRing:
    """Structure constants N^c_ab of the level-k fusion ring."""

    level: int

    def __post_init__(self):
        _check_level(self.level)

    @property
    def labels(self):
        return tuple(range(self.level + 1))

    def N(self, a, b, c):
        if not all(0 <= x <= self.level for x in (a, b, c)):
            raise ValueError(f"labels must lie in 0..{self.level}")
        return _structure_table(self.level).get((a, b, c), 0)

    def fuse(self, a, b):
        return fuse(self.level, a, b)

    def multiplication_rows(self):
        """Rows (a, b, c1 c2 ...) of the multiplication table."""
        rows = []
        for a, b in itertools.combinations_with_replacement(self.labels, 2):
            rows.append((a, b, " ".join(str(c) for c in fuse(self.level, a, b))))
        return rows


# -- rank functionals ---------------------------------------------------------


@lru_cache(maxsize=None)
def _rk_cached(g, labels, k):
    if g == 0:
        # fold the fusion product and read off the unit multiplicity
        acc = {0: 1}
        for n in labels:
            nxt = {}
            for m, mult in acc.items():
                for c in fuse(k, m, n):
                    nxt[c] = nxt.get(c, 0) + mult
            acc = nxt
        return acc.get(0, 0)
    return sum(_rk_cached(g - 1, tuple(sorted(labels + (n, n))), k) for n in range(k + 1))


def rk(g, N, k):
    """Rank of the conformal block space: genus g, boundary labels N."""
    _check_level(k)
    if isinstance(g, bool) or not isinstance(g, int) or g < 0:
        raise ValueError("genus must be a nonnegative integer")
    labels = tuple(sorted(N))
    if any(not 0 <= n <= k for n in labels):
        raise ValueError(f"labels must lie in 0..{k}")
    return _rk_cached(g, labels, k)


# -- characters ---------------------------------------------------------------


def character(k, n, m):
    """chi_n(m) = sin((m+1) n pi/(k+2)) / sin(n pi/(k+2))."""
    _check_level(k)
    if not 1 <= n <= k + 1:
        raise ValueError(f"character index must lie in 1..{k + 1}")
    if not 0 <= m <= k:
        raise ValueError(f"labels must lie in 0..{k}")
    theta = n * math.pi / (k + 2)
    return math.sin((m + 1) * theta) / math.sin(theta)


def chi_c(k, n):
    """Casimir character value (k+2) / (2 sin^2(n pi/(k+2)))."""
    _check_level(k)
    if not 1 <= n <= k + 1:
        raise ValueError(f"character index must lie in 1..{k + 1}")
    return (k + 2) / (2.0 * math.sin(n * math.pi / (k + 2)) ** 2)


# -- Verlinde numbers ---------------------------------------------------------


def verlinde(g, k, via="characters"):
    """Verlinde number rk_g(empty) computed along the requested route.

    Every route is cross-asserted against the exact integer recursion;
    g = 1 returns k+1 by the same recursion (the closed formulas start
    at genus 2).
    """
    _check_level(k)
    if isinstance(g, bool) or not isinstance(g, int) or g < 1:
        raise ValueError("genus must be an integer >= 1")
    exact = rk(g, (), k)
    if via == "characters":
        val = math.fsum(
            math.fsum(character(k, n, m) ** 2 for m in range(k + 1)) ** (g - 1)
            for n in range(1, k + 2)
        )
    elif via == "closed":
        val = math.fsum(chi_c(k, n) ** (g - 1) for n in range(1, k + 2))
    elif via == "weights":
        from .graphs import multi_theta
        from .weights import enumerate_weights

        if g < 2:
            raise ValueError("the weights route needs genus >= 2")
        val = float(len(enumerate_weights(multi_theta(g), k)))
    else:
        raise ValueError("via must be one of characters, closed, weights")
    if abs(val - round(val)) > 1e-6 or round(val) != exact:
        raise InvariantViolation(
            f"verlinde({g},{k}) via {via}: {val} vs recursion {exact}",
            witness=(g, k, via),
        )
    return exact


# -- ideal reduction ----------------------------------------------------------


@dataclass(frozen=True)
class IdealReport:
    """Outcome of reducing all products modulo the ideal (V_{k+1})."""

    level: int
    pairs: int
    all_match: bool
    mismatches: tuple


def _poly_add(p, q):
    out = [0] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_mul_x(p):
    return [0] + list(p)


def _char_polys(top):
    polys = [[1], [0, 1]]
    while len(polys) <= top:
        nxt = _poly_add(_poly_mul_x(polys[-1]), [-c for c in polys[-2]])
        polys.append(nxt)
    return polys


def _poly_mod(p, q):
    # remainder of p by monic q over the integers
    p = list(p)
    dq = len(q) - 1
    while len(p) - 1 >= dq and any(p):
        lead = p[-1]
        if lead == 0:
            p.pop()
            continue
        shift = len(p) - 1 - dq
        for i, c in enumerate(q):
            p[shift + i] -= lead * c
        while len(p) > 1 and p[-1] == 0:
            p.pop()
    return p


def _to_basis(p, polys, k):
    # expand p in the basis p_0..p_k; returns None if it does not fit
    p = list(p)
    coeffs = {}
    for d in range(len(p) - 1, -1, -1):
        if d >= len(p):
            continue
        c = p[d]
        if c == 0:
            continue
        if d > k:
            return None
        coeffs[d] = c
        for i, pc in enumerate(polys[d]):
            p[i] -= c * pc
    if any(p):
        return None
    return coeffs


def ideal_check(k):
    """Verify fuse == Clebsch-Gordan reduced modulo (V_{k+1}).

    Products p_a * p_b are expanded symbolically, reduced by polynomial
    division with the monic generator p_{k+1}, and re-expanded in the
    basis p_0..p_k; the multiset of basis labels must equal fuse(a, b).
    """
    _check_level(k)
    if k > 12:
        raise ValueError("symbolic reduction supported for levels up to 12")
    polys = _char_polys(2 * k + 2)
    gen = polys[k + 1]
    mismatches = []
    pairs = 0
    for a in range(k + 1):
        for b in range(a, k + 1):
            pairs += 1
            product = [0]
            for c in clebsch_gordan(a, b):
                product = _poly_add(product, polys[c])
            # sanity: the CG sum really is the polynomial product
            direct = [0] * (a + b + 1)
            for i, pa in enumerate(polys[a]):
                for j, pb in enumerate(polys[b]):
                    direct[i + j] += pa * pb
            while len(direct) > 1 and direct[-1] == 0:
                direct.pop()
            if product != direct:
                mismatches.append((a, b, "clebsch-gordan sum"))
                continue
            rem = _poly_mod(product, gen)
            coeffs = _to_basis(rem, polys, k)
            reduced = []
            if coeffs is not None and all(c >= 0 for c in coeffs.values()):
                for d, c in sorted(coeffs.items(), reverse=True):
                    reduced.extend([d] * c)
            else:
                reduced = None
            if reduced != sorted(fuse(k, a, b), reverse=True):
                mismatches.append((a, b, "ideal reduction"))
    return IdealReport(k, pairs, not mismatches, tuple(mismatches))
