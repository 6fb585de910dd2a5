"""Complexes of connected uni-≥3-valent graphs and their homology.

Every graph of the slice (s, t) with at least two internal vertices has an
edge joining two distinct internal vertices; contracting it gives a graph
of the same slice with one internal vertex fewer.  So the whole slice is
reached by repeatedly expanding vertices, starting from the graphs with a
single internal vertex (s legs and t - s + 1 loops) and, for (2, 1), the
bare segment.  Expansion is also the differential, so enumeration and the
differential are computed together.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from . import cache
from .exactq import SparseMatrix, rank
from .graphs import (
    CanonicalData, OrientedGraph, SignedCanonical, canonical_data, decode, encode, evaluate,
)

Key = Tuple[int, int, Tuple[Tuple[int, int], ...]]


def graph_key(g: OrientedGraph) -> Key:
    return (g.n_external, g.n_internal, g.edges)


def expansions(g: OrientedGraph) -> List[OrientedGraph]:
    """All vertex expansions of ``g`` with the orientation they inherit.

    The new vertex and new edge come first in the orientation order and the
    new edge points from the old vertex to the new one.
    """
    nv = g.n_vertices
    ne = len(g.edges)
    w = nv
    old_order = g.order if g.order is not None else tuple(range(nv + ne))
    shifted = tuple(x if x < nv else x + 1 for x in old_order)
    order = (w, nv + 1 + ne) + shifted
    out = []
    for v in range(g.n_external, nv):
        half = [(i, end) for i, e in enumerate(g.edges) for end in (0, 1) if e[end] == v]
        ell = len(half)
        if ell < 4:
            continue
        first, rest = half[0], half[1:]
        for size in range(2, ell - 1):
            # choose the half-edges that move to the new vertex; the first
            # half-edge always stays, so each unordered split appears once
            for moved in combinations(rest, size):
                edges = [list(e) for e in g.edges]
                for i, end in moved:
                    edges[i][end] = w
                edges.append([v, w])
                out.append(OrientedGraph(g.n_external, g.n_internal + 1,
                                         tuple(tuple(e) for e in edges), order))
    return out


def _seed_graphs(s: int, t: int) -> List[OrientedGraph]:
    seeds = []
    if (s, t) == (2, 1):
        seeds.append(OrientedGraph(2, 0, ((0, 1),)))
    loops = t - s + 1
    if loops >= 0 and s + 2 * loops >= 3:
        edges = tuple((i, s) for i in range(s)) + ((s, s),) * loops
        seeds.append(OrientedGraph(s, 1, edges))
    return seeds


@dataclass
class UnsignedSlice:
    """Parity-independent data of the slice (s, t).

    ``levels[I]`` lists the canonical graphs with ``I`` internal vertices;
    ``kills[I][j]`` holds their vanishing masks; ``terms[I][j]`` lists the
    expansion terms ``(target index at level I+1, sign mask)``.
    """

    s: int
    t: int
    levels: Dict[int, List[OrientedGraph]] = field(default_factory=dict)
    kills: Dict[int, List[Tuple[int, ...]]] = field(default_factory=dict)
    terms: Dict[int, List[List[Tuple[int, int]]]] = field(default_factory=dict)


@lru_cache(maxsize=None)
def unsigned_slice(s: int, t: int) -> UnsignedSlice:
    sl = UnsignedSlice(s, t)
    if s < 1 or t < 1 or s > t + 1:
        return sl
    current: Dict[Key, int] = {}
    for seed in _seed_graphs(s, t):
        data = canonical_data(seed)
        level = data.graph.n_internal
        sl.levels.setdefault(level, [])
        sl.kills.setdefault(level, [])
        sl.levels[level].append(data.graph)
        sl.kills[level].append(data.kill_masks)
    if not sl.levels:
        return sl
    level = min(sl.levels)
    while level in sl.levels:
        nxt_index: Dict[Key, int] = {}
        nxt_graphs: List[OrientedGraph] = []
        nxt_kills: List[Tuple[int, ...]] = []
        # the seed with one internal vertex may already sit at the next level
        for g, k in zip(sl.levels.get(level + 1, []), sl.kills.get(level + 1, [])):
            nxt_index[graph_key(g)] = len(nxt_graphs)
            nxt_graphs.append(g)
            nxt_kills.append(k)
        level_terms = []
        for g in sl.levels[level]:
            col = []
            for h in expansions(g):
                data = canonical_data(h)
                key = graph_key(data.graph)
                idx = nxt_index.get(key)
                if idx is None:
                    idx = len(nxt_graphs)
                    nxt_index[key] = idx
                    nxt_graphs.append(data.graph)
                    nxt_kills.append(data.kill_masks)
                col.append((idx, data.mask))
            level_terms.append(col)
        sl.terms[level] = level_terms
        if nxt_graphs:
            sl.levels[level + 1] = nxt_graphs
            sl.kills[level + 1] = nxt_kills
        level += 1
    return sl


def _alive(kills: Tuple[int, ...], m: int, n: int) -> bool:
    return all(evaluate(k, m, n) > 0 for k in kills)


@dataclass
class EpiSlice:
    m: int
    n: int
    s: int
    t: int
    bases: Dict[int, List[OrientedGraph]]
    differentials: Dict[int, SparseMatrix]
    from_cache: bool = False

    @property
    def degrees(self) -> List[int]:
        return sorted(self.bases)

    def dims(self) -> Dict[int, int]:
        return {d: len(b) for d, b in sorted(self.bases.items())}


def graph_degree(m: int, n: int, s: int, t: int, n_internal: int) -> int:
    # (n-1)E - nI - ms with E = t + I
    return (n - 1) * t - n_internal - m * s


def build_epi_slice(m: int, n: int, s: int, t: int, reduced: bool = False,
                    cache_dir: Optional[str] = None) -> EpiSlice:
    """Bases and differentials of the slice (s, t) for the given (m, n).

    With ``reduced`` (meaningful for n even and t >= 2) graphs with loops
    are dropped; they span a quotient that is acyclic there, and loop-free
    graphs form a subcomplex.  ``cache_dir`` (or the environment fallback)
    enables the on-disk cache.
    """
    root = cache.default_root(cache_dir)
    if root is None:
        return _build_epi_slice(m, n, s, t, reduced)
    where = cache.slice_dir(root, "e-reduced" if reduced else "e", m, n, s, t)
    stored = cache.read_slice(where)
    if stored is not None:
        by_level, diffs_by_level = stored
        deg = lambda k: graph_degree(m, n, s, t, k)  # noqa: E731
        return EpiSlice(m, n, s, t,
                        {deg(k): [decode(x) for x in items] for k, items in by_level.items()},
                        {deg(k): mat for k, mat in diffs_by_level.items()}, from_cache=True)
    sl = _build_epi_slice(m, n, s, t, reduced)
    level = lambda d: (n - 1) * t - m * s - d  # noqa: E731
    cache.write_slice(where,
                      {level(d): [encode(g).decode() for g in b] for d, b in sl.bases.items()},
                      {level(d): mat for d, mat in sl.differentials.items()})
    return sl


def _build_epi_slice(m: int, n: int, s: int, t: int, reduced: bool) -> EpiSlice:
    sl = unsigned_slice(s, t)
    alive: Dict[int, List[int]] = {}
    for level, graphs in sl.levels.items():
        keep = []
        for j, g in enumerate(graphs):
            if not _alive(sl.kills[level][j], m, n):
                continue
            if reduced and g.has_loop():
                continue
            keep.append(j)
        if keep:
            alive[level] = keep
    bases: Dict[int, List[OrientedGraph]] = {}
    for level, keep in alive.items():
        bases[graph_degree(m, n, s, t, level)] = [sl.levels[level][j] for j in keep]
    differentials: Dict[int, SparseMatrix] = {}
    for level, keep in alive.items():
        d = graph_degree(m, n, s, t, level)
        targets = alive.get(level + 1)
        if not targets:
            continue
        row_of = {j: r for r, j in enumerate(targets)}
        acc: Dict[Tuple[int, int], int] = {}
        for c, j in enumerate(keep):
            for idx, mask in sl.terms[level][j]:
                r = row_of.get(idx)
                if r is None:
                    continue
                acc[(r, c)] = acc.get((r, c), 0) + evaluate(mask, m, n)
        differentials[d] = SparseMatrix.from_dict(len(targets), len(keep), acc)
    return EpiSlice(m, n, s, t, bases, differentials)


def enumerate_epi_basis(m: int, n: int, s: int, t: int) -> Dict[int, List[SignedCanonical]]:
    sl = build_epi_slice(m, n, s, t)
    return {d: [SignedCanonical(g, 1) for g in b] for d, b in sorted(sl.bases.items())}


def differential_epi(slice_: EpiSlice, d: int) -> SparseMatrix:
    """Matrix of the differential from degree d to degree d - 1."""
    if d not in slice_.bases:
        raise KeyError(f"no basis in degree {d}")
    if d in slice_.differentials:
        return slice_.differentials[d]
    rows = len(slice_.bases.get(d - 1, []))
    return SparseMatrix(rows, len(slice_.bases[d]))


def homology_from_slice(bases: Dict[int, list], diffs: Dict[int, SparseMatrix],
                        step: int = -1) -> Dict[int, int]:
    """Ranks of homology given matrices ``diffs[d]`` from degree d to d+step."""
    ranks = {d: rank(mat) for d, mat in diffs.items()}
    out = {}
    for d, b in bases.items():
        h = len(b) - ranks.get(d, 0) - ranks.get(d - step, 0)
        if h < 0:
            raise ArithmeticError("negative homology rank; differential is inconsistent")
        if h:
            out[d] = h
    return dict(sorted(out.items()))


def homology_ranks_epi(m: int, n: int, s: int, t: int, reduced: bool = False,
                       cache_dir: Optional[str] = None) -> Dict[int, int]:
    """Nonzero homology ranks of the slice, keyed by degree."""
    sl = build_epi_slice(m, n, s, t, reduced=reduced, cache_dir=cache_dir)
    return homology_from_slice(sl.bases, sl.differentials, step=-1)


def euler_epi(m: int, n: int, s: int, t: int) -> int:
    """Alternating sum of basis sizes, graded by (n-1)E - nI - ms.

    With this grading the values coincide with the published tables, so no
    extra sign normalization is applied.
    """
    sl = unsigned_slice(s, t)
    total = 0
    for level, graphs in sl.levels.items():
        count = sum(1 for k in sl.kills[level] if _alive(k, m, n))
        total += (-1) ** (graph_degree(m, n, s, t, level) % 2) * count
    return total


def euler_h_from_pi(chi_pi: Dict[Tuple[int, int], int], S: int, T: int) -> Dict[Tuple[int, int], int]:
    """Euler characteristics of the full complex from the connected ones.

    Expands prod (1 - x^s u^t)^(-chi_pi[s, t]) up to x^S u^T.
    """
    from .genfunc import BiSeries, exp_series

    if any(t < 1 for (_, t) in chi_pi):
        raise ValueError("connected Euler characteristics need t >= 1")
    log = BiSeries.zero(S, T)
    for (s, t), c in chi_pi.items():
        if not c or s > S or t > T:
            continue
        r = 1
        while r * s <= S and r * t <= T:
            log.add_term(r * s, r * t, Fraction(c, r))
            r += 1
    series = exp_series(log)
    return series.integer_table(min_t=0)


def wheel_graph(t: int) -> OrientedGraph:
    """t-gon of internal vertices, each carrying one leg."""
    if t < 1:
        raise ValueError("wheel needs t >= 1")
    legs = tuple((i, t + i) for i in range(t))
    if t == 1:
        cycle = ((1, 1),)
    else:
        cycle = tuple((t + i, t + (i + 1) % t) for i in range(t))
    return OrientedGraph(t, t, legs + cycle)


def tree_slice(t: int) -> Tuple[int, int]:
    return (t + 1, t)
