"""Bicolored forest complexes (full edges of degree n-1, dotted of degree m-1).

Labeled side
    Monomials in the generators alpha_ij of configuration-space cohomology,
    rewritten to the admissible basis by :func:`straighten`.

Unlabeled side
    A basis element of the complex is a Sigma_k-coinvariant of pairs
    (dotted forest, full forest) on k labeled vertices.  Such coinvariants are
    spanned by isomorphism classes of bicolored graphs.  The only relations
    among classes are the three-term Arnold relations in either color (terms
    with a cycle vanish on their own, and a relation never mixes forests
    with non-forests), plus orientation.  So each slice is the span of the
    canonical classes modulo the Arnold rows.  Vertices have degree -m,
    dotted edges m-1 and full edges n-1.  The standard orientation order
    is: full edges, dotted edges, vertices.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from . import cache
from .complex_e import homology_from_slice
from .exactq import RowSpace, SparseMatrix, matrix_from_columns
from .graphs import (
    CONST, M, N, PAR_M, PAR_M1, PAR_N1, evaluate, koszul_mask, perm_parity, search_orderings,
)

Edge = Tuple[int, int]
Monomial = Tuple[Edge, ...]

# ---------------------------------------------------------------------------
# labeled monomials


def straighten(mono: Sequence[Edge], parity: int) -> Dict[Monomial, int]:
    """Rewrite a monomial to admissible form.

    Generators ``(i, j)`` stand for alpha_ij of degree ``parity - 1`` (mod 2)
    with alpha_ji = (-1)^parity alpha_ij.  The result maps admissible
    monomials (i < j, distinct second indices in increasing order) to
    integer coefficients.
    """
    p = parity & 1
    swap_sign = -1 if (p - 1) & 1 else 1  # commuting two generators
    flip_sign = -1 if p else 1  # reversing one generator
    out: Dict[Monomial, int] = {}
    work: List[Tuple[int, List[Edge]]] = [(1, list(mono))]
    while work:
        coef, gens = work.pop()
        norm = []
        for a, b in gens:
            if a == b:
                coef = 0
                break
            if a > b:
                a, b = b, a
                coef *= flip_sign
            norm.append((a, b))
        if not coef or len(set(norm)) < len(norm):
            continue
        by_head: Dict[int, int] = {}
        clash = None
        for pos, (a, b) in enumerate(norm):
            if b in by_head:
                clash = (by_head[b], pos)
                break
            by_head[b] = pos
        if clash is None:
            order = sorted(range(len(norm)), key=lambda q: norm[q][1])
            sign = coef * (swap_sign if perm_parity(order) else 1)
            key = tuple(norm[q] for q in order)
            out[key] = out.get(key, 0) + sign
            if not out[key]:
                del out[key]
            continue
        p1, p2 = clash
        x, y = norm[p1][0], norm[p2][0]
        j = norm[p1][1]
        a, b = min(x, y), max(x, y)
        # put alpha_aj in the first slot, then use
        # alpha_aj alpha_bj = alpha_ab alpha_bj + (-1)^p alpha_aj alpha_ab   (a < b < j)
        lead = coef if x == a else coef * swap_sign
        t1 = list(norm)
        t1[p1], t1[p2] = (a, b), (b, j)
        t2 = list(norm)
        t2[p1], t2[p2] = (a, j), (a, b)
        work.append((lead, t1))
        work.append((lead * flip_sign, t2))
    return out


def is_admissible(mono: Sequence[Edge]) -> bool:
    heads = [b for _, b in mono]
    return all(a < b for a, b in mono) and heads == sorted(set(heads))


def admissible_monomials(k: int, r: int) -> List[Monomial]:
    """Admissible monomials with r generators on vertices 1..k."""
    out = []
    for heads in combinations(range(2, k + 1), r):
        for tails in product(*[range(1, j) for j in heads]):
            out.append(tuple(zip(tails, heads)))
    return out


def admissible_basis_dim(k: int, r: int) -> int:
    # e_r(1, 2, ..., k-1): choose the heads, then a smaller tail for each
    if r < 0 or r > max(k - 1, 0):
        return 0
    poly = [1]
    for i in range(1, k):
        poly = [a + i * b for a, b in zip(poly + [0], [0] + poly)]
    return poly[r]


def kq_basis(k: int, s: int) -> List[Monomial]:
    """Admissible dotted forests on 1..k with s components."""
    if not 1 <= s <= k:
        raise ValueError("need 1 <= s <= k")
    return admissible_monomials(k, k - s)


def encode_monomials(full: Sequence[Edge], dotted: Sequence[Edge]) -> str:
    f = ",".join(f"{a}-{b}" for a, b in full)
    d = ",".join(f"{a}-{b}" for a, b in dotted)
    return f"F:{f}|D:{d}"


def decode_monomials(text: str) -> Tuple[Monomial, Monomial]:
    try:
        left, right = text.strip().split("|")
        if not left.startswith("F:") or not right.startswith("D:"):
            raise ValueError
        parts = []
        for body in (left[2:], right[2:]):
            edges = []
            if body:
                for item in body.split(","):
                    a, b = item.split("-")
                    edges.append((int(a), int(b)))
            parts.append(tuple(edges))
    except ValueError as exc:
        raise ValueError(f"malformed monomial encoding {text!r}") from exc
    return parts[0], parts[1]


# ---------------------------------------------------------------------------
# bicolored graphs


@dataclass(frozen=True)
class BicolorGraph:
    """Vertices ``0..k-1``; ``order`` None means the standard order."""

    k: int
    full: Tuple[Edge, ...]
    dotted: Tuple[Edge, ...]
    order: Optional[Tuple[int, ...]] = None

    @property
    def t(self) -> int:
        return len(self.full)

    @property
    def s(self) -> int:
        return self.k - len(self.dotted)

    def element_forms(self):
        return [PAR_N1] * len(self.full) + [PAR_M1] * len(self.dotted) + [PAR_M] * self.k

    def degree(self, m: int, n: int) -> int:
        return (n - 1) * self.t - (m - 1) * self.s - self.k

    def is_connected(self) -> bool:
        parent = list(range(self.k))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.full + self.dotted:
            parent[find(a)] = find(b)
        return len({find(v) for v in range(self.k)}) <= 1

    def encode(self) -> str:
        return encode_monomials([(a + 1, b + 1) for a, b in self.full],
                                [(a + 1, b + 1) for a, b in self.dotted])


def _is_forest(k: int, edges: Sequence[Edge]) -> bool:
    parent = list(range(k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


@dataclass(frozen=True)
class BicolorCanonical:
    graph: BicolorGraph
    mask: int
    kill_masks: Tuple[int, ...]

    def is_zero(self, m: int, n: int) -> bool:
        return any(evaluate(k, m, n) < 0 for k in self.kill_masks)

    def sign(self, m: int, n: int) -> int:
        return 0 if self.is_zero(m, n) else evaluate(self.mask, m, n)


def _normalize_color(edges: Sequence[Edge], pos: Sequence[int]):
    rev = 0
    items = []
    for idx, (a, b) in enumerate(edges):
        pa, pb = pos[a], pos[b]
        if pa > pb:
            pa, pb = pb, pa
            rev ^= 1
        items.append((pa, pb, idx))
    items.sort()
    return tuple((a, b) for a, b, _ in items), perm_parity([i for _, _, i in items]), rev


def bicolor_canonical(g: BicolorGraph) -> BicolorCanonical:
    k = g.k
    pre = koszul_mask(g.order, g.element_forms()) if g.order is not None else 0
    mult: Dict[Edge, List[int]] = {}
    for color, edges in ((0, g.full), (1, g.dotted)):
        for a, b in edges:
            key = (a, b) if a < b else (b, a)
            mult.setdefault(key, [0, 0])[color] += 1
    adj: List[List[Tuple[int, Tuple[int, int]]]] = [[] for _ in range(k)]
    degf = [0] * k
    degd = [0] * k
    for (a, b), (cf, cd) in mult.items():
        adj[a].append((b, (cf, cd)))
        adj[b].append((a, (cf, cd)))
        degf[a] += cf
        degf[b] += cf
        degd[a] += cd
        degd[b] += cd
    colors = [(degf[v], degd[v]) for v in range(k)]
    best = None
    best_mask = 0
    kills = set()
    for order in search_orderings(k, colors, adj):
        pos = [0] * k
        for i, v in enumerate(order):
            pos[v] = i
        full, pf, rf = _normalize_color(g.full, pos)
        dotted, pd, rd = _normalize_color(g.dotted, pos)
        mask = 0
        if perm_parity(order):
            mask ^= M
        if pf:
            mask ^= CONST | N
        if pd:
            mask ^= CONST | M
        if rf:
            mask ^= N
        if rd:
            mask ^= M
        enc = (full, dotted)
        if best is None or enc < best:
            best, best_mask = enc, mask
            kills = set()
        elif enc == best and mask != best_mask:
            kills.add(mask ^ best_mask)
    canon = BicolorGraph(k, best[0], best[1])
    return BicolorCanonical(canon, best_mask ^ pre, tuple(sorted(kills)))


def _key(g: BicolorGraph):
    return (g.k, g.full, g.dotted)


@lru_cache(maxsize=None)
def _full_forests(k: int, t: int) -> Tuple[BicolorGraph, ...]:
    """Classes of forests with t edges on k vertices, no isolated vertex."""
    level = {_key(BicolorGraph(k, (), ())): BicolorGraph(k, (), ())}
    for _ in range(t):
        nxt = {}
        for g in level.values():
            for a, b in combinations(range(k), 2):
                edges = g.full + ((a, b),)
                if not _is_forest(k, edges):
                    continue
                c = bicolor_canonical(BicolorGraph(k, edges, ())).graph
                nxt.setdefault(_key(c), c)
        level = nxt
    out = []
    for g in level.values():
        touched = {v for e in g.full for v in e}
        if len(touched) == k:
            out.append(g)
    return tuple(sorted(out, key=_key))


@lru_cache(maxsize=None)
def bicolor_classes(s: int, t: int, k: int) -> Tuple[BicolorGraph, ...]:
    """All classes with t full edges, s dotted components and k vertices."""
    if k < s or k > 2 * t or k < t + 1 or s < 1:
        return ()
    level = {_key(g): g for g in _full_forests(k, t)}
    for _ in range(k - s):
        nxt = {}
        for g in level.values():
            for a, b in combinations(range(k), 2):
                edges = g.dotted + ((a, b),)
                if not _is_forest(k, edges):
                    continue
                c = bicolor_canonical(BicolorGraph(k, g.full, edges)).graph
                nxt.setdefault(_key(c), c)
        level = nxt
    return tuple(sorted(level.values(), key=_key))


def _arnold_rows(g: BicolorGraph, m: int, n: int, index: Dict) -> List[Dict[int, int]]:
    rows = []
    me = index[_key(g)]
    for color in (0, 1):
        edges = g.full if color == 0 else g.dotted
        par = n if color == 0 else m
        flip = -1 if par % 2 else 1
        for p1, p2 in combinations(range(len(edges)), 2):
            e1, e2 = edges[p1], edges[p2]
            shared = set(e1) & set(e2)
            if len(shared) != 1:
                continue
            j = shared.pop()
            i = e1[0] if e1[1] == j else e1[1]
            kk = e2[0] if e2[1] == j else e2[1]
            s1 = 1 if e1 == (i, j) else flip
            s2 = 1 if e2 == (j, kk) else flip
            row: Dict[int, int] = {me: s1 * s2}
            for a, b in (((j, kk), (kk, i)), ((kk, i), (i, j))):
                new = list(edges)
                new[p1], new[p2] = a, b
                h = BicolorGraph(g.k, tuple(new), g.dotted) if color == 0 \
                    else BicolorGraph(g.k, g.full, tuple(new))
                c = bicolor_canonical(h)
                sgn = c.sign(m, n)
                if sgn:
                    idx = index[_key(c.graph)]
                    row[idx] = row.get(idx, 0) + sgn
            row = {c: v for c, v in row.items() if v}
            if row:
                rows.append(row)
    return rows


def contract(g: BicolorGraph, q: int) -> Optional[Tuple[BicolorGraph, int]]:
    """Contract dotted edge ``q`` (standard order): graph and sign mask.

    The edge and its head vertex are pulled to the front of the orientation
    order and dropped; the head is merged into the tail.  Returns None when
    the full edges stop being a forest.
    """
    tf, td = len(g.full), len(g.dotted)
    a, b = g.dotted[q]
    e_id = tf + q
    b_id = tf + td + b
    rest = [x for x in range(tf + td + g.k) if x not in (e_id, b_id)]
    mask = koszul_mask([e_id, b_id] + rest, g.element_forms())

    def mv(v: int) -> int:
        v = a if v == b else v
        return v - 1 if v > b else v

    full = tuple((mv(x), mv(y)) for x, y in g.full)
    if any(x == y for x, y in full) or not _is_forest(g.k - 1, full):
        return None
    dotted = tuple((mv(x), mv(y)) for i, (x, y) in enumerate(g.dotted) if i != q)
    return BicolorGraph(g.k - 1, full, dotted), mask


@dataclass
class HHSlice:
    m: int
    n: int
    s: int
    t: int
    connected: bool
    bases: Dict[int, List[BicolorGraph]]
    differentials: Dict[int, SparseMatrix]  # degree d -> d + 1
    from_cache: bool = False

    def dims(self) -> Dict[int, int]:
        return {d: len(b) for d, b in sorted(self.bases.items())}


def _quotient(s: int, t: int, k: int, m: int, n: int, connected: bool):
    classes = [g for g in bicolor_classes(s, t, k) if not connected or g.is_connected()]
    index = {_key(g): i for i, g in enumerate(classes)}
    alive = [not bicolor_canonical(g).is_zero(m, n) for g in classes]
    space = RowSpace()
    for i, g in enumerate(classes):
        if alive[i]:
            for row in _arnold_rows(g, m, n, index):
                space.add(row)
    pivots = set(space.pivot_columns)
    basis = [i for i in range(len(classes)) if alive[i] and i not in pivots]
    return classes, index, space, basis


def build_hh_slice(m: int, n: int, s: int, t: int, connected: bool = True,
                   cache_dir: Optional[str] = None) -> HHSlice:
    """Quotient bases and differentials; degree d = (n-1)t - (m-1)s - k."""
    root = cache.default_root(cache_dir)
    if root is None:
        return _build_hh_slice(m, n, s, t, connected)
    top = (n - 1) * t - (m - 1) * s
    where = cache.slice_dir(root, "hh/connected" if connected else "hh/full", m, n, s, t)
    stored = cache.read_slice(where)
    if stored is not None:
        by_k, diffs_by_k = stored
        bases = {}
        for k, items in by_k.items():
            graphs = []
            for text in items:
                full, dotted = decode_monomials(text)
                graphs.append(BicolorGraph(k, tuple((a - 1, b - 1) for a, b in full),
                                           tuple((a - 1, b - 1) for a, b in dotted)))
            bases[top - k] = graphs
        return HHSlice(m, n, s, t, connected, bases,
                       {top - k: mat for k, mat in diffs_by_k.items()}, from_cache=True)
    sl = _build_hh_slice(m, n, s, t, connected)
    cache.write_slice(where,
                      {top - d: [g.encode() for g in b] for d, b in sl.bases.items()},
                      {top - d: mat for d, mat in sl.differentials.items()})
    return sl


def _build_hh_slice(m: int, n: int, s: int, t: int, connected: bool) -> HHSlice:
    data = {k: _quotient(s, t, k, m, n, connected) for k in range(max(s, t + 1), 2 * t + 1)}
    bases = {}
    diffs = {}
    for k, (classes, _, _, basis) in data.items():
        if basis:
            bases[(n - 1) * t - (m - 1) * s - k] = [classes[i] for i in basis]
    for k, (classes, _, _, basis) in data.items():
        if not basis or k - 1 not in data:
            continue
        tclasses, tindex, tspace, tbasis = data[k - 1]
        if not tbasis:
            continue
        col_of = {i: r for r, i in enumerate(tbasis)}
        columns = []
        for i in basis:
            g = classes[i]
            vec: Dict[int, int] = {}
            for q in range(len(g.dotted)):
                res = contract(g, q)
                if res is None:
                    continue
                h, mask = res
                c = bicolor_canonical(h)
                sgn = c.sign(m, n)
                if not sgn:
                    continue
                idx = tindex[_key(c.graph)]
                vec[idx] = vec.get(idx, 0) + sgn * evaluate(mask, m, n)
            red = tspace.reduce(vec)
            columns.append({col_of[c]: v for c, v in red.items()})
        d = (n - 1) * t - (m - 1) * s - k
        diffs[d] = matrix_from_columns(len(tbasis), columns)
    return HHSlice(m, n, s, t, connected, bases, diffs)


def enumerate_hh_basis(m: int, n: int, s: int, t: int, connected: bool = True) -> Dict[int, List[BicolorGraph]]:
    return build_hh_slice(m, n, s, t, connected).bases


def differential_hh(slice_: HHSlice, d: int) -> SparseMatrix:
    """Matrix from degree d to degree d + 1 (one dotted edge fewer)."""
    if d not in slice_.bases:
        raise KeyError(f"no basis in degree {d}")
    if d in slice_.differentials:
        return slice_.differentials[d]
    return SparseMatrix(len(slice_.bases.get(d + 1, [])), len(slice_.bases[d]))


def homology_ranks_hh(m: int, n: int, s: int, t: int, connected: bool = True,
                      cache_dir: Optional[str] = None) -> Dict[int, int]:
    sl = build_hh_slice(m, n, s, t, connected, cache_dir)
    return homology_from_slice(sl.bases, sl.differentials, step=1)


def euler_hh(m: int, n: int, s: int, t: int, connected: bool = True) -> int:
    sl = build_hh_slice(m, n, s, t, connected)
    return sum((-1) ** (d % 2) * len(b) for d, b in sl.bases.items())
