"""Oriented graphs, Koszul signs and canonical forms.

A sign that depends on the parities of ``m`` and ``n`` is stored as a
4-bit mask over GF(2): bit 0 is a constant, bit 1 multiplies ``m``, bit 2
multiplies ``n`` and bit 3 multiplies ``m*n``.  The actual sign for a
parity class is ``(-1) ** evaluate(mask, m, n)``.  Working with masks
lets one canonicalization serve all four parity classes.

The orientation set of a graph lists its vertices (externals of degree
``-m``, internals of degree ``-n``) and its edges (degree ``n-1``).
Element ``v < N`` is vertex ``v``; element ``N + i`` is edge ``i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

# ---------------------------------------------------------------------------
# parity-symbolic signs

CONST, M, N, MN = 1, 2, 4, 8

# linear forms (const, m, n) for element degrees modulo 2
PAR_M = (0, 1, 0)
PAR_N = (0, 0, 1)
PAR_N1 = (1, 0, 1)  # n - 1
PAR_M1 = (1, 1, 0)  # m - 1
PAR_ZERO = (0, 0, 0)
PAR_ONE = (1, 0, 0)


def form_mask(form: Tuple[int, int, int]) -> int:
    c, a, b = form
    return (CONST if c else 0) | (M if a else 0) | (N if b else 0)


def product_mask(f: Tuple[int, int, int], g: Tuple[int, int, int]) -> int:
    """Mask of the product of two linear forms, using m*m = m and n*n = n."""
    c1, a1, b1 = f
    c2, a2, b2 = g
    c = c1 & c2
    a = (c1 & a2) ^ (a1 & c2) ^ (a1 & a2)
    b = (c1 & b2) ^ (b1 & c2) ^ (b1 & b2)
    ab = (a1 & b2) ^ (b1 & a2)
    return (CONST if c else 0) | (M if a else 0) | (N if b else 0) | (MN if ab else 0)


def evaluate(mask: int, m: int, n: int) -> int:
    """Return +1 or -1 for the parity class of (m, n)."""
    m &= 1
    n &= 1
    bit = (mask & CONST and 1) ^ (mask & M and m) ^ (mask & N and n) ^ (mask & MN and m & n)
    return -1 if bit else 1


def koszul_sign(perm: Sequence[int], degrees: Sequence[int]) -> int:
    """Sign of reordering elements ``0..k-1`` into the sequence ``perm``.

    ``degrees[i]`` is the degree of element ``i``.  Each pair of elements
    whose relative order is inverted contributes ``(-1)**(d_a * d_b)``.
    """
    if len(perm) != len(degrees) or sorted(perm) != list(range(len(degrees))):
        raise ValueError("perm must be a permutation matching degrees")
    bit = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                bit ^= (degrees[perm[i]] * degrees[perm[j]]) & 1
    return -1 if bit else 1


def koszul_mask(seq: Sequence[int], forms: Sequence[Tuple[int, int, int]]) -> int:
    """Parity-symbolic Koszul sign of reordering ``sorted(seq)`` into ``seq``."""
    mask = 0
    k = len(seq)
    for i in range(k):
        a = seq[i]
        fa = forms[a]
        for j in range(i + 1, k):
            b = seq[j]
            if a > b:
                mask ^= product_mask(fa, forms[b])
    return mask


def perm_parity(seq: Sequence[int]) -> int:
    """Parity of the permutation sorting ``seq`` (distinct entries)."""
    seen = [False] * len(seq)
    pos = {v: i for i, v in enumerate(sorted(seq))}
    parity = 0
    for i in range(len(seq)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = pos[seq[j]]
            length += 1
        parity ^= (length - 1) & 1
    return parity


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class OrientedGraph:
    """Graph with ordered orientation set.

    ``order`` is ``None`` for the standard order (vertices by id, then
    edges by index); otherwise a permutation of ``range(N + len(edges))``.
    """

    n_external: int
    n_internal: int
    edges: Tuple[Tuple[int, int], ...]
    order: Optional[Tuple[int, ...]] = None

    def __post_init__(self) -> None:
        nv = self.n_external + self.n_internal
        for a, b in self.edges:
            if not (0 <= a < nv and 0 <= b < nv):
                raise ValueError(f"edge ({a}, {b}) out of range")
        if self.order is not None and sorted(self.order) != list(range(nv + len(self.edges))):
            raise ValueError("order is not a permutation of the orientation set")

    @property
    def n_vertices(self) -> int:
        return self.n_external + self.n_internal

    @property
    def complexity(self) -> int:
        return len(self.edges) - self.n_internal

    def degree(self, m: int, n: int) -> int:
        return (n - 1) * len(self.edges) - n * self.n_internal - m * self.n_external

    def valences(self) -> List[int]:
        val = [0] * self.n_vertices
        for a, b in self.edges:
            val[a] += 1
            val[b] += 1
        return val

    def is_connected(self) -> bool:
        nv = self.n_vertices
        if nv == 0:
            return True
        parent = list(range(nv))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            parent[find(a)] = find(b)
        return len({find(v) for v in range(nv)}) == 1

    def has_loop(self) -> bool:
        return any(a == b for a, b in self.edges)

    def has_multi_edge(self) -> bool:
        seen = set()
        for a, b in self.edges:
            key = (min(a, b), max(a, b))
            if key in seen:
                return True
            seen.add(key)
        return False

    def element_forms(self) -> List[Tuple[int, int, int]]:
        return [PAR_M] * self.n_external + [PAR_N] * self.n_internal + [PAR_N1] * len(self.edges)

    def relabel(self, perm: Sequence[int]) -> "OrientedGraph":
        """Rename vertex ``v`` to ``perm[v]`` (classes must be preserved).

        The orientation data is carried along: every element keeps its
        position in the orientation order.
        """
        nv = self.n_vertices
        ne = self.n_external
        if sorted(perm) != list(range(nv)):
            raise ValueError("not a permutation")
        if any((v < ne) != (perm[v] < ne) for v in range(nv)):
            raise ValueError("relabeling must preserve external/internal classes")
        edges = tuple((perm[a], perm[b]) for a, b in self.edges)
        old = self.order if self.order is not None else tuple(range(nv + len(self.edges)))
        order = tuple(perm[x] if x < nv else x for x in old)
        return OrientedGraph(self.n_external, self.n_internal, edges, order)


@dataclass(frozen=True)
class SignedCanonical:
    graph: OrientedGraph
    sign: int  # +1, -1 or 0


@dataclass(frozen=True)
class CanonicalData:
    """Parity-independent result of canonicalization.

    ``mask`` is the sign relating the input to ``graph``; the graph
    vanishes in a parity class where any of ``kill_masks`` evaluates to -1.
    """

    graph: OrientedGraph
    mask: int
    kill_masks: Tuple[int, ...]

    def sign(self, m: int, n: int) -> int:
        if self.is_zero(m, n):
            return 0
        return evaluate(self.mask, m, n)

    def is_zero(self, m: int, n: int) -> bool:
        return any(evaluate(k, m, n) < 0 for k in self.kill_masks)


def _refine(cells: List[List[int]], adj: List[List[Tuple[int, int]]]) -> List[List[int]]:
    nv = len(adj)
    cell_of = [0] * nv
    for i, cell in enumerate(cells):
        for v in cell:
            cell_of[v] = i
    while True:
        new_cells: List[List[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: Dict[tuple, List[int]] = {}
            for v in cell:
                sig = tuple(sorted((cell_of[w], k) for w, k in adj[v]))
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                changed = True
                for sig in sorted(groups):
                    new_cells.append(groups[sig])
            else:
                new_cells.append(cell)
        if not changed:
            return new_cells
        cells = new_cells
        for i, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = i


def _leaves(cells: List[List[int]], adj) -> List[List[int]]:
    cells = _refine(cells, adj)
    for i, cell in enumerate(cells):
        if len(cell) > 1:
            out = []
            for v in cell:
                rest = [w for w in cell if w != v]
                out.extend(_leaves(cells[:i] + [[v], rest] + cells[i + 1:], adj))
            return out
    return [[c[0] for c in cells]]


def search_orderings(n_vertices: int, colors: Sequence, adj) -> List[List[int]]:
    """All leaf orderings of the individualization-refinement tree."""
    groups: Dict = {}
    for v in range(n_vertices):
        groups.setdefault(colors[v], []).append(v)
    cells = [groups[c] for c in sorted(groups)]
    if not cells:
        return [[]]
    return _leaves(cells, adj)


def _relabel_result(g: OrientedGraph, order: List[int]):
    """Canonical edges and sign mask for the vertex ordering ``order``."""
    nv = g.n_vertices
    ne = g.n_external
    pos = [0] * nv
    for i, v in enumerate(order):
        pos[v] = i
    rev = 0
    normalized = []
    for idx, (a, b) in enumerate(g.edges):
        pa, pb = pos[a], pos[b]
        if pa > pb:
            pa, pb = pb, pa
            rev ^= 1
        normalized.append((pa, pb, idx))
    normalized.sort()
    edges = tuple((a, b) for a, b, _ in normalized)
    par_edges = perm_parity([i for _, _, i in normalized])
    par_ext = perm_parity(order[:ne])
    par_int = perm_parity(order[ne:])
    mask = 0
    if par_ext:
        mask ^= M
    if par_int:
        mask ^= N
    if par_edges:
        mask ^= CONST | N
    if rev:
        mask ^= N
    return edges, mask


def canonical_data(g: OrientedGraph) -> CanonicalData:
    """Canonical form of an E-type graph with parity-symbolic sign."""
    nv = g.n_vertices
    pre = 0
    if g.order is not None:
        pre = koszul_mask(g.order, g.element_forms())
    val = [0] * nv
    loops = [0] * nv
    mult: Dict[Tuple[int, int], int] = {}
    for a, b in g.edges:
        if a == b:
            loops[a] += 1
        else:
            key = (a, b) if a < b else (b, a)
            mult[key] = mult.get(key, 0) + 1
        val[a] += 1
        val[b] += 1
    adj: List[List[Tuple[int, int]]] = [[] for _ in range(nv)]
    for (a, b), k in mult.items():
        adj[a].append((b, k))
        adj[b].append((a, k))
    colors = [(v >= g.n_external, val[v], loops[v]) for v in range(nv)]
    best = None
    best_mask = 0
    kills = set()
    for order in search_orderings(nv, colors, adj):
        edges, mask = _relabel_result(g, order)
        if best is None or edges < best:
            best, best_mask = edges, mask
            kills = set()
        elif edges == best:
            if mask != best_mask:
                kills.add(mask ^ best_mask)
    # automorphisms that fix every vertex: reversing a loop, swapping parallel edges
    if any(loops):
        kills.add(N)
    seen = set()
    for e in best:
        if e in seen:
            kills.add(CONST | N)
            break
        seen.add(e)
    canon = OrientedGraph(g.n_external, g.n_internal, best)
    return CanonicalData(canon, best_mask ^ pre, tuple(sorted(kills)))


def canonicalize(g: OrientedGraph, m_parity: int, n_parity: int) -> SignedCanonical:
    data = canonical_data(g)
    return SignedCanonical(data.graph, data.sign(m_parity, n_parity))


# ---------------------------------------------------------------------------
# text encoding


def encode(g: OrientedGraph) -> bytes:
    if g.order is not None:
        raise ValueError("only graphs in standard orientation order can be encoded")
    edges = ",".join(f"{a}-{b}" for a, b in g.edges)
    return f"E={g.n_external} I={g.n_internal} edges={edges}".encode()


def decode(data: bytes) -> OrientedGraph:
    text = data.decode() if isinstance(data, (bytes, bytearray)) else data
    parts = text.strip().split(" ")
    if len(parts) != 3 or not parts[0].startswith("E=") or not parts[1].startswith("I=") \
            or not parts[2].startswith("edges="):
        raise ValueError(f"malformed graph encoding {text!r}")
    try:
        ne = int(parts[0][2:])
        ni = int(parts[1][2:])
        body = parts[2][len("edges="):]
        edges = []
        if body:
            for item in body.split(","):
                a, b = item.split("-")
                edges.append((int(a), int(b)))
    except ValueError as exc:
        raise ValueError(f"malformed graph encoding {text!r}") from exc
    return OrientedGraph(ne, ni, tuple(edges))
