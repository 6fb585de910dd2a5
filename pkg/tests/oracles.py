"""Independent reference implementations used only by the tests.

None of these reuse the package's elimination, canonicalization or
enumeration code paths.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations, product
from math import factorial
from typing import Dict, List, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import MultiGraphMatcher
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix


# ---------------------------------------------------------------------------
# linear algebra


def dense_rank_fraction(rows: Sequence[Sequence]) -> int:
    """Textbook Gauss-Jordan over Fraction."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def sympy_rank(rows: Dict[int, Dict[int, int]], shape: Tuple[int, int]) -> int:
    if shape[0] == 0 or shape[1] == 0:
        return 0
    dm = DomainMatrix({i: {c: QQ(v) for c, v in row.items()} for i, row in rows.items()}, shape, QQ)
    return dm.rank()


# ---------------------------------------------------------------------------
# naive uni->=3-valent graph generation


def _perm_sign(seq: Sequence[int]) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def naive_epi_graphs(s: int, t: int) -> Dict[int, List[Tuple[int, List[Tuple[int, int]]]]]:
    """All connected graphs of the slice up to isomorphism, by internal count.

    Externals are 0..s-1, internals s..s+I-1.  Brute force over every edge
    multiset compatible with the valence constraints, deduplicated with
    networkx isomorphism tests.
    """
    out: Dict[int, List[Tuple[int, List[Tuple[int, int]]]]] = {}
    if s == 2 and t == 1:
        out[0] = [(2, [(0, 1)])]
    for ni in range(1, 2 * t - s + 1):
        nv = s + ni
        ne = t + ni
        internal_pairs = [(a, b) for a in range(s, nv) for b in range(a, nv)]
        reps: List[nx.MultiGraph] = []
        found = []
        for legs in product(range(s, nv), repeat=s):
            for rest in combinations_with_replacement(internal_pairs, ne - s):
                edges = [(i, legs[i]) for i in range(s)] + list(rest)
                g = nx.MultiGraph()
                g.add_nodes_from(range(s), ext=True)
                g.add_nodes_from(range(s, nv), ext=False)
                g.add_edges_from(edges)
                if any(g.degree(v) < 3 for v in range(s, nv)) or not nx.is_connected(g):
                    continue
                if any(nx.is_isomorphic(g, h, node_match=lambda x, y: x["ext"] == y["ext"]) for h in reps):
                    continue
                reps.append(g)
                found.append((s, edges))
        if found:
            out[ni] = found
    return out


def naive_is_zero(n_ext: int, edges: List[Tuple[int, int]], nv: int, m: int, n: int) -> bool:
    """Does some automorphism act by -1 on the orientation?"""
    g = nx.MultiGraph()
    g.add_nodes_from(range(nv))
    for v in range(nv):
        g.nodes[v]["ext"] = v < n_ext
    g.add_edges_from(edges)
    em = m % 2
    en = n % 2
    # vertex automorphisms with some compatible edge bijection
    for iso in MultiGraphMatcher(g, g, node_match=lambda x, y: x["ext"] == y["ext"]).isomorphisms_iter():
        used = set()
        target = []
        rev = 0
        for a, b in edges:
            ia, ib = iso[a], iso[b]
            choice = None
            for j, (c, d) in enumerate(edges):
                if j in used:
                    continue
                if (c, d) == (ia, ib):
                    choice = j
                    break
                if (d, c) == (ia, ib) and choice is None:
                    choice = j
            used.add(choice)
            target.append(choice)
            if edges[choice] != (ia, ib):
                rev += 1
        sign = 1
        if em:
            sign *= _perm_sign([iso[v] for v in range(n_ext)])
        if en:
            sign *= _perm_sign([iso[v] for v in range(n_ext, nv)])
            sign *= (-1) ** rev
        else:
            sign *= _perm_sign(target)
        if sign < 0:
            return True
    for i, (a, b) in enumerate(edges):
        if a == b and en:
            return True
        for j in range(i + 1, len(edges)):
            c, d = edges[j]
            if {a, b} == {c, d}:
                # swap two parallel edges; reversing both if needed costs nothing
                if not en:
                    return True
    return False


# ---------------------------------------------------------------------------
# configuration-space cohomology by brute force


def _arnold_system(k: int, r: int, parity: int):
    """Rows spanning the degree-r relations among products of alpha_ij.

    Generators have degree parity - 1 and alpha_ji = (-1)^parity alpha_ij.
    """
    q = (parity - 1) % 2
    eps = -1 if parity % 2 else 1
    pairs = [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    idx = {e: i for i, e in enumerate(pairs)}
    monos = list(combinations(range(len(pairs)), r))
    col = {mono: i for i, mono in enumerate(monos)}

    def gen(a, b):
        return (idx[(a, b)], 1) if a < b else (idx[(b, a)], eps)

    def vector(factors) -> Dict[int, int]:
        ids = [f for f, _ in factors]
        coef = 1
        for _, c in factors:
            coef *= c
        if len(set(ids)) < len(ids):
            return {}
        if q:
            coef *= _perm_sign(ids)
        return {col[tuple(sorted(ids))]: coef}

    rows = []
    if r >= 2:
        for i, j, l in combinations(range(1, k + 1), 3):
            rel = [(gen(i, j), gen(j, l)), (gen(j, l), gen(l, i)), (gen(l, i), gen(i, j))]
            for rest in combinations(range(len(pairs)), r - 2):
                row: Dict[int, int] = {}
                for a, b in rel:
                    for c, v in vector([a, b] + [(x, 1) for x in rest]).items():
                        row[c] = row.get(c, 0) + v
                row = {c: v for c, v in row.items() if v}
                if row:
                    rows.append(row)
    return pairs, monos, col, rows, vector, gen


def arnold_quotient_dim(k: int, r: int, parity: int) -> int:
    """dim of the degree-r part of the quotient of the free graded-commutative
    algebra on alpha_ij (squares zero) by the three-term relations."""
    pairs, monos, _, rows, _, _ = _arnold_system(k, r, parity)
    rk = sympy_rank(dict(enumerate(rows)), (len(rows), len(monos)))
    return len(monos) - rk


def in_arnold_ideal(k: int, parity: int, combo: Dict[Tuple[Tuple[int, int], ...], int]) -> bool:
    """Is the given linear combination of monomials zero in the quotient?"""
    r = len(next(iter(combo)))
    pairs, monos, col, rows, vector, gen = _arnold_system(k, r, parity)
    target: Dict[int, int] = {}
    for mono, c in combo.items():
        for cc, v in vector([gen(a, b) for a, b in mono]).items():
            target[cc] = target.get(cc, 0) + c * v
    target = {c: v for c, v in target.items() if v}
    if not target:
        return True
    base = sympy_rank(dict(enumerate(rows)), (len(rows), len(monos)))
    ext = dict(enumerate(rows))
    ext[len(rows)] = target
    return sympy_rank(ext, (len(rows) + 1, len(monos))) == base


# ---------------------------------------------------------------------------
# symmetric group characters


def cycle_type(perm: Sequence[int]) -> Tuple[Tuple[int, int], ...]:
    seen = set()
    counts: Dict[int, int] = {}
    for i in range(len(perm)):
        if i in seen:
            continue
        length = 0
        j = i
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        counts[length] = counts.get(length, 0) + 1
    return tuple(sorted(counts.items()))


def character(k: int, basis: List, act) -> Dict[Tuple[int, ...], int]:
    """Trace of every permutation on span(basis); ``act(perm, b)`` returns a
    dict basis element -> coefficient."""
    index = {b: i for i, b in enumerate(basis)}
    out = {}
    for perm in permutations(range(k)):
        tr = 0
        for b in basis:
            img = act(perm, b)
            tr += img.get(b, 0)
            assert all(x in index for x in img), "basis not closed under the action"
        out[perm] = tr
    return out


def inner_product(chi1: Dict, chi2: Dict, k: int) -> Fraction:
    return Fraction(sum(chi1[p] * chi2[p] for p in chi1), factorial(k))


def cycle_index_from_character(chi: Dict) -> Dict[Tuple[Tuple[int, int], ...], Fraction]:
    k = len(next(iter(chi)))
    out: Dict = {}
    for perm, v in chi.items():
        ct = cycle_type(perm)
        out[ct] = out.get(ct, 0) + Fraction(v, factorial(k))
    return {ct: v for ct, v in out.items() if v}


def perm_sign(perm: Sequence[int]) -> int:
    return _perm_sign(perm)


# ---------------------------------------------------------------------------
# bicolored complexes as coinvariants of labeled monomials


def _connected(k: int, edges) -> bool:
    g = nx.Graph()
    g.add_nodes_from(range(1, k + 1))
    g.add_edges_from(edges)
    return nx.is_connected(g)


def hh_coinvariant_dims(m: int, n: int, s: int, t: int, connected: bool) -> Dict[int, int]:
    """Graded dimensions of the bicolored slice computed as averaged traces.

    The labeled space at k vertices is spanned by pairs (full, dotted) of
    admissible monomials; Sigma_k acts by relabeling, straightening each
    color and the Koszul sign sgn^m of permuting the vertices.
    """
    from longemb.complex_hh import admissible_monomials, straighten

    out = {}
    for k in range(max(s, t + 1), 2 * t + 1):
        fulls = [f for f in admissible_monomials(k, t)
                 if {v for e in f for v in e} == set(range(1, k + 1))]
        dots = admissible_monomials(k, k - s)
        basis = [(f, d) for f in fulls for d in dots
                 if not connected or _connected(k, list(f) + list(d))]
        if not basis:
            continue
        total = 0
        for perm in permutations(range(1, k + 1)):
            sigma = dict(zip(range(1, k + 1), perm))
            vsign = _perm_sign(perm) if m % 2 else 1
            for f, d in basis:
                fi = straighten([(sigma[a], sigma[b]) for a, b in f], n).get(f, 0)
                if not fi:
                    continue
                di = straighten([(sigma[a], sigma[b]) for a, b in d], m).get(d, 0)
                total += vsign * fi * di
        dim = Fraction(total, factorial(k))
        assert dim.denominator == 1
        if dim:
            out[(n - 1) * t - (m - 1) * s - k] = int(dim)
    return out
