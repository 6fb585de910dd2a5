"""Cycle index sums of graded symmetric sequences and the hom pairing.

Series carry three commuting variables: ``x`` (Hodge degree), ``u``
(complexity) and ``z`` (homological degree, Laurent).  A cycle index is a
map from cycle types, written as sorted tuples of ``(l, j_l)`` pairs, to
such series.  Truncation keeps ``x^s`` with s <= S, ``u^t`` with t <= T and
cycle types of weight ``sum l * j_l <= k_max``.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Optional, Tuple

Exp = Tuple[int, int, int]  # (x, u, z)
CycleType = Tuple[Tuple[int, int], ...]

INF = 1 << 30


def mobius(k: int) -> int:
    if k < 1:
        raise ValueError("mobius needs a positive integer")
    result = 1
    p = 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            result = -result
        p += 1
    if k > 1:
        result = -result
    return result


def necklace(ell: int) -> Dict[int, Fraction]:
    """E_l(y) = (1/l) sum_{d | l} mu(d) y^(l/d) as {exponent: coefficient}."""
    if ell < 1:
        raise ValueError("necklace index must be positive")
    out: Dict[int, Fraction] = {}
    for d in range(1, ell + 1):
        if ell % d == 0:
            mu = mobius(d)
            if mu:
                out[ell // d] = out.get(ell // d, 0) + Fraction(mu, ell)
    return {e: v for e, v in out.items() if v}


class TruncatedSeries:
    """Polynomial in x, u and Laurent in z, truncated in x and u."""

    __slots__ = ("terms", "S", "T")

    def __init__(self, terms: Optional[Dict[Exp, object]] = None, S: int = INF, T: int = INF):
        self.S = S
        self.T = T
        self.terms: Dict[Exp, Fraction] = {}
        for e, v in (terms or {}).items():
            if v and e[0] <= S and e[1] <= T:
                self.terms[e] = self.terms.get(e, 0) + Fraction(v)
        self.terms = {e: v for e, v in self.terms.items() if v}

    @classmethod
    def constant(cls, c, S: int = INF, T: int = INF) -> "TruncatedSeries":
        return cls({(0, 0, 0): c}, S, T)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        S, T = min(self.S, other.S), min(self.T, other.T)
        acc = dict(self.terms)
        for e, v in other.terms.items():
            acc[e] = acc.get(e, 0) + v
        return TruncatedSeries(acc, S, T)

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries({e: v * other for e, v in self.terms.items()}, self.S, self.T)
        S, T = min(self.S, other.S), min(self.T, other.T)
        acc: Dict[Exp, Fraction] = {}
        for (a1, b1, c1), v1 in self.terms.items():
            for (a2, b2, c2), v2 in other.terms.items():
                a, b = a1 + a2, b1 + b2
                if a > S or b > T:
                    continue
                key = (a, b, c1 + c2)
                acc[key] = acc.get(key, 0) + v1 * v2
        return TruncatedSeries(acc, S, T)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        S, T = min(self.S, other.S), min(self.T, other.T)
        mine = {e: v for e, v in self.terms.items() if e[0] <= S and e[1] <= T}
        theirs = {e: v for e, v in other.terms.items() if e[0] <= S and e[1] <= T}
        return mine == theirs

    def __repr__(self) -> str:
        return f"TruncatedSeries({len(self.terms)} terms, S={self.S}, T={self.T})"

    def invert_z(self) -> "TruncatedSeries":
        return TruncatedSeries({(a, b, -c): v for (a, b, c), v in self.terms.items()}, self.S, self.T)

    def at_z(self, value: int) -> Dict[Tuple[int, int], Fraction]:
        """Specialize z to a nonzero integer; returns {(s, t): coefficient}."""
        out: Dict[Tuple[int, int], Fraction] = {}
        for (a, b, c), v in self.terms.items():
            w = Fraction(value) ** c
            out[(a, b)] = out.get((a, b), 0) + v * w
        return {k: v for k, v in out.items() if v}

    def coefficient(self, x: int, u: int, z: int) -> Fraction:
        return self.terms.get((x, u, z), Fraction(0))


def _laurent_mul(p: Dict[int, Fraction], q: Dict[int, Fraction]) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for a, v in p.items():
        for b, w in q.items():
            out[a + b] = out.get(a + b, 0) + v * w
    return {e: v for e, v in out.items() if v}


def _truncate(p: Dict[int, Fraction], cap: int) -> Dict[int, Fraction]:
    return {e: v for e, v in p.items() if e <= cap}


def generalized_binomials(gamma: Dict[int, Fraction], jmax: int,
                          cap: Optional[int] = None) -> list:
    """binom(gamma, j) for j <= jmax, gamma a Laurent polynomial.

    With ``cap`` (valid only when gamma has no negative exponents) terms of
    degree above the cap are dropped along the way.
    """
    out = [{0: Fraction(1)}]
    falling = {0: Fraction(1)}
    for j in range(1, jmax + 1):
        shifted = dict(gamma)
        shifted[0] = shifted.get(0, 0) - (j - 1)
        falling = _laurent_mul(falling, {e: v for e, v in shifted.items() if v})
        if cap is not None:
            falling = _truncate(falling, cap)
        out.append({e: v / factorial(j) for e, v in falling.items()})
    return out


class CycleIndex:
    """Map from cycle types to graded coefficients."""

    def __init__(self, k_max: int, terms: Optional[Dict[CycleType, TruncatedSeries]] = None):
        self.k_max = k_max
        self.terms: Dict[CycleType, TruncatedSeries] = dict(terms or {})

    @staticmethod
    def weight(ct: CycleType) -> int:
        return sum(l * j for l, j in ct)

    def coefficient(self, ct: Iterable[Tuple[int, int]]) -> TruncatedSeries:
        key = tuple(sorted((l, j) for l, j in ct if j))
        return self.terms.get(key, TruncatedSeries())

    def degree_part(self, k: int) -> Dict[CycleType, TruncatedSeries]:
        return {ct: v for ct, v in self.terms.items() if self.weight(ct) == k}

    def __mul__(self, other: "CycleIndex") -> "CycleIndex":
        k_max = min(self.k_max, other.k_max)
        acc: Dict[CycleType, TruncatedSeries] = {}
        for c1, v1 in self.terms.items():
            w1 = self.weight(c1)
            if w1 > k_max:
                continue
            for c2, v2 in other.terms.items():
                if w1 + self.weight(c2) > k_max:
                    continue
                merged: Dict[int, int] = dict(c1)
                for l, j in c2:
                    merged[l] = merged.get(l, 0) + j
                key = tuple(sorted(merged.items()))
                prod = v1 * v2
                acc[key] = acc[key] + prod if key in acc else prod
        return CycleIndex(k_max, {k: v for k, v in acc.items() if v.terms})

    @classmethod
    def single_variable(cls, ell: int, coeffs: Dict[int, TruncatedSeries], k_max: int) -> "CycleIndex":
        """sum_j coeffs[j] a_l^j."""
        terms = {}
        for j, v in coeffs.items():
            if ell * j <= k_max and v.terms:
                terms[((ell, j),) if j else ()] = v
        return cls(k_max, terms)


def _product(factors: Iterable[CycleIndex], k_max: int) -> CycleIndex:
    out = CycleIndex(k_max, {(): TruncatedSeries.constant(1)})
    for f in factors:
        out = out * f
    return out


def _conf_factor(n: int, ell: int, k_max: int, T: int) -> Dict[int, TruncatedSeries]:
    # coefficient of a_l^j in (1 + (-1)^n y^l a_l)^((-1)^n E_l(1/y)),  y = (-z)^(n-1) u
    sn = -1 if n % 2 else 1
    A = {-e: sn * v for e, v in necklace(ell).items()}
    jmax = k_max // ell
    binoms = generalized_binomials(A, jmax)
    out = {}
    for j, b in enumerate(binoms):
        poly = {e + ell * j: v * sn ** j for e, v in b.items()}
        if any(e < 0 for e in poly):
            raise ArithmeticError("negative power of u in a configuration-space cycle index")
        terms = {}
        for e, v in poly.items():
            if e <= T:
                # y^e = (-1)^((n-1)e) z^((n-1)e) u^e
                terms[(0, e, (n - 1) * e)] = v * (-1) ** (((n - 1) * e) % 2)
        out[j] = TruncatedSeries(terms, T=T)
    return out


def cycle_index_conf(n: int, k_max: int, T: int) -> CycleIndex:
    """Graded cycle index of the homology of configuration spaces in R^n."""
    return _product((CycleIndex.single_variable(ell, _conf_factor(n, ell, k_max, T), k_max)
                     for ell in range(1, k_max + 1)), k_max)


def cycle_index_conf_normalized(n: int, k_max: int, T: int) -> CycleIndex:
    """As above, times prod_l exp(-a_l / l) (the normalized part)."""
    factors = []
    for ell in range(1, k_max + 1):
        expo = {j: TruncatedSeries.constant(Fraction(-1, ell) ** j / factorial(j))
                for j in range(k_max // ell + 1)}
        factors.append(CycleIndex.single_variable(ell, expo, k_max))
        factors.append(CycleIndex.single_variable(ell, _conf_factor(n, ell, k_max, T), k_max))
    return _product(factors, k_max)


def _lc_factor(m: int, ell: int, k_max: int, S: int) -> Dict[int, TruncatedSeries]:
    # coefficient of a_l^j in (1 + (-z)^l a_l)^((-1)^m E_l(v)),  v = (-z)^(m-1) x
    sm = -1 if m % 2 else 1
    B = {e: sm * v for e, v in necklace(ell).items()}
    binoms = generalized_binomials(B, k_max // ell, cap=S)
    out = {}
    for j, b in enumerate(binoms):
        terms = {}
        for e, v in b.items():
            zexp = (m - 1) * e + ell * j
            terms[(e, 0, zexp)] = v * (-1) ** (zexp % 2)
        out[j] = TruncatedSeries(terms, S=S)
    return out


def cycle_index_locally_compact(m: int, k_max: int, S: int) -> CycleIndex:
    """Graded cycle index of locally compact homology of configurations in R^m,
    with x marking the number of components of the dotted forests."""
    return _product((CycleIndex.single_variable(ell, _lc_factor(m, ell, k_max, S), k_max)
                     for ell in range(1, k_max + 1)), k_max)


def pair(zv: CycleIndex, zw: CycleIndex, invert_first: bool = False) -> TruncatedSeries:
    """sum over cycle types of coeff_V * coeff_W * prod_l l^j_l j_l!.

    This is Z_V(a_l <- d/da_l) Z_W(a_l <- l a_l) at a = 0.  With
    ``invert_first`` the z-grading of the first argument is reversed, which
    turns graded dimensions of hom(V, W) into degree of W minus degree of V.
    """
    total = TruncatedSeries()
    for ct, v in zv.terms.items():
        w = zw.terms.get(ct)
        if w is None:
            continue
        weight = 1
        for l, j in ct:
            weight *= l ** j * factorial(j)
        if invert_first:
            v = v.invert_z()
        total = total + (v * w) * weight
    return total


def psi(m: int, n: int, S: int, T: int, k_max: Optional[int] = None) -> TruncatedSeries:
    """Graded dimensions of the bicolored complex: x^s u^t z^degree."""
    k_max = 2 * T if k_max is None else k_max
    zv = cycle_index_locally_compact(m, k_max, S)
    zw = cycle_index_conf_normalized(n, k_max, T)
    out = pair(zv, zw, invert_first=True)
    out.S, out.T = S, T
    return out


def euler_table_via_pairing(m: int, n: int, S: int, T: int) -> Dict[Tuple[int, int], int]:
    """chi_{st} for 0 <= s <= S, 0 <= t <= T from psi at z = -1."""
    out = {}
    for key, v in psi(m, n, S, T).at_z(-1).items():
        if v.denominator != 1:
            raise ArithmeticError(f"non-integer Euler characteristic at {key}")
        out[key] = int(v)
    return out
