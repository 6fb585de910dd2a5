"""Generating function of the Euler characteristics and its inversion.

For each cycle length ``l`` the contribution is the finite expansion

    sum_j binom(B, j) * sum_i binom(j, i) (-1)^(j-i) prod_{r<i} c (A - r)

with ``A = (-1)^n E_l(1/u)``, ``B = (-1)^m E_l(x)`` and
``c = (-1)^n l u^l``.  Each factor ``c (A - r)`` equals ``1 + w - r c`` with
``w = sum_{d | l, d > 1} mu(d) u^(l - l/d)``, so everything stays a
polynomial in ``u`` and no Laurent arithmetic is needed.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from math import comb, gcd
from typing import Dict, List, Optional, Tuple

from .symfunc import mobius, necklace

Table = Dict[Tuple[int, int], int]


class BiSeries:
    """Polynomial in x and u truncated at x^S and u^T (dense storage)."""

    __slots__ = ("S", "T", "c")

    def __init__(self, S: int, T: int, coeffs: Optional[List[List[Fraction]]] = None):
        self.S = S
        self.T = T
        # c[t][s] is the coefficient of x^s u^t
        self.c = coeffs if coeffs is not None else [[Fraction(0)] * (S + 1) for _ in range(T + 1)]

    @classmethod
    def zero(cls, S: int, T: int) -> "BiSeries":
        return cls(S, T)

    @classmethod
    def one(cls, S: int, T: int) -> "BiSeries":
        out = cls(S, T)
        out.c[0][0] = Fraction(1)
        return out

    @classmethod
    def from_dict(cls, terms: Dict[Tuple[int, int], object], S: int, T: int) -> "BiSeries":
        out = cls(S, T)
        for (s, t), v in terms.items():
            out.add_term(s, t, v)
        return out

    def add_term(self, s: int, t: int, v) -> None:
        if 0 <= s <= self.S and 0 <= t <= self.T:
            self.c[t][s] += v

    def __getitem__(self, st: Tuple[int, int]) -> Fraction:
        s, t = st
        return self.c[t][s]

    def to_dict(self) -> Dict[Tuple[int, int], Fraction]:
        return {(s, t): v for t, row in enumerate(self.c) for s, v in enumerate(row) if v}

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        S, T = min(self.S, other.S), min(self.T, other.T)
        out = [[Fraction(0)] * (S + 1) for _ in range(T + 1)]
        for ta in range(T + 1):
            ra = self.c[ta]
            nz_a = [(s, v) for s, v in enumerate(ra[:S + 1]) if v]
            if not nz_a:
                continue
            for tb in range(T + 1 - ta):
                rb = other.c[tb]
                nz_b = [(s, v) for s, v in enumerate(rb[:S + 1]) if v]
                if not nz_b:
                    continue
                target = out[ta + tb]
                for sa, va in nz_a:
                    for sb, vb in nz_b:
                        if sa + sb > S:
                            break
                        target[sa + sb] += va * vb
        return BiSeries(S, T, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        S, T = min(self.S, other.S), min(self.T, other.T)
        return all(self.c[t][s] == other.c[t][s] for t in range(T + 1) for s in range(S + 1))

    def integer_table(self, min_t: int = 1) -> Table:
        out = {}
        for t in range(min_t, self.T + 1):
            for s in range(self.S + 1):
                v = self.c[t][s]
                if v.denominator != 1:
                    raise ArithmeticError(f"non-integer coefficient {v} at (s,t)=({s},{t})")
                if v:
                    out[(s, t)] = int(v)
        return out


def _poly_mul(a: List, b: List, cap: int) -> List:
    out = [0] * min(len(a) + len(b) - 1, cap + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if i + j > cap:
                break
            out[i + j] += x * y
    return out


def _factor_u_parts(ell: int, n: int, T: int, J: int) -> List[List[int]]:
    """D_j(u) = sum_i binom(j,i) (-1)^(j-i) prod_{r<i} (1 + w - r c), j <= J."""
    sign_n = -1 if n % 2 else 1
    base = [0] * (T + 1)  # 1 + w
    base[0] = 1
    for d in range(2, ell + 1):
        if ell % d == 0:
            e = ell - ell // d
            if e <= T:
                base[e] += mobius(d)
    c_coeff = sign_n * ell
    prods = [[1]]  # prods[i] = prod_{r<i} (1 + w - r c)
    for i in range(1, J + 1):
        r = i - 1
        factor = list(base)
        if ell <= T:
            factor[ell] -= r * c_coeff
        prods.append(_poly_mul(prods[-1], factor, T))
    parts = []
    for j in range(J + 1):
        acc = [0] * (T + 1)
        for i in range(j + 1):
            k = comb(j, i) * (-1) ** (j - i)
            for e, v in enumerate(prods[i]):
                acc[e] += k * v
        parts.append(acc)
    return parts


def _binomial_poly_x(poly: List[Fraction], j: int, S: int) -> List[Fraction]:
    """binom(P, j) for a polynomial P(x) without constant term, truncated at x^S."""
    out = [Fraction(1)] + [Fraction(0)] * S
    for r in range(j):
        shifted = list(poly) + [Fraction(0)] * (S + 1 - len(poly))
        shifted = shifted[:S + 1]
        shifted[0] -= r
        out = _poly_mul(out, shifted, S)
        out = out + [Fraction(0)] * (S + 1 - len(out))
    f = Fraction(1, 1)
    for r in range(1, j + 1):
        f *= r
    return [v / f for v in out]


def factor(ell: int, m: int, n: int, S: int, T: int) -> BiSeries:
    """Contribution of cycle length ``ell`` to F_{mn}, truncated at (S, T)."""
    if ell < 1:
        raise ValueError("cycle length must be positive")
    # D_j starts at u^(ceil(j l / 2)) or later; binom(B, j) only starts at
    # x^1, so the x truncation gives no bound on j
    J = (2 * T) // ell
    parts = _factor_u_parts(ell, n, T, J)
    neck = necklace(ell)
    sign_m = -1 if m % 2 else 1
    B = [Fraction(0)] * (min(ell, S) + 1)
    for e, v in neck.items():
        if e <= S:
            B[e] = sign_m * v
    out = BiSeries.zero(S, T)
    for j in range(J + 1):
        dj = parts[j]
        if not any(dj):
            continue
        bx = _binomial_poly_x(B, j, S)
        for t, ut in enumerate(dj):
            if not ut:
                continue
            row = out.c[t]
            for s, xs in enumerate(bx):
                if xs:
                    row[s] += ut * xs
    return out


def generating_function(m: int, n: int, S: int, T: int, check_cutoff: bool = True) -> BiSeries:
    """F_{mn}(x, u) = sum chi_{st} x^s u^t up to x^S u^T."""
    out = BiSeries.one(S, T)
    for ell in range(1, 2 * T + 1):
        out = out * factor(ell, m, n, S, T)
    if check_cutoff and T >= 1:
        extra = factor(2 * T + 1, m, n, S, T)
        if extra != BiSeries.one(S, T):
            raise ArithmeticError("factor beyond the cutoff contributes inside the window")
    return out


F = generating_function


def log_series(f: BiSeries) -> BiSeries:
    """log f for f with constant term 1 and no pure-x terms.

    Uses u d/du log f = (u f_u) / f, solved degree by degree in u.
    """
    S, T = f.S, f.T
    if f.c[0][0] != 1 or any(f.c[0][1:]):
        raise ValueError("series must be 1 + O(u)")
    L = [[Fraction(0)] * (S + 1) for _ in range(T + 1)]
    # q = u f_u / f; q_t = t f_t - sum_{k=1}^{t-1} f_k q_{t-k}
    q = [[Fraction(0)] * (S + 1) for _ in range(T + 1)]
    for t in range(1, T + 1):
        acc = [t * v for v in f.c[t]]
        for k in range(1, t):
            fk = f.c[k]
            qk = q[t - k]
            for a, va in enumerate(fk):
                if not va:
                    continue
                for b in range(S + 1 - a):
                    if qk[b]:
                        acc[a + b] -= va * qk[b]
        q[t] = acc
        L[t] = [v / t for v in acc]
    return BiSeries(S, T, L)


def exp_series(g: BiSeries) -> BiSeries:
    """exp g for g = O(u): E_t = (1/t) sum_k k g_k E_{t-k}."""
    S, T = g.S, g.T
    if any(g.c[0]):
        raise ValueError("series must be O(u)")
    E = [[Fraction(0)] * (S + 1) for _ in range(T + 1)]
    E[0][0] = Fraction(1)
    for t in range(1, T + 1):
        acc = [Fraction(0)] * (S + 1)
        for k in range(1, t + 1):
            gk = g.c[k]
            Ek = E[t - k]
            for a, va in enumerate(gk):
                if not va:
                    continue
                for b in range(S + 1 - a):
                    if Ek[b]:
                        acc[a + b] += k * va * Ek[b]
        E[t] = [v / t for v in acc]
    return BiSeries(S, T, E)


def chi_pi_from_F(f: BiSeries, S: Optional[int] = None, T: Optional[int] = None) -> Table:
    """Connected Euler characteristics from F = prod (1 - x^s u^t)^(-chi_pi)."""
    S = f.S if S is None else S
    T = f.T if T is None else T
    L = log_series(f)
    out: Table = {}
    for t in range(1, T + 1):
        for s in range(0, S + 1):
            g = gcd(s, t)
            acc = Fraction(0)
            for r in range(1, g + 1):
                if g % r == 0:
                    mu = mobius(r)
                    if mu:
                        acc += Fraction(mu, r) * L.c[t // r][s // r]
            if acc.denominator != 1:
                raise ArithmeticError(f"non-integer connected Euler characteristic at ({s},{t})")
            if acc:
                out[(s, t)] = int(acc)
    return out


def euler_tables(m: int, n: int, S: int, T: int) -> Tuple[Table, Table]:
    """(connected, full) Euler characteristic tables for 1 <= t <= T."""
    f = generating_function(m, n, S, T)
    return chi_pi_from_F(f), f.integer_table(min_t=1)


# ---------------------------------------------------------------------------
# rendering


def table_rows(table: Table, S: int, T: int, min_t: int = 1) -> List[List[int]]:
    return [[table.get((s, t), 0) for s in range(1, S + 1)] for t in range(min_t, T + 1)]


def emit_table(table: Table, fmt: str = "csv", S: Optional[int] = None, T: Optional[int] = None,
               min_t: int = 1) -> str:
    """Render rows by t and columns by s, with a total-absolute-value column.

    ``S`` and ``T`` default to the largest indices present.
    """
    if S is None:
        S = max((s for s, _ in table), default=0)
    if T is None:
        T = max((t for _, t in table), default=min_t - 1)
    if S == 0 and T >= 0 and (0, 0) in table:
        # degenerate window holding only the empty graph
        cols = [0]
    else:
        cols = list(range(1, S + 1))
    rows = [(t, [table.get((s, t), 0) for s in cols]) for t in range(min_t, T + 1)]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t"] + [f"s={s}" for s in cols] + ["total"])
        for t, vals in rows:
            w.writerow([t] + vals + [sum(abs(v) for v in vals)])
        return buf.getvalue()
    if fmt == "json":
        payload = {
            "columns": cols,
            "rows": [{"t": t, "values": vals, "total": sum(abs(v) for v in vals)} for t, vals in rows],
        }
        return json.dumps(payload, sort_keys=True) + "\n"
    if fmt == "md":
        head = "| t | " + " | ".join(f"s={s}" for s in cols) + " | total |"
        sep = "|" + "---|" * (len(cols) + 2)
        lines = [head, sep]
        for t, vals in rows:
            lines.append(f"| {t} | " + " | ".join(str(v) for v in vals) + f" | {sum(abs(v) for v in vals)} |")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def parse_json_table(text: str) -> Table:
    payload = json.loads(text)
    cols = payload["columns"]
    out: Table = {}
    for row in payload["rows"]:
        for s, v in zip(cols, row["values"]):
            if v:
                out[(s, row["t"])] = v
    return out
