"""From the homotopy fiber over immersions to the embedding space itself.

Rational homotopy of the Stiefel manifold Inj(R^m, R^n), the image of the
connecting map into the graph homology, and the resulting rank bookkeeping.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple


@dataclass(frozen=True)
class StiefelClass:
    degree: int
    label: str  # "Euler" or "Pontryagin"


@dataclass(frozen=True)
class ConnectingClass:
    graph: str  # "segment", "tadpole" or "theta"
    degree: int
    complexity: int
    hodge: int


def _parities(m: int, n: int) -> Tuple[bool, bool]:
    return m % 2 == 1, n % 2 == 1


def stiefel_homotopy(m: int, n: int) -> List[StiefelClass]:
    """Degrees of the rational homotopy generators of Inj(R^m, R^n), n > 2m >= 2."""
    if not (n > 2 * m >= 2):
        raise ValueError("need n > 2m >= 2")
    m_odd, n_odd = _parities(m, n)
    out: List[StiefelClass] = []
    if m_odd and n_odd:
        out.append(StiefelClass(n - m, "Euler"))
        out += [StiefelClass(2 * n - 3 - 4 * k, "Pontryagin") for k in range((m - 1) // 2 + 1)]
    elif m_odd:
        out.append(StiefelClass(n - 1, "Euler"))
        out += [StiefelClass(2 * n - 5 - 4 * k, "Pontryagin") for k in range((m - 3) // 2 + 1)]
    elif n_odd:
        out += [StiefelClass(2 * n - 3 - 4 * k, "Pontryagin") for k in range((m - 2) // 2 + 1)]
    else:
        out.append(StiefelClass(n - 1, "Euler"))
        out.append(StiefelClass(n - m, "Euler"))
        out += [StiefelClass(2 * n - 5 - 4 * k, "Pontryagin") for k in range((m - 2) // 2 + 1)]
    return out


def connecting_image(m: int, n: int) -> List[ConnectingClass]:
    """Graph classes hit by the connecting map from the Stiefel manifold."""
    if n < 2 * m + 2:
        raise ValueError("need n >= 2m + 2")
    out = []
    if (n - m) % 2 == 0:
        out.append(ConnectingClass("segment", n - 2 * m - 1, 1, 2))
    if n % 2 == 0:
        out.append(ConnectingClass("tadpole", n - m - 2, 1, 1))
    else:
        out.append(ConnectingClass("theta", 2 * n - m - 4, 2, 1))
    return out


def rank_adjustments(m: int, n: int) -> Dict[int, int]:
    """Degree -> (+1 or -1) changes from the fiber ranks to the embedding ranks."""
    m_odd, n_odd = _parities(m, n)
    adj: Dict[int, int] = {}

    def bump(d: int, v: int) -> None:
        adj[d] = adj.get(d, 0) + v

    if m_odd and n_odd:
        for k in range((m - 3) // 2 + 1):
            bump(2 * n - m - 7 - 4 * k, 1)
        bump(2 * n - m - 4, -1)
        bump(n - 2 * m - 1, -1)
    elif m_odd:
        for k in range((m - 3) // 2 + 1):
            bump(2 * n - m - 5 - 4 * k, 1)
        bump(n - m - 2, -1)
    elif n_odd:
        for k in range((m - 4) // 2 + 1):
            bump(2 * n - m - 7 - 4 * k, 1)
        bump(2 * n - m - 4, -1)
    else:
        for k in range((m - 2) // 2 + 1):
            bump(2 * n - m - 5 - 4 * k, 1)
        bump(n - m - 2, -1)
        bump(n - 2 * m - 1, -1)
    return {d: v for d, v in sorted(adj.items()) if v}


def emb_rank_adjust(m: int, n: int, bar_ranks: Dict[int, int]) -> Dict[int, int]:
    """Apply the rank changes; a negative rank means the input is inconsistent."""
    if n < 2 * m + 2:
        raise ValueError("need n >= 2m + 2")
    if any(r < 0 for r in bar_ranks.values()):
        raise ValueError("ranks must be nonnegative")
    out = dict(bar_ranks)
    for d, v in rank_adjustments(m, n).items():
        out[d] = out.get(d, 0) + v
        if out[d] < 0:
            raise ValueError(f"negative rank in degree {d}")
    return {d: r for d, r in sorted(out.items()) if r}


# Low-degree generators of the fiber's rational homotopy, as
# (degree as a linear form a*n + b*m + c) per parity class of (m, n).
# Every other generator has degree >= 4n - 3m - 9 when n > 2m + 1.
LOW_DEGREE_GENERATORS: Dict[Tuple[int, int], List[Tuple[int, int, int]]] = {
    (1, 1): [(1, -2, -1), (2, -2, -4), (2, -1, -4), (3, -2, -7), (3, -1, -7), (4, -4, -8)],
    (1, 0): [(1, -1, -2), (2, -3, -3), (3, -2, -7), (3, -1, -7)],
    (0, 1): [(2, -3, -3), (2, -1, -4), (3, -3, -6), (3, -1, -7)],
    (0, 0): [(1, -2, -1), (1, -1, -2), (3, -3, -6), (3, -1, -7)],
}


def low_degree_generators(m: int, n: int) -> List[int]:
    """Sorted degrees of the listed generators; any other one sits at or above low_degree_bound."""
    forms = LOW_DEGREE_GENERATORS[(m % 2, n % 2)]
    return sorted(a * n + b * m + c for a, b, c in forms)


def low_degree_bound(m: int, n: int) -> int:
    return 4 * n - 3 * m - 9
