"""Published reference values used by the verification suites."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Callable, Dict, List, Tuple

PARITY_NAMES = {(1, 1): "oo", (1, 0): "oe", (0, 1): "eo", (0, 0): "ee"}


@lru_cache(maxsize=None)
def _tables() -> dict:
    text = resources.files("longemb").joinpath("data/euler_tables.json").read_text()
    return json.loads(text)


def appendix_table(m: int, n: int, connected: bool) -> Dict[Tuple[int, int], int]:
    """Published Euler characteristics for 1 <= s, t <= 23 (zeros omitted)."""
    rows = _tables()[PARITY_NAMES[(m % 2, n % 2)]]["connected" if connected else "full"]
    return {(s, t): v for t, row in enumerate(rows, start=1) for s, v in enumerate(row, start=1) if v}


@dataclass(frozen=True)
class LowClass:
    """A homology class of low complexity: present when ``condition`` holds."""

    t: int
    s: int
    degree: Callable[[int, int], int]
    condition: Callable[[int, int], bool]
    name: str


LOW_COMPLEXITY: List[LowClass] = [
    LowClass(1, 2, lambda m, n: n - 2 * m - 1, lambda m, n: (n - m) % 2 == 0, "segment"),
    LowClass(1, 1, lambda m, n: n - m - 2, lambda m, n: n % 2 == 0, "tadpole"),
    LowClass(2, 3, lambda m, n: 2 * n - 3 * m - 3, lambda m, n: (n - m) % 2 == 1, "tripod"),
    LowClass(2, 2, lambda m, n: 2 * n - 2 * m - 4, lambda m, n: m % 2 == 1 and n % 2 == 1, "2-wheel"),
    LowClass(2, 1, lambda m, n: 2 * n - m - 4, lambda m, n: n % 2 == 1, "theta"),
    LowClass(3, 3, lambda m, n: 3 * n - 3 * m - 6, lambda m, n: m % 2 == 0, "3-wheel"),
    LowClass(3, 2, lambda m, n: 3 * n - 2 * m - 7, lambda m, n: m % 2 == 1, "t3-s2"),
    LowClass(3, 1, lambda m, n: 3 * n - m - 7, lambda m, n: True, "t3-s1"),
]


def expected_low_complexity(m: int, n: int, t: int) -> Dict[Tuple[int, int], int]:
    """{(s, degree): rank} expected at complexity t <= 3."""
    out: Dict[Tuple[int, int], int] = {}
    for c in LOW_COMPLEXITY:
        if c.t == t and c.condition(m, n):
            key = (c.s, c.degree(m, n))
            out[key] = out.get(key, 0) + 1
    return out


def wheel_survives(m: int, n: int, t: int) -> bool:
    """Parity pattern for the t-wheel to carry a nonzero class."""
    m_odd, n_odd = m % 2 == 1, n % 2 == 1
    if m_odd and n_odd:
        return t % 2 == 0
    if m_odd:
        return t % 4 == 1
    if n_odd:
        return t % 4 == 3
    return t % 2 == 1


SMALL_COMPLEXITY_PAIRS = [(1, 4), (1, 5), (2, 6), (2, 7), (3, 8), (3, 9)]
