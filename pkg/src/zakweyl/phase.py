"""Zak-phase result record and arithmetic on the circle R / 2 pi Z."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

TWO_PI = 2 * math.pi


def canonical_phase(x: float) -> float:
    """Representative of x mod 2 pi in (-pi, pi]."""
    r = math.remainder(float(x), TWO_PI)
    return math.pi if r == -math.pi else r + 0.0  # no negative zero


def circle_distance(x: float, y: float) -> float:
    return abs(math.remainder(float(x) - float(y), TWO_PI))


@dataclass(frozen=True)
class ZakPhaseResult:
    value: float
    method: str
    n: int
    grid: int
    err_estimate: float
    cell_fingerprint: str

    def to_dict(self) -> dict:
        return asdict(self)
