"""One-period transfer matrix, Floquet discriminant, band edges and dispersion.

The single-site factor

    A_j(z) = [[(z - b_j)/a_j, -a_{j-1}/a_j],
              [1,             0           ]]

maps (u(j), u(j-1)) to (u(j+1), u(j)), with a_0 = a_p.  The period product
M = A_p ... A_1 therefore has unit determinant.  Everything here is
vectorised over the energy argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .core import ComplexEnergy, UnitCell, as_energy
from .errors import IsolatedBandViolation, RootFindingFailure, ValidationError

GAP_TOL = 1e-9
EDGE_XTOL = 1e-14


def transfer_entries(cell: UnitCell, z, derivative: bool = False):
    """Entries (m11, m12, m21, m22) of M(z), broadcast over ``z``.

    With ``derivative=True`` also returns the entries of dM/dz.
    """
    z = np.asarray(z)
    dtype = np.result_type(z.dtype, float)
    one = np.ones(z.shape, dtype=dtype)
    m11, m12, m21, m22 = one, np.zeros_like(one), np.zeros_like(one), one
    if derivative:
        d11, d12, d21, d22 = (np.zeros_like(one) for _ in range(4))
    a = cell.a
    for j in range(cell.p):
        aj = a[j]
        alpha = (z - cell.b[j]) / aj
        beta = -a[j - 1] / aj
        if derivative:
            # d(A M) = dA M + A dM, dA = [[1/a_j, 0], [0, 0]]
            d11, d12, d21, d22 = (
                m11 / aj + alpha * d11 + beta * d21,
                m12 / aj + alpha * d12 + beta * d22,
                d11,
                d12,
            )
        m11, m12, m21, m22 = alpha * m11 + beta * m21, alpha * m12 + beta * m22, m11, m12
    if derivative:
        return (m11, m12, m21, m22), (d11, d12, d21, d22)
    return m11, m12, m21, m22


@dataclass(frozen=True)
class TransferMatrix:
    z: ComplexEnergy
    entries: np.ndarray
    det: complex

    @property
    def trace(self) -> complex:
        return complex(self.entries[0, 0] + self.entries[1, 1])


def one_period_transfer(cell: UnitCell, z) -> TransferMatrix:
    """M(z) = A_p(z) ... A_1(z) acting on (u(1), u(0))."""
    z = as_energy(z)
    m11, m12, m21, m22 = transfer_entries(cell, complex(z))
    entries = np.array([[m11, m12], [m21, m22]], dtype=complex)
    return TransferMatrix(z, entries, complex(m11 * m22 - m12 * m21))


def discriminant(cell: UnitCell, lam):
    """Floquet discriminant: trace of M at real energy ``lam``."""
    m11, _, _, m22 = transfer_entries(cell, np.asarray(lam, dtype=float))
    out = m11 + m22
    return float(out) if np.ndim(out) == 0 else out


def discriminant_derivative(cell: UnitCell, lam):
    _, (d11, _, _, d22) = transfer_entries(cell, np.asarray(lam, dtype=float), derivative=True)
    out = d11 + d22
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class Band:
    """Spectral band n (1-based) = [lambda_min, lambda_max].

    ``edge_kind_*`` is ``"k0"`` when the edge solves Delta = +2 (attained at
    k = 0) and ``"kpi"`` when it solves Delta = -2 (attained at k = +-pi).
    """

    n: int
    lambda_min: float
    lambda_max: float
    isolated: bool
    edge_kind_min: str
    edge_kind_max: str

    @property
    def width(self) -> float:
        return self.lambda_max - self.lambda_min

    def edge_momentum(self, which: str) -> float:
        kind = self.edge_kind_min if which == "min" else self.edge_kind_max
        return 0.0 if kind == "k0" else math.pi


def spectral_bounds(cell: UnitCell) -> tuple[float, float]:
    """An interval that strictly contains the spectrum (Gershgorin plus margin)."""
    amax = max(cell.a)
    return min(cell.b) - 2 * amax - 1.0, max(cell.b) + 2 * amax + 1.0


def _critical_points(cell: UnitCell) -> list[float]:
    """The p - 1 zeros of Delta', one inside each (possibly closed) gap."""
    want = cell.p - 1
    if want == 0:
        return []
    lo, hi = spectral_bounds(cell)
    dfun = lambda x: discriminant_derivative(cell, x)  # noqa: E731
    n = max(64, 32 * cell.p)
    for _ in range(12):
        j = np.arange(n)
        grid = np.sort(0.5 * (lo + hi) - 0.5 * (hi - lo) * np.cos(np.pi * (j + 0.5) / n))
        vals = discriminant_derivative(cell, grid)
        roots = [float(x) for x, v in zip(grid, vals) if v == 0.0]
        s = np.sign(vals)
        for i in np.nonzero(s[:-1] * s[1:] < 0)[0]:
            roots.append(brentq(dfun, grid[i], grid[i + 1], xtol=EDGE_XTOL, rtol=4 * np.finfo(float).eps))
        roots = sorted(set(roots))
        if len(roots) == want:
            return roots
        n *= 2
    raise RootFindingFailure(
        f"expected {want} critical points of the discriminant, found {len(roots)}"
    )


def _solve_level(cell: UnitCell, level: float, left: float, right: float) -> float:
    """Unique root of Delta = level in [left, right] (Delta monotone there)."""
    f = lambda x: discriminant(cell, x) - level  # noqa: E731
    fl, fr = f(left), f(right)
    if fl == 0.0:
        return left
    if fr == 0.0:
        return right
    if fl * fr > 0:
        # level only touched at an endpoint (closed gap): pick the closer one
        return left if abs(fl) < abs(fr) else right
    try:
        return brentq(f, left, right, xtol=EDGE_XTOL, rtol=4 * np.finfo(float).eps)
    except (ValueError, RuntimeError) as exc:  # pragma: no cover - brentq is safeguarded
        raise RootFindingFailure(str(exc)) from None


@lru_cache(maxsize=256)
def _band_edges_cached(cell: UnitCell) -> tuple[Band, ...]:
    lo, hi = spectral_bounds(cell)
    cuts = [lo, *_critical_points(cell), hi]
    raw = []
    for n in range(cell.p):
        left, right = cuts[n], cuts[n + 1]
        dl, dr = discriminant(cell, left), discriminant(cell, right)
        if abs(dl) < 2 - 1e-12 or abs(dr) < 2 - 1e-12 or dl * dr > 0:
            raise RootFindingFailure(
                f"discriminant bracket for band {n + 1} is inconsistent: "
                f"Delta({left})={dl}, Delta({right})={dr}"
            )
        sl, sr = math.copysign(2.0, dl), math.copysign(2.0, dr)
        lmin = _solve_level(cell, sl, left, right)
        lmax = _solve_level(cell, sr, left, right)
        if lmin > lmax:
            raise RootFindingFailure(f"band {n + 1}: edges out of order ({lmin} > {lmax})")
        raw.append((lmin, lmax, "k0" if sl > 0 else "kpi", "k0" if sr > 0 else "kpi"))
    bands = []
    for n, (lmin, lmax, kmin, kmax) in enumerate(raw):
        gap_below = math.inf if n == 0 else lmin - raw[n - 1][1]
        gap_above = math.inf if n == cell.p - 1 else raw[n + 1][0] - lmax
        isolated = gap_below > GAP_TOL and gap_above > GAP_TOL and lmax - lmin > GAP_TOL
        bands.append(Band(n + 1, lmin, lmax, isolated, kmin, kmax))
    return tuple(bands)


def band_edges(cell: UnitCell) -> list[Band]:
    """All p bands in ascending order.

    Critical points of the discriminant split the real line into p intervals
    on which Delta is monotone; each band's edges are the roots of
    Delta = +-2 inside its interval.  A closed gap shows up as a critical
    point where |Delta| = 2, and both neighbouring bands are then flagged as
    not isolated.
    """
    return list(_band_edges_cached(cell))


def get_band(cell: UnitCell, n: int, require_isolated: bool = True) -> Band:
    if not 1 <= n <= cell.p:
        raise ValidationError(f"band index {n} outside 1..{cell.p}")
    band = _band_edges_cached(cell)[n - 1]
    if require_isolated and not band.isolated:
        raise IsolatedBandViolation(
            f"band {n} is not isolated (edges [{band.lambda_min:.12g}, {band.lambda_max:.12g}])"
        )
    return band


def band_gap_width(cell: UnitCell, n: int) -> float:
    """Smallest distance from band n to its neighbours (inf for p = 1)."""
    bands = _band_edges_cached(cell)
    b = bands[n - 1]
    below = b.lambda_min - bands[n - 2].lambda_max if n > 1 else math.inf
    above = bands[n].lambda_min - b.lambda_max if n < cell.p else math.inf
    return min(below, above)


def _canonical_k(k) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    wrapped = np.remainder(k + np.pi, 2 * np.pi) - np.pi
    return np.where(np.abs(k) <= np.pi, k, wrapped)


def dispersion(cell: UnitCell, n: int, k):
    """lambda_n(k): the root of Delta(lambda) = 2 cos k inside band n.

    Vectorised bisection on the monotone branch of Delta; converges to a
    bracket of a few ulps.
    """
    band = get_band(cell, n)
    k = _canonical_k(k)
    target = 2.0 * np.cos(k)
    lo = np.full(k.shape, band.lambda_min)
    hi = np.full(k.shape, band.lambda_max)
    # orient so that Delta - target is <= 0 at lo
    increasing = band.edge_kind_max == "k0"
    sign = 1.0 if increasing else -1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        g = sign * (discriminant(cell, mid) - target)
        lo = np.where(g <= 0, mid, lo)
        hi = np.where(g <= 0, hi, mid)
        if np.all(hi - lo <= 2 * np.finfo(float).eps * np.maximum(1.0, np.abs(mid))):
            break
    else:  # pragma: no cover - 200 halvings always suffice in double precision
        raise RootFindingFailure(f"dispersion bisection did not converge for band {n}")
    lam = 0.5 * (lo + hi)
    return float(lam) if lam.ndim == 0 else lam


def dispersion_derivative(cell: UnitCell, n: int, k):
    """d lambda_n / dk = -2 sin k / Delta'(lambda_n(k)); exactly 0 at k in {0, +-pi}."""
    k = _canonical_k(k)
    lam = np.asarray(dispersion(cell, n, k))
    dprime = np.asarray(discriminant_derivative(cell, lam))
    at_edge = (k == 0.0) | (np.abs(k) == np.pi)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(at_edge, 0.0, -2.0 * np.sin(k) / dprime)
    return float(out) if out.ndim == 0 else out
