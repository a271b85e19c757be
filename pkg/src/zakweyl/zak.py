"""Zak phase from the half-line Weyl function.

Berry connection of an isolated band n at Bloch momentum k:

    A_n(k) = lambda_n'(k) / 2 * Re m_+'(lambda + i0) / (sign(lambda_n'(k)) Im m_+(lambda + i0)) - 1/2,

with lambda = lambda_n(k).  The integrand only involves the dispersion and
boundary values of m_+, so the Zak phase needs no eigenvectors at all.  The
connection it produces is the one of the gauge in which the Bloch vector is
the first cell of the half-line resolvent column (J_+ - lambda)^{-1} e_1; it
differs from other periodic gauges by integer multiples of dk, which leaves
the phase mod 2 pi unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import UnitCell
from .errors import (
    BandEdgeSingularity,
    DirichletPoleOnBand,
    QuadratureFailure,
    SnapFailure,
    SymmetryViolation,
    ValidationError,
)
from .phase import ZakPhaseResult, canonical_phase, circle_distance
from .quadrature import tanh_sinh
from .symbol import DEFAULT_WILSON_GRID, zak_wilson
from .transfer import _canonical_k, discriminant_derivative, dispersion, dispersion_derivative, get_band
from .weyl import dirichlet_eigenvalues, m_plus, weyl_core, weyl_with_derivative

DEFAULT_WEYL_GRID = 501
IM_TOL = 1e-13
EDGE_POLE_TOL = 1e-8
RULES = ("k-midpoint", "lambda-tanh-sinh", "lambda-uniform")


@dataclass(frozen=True)
class BerryConnectionSample:
    k: float
    value: float


def _check_band(cell: UnitCell, n: int):
    """get_band plus a guard against Dirichlet eigenvalues sitting on an edge of band n.

    There m_+ diverges at the edge instead of turning real, the edge terms of
    the band integral change by pi/2 each and the formula no longer applies.
    """
    band = get_band(cell, n)
    for x in dirichlet_eigenvalues(cell):
        for edge in (band.lambda_min, band.lambda_max):
            if abs(x - edge) <= EDGE_POLE_TOL * max(1.0, abs(edge)):
                raise DirichletPoleOnBand(f"Dirichlet eigenvalue {x:.12g} sits on an edge of band {n}")
    return band


def _connection(cell: UnitCell, n: int, ks: np.ndarray) -> np.ndarray:
    lam = np.asarray(dispersion(cell, n, ks))
    dlam = np.asarray(dispersion_derivative(cell, n, ks))
    m, dm = weyl_with_derivative(cell, lam.astype(complex))
    if np.any(m.imag <= IM_TOL * np.abs(m)):
        raise DirichletPoleOnBand(f"Im m_+ vanishes inside band {n}")
    return 0.5 * np.abs(dlam) * dm.real / m.imag - 0.5


def berry_connection_weyl(cell: UnitCell, n: int, k: float) -> BerryConnectionSample:
    """A_n(k) from the dispersion and boundary values of m_+ (k must avoid 0 and +-pi)."""
    _check_band(cell, n)
    kc = float(_canonical_k(k))
    if kc == 0.0 or abs(kc) == math.pi:
        raise BandEdgeSingularity(f"k = {k} is a band-edge momentum")
    return BerryConnectionSample(kc, float(_connection(cell, n, np.array([kc]))[0]))


def berry_connection_weyl_array(cell: UnitCell, n: int, ks) -> np.ndarray:
    _check_band(cell, n)
    ks = _canonical_k(ks)
    if np.any((ks == 0.0) | (np.abs(ks) == math.pi)):
        raise BandEdgeSingularity("band-edge momenta 0 and +-pi are excluded")
    return _connection(cell, n, ks)


def midpoint_nodes(N: int) -> np.ndarray:
    """N equal-weight nodes on [-pi, pi) that never hit -pi, 0 or pi."""
    shift = 0.5 if N % 2 == 0 else 0.25
    return -math.pi + 2 * math.pi * (np.arange(N) + shift) / N


def _gamma_k(cell: UnitCell, n: int, N: int) -> float:
    ks = midpoint_nodes(N)
    return float(np.sum(_connection(cell, n, ks))) * 2 * math.pi / N


def _lambda_integrand(cell: UnitCell):
    def g(lam):
        m, dm = weyl_with_derivative(cell, np.asarray(lam, dtype=complex))
        return dm.real / m.imag
    return g


def _gamma_lambda_tanh_sinh(cell: UnitCell, n: int, tol: float = 1e-8) -> tuple[float, float]:
    band = get_band(cell, n)
    lo, hi = band.lambda_min, band.lambda_max
    # keep nodes where |Delta| - 2 is resolvable; the sliver beyond is added analytically
    slope = max(abs(discriminant_derivative(cell, lo)), abs(discriminant_derivative(cell, hi)))
    d_min = max(1e-12 * (hi - lo), 1e-10 / slope)
    value, err = tanh_sinh(_lambda_integrand(cell), lo, hi, tol=tol, min_distance=d_min, edge_exponent=-0.5)
    return value - math.pi, err


def _gamma_lambda_uniform(cell: UnitCell, n: int, N: int) -> float:
    """Trapezoid rule on the N - 2 interior points of an N-point uniform lambda grid."""
    band = get_band(cell, n)
    xs = np.linspace(band.lambda_min, band.lambda_max, N)[1:-1]
    ys = _lambda_integrand(cell)(xs)
    return float(np.sum(0.5 * (ys[1:] + ys[:-1]) * np.diff(xs))) - math.pi


def _gamma(cell: UnitCell, n: int, N: int, rule: str) -> float:
    if rule == "k-midpoint":
        return _gamma_k(cell, n, N)
    if rule == "lambda-uniform":
        return _gamma_lambda_uniform(cell, n, N)
    raise ValueError(rule)


def zak_weyl(cell: UnitCell, n: int, N: int = DEFAULT_WEYL_GRID, tol: float | None = None,
             rule: str = "k-midpoint", max_refinements: int = 6) -> ZakPhaseResult:
    """Zak phase of band n from the Weyl-function formula.

    ``rule`` selects the quadrature:

    * ``"k-midpoint"`` (default): equal-weight rule for the bounded, periodic
      k-space integrand on N nodes avoiding k = 0, +-pi.  Spectrally accurate.
    * ``"lambda-tanh-sinh"``: the lambda-space integral with double-exponential
      quadrature (N is ignored; converged to ~1e-9).
    * ``"lambda-uniform"``: trapezoid rule on the interior of a uniform
      N-point lambda grid.  Converges only like N**-1/2 because of the
      inverse-square-root edge singularities; kept for comparison with
      naive discretisations.

    ``err_estimate`` is the circle distance between the N and N/2 results.
    With ``tol`` set, N is doubled until the estimate drops below it.
    """
    if rule not in RULES:
        raise ValidationError(f"unknown quadrature rule {rule!r}; choose from {', '.join(RULES)}")
    if N < 16:
        raise ValidationError(f"Weyl quadrature needs N >= 16, got {N}")
    _check_band(cell, n)
    if rule == "lambda-tanh-sinh":
        value, err = _gamma_lambda_tanh_sinh(cell, n)
        return ZakPhaseResult(canonical_phase(value), "weyl_integral", n, 0, float(err), cell.fingerprint())
    for _ in range(max_refinements + 1):
        value = _gamma(cell, n, N, rule)
        coarse = _gamma(cell, n, N // 2, rule)
        err = circle_distance(value, coarse)
        if tol is None or err <= tol:
            return ZakPhaseResult(canonical_phase(value), "weyl_integral", n, N, err, cell.fingerprint())
        N *= 2
    raise QuadratureFailure(f"err_estimate {err:.3e} above tol {tol:.3e} at N = {N // 2}")


@dataclass(frozen=True)
class MethodComparison:
    wilson: ZakPhaseResult
    weyl: ZakPhaseResult
    discrepancy_mod_2pi: float

    def to_dict(self) -> dict:
        return {
            "wilson": self.wilson.to_dict(),
            "weyl": self.weyl.to_dict(),
            "discrepancy_mod_2pi": self.discrepancy_mod_2pi,
        }


def compare_methods(cell: UnitCell, n: int, N: int = DEFAULT_WILSON_GRID, rule: str = "k-midpoint") -> MethodComparison:
    """Wilson loop vs Weyl formula on the same grid size; distance on R / 2 pi Z."""
    w = zak_wilson(cell, n, max(N, 8))
    g = zak_weyl(cell, n, max(N, 16), rule=rule)
    return MethodComparison(w, g, circle_distance(w.value, g.value))


@dataclass(frozen=True)
class QuantisedZak:
    gamma: ZakPhaseResult
    phi_min: float
    phi_max: float


def edge_phase(cell: UnitCell, n: int, which: str, delta: float = 1e-3) -> float:
    """arg m_+(lambda + i0) extrapolated to a band edge from the interior.

    Near an edge arg m_+ is smooth in k, so two samples at distance delta and
    2 delta from the edge momentum give a second-order linear extrapolation.
    """
    band = get_band(cell, n)
    k_edge = band.edge_momentum(which)
    direction = 1.0 if k_edge == 0.0 else -1.0
    ks = k_edge + direction * np.array([delta, 2 * delta])
    lam = dispersion(cell, n, ks)
    m, _, _ = weyl_core(cell, np.asarray(lam, dtype=complex), "+")
    phi = np.unwrap(np.angle(m))
    return float(2 * phi[0] - phi[1])


def _snap(phi: float, which: str) -> float:
    targets = (0.0, math.pi)
    dist = [circle_distance(phi, t) for t in targets]
    j = int(np.argmin(dist))
    if dist[j] > 1e-3:
        raise SnapFailure(f"edge phase at lambda_{which} = {phi:.6f} is not within 1e-3 of 0 or pi")
    return targets[j]


def zak_quantised_symmetric(cell: UnitCell, n: int) -> QuantisedZak:
    """Exactly quantised Zak phase for mirror-symmetric cells.

    On a band of such a cell |m_+| is constant, so the lambda-integrand
    reduces to -d(arg m_+)/d lambda and

        gamma = phi(lambda_min) - phi(lambda_max) - pi,   phi = arg m_+(lambda + i0),

    where both edge phases are 0 or pi because m_+ is real in the gaps.
    """
    from .impedance import is_mirror_symmetric

    if not is_mirror_symmetric(cell):
        raise SymmetryViolation("cell is not mirror symmetric")
    get_band(cell, n)
    phi_min = _snap(edge_phase(cell, n, "min"), "min")
    phi_max = _snap(edge_phase(cell, n, "max"), "max")
    gamma = canonical_phase(phi_min - phi_max - math.pi)
    return QuantisedZak(ZakPhaseResult(gamma, "weyl_quantised", n, 0, 0.0, cell.fingerprint()), phi_min, phi_max)


def boundary_phase(cell: UnitCell, lam: float) -> float:
    """arg m_+(lambda + i0)."""
    return float(np.angle(m_plus(cell, lam).m_plus))
