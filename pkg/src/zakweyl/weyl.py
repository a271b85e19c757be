"""Weyl m-functions of the half-line operators in the closed upper half-plane.

With (u(1), u(0)) an eigenvector of the one-period transfer matrix M(z),

    m_+(z) = -u(1) / (a_0 u(0))      (Floquet multiplier |rho| < 1),
    m_-(z) = -u(0) / (a_0 u(1))      (Floquet multiplier |rho| > 1),

and x = u(1)/u(0) solves M21 x^2 + (M22 - M11) x - M12 = 0.  Written for
m_+ this is

    a m^2 + b m + c = 0,   a = a_0^2 M21,  b = a_0 (M11 - M22),  c = -M12,

whose discriminant is a_0^2 (Delta^2 - 4).  On the real axis inside a band
both roots are complex conjugates and the boundary value lambda + i0 is the
one with Im m > 0; in a gap both roots are real and the Floquet modulus
picks the right one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .core import ComplexEnergy, UnitCell, as_energy
from .errors import (
    BandEdgeSingularity,
    DirichletPole,
    IllPlacedEnergy,
    InputError,
    RootFindingFailure,
)
from .transfer import band_edges, transfer_entries

EDGE_TOL = 1e-12
POLE_TOL = 1e-12
UNIT_CIRCLE_TOL = 1e-12


@dataclass(frozen=True)
class WeylValue:
    """Value of m_+ (or m_-) at z together with the Floquet branch that produced it.

    ``branch`` is ``"interior_disk"`` when the multiplier was selected by its
    modulus and ``"herglotz_limit"`` when it sits on the unit circle and the
    root with Im m > 0 was taken.
    """

    z: ComplexEnergy
    m_plus: complex | None
    m_minus: complex | None
    floquet_multiplier: complex
    branch: str


@dataclass(frozen=True)
class SpectralDensitySample:
    lam: float
    density: float


def _as_complex_array(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag < 0):
        raise IllPlacedEnergy("Weyl functions are only evaluated for Im z >= 0")
    return z


def _eigvec(m11, m12, m21, m22, rho):
    """Eigenvector (u1, u0) of M for eigenvalue rho, from the better-conditioned row."""
    ua1, ua0 = m12, rho - m11
    ub1, ub0 = rho - m22, m21
    use_a = np.abs(ua1) ** 2 + np.abs(ua0) ** 2 >= np.abs(ub1) ** 2 + np.abs(ub0) ** 2
    return np.where(use_a, ua1, ub1), np.where(use_a, ua0, ub0)


def _ratio(num, den, what: str, z):
    small = np.abs(den) < POLE_TOL * np.hypot(np.abs(num), np.abs(den))
    if np.any(small):
        bad = np.asarray(z)[small] if np.ndim(z) else z
        raise DirichletPole(f"{what} has a pole at z = {np.ravel(bad)[0]}")
    return num / den


def weyl_core(cell: UnitCell, z, side: str = "+"):
    """Vectorised m_+ (side '+') or m_- (side '-').

    Returns (m, rho, on_circle) where ``on_circle`` marks points resolved by
    the Herglotz sign rule.
    """
    z = _as_complex_array(z)
    m11, m12, m21, m22 = transfer_entries(cell, z)
    tr = m11 + m22
    s = np.sqrt(tr * tr - 4 + 0j)
    big = np.where(np.abs(tr + s) >= np.abs(tr - s), (tr + s) / 2, (tr - s) / 2)
    small = 1.0 / big
    on_circle = np.abs(np.abs(big) - 1.0) <= UNIT_CIRCLE_TOL
    real_axis = z.imag == 0
    edge = real_axis & (np.abs(np.abs(tr.real) - 2.0) <= EDGE_TOL * np.maximum(1.0, np.abs(tr.real)))
    if np.any(edge):
        raise BandEdgeSingularity(f"z = {np.ravel(z[edge])[0]} is a band edge (Delta = +-2)")
    a0 = cell.a0

    def from_rho(rho):
        u1, u0 = _eigvec(m11, m12, m21, m22, rho)
        if side == "+":
            return -_ratio(u1, u0, "m_+", z) / a0
        return -_ratio(u0, u1, "m_-", z) / a0

    if side not in "+-" or len(side) != 1:
        raise ValueError("side must be '+' or '-'")
    if not np.any(on_circle):
        rho = small if side == "+" else big
        return from_rho(rho), rho, on_circle
    # on the unit circle both multipliers are candidates; keep the Herglotz root
    ma, mb = from_rho(small), from_rho(big)
    pick_a = ma.imag >= mb.imag
    m_circ = np.where(pick_a, ma, mb)
    rho_circ = np.where(pick_a, small, big)
    off = small if side == "+" else big
    m_off = ma if side == "+" else mb
    m = np.where(on_circle, m_circ, m_off)
    rho = np.where(on_circle, rho_circ, off)
    return m, rho, on_circle


def _weyl_value(cell: UnitCell, z, side: str) -> WeylValue:
    z = as_energy(z)
    m, rho, circ = weyl_core(cell, complex(z), side)
    m = complex(m)
    return WeylValue(
        z,
        m if side == "+" else None,
        m if side == "-" else None,
        complex(rho),
        "herglotz_limit" if bool(circ) else "interior_disk",
    )


def m_plus(cell: UnitCell, z) -> WeylValue:
    """m_+(z) for Im z >= 0 (Im z = 0 means the boundary value lambda + i0)."""
    return _weyl_value(cell, z, "+")


def m_minus(cell: UnitCell, z) -> WeylValue:
    """m_-(z) = -u_-(0) / (a_0 u_-(1)) from the solution decaying at -infinity."""
    return _weyl_value(cell, z, "-")


def m_plus_cf(cell: UnitCell, z, depth: int) -> complex:
    """Continued fraction m_+ = 1/(b_1 - z - a_1^2/(b_2 - z - a_2^2/(...))), tail 0.

    Independent oracle for :func:`m_plus`; converges geometrically for Im z > 0.
    """
    z = complex(z) if not isinstance(z, ComplexEnergy) else complex(z)
    if z.imag <= 0:
        raise IllPlacedEnergy("the continued fraction needs Im z > 0")
    if depth < 1:
        raise InputError("depth must be >= 1")
    a, b, p = cell.a, cell.b, cell.p
    tail = 0j
    for level in range(depth - 1, -1, -1):
        j = level % p
        tail = 1.0 / (b[j] - z - a[j] ** 2 * tail)
    return tail


def quadratic_coefficients(cell: UnitCell, z, derivative: bool = False):
    """(a, b, c) of a m_+^2 + b m_+ + c = 0 read off M(z); optionally their z-derivatives."""
    (m11, m12, m21, m22), (d11, d12, d21, d22) = transfer_entries(cell, np.asarray(z, dtype=complex), derivative=True)
    a0 = cell.a0
    coef = (a0**2 * m21, a0 * (m11 - m22), -m12)
    if not derivative:
        return coef
    return coef, (a0**2 * d21, a0 * (d11 - d22), -d12)


def weyl_with_derivative(cell: UnitCell, z):
    """Vectorised (m_+, m_+') by implicit differentiation of the quadratic."""
    m, _, _ = weyl_core(cell, z, "+")
    (qa, qb, qc), (da, db, dc) = quadratic_coefficients(cell, z, derivative=True)
    den = 2 * qa * m + qb
    scale = np.abs(qa) * np.abs(m) + np.abs(qb)
    if np.any(np.abs(den) < 1e-12 * np.maximum(scale, 1e-300)):
        raise BandEdgeSingularity("m_+' is singular here (colliding roots)")
    return m, -(da * m * m + db * m + dc) / den


def m_plus_derivative(cell: UnitCell, z) -> complex:
    """d m_+ / dz, also at boundary values lambda + i0 off the band edges."""
    z = as_energy(z)
    _, dm = weyl_with_derivative(cell, complex(z))
    return complex(dm)


def spectral_density(cell: UnitCell, lam: float) -> SpectralDensitySample:
    """Density Im m_+(lambda + i0)/pi of the half-line spectral measure at e_1."""
    lam = float(lam)
    if not any(b.lambda_min < lam < b.lambda_max for b in band_edges(cell)):
        raise InputError(f"lambda = {lam} is not inside a band; the density is only defined there")
    m = m_plus(cell, lam).m_plus
    return SpectralDensitySample(lam, max(m.imag, 0.0) / np.pi)


def dirichlet_eigenvalues(cell: UnitCell) -> list[float]:
    """Real zeros of the leading coefficient a(lambda) = a_0^2 M21(lambda).

    M21 = u(p) for the solution with u(0) = 0, u(1) = 1, so its zeros are the
    eigenvalues of the (p-1)-site truncation of the cell with Dirichlet ends.
    """
    p = cell.p
    if p == 1:
        return []
    d = cell.b_array[: p - 1]
    e = cell.a_array[: p - 2]
    roots = eigvalsh_tridiagonal(d, e) if p > 2 else d.copy()
    _, _, m21, _ = transfer_entries(cell, roots)
    # M21 is a monic-up-to-scale polynomial of degree p-1; check the residual
    lead = 1.0 / np.prod(cell.a_array[: p - 1])
    scale = lead * np.maximum(1.0, np.abs(roots) + np.max(np.abs(cell.b_array)) + 2 * np.max(cell.a_array)) ** (p - 1)
    if np.any(np.abs(m21) > 1e-8 * scale):
        raise RootFindingFailure("Dirichlet eigenvalues failed the M21 residual check")
    return [float(r) for r in roots]
