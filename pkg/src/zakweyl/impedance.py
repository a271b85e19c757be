"""Surface impedances in spectral gaps and mirror-symmetric unit cells."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import UnitCell
from .errors import DirichletPole, NotInGap, SymmetryViolation
from .transfer import band_edges, dispersion, get_band, transfer_entries
from .weyl import _eigvec, weyl_core


@dataclass(frozen=True)
class Impedance:
    lam: float
    z_right: float
    z_left: float


def in_gap(cell: UnitCell, lam: float) -> bool:
    """True for lambda in an open gap, including the two unbounded ones."""
    return not any(b.lambda_min <= lam <= b.lambda_max for b in band_edges(cell))


def _m_or_pole(cell: UnitCell, lam: float, side: str):
    try:
        m, _, _ = weyl_core(cell, complex(lam), side)
    except DirichletPole:
        return None
    return float(np.real(m))


def surface_impedance(cell: UnitCell, lam: float) -> Impedance:
    """Z_R = 1/(a_0 + a_0^2 m_+) and Z_L = a_0 m_- / (a_0 + a_0^2 m_-) at a gap energy.

    A pole of m_+ (or m_-) is a removable point of Z_R (or Z_L) with value 0
    (or 1/a_0).  A vanishing denominator raises :class:`DirichletPole`.
    """
    lam = float(lam)
    if not in_gap(cell, lam):
        raise NotInGap(f"lambda = {lam} is not inside a spectral gap")
    a0 = cell.a0
    mp = _m_or_pole(cell, lam, "+")
    mm = _m_or_pole(cell, lam, "-")
    den_r = None if mp is None else a0 + a0 * a0 * mp
    den_l = None if mm is None else a0 + a0 * a0 * mm
    for den, label in ((den_r, "Z_R"), (den_l, "Z_L")):
        if den is not None and abs(den) < 1e-14 * a0:
            raise DirichletPole(f"{label} diverges at lambda = {lam}")
    z_r = 0.0 if mp is None else 1.0 / den_r
    z_l = 1.0 / a0 if mm is None else a0 * mm / den_l
    return Impedance(lam, z_r, z_l)


def impedance_from_floquet(cell: UnitCell, lam: float) -> tuple[float, float]:
    """(Z_R, Z_L) as field-to-flux ratios u(0) / (a_0 (u(0) - u(1))) of the decaying solutions.

    Independent of the m-function route: reads (u(1), u(0)) straight off the
    Floquet eigenvectors.
    """
    m11, m12, m21, m22 = (complex(x) for x in transfer_entries(cell, complex(lam)))
    tr = (m11 + m22).real
    s = np.sqrt(tr * tr - 4.0)
    big = (tr + s) / 2 if tr >= 0 else (tr - s) / 2
    out = []
    for rho in (1.0 / big, big):
        u1, u0 = _eigvec(m11, m12, m21, m22, rho)
        out.append(float(np.real(u0 / (cell.a0 * (u0 - u1)))))
    return out[0], out[1]


def is_mirror_symmetric(cell: UnitCell) -> bool:
    """b_i = b_{p-i+1} and a_i = a_{p-i} (i = 1..p, a_0 = a_p), compared exactly."""
    p = cell.p
    a, b = cell.a, cell.b
    if any(b[i] != b[p - 1 - i] for i in range(p)):
        return False
    # 1-based a_i = a_{p-i}; a_0 is a_p
    return all(a[i - 1] == a[(p - i - 1) % p] for i in range(1, p + 1))


def symmetrize(cell: UnitCell) -> UnitCell:
    """Nearest mirror-symmetric cell, averaging each pair of mirrored entries."""
    p = cell.p
    a, b = np.array(cell.a), np.array(cell.b)
    b_sym = 0.5 * (b + b[::-1])
    a_sym = a.copy()
    if p > 1:
        inner = a[: p - 1]
        a_sym[: p - 1] = 0.5 * (inner + inner[::-1])
    return UnitCell(tuple(a_sym), tuple(b_sym), name=cell.name)


@dataclass(frozen=True)
class UnimodularityReport:
    n: int
    samples: int
    max_deviation: float
    worst_lambda: float
    offending_lambda: float | None
    passed: bool


def verify_unimodularity(cell: UnitCell, n: int, samples: int = 200, tol: float = 1e-8) -> UnimodularityReport:
    """Check |a_0 m_+(lambda + i0)| = 1 at ``samples`` band-interior energies (uniform in k)."""
    if not is_mirror_symmetric(cell):
        raise SymmetryViolation("unimodularity only holds for mirror-symmetric cells")
    get_band(cell, n)
    ks = np.pi * (np.arange(samples) + 0.5) / samples
    lam = np.asarray(dispersion(cell, n, ks))
    m, _, _ = weyl_core(cell, lam.astype(complex), "+")
    dev = np.abs(cell.a0 * np.abs(m) - 1.0)
    j = int(np.argmax(dev))
    worst = float(dev[j])
    return UnimodularityReport(n, samples, worst, float(lam[j]), float(lam[j]) if worst > tol else None, worst <= tol)
