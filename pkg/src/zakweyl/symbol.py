"""Bloch symbol f(k), band eigenpairs and the discrete Wilson-loop Zak phase.

The symbol acts on one cell of a Bloch solution u = (..., e^{-ik} v, v, e^{ik} v, ...):

    f(k) = tridiag(b; a_1..a_{p-1}) + a_p (E_{1p} e^{-ik} + E_{p1} e^{ik}).

Eigenvectors are used in the periodic gauge (no intracell position phases),
so f(k + 2 pi) = f(k) and the Wilson loop closes on itself.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import UnitCell
from .errors import DegenerateEigenvalue, ValidationError
from .phase import ZakPhaseResult, canonical_phase, circle_distance
from .transfer import get_band

DEGENERACY_TOL = 1e-10
DEFAULT_WILSON_GRID = 501


@dataclass(frozen=True)
class BlochSymbol:
    cell: UnitCell

    def evaluate(self, k) -> np.ndarray:
        """f(k) for scalar k (p x p) or an array of k (..., p, p)."""
        k = np.asarray(k, dtype=float)
        p = self.cell.p
        f = np.zeros(k.shape + (p, p), dtype=complex)
        idx = np.arange(p)
        f[..., idx, idx] = self.cell.b_array
        for j in range(p - 1):
            f[..., j, j + 1] = self.cell.a[j]
            f[..., j + 1, j] = self.cell.a[j]
        ap = self.cell.a0
        f[..., 0, p - 1] += ap * np.exp(-1j * k)
        f[..., p - 1, 0] += ap * np.exp(1j * k)
        return f

    __call__ = evaluate


def build_symbol(cell: UnitCell) -> BlochSymbol:
    return BlochSymbol(cell)


@dataclass(frozen=True)
class BandEigenpair:
    k: float
    lam: float
    v: np.ndarray


def _fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate so that the largest-modulus component is real and positive."""
    j = int(np.argmax(np.abs(v)))
    out = v * (abs(v[j]) / v[j])
    out[j] = abs(v[j])
    return out


def band_eigenpair(symbol: BlochSymbol, n: int, k: float) -> BandEigenpair:
    get_band(symbol.cell, n)
    w, vecs = np.linalg.eigh(symbol.evaluate(k))
    _check_simple(w, n, k)
    return BandEigenpair(float(k), float(w[n - 1]), _fix_phase(vecs[:, n - 1]))


def _check_simple(w: np.ndarray, n: int, k) -> None:
    gaps = np.diff(w, axis=-1)
    near = []
    if n > 1:
        near.append(gaps[..., n - 2])
    if n < w.shape[-1]:
        near.append(gaps[..., n - 1])
    if near and np.min(near) < DEGENERACY_TOL:
        raise DegenerateEigenvalue(f"eigenvalue {n} of f(k) is not simple (k={k})")


def band_vectors(cell: UnitCell, n: int, ks) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and (unphased) eigenvectors of band n on a k grid."""
    w, vecs = np.linalg.eigh(build_symbol(cell).evaluate(ks))
    _check_simple(w, n, "grid")
    return w[..., n - 1], vecs[..., :, n - 1]


def wilson_phase(vectors: np.ndarray) -> float:
    """-arg prod_j <v_j, v_{j+1}> over a closed loop (last vector links to the first)."""
    v = np.asarray(vectors)
    overlaps = np.einsum("ij,ij->i", v.conj(), np.roll(v, -1, axis=0))
    return -float(np.angle(np.prod(overlaps / np.abs(overlaps))))


def _wilson_value(cell: UnitCell, n: int, N: int) -> float:
    ks = -np.pi + 2 * np.pi * np.arange(N) / N
    _, vecs = band_vectors(cell, n, ks)
    return canonical_phase(wilson_phase(vecs))


def zak_wilson(cell: UnitCell, n: int, N: int = DEFAULT_WILSON_GRID) -> ZakPhaseResult:
    """Zak phase of band n from the discrete Wilson loop on N points of [-pi, pi)."""
    if N < 8:
        raise ValidationError(f"Wilson grid needs N >= 8, got {N}")
    get_band(cell, n)
    value = _wilson_value(cell, n, N)
    coarse = _wilson_value(cell, n, max(N // 2, 4))
    return ZakPhaseResult(value, "wilson", n, N, circle_distance(value, coarse), cell.fingerprint())
