from __future__ import annotations

import numpy as np
import pytest

from conftest import random_cells
from zakweyl import UnitCell, make_rice_mele, make_ssh, make_trimer, rotate_cell
from zakweyl.errors import DirichletPole, NotInGap, SymmetryViolation
from zakweyl.impedance import (
    impedance_from_floquet,
    in_gap,
    is_mirror_symmetric,
    surface_impedance,
    symmetrize,
    verify_unimodularity,
)
from zakweyl.transfer import band_edges, dispersion
from zakweyl.weyl import dirichlet_eigenvalues, m_minus, m_plus, m_plus_derivative


def gap_energies(cell, rng, count):
    bands = band_edges(cell)
    lo, hi = bands[0].lambda_min, bands[-1].lambda_max
    pieces = [(lo - 3, lo)] + [(a.lambda_max, b.lambda_min) for a, b in zip(bands, bands[1:])] + [(hi, hi + 3)]
    out = []
    while len(out) < count:
        a, b = pieces[int(rng.integers(len(pieces)))]
        x = rng.uniform(a, b)
        if min(x - a, b - x) > 1e-6:
            out.append(x)
    return out


def test_mirror_examples():
    assert is_mirror_symmetric(make_trimer())
    assert is_mirror_symmetric(make_ssh(1, 2))
    assert not is_mirror_symmetric(UnitCell((1, 2, 3), (0, 0, 0)))
    assert not is_mirror_symmetric(make_rice_mele(1, 2, 0.5))
    assert is_mirror_symmetric(UnitCell((1.0,), (0.3,)))


def test_symmetrize():
    c = symmetrize(UnitCell((1, 2, 3), (0.5, 0, -0.5)))
    assert is_mirror_symmetric(c)
    assert c.a == (1.5, 1.5, 3.0) and c.b == (0.0, 0.0, 0.0)
    assert symmetrize(make_trimer()) == make_trimer()


def test_unimodularity_examples():
    r = verify_unimodularity(make_trimer(), 1, 200)
    assert r.passed and r.max_deviation <= 1e-8 and r.offending_lambda is None
    for n in (1, 2):
        assert verify_unimodularity(make_ssh(1, 2), n).max_deviation <= 1e-8
    with pytest.raises(SymmetryViolation):
        verify_unimodularity(UnitCell((1, 2, 3), (0, 0, 0)), 1)


def test_unimodularity_fails_without_symmetry_shape():
    # a non-symmetric cell violates |a_0 m_+| = 1; bypass the guard to see it
    from zakweyl import impedance

    cell = make_rice_mele(1, 2, 0.5)
    lam = dispersion(cell, 1, 1.0)
    assert abs(abs(cell.a0 * m_plus(cell, lam).m_plus) - 1) > 1e-3
    assert impedance.is_mirror_symmetric(cell) is False


def test_unimodularity_only_at_symmetric_origins():
    t = make_trimer()
    for s in range(3):
        r = rotate_cell(t, s)
        if is_mirror_symmetric(r):
            assert verify_unimodularity(r, 1).passed
    assert not is_mirror_symmetric(rotate_cell(t, 1))


def test_surface_impedance_real_and_routes(rng):
    for cell in [make_ssh(1, 2), make_trimer(), make_rice_mele(1, 2, 0.5)]:
        for lam in gap_energies(cell, rng, 30):
            try:
                z = surface_impedance(cell, lam)
            except DirichletPole:
                continue
            zr, zl = impedance_from_floquet(cell, lam)
            assert abs(z.z_right - zr) <= 1e-10 * max(1.0, abs(zr))
            assert abs(z.z_left - zl) <= 1e-10 * max(1.0, abs(zl))
            assert isinstance(z.z_right, float) and isinstance(z.z_left, float)
            assert abs(m_plus(cell, lam).m_plus.imag) <= 1e-12 if lam not in dirichlet_eigenvalues(cell) else True


def test_ssh_gap_centre():
    z = surface_impedance(make_ssh(1, 2), 0.0)
    zr, zl = impedance_from_floquet(make_ssh(1, 2), 0.0)
    assert z.z_right == pytest.approx(zr, abs=1e-10) and z.z_left == pytest.approx(zl, abs=1e-10)
    assert np.isfinite(z.z_right)


def test_not_in_gap():
    with pytest.raises(NotInGap):
        surface_impedance(make_ssh(1, 2), 2.0)
    assert in_gap(make_ssh(1, 2), 0.0) and in_gap(make_ssh(1, 2), 10.0)
    assert not in_gap(make_ssh(1, 2), -1.0)


def test_herglotz_monotone_in_gaps():
    # m_+' > 0 in gaps, so Z_R decreases and Z_L increases between their poles
    for cell in [make_trimer(), make_ssh(1, 2), make_rice_mele(1.3, 0.6, -0.4)]:
        bands = band_edges(cell)
        a0 = cell.a0
        for a, b in zip(bands, bands[1:]):
            xs = np.linspace(a.lambda_max, b.lambda_min, 200)[2:-2]
            prev = None
            for x in xs:
                try:
                    z = surface_impedance(cell, x)
                    mp, mm = m_plus(cell, x).m_plus.real, m_minus(cell, x).m_minus.real
                except DirichletPole:
                    prev = None
                    continue
                assert m_plus_derivative(cell, x).real > 0
                cur = (z, 1 + a0 * mp, 1 + a0 * mm)
                if prev is not None:
                    if prev[1] * cur[1] > 0:
                        assert cur[0].z_right <= prev[0].z_right + 1e-12
                    if prev[2] * cur[2] > 0:
                        assert cur[0].z_left >= prev[0].z_left - 1e-12
                prev = cur


def test_pole_values():
    # SSH(1,2) at 0 is a pole of both half-line functions; the impedances stay finite
    cell = make_ssh(1, 2)
    with pytest.raises(DirichletPole):
        m_plus(cell, 0.0)
    with pytest.raises(DirichletPole):
        m_minus(cell, 0.0)
    z = surface_impedance(cell, 0.0)
    assert z.z_right == 0.0 and z.z_left == pytest.approx(1 / cell.a0)


def test_random_mirror_unimodular():
    for cell in random_cells(41, 10, mirror=True):
        for n in range(1, cell.p + 1):
            assert verify_unimodularity(cell, n).passed
