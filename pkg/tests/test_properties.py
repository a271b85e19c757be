"""Randomised invariants (hypothesis)."""

from __future__ import annotations

import math

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import cells
from zakweyl import UnitCell, dumps_cell, parse_cell
from zakweyl.errors import BandEdgeSingularity, DirichletPole
from zakweyl.impedance import is_mirror_symmetric, symmetrize
from zakweyl.phase import canonical_phase, circle_distance
from zakweyl.symbol import build_symbol
from zakweyl.transfer import band_edges, discriminant, one_period_transfer
from zakweyl.weyl import m_minus, m_plus, m_plus_cf

energies = st.complex_numbers(max_magnitude=8).map(lambda z: complex(z.real, abs(z.imag)))


@settings(max_examples=200, deadline=None)
@given(cells(), st.floats(-6, 6), st.floats(0, 6))
def test_det_one(cell, re, im):
    M = one_period_transfer(cell, complex(re, im))
    assert abs(M.det - 1) <= 1e-12 * max(1.0, np.linalg.norm(M.entries))


@settings(max_examples=200, deadline=None)
@given(cells(), st.floats(-6, 6), st.floats(1e-3, 10))
def test_herglotz(cell, re, im):
    z = complex(re, im)
    assert m_plus(cell, z).m_plus.imag > 0
    assert m_minus(cell, z).m_minus.imag > 0


@settings(max_examples=60, deadline=None)
@given(cells(), st.floats(-4, 4), st.floats(0.1, 10))
def test_cf_oracle(cell, re, im):
    z = complex(re, im)
    # depth 2000: near Im z = 0.1 a depth-400 truncation is itself only ~1e-9 accurate
    assert abs(m_plus(cell, z).m_plus - m_plus_cf(cell, z, 2000)) <= 1e-9


@settings(max_examples=100, deadline=None)
@given(cells(), st.floats(-math.pi, math.pi))
def test_symbol_hermitian_and_spectrum_in_bands(cell, k):
    F = build_symbol(cell)(k)
    assert np.max(np.abs(F - F.conj().T)) <= 1e-14
    w = np.linalg.eigvalsh(F)
    bands = band_edges(cell)
    for lam, b in zip(w, bands):
        assert b.lambda_min - 1e-9 <= lam <= b.lambda_max + 1e-9
        assert abs(discriminant(cell, lam) - 2 * math.cos(k)) <= 1e-7 * max(1.0, abs(lam)) ** cell.p


@settings(max_examples=100, deadline=None)
@given(cells())
def test_band_edges_ordered(cell):
    bands = band_edges(cell)
    for b in bands:
        assert b.lambda_min <= b.lambda_max
        assert abs(abs(discriminant(cell, b.lambda_min)) - 2) < 1e-8
    for lo, hi in zip(bands, bands[1:]):
        assert lo.lambda_max <= hi.lambda_min + 1e-12


@settings(max_examples=100, deadline=None)
@given(cells(), st.floats(0.01, 0.99), st.integers(0, 4))
def test_boundary_value_continuity(cell, frac, which):
    b = band_edges(cell)[which % cell.p]
    lam = b.lambda_min + frac * (b.lambda_max - b.lambda_min)
    assume(abs(abs(discriminant(cell, lam)) - 2) > 1e-3)
    try:
        m0 = m_plus(cell, lam).m_plus
    except (DirichletPole, BandEdgeSingularity):
        return
    assert m0.imag >= 0
    assert abs(m_plus(cell, complex(lam, 1e-7)).m_plus - m0) <= 1e-3 * max(1.0, abs(m0))


@settings(max_examples=100, deadline=None)
@given(cells())
def test_cell_round_trip(cell):
    for fmt in ("json", "toml"):
        back = parse_cell(dumps_cell(cell, fmt), fmt)
        assert back.a == cell.a and back.b == cell.b


@settings(max_examples=100, deadline=None)
@given(cells())
def test_symmetrize_idempotent(cell):
    s = symmetrize(cell)
    assert is_mirror_symmetric(s)
    assert symmetrize(s) == s


@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
def test_circle_metric(x, y):
    d = circle_distance(x, y)
    assert 0 <= d <= math.pi + 1e-12
    assert abs(d - circle_distance(y, x)) < 1e-9
    c = canonical_phase(x)
    assert -math.pi < c <= math.pi and circle_distance(c, x) < 1e-9


def test_unitcell_strategy_sane():
    assert isinstance(UnitCell((1.0,), (0.0,)), UnitCell)
