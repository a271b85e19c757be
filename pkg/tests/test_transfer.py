from __future__ import annotations

import math

import numpy as np
import pytest

from conftest import random_cells
from zakweyl import UnitCell, make_chain, make_ssh, make_trimer
from zakweyl.errors import IsolatedBandViolation, ValidationError
from zakweyl.transfer import (
    band_edges,
    band_gap_width,
    discriminant,
    discriminant_derivative,
    dispersion,
    dispersion_derivative,
    get_band,
    one_period_transfer,
)


def test_chain_transfer_at_zero():
    M = one_period_transfer(make_chain(), 0.0)
    assert np.allclose(M.entries, [[0, -1], [1, 0]])
    assert M.trace == 0
    assert abs(M.det - 1) < 1e-15


def test_det_one_random(rng):
    for cell in random_cells(1, 50, min_gap=0.0):
        for _ in range(20):
            z = complex(rng.uniform(-5, 5), rng.uniform(0, 5))
            M = one_period_transfer(cell, z)
            assert abs(M.det - 1) <= 1e-12 * max(1.0, np.linalg.norm(M.entries))


def test_discriminant_chain():
    c = make_chain()
    lam = np.linspace(-3, 3, 13)
    assert np.allclose(discriminant(c, lam), lam)
    assert discriminant(c, 2.0) == 2.0 and discriminant(c, -2.0) == -2.0


def test_discriminant_is_polynomial(rng):
    for cell in random_cells(2, 20, min_gap=0.0):
        p = cell.p
        nodes = np.linspace(-2, 2, p + 1)
        coef = np.polyfit(nodes, discriminant(cell, nodes), p)
        x = rng.uniform(-3, 3, 10)
        assert np.allclose(np.polyval(coef, x), discriminant(cell, x), rtol=1e-10, atol=1e-10)


def test_derivative_matches_fd(rng):
    h = 1e-5
    for cell in random_cells(3, 10, min_gap=0.0):
        for lam in rng.uniform(-3, 3, 10):
            fd = (discriminant(cell, lam + h) - discriminant(cell, lam - h)) / (2 * h)
            assert abs(discriminant_derivative(cell, lam) - fd) <= 1e-6 * max(1.0, abs(fd))


def test_band_edges_examples():
    (b,) = band_edges(make_chain())
    assert (b.lambda_min, b.lambda_max, b.isolated) == pytest.approx((-2, 2, True))
    lo, hi = band_edges(make_ssh(1, 2))
    assert (lo.lambda_min, lo.lambda_max) == pytest.approx((-3, -1), abs=1e-12)
    assert (hi.lambda_min, hi.lambda_max) == pytest.approx((1, 3), abs=1e-12)
    assert lo.isolated and hi.isolated
    assert band_gap_width(make_ssh(1, 2), 1) == pytest.approx(2)
    lo, hi = band_edges(make_ssh(1, 1))
    assert not lo.isolated and not hi.isolated
    assert lo.lambda_max == pytest.approx(0, abs=1e-7) and hi.lambda_min == pytest.approx(0, abs=1e-7)
    assert all(b.isolated for b in band_edges(make_trimer()))


def test_edge_kinds():
    lo, hi = band_edges(make_ssh(1, 2))
    # lower band: k = 0 at the bottom; upper band: k = 0 at the top
    assert (lo.edge_kind_min, lo.edge_kind_max) == ("k0", "kpi")
    assert (hi.edge_kind_min, hi.edge_kind_max) == ("kpi", "k0")
    assert hi.edge_momentum("max") == 0.0 and hi.edge_momentum("min") == math.pi


def test_band_and_gap_signs(rng):
    for cell in random_cells(4, 20):
        bands = band_edges(cell)
        for b in bands:
            inside = rng.uniform(b.lambda_min, b.lambda_max, 20)[1:-1]
            assert np.all(np.abs(discriminant(cell, inside)) < 2)
        for left, right in zip(bands, bands[1:]):
            gap = np.linspace(left.lambda_max, right.lambda_min, 12)[1:-1]
            assert np.all(np.abs(discriminant(cell, gap)) > 2)
        assert np.abs(discriminant(cell, bands[0].lambda_min - 0.1)) > 2
        assert np.abs(discriminant(cell, bands[-1].lambda_max + 0.1)) > 2


def test_get_band_errors():
    with pytest.raises(ValidationError):
        get_band(make_ssh(1, 2), 3)
    with pytest.raises(IsolatedBandViolation):
        get_band(make_ssh(1, 1), 1)
    assert get_band(make_ssh(1, 1), 1, require_isolated=False).n == 1


def test_dispersion_examples():
    ks = np.linspace(-math.pi, math.pi, 9)
    assert np.allclose(dispersion(make_chain(), 1, ks), 2 * np.cos(ks), atol=1e-13)
    ssh = make_ssh(1, 2)
    assert dispersion(ssh, 2, 0.0) == pytest.approx(3)
    assert dispersion(ssh, 2, math.pi) == pytest.approx(1)
    assert np.allclose(dispersion(ssh, 1, ks), -np.abs(1 + 2 * np.exp(-1j * ks)), atol=1e-13)
    with pytest.raises(IsolatedBandViolation):
        dispersion(make_ssh(1, 1), 1, 0.3)


def test_dispersion_even_and_edges():
    for cell in random_cells(5, 15):
        for b in band_edges(cell):
            ks = np.linspace(0.01, 3.1, 7)
            assert np.allclose(dispersion(cell, b.n, ks), dispersion(cell, b.n, -ks), atol=1e-13)
            ends = sorted([dispersion(cell, b.n, 0.0), dispersion(cell, b.n, math.pi)])
            assert ends == pytest.approx([b.lambda_min, b.lambda_max], abs=1e-10)
            vals = dispersion(cell, b.n, np.linspace(0, math.pi, 50))
            d = np.diff(vals)
            assert np.all(d >= -1e-12) or np.all(d <= 1e-12)


def test_dispersion_derivative():
    ks = np.array([0.3, 1.0, 2.5])
    assert np.allclose(dispersion_derivative(make_chain(), 1, ks), -2 * np.sin(ks), atol=1e-12)
    for k in (0.0, math.pi, -math.pi):
        assert dispersion_derivative(make_ssh(1, 2), 2, k) == 0.0
    ssh, h = make_ssh(1, 2), 1e-5
    fd = (dispersion(ssh, 2, math.pi / 2 + h) - dispersion(ssh, 2, math.pi / 2 - h)) / (2 * h)
    assert dispersion_derivative(ssh, 2, math.pi / 2) == pytest.approx(fd, abs=1e-6)


def test_p1_offsets():
    c = UnitCell((0.5,), (0.3,))
    (b,) = band_edges(c)
    assert (b.lambda_min, b.lambda_max) == pytest.approx((-0.7, 1.3))
