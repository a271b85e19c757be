from __future__ import annotations

import numpy as np
import pytest
from hypothesis import strategies as st

from zakweyl import UnitCell, band_edges


def random_cell(rng, p=None, mirror=False, min_gap=0.05, a_range=(0.5, 2.0), b_range=(-1.0, 1.0)):
    """Random cell whose bands are all separated by at least ``min_gap``."""
    for _ in range(1000):
        q = p or int(rng.integers(1, 6))
        a = rng.uniform(*a_range, size=q)
        b = rng.uniform(*b_range, size=q)
        if mirror:
            b = 0.5 * (b + b[::-1])
            if q > 1:
                a[: q - 1] = 0.5 * (a[: q - 1] + a[: q - 1][::-1])
        cell = UnitCell(tuple(a), tuple(b))
        bands = band_edges(cell)
        gaps = [bands[i + 1].lambda_min - bands[i].lambda_max for i in range(q - 1)]
        if all(g >= min_gap for g in gaps):
            return cell
    raise RuntimeError("no admissible random cell")


def random_cells(seed, count, **kw):
    rng = np.random.default_rng(seed)
    return [random_cell(rng, **kw) for _ in range(count)]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


hopping = st.floats(0.5, 2.0, allow_nan=False)
onsite = st.floats(-1.0, 1.0, allow_nan=False)


@st.composite
def cells(draw, max_p=5):
    p = draw(st.integers(1, max_p))
    a = draw(st.lists(hopping, min_size=p, max_size=p))
    b = draw(st.lists(onsite, min_size=p, max_size=p))
    return UnitCell(tuple(a), tuple(b))
