from __future__ import annotations

import json
import math

import pytest

from zakweyl import core
from zakweyl.core import (
    ComplexEnergy,
    UnitCell,
    canonical_momentum,
    dumps_cell,
    load_cell,
    make_chain,
    make_preset,
    make_rice_mele,
    make_ssh,
    make_trimer,
    parse_cell,
    rotate_cell,
)
from zakweyl.errors import IllPlacedEnergy, NonPositiveHopping, ParseError, ValidationError


def test_presets():
    assert make_ssh(1, 2) == UnitCell((1, 2), (0, 0))
    assert make_ssh(2, 1).a == (2.0, 1.0)
    assert make_rice_mele(1, 2, 0.5) == UnitCell((1, 2), (0.5, -0.5))
    assert make_rice_mele(1, 2, 0) == make_ssh(1, 2)
    t = make_trimer()
    assert (t.p, t.a, t.b) == (3, (1.2, 1.2, 1.5), (0.0, 1.0, 0.0))
    assert make_chain().p == 1
    with pytest.raises(NonPositiveHopping):
        make_ssh(1, 0)
    with pytest.raises(NonPositiveHopping):
        make_rice_mele(0, 1, 1)
    with pytest.raises(ValidationError):
        make_preset("graphene")


@pytest.mark.parametrize("a, b", [((), ()), ((1.0,), (0.0, 0.0)), ((1.0, -2.0), (0, 0)), ((0.0,), (0,)),
                                  ((1.0,), (math.nan,)), ((math.inf,), (0.0,))])
def test_invalid_cells(a, b):
    with pytest.raises(ValidationError):
        UnitCell(a, b)


def test_cell_properties():
    c = make_trimer()
    assert c.a0 == 1.5
    assert c.fingerprint() == UnitCell((1.2, 1.2, 1.5), (0, 1, 0), name="other").fingerprint()
    assert c.fingerprint() != make_ssh(1, 2).fingerprint()
    assert c == UnitCell((1.2, 1.2, 1.5), (0, 1, 0), name="other")


def test_energy_and_momentum():
    assert complex(ComplexEnergy(1.0, 0.5)) == 1 + 0.5j
    with pytest.raises(IllPlacedEnergy):
        ComplexEnergy(0.0, -1e-3)
    assert canonical_momentum(math.pi) == math.pi
    assert canonical_momentum(-math.pi) == -math.pi
    assert canonical_momentum(3 * math.pi) == pytest.approx(math.pi)
    assert canonical_momentum(2 * math.pi + 0.25) == pytest.approx(0.25)


def test_rotate():
    c = UnitCell((1, 2, 3), (4, 5, 6))
    r = rotate_cell(c, 1)
    assert r.a == (2, 3, 1) and r.b == (5, 6, 4)
    assert rotate_cell(c, 3) == c
    assert rotate_cell(c, -1) == rotate_cell(c, 2)


def test_parse_json_and_toml():
    c = parse_cell('{"a":[1.0,2.0],"b":[0.0,0.0]}')
    assert c == make_ssh(1, 2)
    t = parse_cell('name = "x"\na = [1.0, 2.0]\nb = [0.0, 0.0]\n')
    assert t == c and t.name == "x"
    with pytest.raises(ValidationError):
        parse_cell('{"a":[1.0],"b":[0.0,0.0]}')
    with pytest.raises(ValidationError):
        parse_cell('{"a":[1.0,-2.0],"b":[0.0,0.0]}')


@pytest.mark.parametrize("doc", [
    "{", '{"a":[1],"b":[0],"c":1}', '{"a":[1]}', '{"a":"12","b":[0]}', '{"a":[true],"b":[0]}',
    '{"a":[NaN],"b":[0]}', '{"a":[1],"b":[0],"name":3}', "[1, 2]", "a = [1.0\n", b"\xff\xfe",
])
def test_parse_errors(doc):
    with pytest.raises(ParseError):
        parse_cell(doc)


def test_parse_unknown_format():
    with pytest.raises(ParseError):
        parse_cell("{}", "yaml")


@pytest.mark.parametrize("fmt", ["json", "toml"])
def test_round_trip(fmt):
    c = UnitCell((0.1, 1 / 3, 2.5e-7), (-0.7, 1e300, 0.0), name="rt")
    back = parse_cell(dumps_cell(c, fmt), fmt)
    assert back == c and back.name == "rt"
    assert back.a == c.a and back.b == c.b  # bit-exact


def test_load_cell(tmp_path):
    p = tmp_path / "c.toml"
    p.write_text(dumps_cell(make_trimer(), "toml"))
    assert load_cell(p) == make_trimer()
    with pytest.raises(ParseError):
        load_cell(tmp_path / "missing.json")


def test_to_dict_json():
    d = make_ssh(1, 2).to_dict()
    assert json.loads(json.dumps(d)) == {"a": [1.0, 2.0], "b": [0.0, 0.0], "name": "ssh"}
    assert core.PRESETS == ("ssh", "rice-mele", "trimer", "chain")
