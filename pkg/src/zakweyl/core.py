"""Unit cells of periodic Jacobi operators, model presets and cell documents.

A cell stores one period of the coefficients of

    (J u)(n) = a[n-1] u(n-1) + b[n] u(n) + a[n] u(n+1),

with user-facing indices 1..p.  ``a[p]`` is the hopping that crosses the cell
boundary; it doubles as ``a_0`` in every formula that needs the hopping to
the left of site 1.
"""

from __future__ import annotations

import hashlib
import json
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .errors import IllPlacedEnergy, NonPositiveHopping, ParseError, ValidationError

_DOC_KEYS = {"a", "b", "name"}


@dataclass(frozen=True)
class UnitCell:
    """One period of a Jacobi operator: hoppings ``a`` and on-site terms ``b``."""

    a: tuple[float, ...]
    b: tuple[float, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        a = tuple(float(x) for x in self.a)
        b = tuple(float(x) for x in self.b)
        if len(a) == 0:
            raise ValidationError("a unit cell needs at least one site")
        if len(a) != len(b):
            raise ValidationError(f"length mismatch: len(a)={len(a)}, len(b)={len(b)}")
        if not all(math.isfinite(x) for x in a + b):
            raise ValidationError("cell entries must be finite")
        bad = [i + 1 for i, x in enumerate(a) if x <= 0.0]
        if bad:
            raise NonPositiveHopping(f"hoppings must be strictly positive (a_i <= 0 at i={bad})")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def p(self) -> int:
        return len(self.a)

    @property
    def a0(self) -> float:
        """Boundary hopping a_0, identified with a_p."""
        return self.a[-1]

    @property
    def a_array(self) -> np.ndarray:
        return np.asarray(self.a, dtype=float)

    @property
    def b_array(self) -> np.ndarray:
        return np.asarray(self.b, dtype=float)

    def fingerprint(self) -> str:
        payload = json.dumps({"a": list(self.a), "b": list(self.b)}, separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def to_dict(self) -> dict:
        d: dict = {"a": list(self.a), "b": list(self.b)}
        if self.name is not None:
            d["name"] = self.name
        return d


@dataclass(frozen=True)
class ComplexEnergy:
    """Energy in the closed upper half-plane; ``im == 0`` means lambda + i0."""

    re: float
    im: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ValidationError("energy must be finite")
        if self.im < 0:
            raise IllPlacedEnergy(f"Im z = {self.im} < 0; only the closed upper half-plane is allowed")

    def __complex__(self) -> complex:
        return complex(self.re, self.im)


def as_energy(z) -> ComplexEnergy:
    if isinstance(z, ComplexEnergy):
        return z
    z = complex(z)
    return ComplexEnergy(z.real, z.imag)


def canonical_momentum(k: float) -> float:
    """Representative of k mod 2*pi in [-pi, pi] (pi itself is kept)."""
    k = float(k)
    if -math.pi <= k <= math.pi:
        return k
    r = math.remainder(k, 2 * math.pi)
    return math.pi if r == -math.pi else r


# -- presets -----------------------------------------------------------------

def make_ssh(t1: float, t2: float) -> UnitCell:
    """Su-Schrieffer-Heeger cell: intracell hopping t1, intercell hopping t2."""
    if t1 <= 0 or t2 <= 0:
        raise NonPositiveHopping(f"SSH hoppings must be positive, got t1={t1}, t2={t2}")
    return UnitCell((t1, t2), (0.0, 0.0), name="ssh")


def make_rice_mele(t1: float, t2: float, delta: float) -> UnitCell:
    """Rice-Mele cell: SSH plus staggered on-site potential (+delta, -delta)."""
    if t1 <= 0 or t2 <= 0:
        raise NonPositiveHopping(f"Rice-Mele hoppings must be positive, got t1={t1}, t2={t2}")
    return UnitCell((t1, t2), (float(delta), -float(delta)), name="rice-mele")


def make_trimer() -> UnitCell:
    """Mirror-symmetric trimer with b = (0, 1, 0) and a = (1.2, 1.2, 1.5)."""
    return UnitCell((1.2, 1.2, 1.5), (0.0, 1.0, 0.0), name="trimer")


def make_chain(a: float = 1.0, b: float = 0.0) -> UnitCell:
    """Monatomic chain (p = 1)."""
    return UnitCell((a,), (b,), name="chain")


PRESETS = ("ssh", "rice-mele", "trimer", "chain")


def make_preset(name: str, t1: float = 1.0, t2: float = 2.0, delta: float = 0.0) -> UnitCell:
    if name == "ssh":
        return make_ssh(t1, t2)
    if name == "rice-mele":
        return make_rice_mele(t1, t2, delta)
    if name == "trimer":
        return make_trimer()
    if name == "chain":
        return make_chain()
    raise ValidationError(f"unknown model preset {name!r}; choose from {', '.join(PRESETS)}")


def rotate_cell(cell: UnitCell, s: int) -> UnitCell:
    """Shift the cell origin by ``s`` sites: new site j is old site j + s.

    The Weyl function of the rotated cell is m_+(z, s) of the original one.
    """
    s = int(s) % cell.p
    a = cell.a[s:] + cell.a[:s]
    b = cell.b[s:] + cell.b[:s]
    return UnitCell(a, b, name=cell.name)


# -- documents ---------------------------------------------------------------

def _number_list(value, key: str) -> list[float]:
    if not isinstance(value, Sequence) or isinstance(value, (str, bytes)):
        raise ParseError(f"field {key!r} must be an array of numbers")
    out = []
    for x in value:
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise ParseError(f"field {key!r} contains a non-numeric entry: {x!r}")
        out.append(float(x))
    return out


def cell_from_mapping(doc: Mapping) -> UnitCell:
    if not isinstance(doc, Mapping):
        raise ParseError("cell document must be an object")
    unknown = set(doc) - _DOC_KEYS
    if unknown:
        raise ParseError(f"unknown keys in cell document: {sorted(unknown)}")
    for key in ("a", "b"):
        if key not in doc:
            raise ParseError(f"cell document is missing {key!r}")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError("field 'name' must be a string")
    return UnitCell(_number_list(doc["a"], "a"), _number_list(doc["b"], "b"), name=name)


def parse_cell(document: str | bytes | Mapping, fmt: str | None = None) -> UnitCell:
    """Parse a JSON or TOML cell document.

    ``fmt`` is ``"json"``, ``"toml"`` or ``None`` (sniffed: a document whose
    first non-blank character is ``{`` is JSON).
    """
    if isinstance(document, Mapping):
        return cell_from_mapping(document)
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"cell document is not UTF-8: {exc}") from None
    if fmt is None:
        fmt = "json" if document.lstrip().startswith("{") else "toml"
    if fmt == "json":
        try:
            doc = json.loads(document, parse_constant=_reject_constant)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON: {exc}") from None
    elif fmt == "toml":
        try:
            doc = tomllib.loads(document)
        except tomllib.TOMLDecodeError as exc:
            raise ParseError(f"malformed TOML: {exc}") from None
    else:
        raise ParseError(f"unsupported cell document format {fmt!r}")
    return cell_from_mapping(doc)


def _reject_constant(token: str):
    raise ParseError(f"non-finite constant {token} in cell document")


def load_cell(path: str | Path) -> UnitCell:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not UTF-8: {exc}") from None
    fmt = {".json": "json", ".toml": "toml"}.get(path.suffix.lower())
    return parse_cell(text, fmt)


def dumps_cell(cell: UnitCell, fmt: str = "json") -> str:
    """Serialize a cell; floats use the shortest round-trip representation."""
    if fmt == "json":
        return json.dumps(cell.to_dict())
    if fmt == "toml":
        lines = []
        if cell.name is not None:
            lines.append(f"name = {json.dumps(cell.name)}")
        lines.append("a = [" + ", ".join(repr(x) for x in cell.a) + "]")
        lines.append("b = [" + ", ".join(repr(x) for x in cell.b) + "]")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unsupported format {fmt!r}")
