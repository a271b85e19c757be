"""Command-line front end.

    zakweyl bands | zak | sweep | mweyl | impedance | check-symmetry [options]

Exit status: 0 on success, 2 for invalid input, 3 for numerical failures.
Options may also come from a JSON/TOML file given with --config; flags on
the command line win over the file, which wins over the built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import svg
from .core import PRESETS, UnitCell, load_cell, make_preset, tomllib
from .errors import (
    BandEdgeSingularity,
    DirichletPole,
    InputError,
    NotInGap,
    NumericalError,
    ParseError,
    ValidationError,
    ZakWeylError,
)
from .formats import csv_text, json_text
from .impedance import is_mirror_symmetric, surface_impedance, verify_unimodularity
from .phase import circle_distance
from .symbol import build_symbol, zak_wilson
from .transfer import band_edges, band_gap_width, dispersion, spectral_bounds
from .weyl import dirichlet_eigenvalues, weyl_core
from .zak import RULES, berry_connection_weyl_array, midpoint_nodes, zak_quantised_symmetric, zak_weyl

SCHEMA_VERSION = 1
DEGENERATE_GAP = 1e-3


# -- configuration -----------------------------------------------------------

def _band_arg(text: str):
    if text == "all":
        return "all"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"band must be an integer or 'all', got {text!r}") from None


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("model and output")
    g.add_argument("--model", default=None,
                   help=f"preset ({', '.join(PRESETS)}), 'custom' with --file, or a path to a cell document")
    g.add_argument("--file", help="cell document (JSON or TOML with keys a, b, name)")
    g.add_argument("--t1", type=float, default=1.0, help="first hopping of ssh / rice-mele")
    g.add_argument("--t2", type=float, default=2.0, help="second hopping of ssh / rice-mele")
    g.add_argument("--delta", type=float, default=0.0, help="staggered potential of rice-mele")
    g.add_argument("--config", help="JSON/TOML file with option defaults")
    g.add_argument("--output", "-o", default="-", help="output path ('-' = stdout)")
    g.add_argument("--format", choices=("csv", "json", "svg"), default=None,
                   help="output format (default: from the output suffix, else csv/json per command)")
    g.add_argument("--grid", type=int, default=501, help="k-grid size N (>= 16)")
    g.add_argument("--jobs", type=int, default=None, help="worker processes for sweeps (default: all cores)")
    g.add_argument("--quiet", "-q", action="store_true", help="suppress informational messages")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zakweyl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bands", help="band edges, isolation flags and sampled dispersions")
    _common(p)
    p.add_argument("--points", type=int, default=101, help="k samples per band on [-pi, pi]")

    p = sub.add_parser("zak", help="Zak phase by Wilson loop and Weyl formula")
    _common(p)
    p.add_argument("--band", type=_band_arg, default=1)
    p.add_argument("--method", choices=("wilson", "weyl", "both"), default="both")
    p.add_argument("--rule", choices=RULES, default="k-midpoint", help="quadrature rule of the Weyl formula")

    p = sub.add_parser("sweep", help="method comparison over a (t2/t1, delta) lattice")
    _common(p)
    p.set_defaults(model="rice-mele")
    p.add_argument("--band", type=int, default=1)
    p.add_argument("--rule", choices=RULES, default="k-midpoint")
    p.add_argument("--ratio-min", type=float, default=0.2, help="smallest t2/t1")
    p.add_argument("--ratio-max", type=float, default=5.0)
    p.add_argument("--ratio-points", type=int, default=21)
    p.add_argument("--delta-min", type=float, default=-1.0)
    p.add_argument("--delta-max", type=float, default=1.0)
    p.add_argument("--delta-points", type=int, default=21)
    p.add_argument("--spacing", choices=("linear", "log"), default="linear", help="spacing of the t2/t1 axis")

    p = sub.add_parser("mweyl", help="m_+ (or m_-) along a line lambda + i eps")
    _common(p)
    p.add_argument("--band", type=int, default=None, help="sample the interior of this band (uniform in k)")
    p.add_argument("--lambda", dest="lam", type=float, default=None, help="single energy")
    p.add_argument("--lambda-min", type=float, default=None)
    p.add_argument("--lambda-max", type=float, default=None)
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--eps", type=float, default=0.0, help="imaginary part (0 = boundary value)")
    p.add_argument("--side", choices=("+", "-"), default="+")

    p = sub.add_parser("impedance", help="surface impedances Z_R, Z_L on a lambda grid")
    _common(p)
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--lambda-min", type=float, default=None)
    p.add_argument("--lambda-max", type=float, default=None)
    p.add_argument("--points", type=int, default=201)

    p = sub.add_parser("check-symmetry", help="mirror symmetry, unimodularity and quantised Zak phases")
    _common(p)
    p.add_argument("--samples", type=int, default=200)
    return parser


def _load_config(path: str) -> dict:
    text_path = Path(path)
    try:
        text = text_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read config {path}: {exc}") from None
    try:
        if text_path.suffix.lower() == ".toml" or not text.lstrip().startswith("{"):
            data = tomllib.loads(text)
        else:
            data = json.loads(text)
    except (ValueError, json.JSONDecodeError) as exc:
        raise ParseError(f"malformed config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ParseError("config must be a table/object")
    return {k.replace("-", "_"): v for k, v in data.items()}


def parse_args(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        cfg = _load_config(args.config)
        sub = parser._subparsers._group_actions[0].choices[args.command]  # noqa: SLF001
        known = {a.dest for a in sub._actions}  # noqa: SLF001
        unknown = sorted(set(cfg) - known - {"config"})
        if unknown:
            raise ValidationError(f"unknown config keys for {args.command}: {unknown}")
        sub.set_defaults(**cfg)
        args = parser.parse_args(argv)
    return args


def _cell(args) -> UnitCell:
    model = args.model
    if model in (None, "custom") and args.file:
        return load_cell(args.file)
    if model == "custom":
        raise ValidationError("--model custom needs --file")
    if model is not None and args.file:
        raise ValidationError("give either a preset --model or --file, not both")
    model = model or "ssh"
    if model not in PRESETS and (Path(model).suffix.lower() in (".json", ".toml") or Path(model).exists()):
        return load_cell(model)
    return make_preset(model, args.t1, args.t2, args.delta)


def _check_grid(args) -> None:
    if args.grid < 16:
        raise ValidationError(f"--grid must be >= 16, got {args.grid}")


def _bands(cell: UnitCell, band) -> list[int]:
    if band == "all":
        return list(range(1, cell.p + 1))
    if not 1 <= band <= cell.p:
        raise ValidationError(f"band {band} outside 1..{cell.p}")
    return [band]


def _fmt_for(args, default: str) -> str:
    if args.format:
        return args.format
    suffix = Path(args.output).suffix.lower().lstrip(".") if args.output != "-" else ""
    return suffix if suffix in ("csv", "json", "svg") else default


# -- commands ----------------------------------------------------------------

def cmd_bands(args) -> str:
    cell = _cell(args)
    if args.points < 2:
        raise ValidationError("--points must be >= 2")
    bands = band_edges(cell)
    ks = np.linspace(-math.pi, math.pi, args.points)
    lam = np.linalg.eigvalsh(build_symbol(cell).evaluate(ks))
    fmt = _fmt_for(args, "csv")
    if fmt == "csv":
        rows = [(n, float(k), float(lam[i, n - 1])) for n in range(1, cell.p + 1) for i, k in enumerate(ks)]
        return csv_text(("band", "k", "lambda"), rows)
    if fmt == "json":
        return json_text({
            "schema_version": SCHEMA_VERSION,
            "command": "bands",
            "cell": cell.to_dict(),
            "bands": [
                {
                    "n": b.n, "lambda_min": b.lambda_min, "lambda_max": b.lambda_max,
                    "isolated": b.isolated, "edge_kind_min": b.edge_kind_min, "edge_kind_max": b.edge_kind_max,
                    "k": ks.tolist(), "lambda": lam[:, b.n - 1].tolist(),
                }
                for b in bands
            ],
        })
    series = [(f"band {n}", ks, lam[:, n - 1]) for n in range(1, cell.p + 1)]
    return svg.line_plot(series, title=f"{cell.name or 'cell'} dispersion", xlabel="k", ylabel="lambda")


def _zak_record(cell, n, args) -> dict:
    rec: dict = {"band": n}
    w = g = None
    if args.method in ("wilson", "both"):
        w = zak_wilson(cell, n, args.grid)
        rec["wilson"] = w.to_dict()
    if args.method in ("weyl", "both"):
        g = zak_weyl(cell, n, args.grid, rule=args.rule)
        rec["weyl"] = g.to_dict()
        rec["weyl"]["rule"] = args.rule
    rec["discrepancy_mod_2pi"] = circle_distance(w.value, g.value) if w and g else None
    return rec


def cmd_zak(args) -> str:
    _check_grid(args)
    cell = _cell(args)
    records = [_zak_record(cell, n, args) for n in _bands(cell, args.band)]
    fmt = _fmt_for(args, "json")
    if fmt == "json":
        return json_text({
            "schema_version": SCHEMA_VERSION,
            "command": "zak",
            "cell": cell.to_dict(),
            "results": records,
        })
    if fmt == "csv":
        rows = []
        for r in records:
            for m in ("wilson", "weyl"):
                if m in r:
                    z = r[m]
                    rows.append((r["band"], m, z["value"], z["grid"], z["err_estimate"], r["discrepancy_mod_2pi"]))
        return csv_text(("band", "method", "value", "grid", "err_estimate", "discrepancy"), rows)
    ks = midpoint_nodes(args.grid)
    series = [(f"band {r['band']}", ks, berry_connection_weyl_array(cell, r["band"], ks)) for r in records]
    return svg.line_plot(series, title="Berry connection from m_+", xlabel="k", ylabel="A(k)")


def _sweep_point(task):
    t1, ratio, delta, band, grid, rule = task
    row = {"zak_wilson": None, "zak_weyl": None, "discrepancy": None, "degenerate": False, "error": ""}
    try:
        cell = make_preset("rice-mele", t1, t1 * ratio, delta)
        edges = band_edges(cell)
        if band < 1 or band > cell.p:
            raise ValidationError(f"band {band} outside 1..{cell.p}")
        if band_gap_width(cell, band) < DEGENERATE_GAP or edges[band - 1].width < DEGENERATE_GAP:
            row["degenerate"] = True
            return row
        w = zak_wilson(cell, band, grid)
        g = zak_weyl(cell, band, grid, rule=rule)
        row.update(zak_wilson=w.value, zak_weyl=g.value, discrepancy=circle_distance(w.value, g.value))
    except ZakWeylError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def cmd_sweep(args) -> str:
    _check_grid(args)
    if args.model not in ("rice-mele", "ssh"):
        raise ValidationError("sweep supports --model rice-mele or ssh")
    if args.t1 <= 0:
        raise ValidationError("--t1 must be positive")
    if args.ratio_points < 1 or args.delta_points < 1:
        raise ValidationError("lattice sizes must be >= 1")
    if args.ratio_min <= 0 or args.ratio_max < args.ratio_min:
        raise ValidationError("need 0 < ratio-min <= ratio-max")
    if args.spacing == "log":
        ratios = np.geomspace(args.ratio_min, args.ratio_max, args.ratio_points)
    else:
        ratios = np.linspace(args.ratio_min, args.ratio_max, args.ratio_points)
    deltas = np.array([0.0]) if args.model == "ssh" else np.linspace(args.delta_min, args.delta_max, args.delta_points)
    tasks = [(args.t1, float(r), float(d), args.band, args.grid, args.rule) for d in deltas for r in ratios]
    jobs = args.jobs if args.jobs else (os.cpu_count() or 1)
    if jobs < 1:
        raise ValidationError("--jobs must be >= 1")
    if jobs == 1 or len(tasks) < 8:
        results = [_sweep_point(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
            results = list(pool.map(_sweep_point, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    fmt = _fmt_for(args, "csv")
    header = ("param1", "param2", "zak_wilson", "zak_weyl", "discrepancy", "degenerate", "error")
    if fmt == "csv":
        rows = [(t[1], t[2], r["zak_wilson"], r["zak_weyl"], r["discrepancy"], r["degenerate"], r["error"])
                for t, r in zip(tasks, results)]
        return csv_text(header, rows)
    if fmt == "json":
        finite = [r["discrepancy"] for r in results if r["discrepancy"] is not None]
        return json_text({
            "schema_version": SCHEMA_VERSION,
            "command": "sweep",
            "model": args.model,
            "band": args.band,
            "grid": args.grid,
            "max_discrepancy": max(finite) if finite else None,
            "points": [dict(param1=t[1], param2=t[2], **r) for t, r in zip(tasks, results)],
        })
    weyl = np.array([np.nan if r["zak_weyl"] is None else r["zak_weyl"] for r in results])
    if len(deltas) == 1:
        wil = np.array([np.nan if r["zak_wilson"] is None else r["zak_wilson"] for r in results])
        return svg.line_plot([("Weyl formula", ratios, weyl), ("Wilson loop", ratios, wil)],
                             title="Zak phase", xlabel="t2/t1", ylabel="gamma")
    return svg.heatmap(ratios, deltas, weyl.reshape(len(deltas), len(ratios)), title="Zak phase (Weyl formula)",
                       xlabel="t2/t1", ylabel="delta", vmin=-math.pi, vmax=math.pi)


def _energy_grid(cell: UnitCell, args, band=None) -> tuple[np.ndarray, bool]:
    if band is not None:
        n = band
        if not 1 <= n <= cell.p:
            raise ValidationError(f"band {n} outside 1..{cell.p}")
        ks = math.pi * (np.arange(args.points) + 0.5) / args.points
        return np.sort(np.asarray(dispersion(cell, n, ks))), True
    if args.lam is not None:
        return np.array([args.lam]), False
    lo, hi = spectral_bounds(cell)
    lo = lo if args.lambda_min is None else args.lambda_min
    hi = hi if args.lambda_max is None else args.lambda_max
    if args.points < 1 or hi < lo:
        raise ValidationError("need points >= 1 and lambda-min <= lambda-max")
    return np.linspace(lo, hi, args.points), False


def _in_band(cell, lam) -> bool:
    return any(b.lambda_min <= lam <= b.lambda_max for b in band_edges(cell))


def cmd_mweyl(args) -> str:
    if not math.isfinite(args.eps) or args.eps < 0:
        raise InputError(f"--eps must be >= 0 (closed upper half-plane), got {args.eps}")
    cell = _cell(args)
    lams, _ = _energy_grid(cell, args, args.band)
    rows = []
    for lam in lams:
        try:
            m, _, _ = weyl_core(cell, complex(lam, args.eps), args.side)
            m = complex(m)
            rows.append((float(lam), m.real, m.imag, abs(m), _in_band(cell, lam)))
        except (DirichletPole, BandEdgeSingularity):
            rows.append((float(lam), None, None, None, _in_band(cell, lam)))
    fmt = _fmt_for(args, "csv")
    header = ("lambda", "re_m", "im_m", "abs_m", "in_band")
    if fmt == "csv":
        return csv_text(header, rows)
    if fmt == "json":
        return json_text({
            "schema_version": SCHEMA_VERSION,
            "command": "mweyl",
            "cell": cell.to_dict(),
            "side": args.side,
            "eps": args.eps,
            "samples": [dict(zip(header, r)) for r in rows],
        })
    x = np.array([r[0] for r in rows])
    vals = [np.nan if r[1] is None else complex(r[1], r[2]) for r in rows]
    absm = np.array([abs(v) if v == v else np.nan for v in vals])
    argm = np.array([np.angle(v) if v == v else np.nan for v in vals])
    return svg.line_plot([("|m|", x, absm), ("arg m", x, argm)], title=f"m_{args.side} along the spectrum",
                         xlabel="lambda", ylabel="value")


def cmd_impedance(args) -> str:
    cell = _cell(args)
    lams, _ = _energy_grid(cell, args)
    rows = []
    for lam in lams:
        try:
            z = surface_impedance(cell, float(lam))
            rows.append((float(lam), z.z_right, z.z_left, "ok"))
        except NotInGap:
            rows.append((float(lam), None, None, "not_in_gap"))
        except (DirichletPole, BandEdgeSingularity):
            rows.append((float(lam), None, None, "pole"))
    fmt = _fmt_for(args, "csv")
    header = ("lambda", "z_right", "z_left", "status")
    if fmt == "csv":
        return csv_text(header, rows)
    if fmt == "json":
        return json_text({
            "schema_version": SCHEMA_VERSION,
            "command": "impedance",
            "cell": cell.to_dict(),
            "dirichlet_eigenvalues": dirichlet_eigenvalues(cell),
            "samples": [dict(zip(header, r)) for r in rows],
        })
    x = np.array([r[0] for r in rows])
    zr = np.array([np.nan if r[1] is None else r[1] for r in rows])
    zl = np.array([np.nan if r[2] is None else r[2] for r in rows])
    return svg.line_plot([("Z_R", x, zr), ("Z_L", x, zl)], title="surface impedance", xlabel="lambda", ylabel="Z")


def cmd_check_symmetry(args) -> str:
    cell = _cell(args)
    sym = is_mirror_symmetric(cell)
    reports = []
    for b in band_edges(cell):
        rec = {"band": b.n, "isolated": b.isolated, "max_deviation": None, "unimodular": None, "gamma_quantised": None}
        if sym and b.isolated:
            rep = verify_unimodularity(cell, b.n, args.samples)
            q = zak_quantised_symmetric(cell, b.n)
            rec.update(max_deviation=rep.max_deviation, unimodular=rep.passed, gamma_quantised=q.gamma.value)
        reports.append(rec)
    fmt = _fmt_for(args, "json")
    if fmt == "json":
        return json_text({
            "schema_version": SCHEMA_VERSION,
            "command": "check-symmetry",
            "cell": cell.to_dict(),
            "mirror_symmetric": sym,
            "bands": reports,
        })
    if fmt == "csv":
        header = ("band", "mirror_symmetric", "isolated", "max_deviation", "unimodular", "gamma_quantised")
        rows = [(r["band"], sym, r["isolated"], r["max_deviation"], r["unimodular"], r["gamma_quantised"])
                for r in reports]
        return csv_text(header, rows)
    raise ValidationError("check-symmetry has no SVG output")


COMMANDS = {
    "bands": cmd_bands,
    "zak": cmd_zak,
    "sweep": cmd_sweep,
    "mweyl": cmd_mweyl,
    "impedance": cmd_impedance,
    "check-symmetry": cmd_check_symmetry,
}


def _say(msg: str, error: bool = False) -> None:
    if error and sys.stderr.isatty() and not os.environ.get("NO_COLOR"):
        msg = f"\x1b[31m{msg}\x1b[0m"
    print(msg, file=sys.stderr)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_args(argv)
    except SystemExit as exc:  # argparse: 0 for --help, 2 for usage errors
        return int(exc.code or 0)
    except InputError as exc:
        _say(f"error: {exc}", True)
        return 2
    try:
        text = COMMANDS[args.command](args)
        if args.output == "-":
            sys.stdout.write(text)
        else:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            if not args.quiet:
                _say(f"wrote {args.output}")
    except (InputError, ValueError) as exc:
        _say(f"error: {type(exc).__name__}: {exc}", True)
        return 2
    except NumericalError as exc:
        _say(f"error: {type(exc).__name__}: {exc}", True)
        return 3
    except OSError as exc:
        _say(f"error: {exc}", True)
        return 2
    except Exception as exc:  # noqa: BLE001 - contract: never crash with a traceback
        _say(f"error: internal failure: {type(exc).__name__}: {exc}", True)
        return 3
    return 0


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
