"""Command-line front end.

    geocurves sample --config curve.json --out samples.csv
    geocurves split --config curve.json --format json --out split.json
    geocurves compare --config curve.json
    geocurves counterexample --config tri.json --out report.csv
    geocurves validate --config curve.json

Exit codes: 0 ok, 2 parse error, 3 validation error, 4 solver failure, 5 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile

import numpy as np

from .bezier import ControlPolygon, distance_weights, evaluate, split
from .bezier import aitken_neville
from .config import (ConfigError, ConfigParseError, CurveConfig, load_config,
                     point_to_json, validate_config)
from .core import ConvergenceError, GeodesicError
from .karcher import sample_centroid_curve, sphere_counterexample
from .spline import KnotError, close_spline, de_boor, spline_from_arrays

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_SOLVER, EXIT_IO = 0, 2, 3, 4, 5

# orthographic camera for 3D content: azimuth 30 deg, elevation 20 deg
_AZ, _EL = math.radians(30.0), math.radians(20.0)


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _polygon(cfg: CurveConfig) -> ControlPolygon:
    weights = cfg.weights
    if cfg.algorithm == "rational" and weights is None:
        ob = cfg.obstacle
        weights = distance_weights(cfg.space, cfg.control_points, ob["center"], ob["radius"],
                                   ob["mode"])
    if cfg.algorithm != "rational":
        weights = None
    return ControlPolygon(cfg.space, tuple(cfg.control_points), weights)


def _spline(cfg: CurveConfig):
    try:
        if cfg.closed:
            return close_spline(cfg.space, cfg.control_points, cfg.degree)
        return spline_from_arrays(cfg.space, cfg.knots, cfg.degree, cfg.control_points)
    except KnotError as exc:
        raise ConfigError("knots", str(exc)) from None
    except GeodesicError as exc:
        raise ConfigError("control_points", str(exc)) from None


def sample_rows(cfg: CurveConfig) -> tuple:
    """(rows of (t, SpacePoint), extra metadata) for the configured algorithm."""
    m = cfg.samples
    ts = np.linspace(0.0, 1.0, m)
    if cfg.algorithm in ("bezier", "rational"):
        poly = _polygon(cfg)
        meta = {} if poly.weights is None else {"weights": list(poly.weights)}
        return [(float(t), evaluate(poly, float(t))) for t in ts], meta
    if cfg.algorithm == "spline":
        spl = _spline(cfg)
        lo, hi = spl.interval
        return ([(float(t), de_boor(spl, float(t))) for t in np.linspace(lo, hi, m)],
                {"knots": list(spl.knots.knots), "degree": spl.degree})
    if cfg.algorithm == "centroid":
        pts = sample_centroid_curve(cfg.space, cfg.control_points, [float(t) for t in ts])
        return list(zip([float(t) for t in ts], pts)), {}
    if cfg.algorithm == "neville":
        return ([(float(t), aitken_neville(cfg.space, cfg.nodes, cfg.control_points, float(t)))
                 for t in ts], {"nodes": list(cfg.nodes)})
    if cfg.algorithm == "split":
        return split_rows(cfg)
    raise ConfigError("algorithm", f"{cfg.algorithm} cannot be sampled; use its own command")


def split_rows(cfg: CurveConfig) -> tuple:
    if cfg.split_point is None:
        raise ConfigError("split_point", "required for split")
    s = cfg.split_point
    left, right = split(ControlPolygon(cfg.space, tuple(cfg.control_points)), s)
    us = np.linspace(0.0, 1.0, cfg.samples)
    rows = [(s * float(u), evaluate(left, float(u))) for u in us]
    rows += [(s + (1.0 - s) * float(u), evaluate(right, float(u))) for u in us]
    meta = {
        "split_point": s,
        "left_controls": [point_to_json(cfg.space_name, p) for p in left.points],
        "right_controls": [point_to_json(cfg.space_name, p) for p in right.points],
    }
    return rows, meta


def compare_rows(cfg: CurveConfig) -> list:
    if not cfg.space.capabilities.has_log_exp:
        raise ConfigError("space", f"compare needs a space with log/exp, not {cfg.space_name}")
    poly = ControlPolygon(cfg.space, tuple(cfg.control_points))
    ts = [float(t) for t in np.linspace(0.0, 1.0, cfg.samples)]
    qs = sample_centroid_curve(cfg.space, cfg.control_points, ts)
    return [(t, cfg.space.distance(evaluate(poly, t), q)) for t, q in zip(ts, qs)]


def _metadata(cfg: CurveConfig, verb: str, extra: dict) -> dict:
    meta = {"verb": verb, "algorithm": cfg.algorithm, "space": cfg.space.space_id,
            "inputs_hash": cfg.inputs_hash, "samples": cfg.samples}
    meta.update(extra)
    return meta


def render_samples(cfg: CurveConfig, verb: str, rows, extra: dict, fmt: str) -> str:
    if fmt == "json":
        doc = {"metadata": _metadata(cfg, verb, extra),
               "samples": [{"t": t, "coords": p.coords.tolist()} for t, p in rows]}
        return json.dumps(doc, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    dim = cfg.space.ambient_dim
    w.writerow(["t"] + [f"c{i}" for i in range(dim)])
    for t, p in rows:
        w.writerow([_fmt(t)] + [_fmt(v) for v in p.coords.ravel()])
    return buf.getvalue()


def render_compare(cfg: CurveConfig, rows, fmt: str) -> str:
    mx = max(d for _, d in rows)
    if fmt == "json":
        doc = {"metadata": _metadata(cfg, "compare", {}),
               "rows": [{"t": t, "distance": d} for t, d in rows], "max_distance": mx}
        return json.dumps(doc, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "distance"])
    for t, d in rows:
        w.writerow([_fmt(t), _fmt(d)])
    return buf.getvalue()


def flat_report(report: dict) -> dict:
    out = {}
    for k, v in report.items():
        if isinstance(v, list):
            for axis, x in zip("xyz", v):
                out[f"{k}_{axis}"] = x
        else:
            out[k] = v
    return out


def render_report(report: dict, fmt: str) -> str:
    flat = flat_report(report)
    if fmt == "json":
        return json.dumps(flat, indent=1) + "\n"
    lines = []
    for k, v in flat.items():
        sval = ("true" if v else "false") if isinstance(v, bool) else _fmt(v)
        lines.append(f"{k}={sval}")
    return "\n".join(lines) + "\n"


def read_samples_json(text: str) -> list:
    """Parse emitted JSON samples back into (t, coords array) pairs."""
    doc = json.loads(text)
    return [(s["t"], np.array(s["coords"], dtype=float)) for s in doc["samples"]]


# -- SVG ----------------------------------------------------------------------

def _to_3d(cfg: CurveConfig, coords: np.ndarray):
    name = cfg.space_name
    if name == "e3":
        return coords[1:, 0]
    if name == "spd2":
        return np.array([coords[0, 0], coords[0, 1], coords[1, 1]])
    v = coords.ravel()
    return v if v.size >= 3 else None


def _project(cfg: CurveConfig, coords):
    v3 = _to_3d(cfg, np.asarray(coords))
    if v3 is None:
        v = np.asarray(coords).ravel()
        return (float(v[0]), float(v[1]) if v.size > 1 else 0.0)
    x, y, z = (float(c) for c in v3[:3])
    u = math.cos(_AZ) * x - math.sin(_AZ) * y
    w = (math.sin(_EL) * (math.sin(_AZ) * x + math.cos(_AZ) * y) + math.cos(_EL) * z)
    return (u, w)


def render_svg(cfg: CurveConfig, rows, controls, size: int = 400, margin: int = 20) -> str:
    curve = [_project(cfg, p.coords) for _, p in rows]
    ctrl = [_project(cfg, p.coords) for p in controls]
    allp = np.array(curve + ctrl)
    lo, hi = allp.min(axis=0), allp.max(axis=0)
    scale = (size - 2 * margin) / max(float(np.max(hi - lo)), 1e-12)

    def xy(p):
        return (margin + (p[0] - lo[0]) * scale, size - margin - (p[1] - lo[1]) * scale)

    def pts(seq):
        return " ".join("%.6f,%.6f" % xy(p) for p in seq)

    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
            f'viewBox="0 0 {size} {size}">\n'
            f'<polyline points="{pts(ctrl)}" fill="none" stroke="#999999" '
            f'stroke-dasharray="4 3"/>\n'
            f'<polyline points="{pts(curve)}" fill="none" stroke="#000000" stroke-width="1.5"/>\n'
            "</svg>\n")


# -- output ------------------------------------------------------------------

def atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".geocurves-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        atomic_write(out, text)


def run(args) -> int:
    raw = load_config(args.config)
    cfg = validate_config(raw, args.samples)
    verb = args.command
    if verb == "validate":
        print(f"ok: {cfg.algorithm} on {cfg.space.space_id}")
        return EXIT_OK
    if verb == "counterexample":
        if cfg.alpha is None:
            raise ConfigError("alpha", "required for counterexample")
        report = sphere_counterexample(cfg.alpha)
        _emit(render_report(report, args.format), args.out)
        if args.out is not None:
            print(f"verdict={'true' if report['verdict'] else 'false'}")
        return EXIT_OK
    if verb == "compare":
        rows = compare_rows(cfg)
        _emit(render_compare(cfg, rows, args.format), args.out)
        print(f"max_distance={_fmt(max(d for _, d in rows))}",
              file=sys.stdout if args.out is not None else sys.stderr)
        return EXIT_OK
    if verb == "split":
        rows, extra = split_rows(cfg)
    else:
        if cfg.algorithm == "counterexample":
            raise ConfigError("algorithm", "use the counterexample command")
        rows, extra = sample_rows(cfg)
    text = render_samples(cfg, verb, rows, extra, args.format)
    svg = render_svg(cfg, rows, cfg.control_points) if args.svg else None
    _emit(text, args.out)
    if svg is not None:
        atomic_write(args.svg, svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geocurves",
                                     description="Bezier, spline and centroid curves in geodesic spaces")
    sub = parser.add_subparsers(dest="command", required=True)
    for verb, help_text in [("sample", "sample the configured curve"),
                            ("split", "split a Bezier curve and sample both pieces"),
                            ("compare", "distance between Bezier and centroid curves"),
                            ("counterexample", "spherical equilateral-triangle report"),
                            ("validate", "check a config without computing")]:
        p = sub.add_parser(verb, help=help_text)
        p.add_argument("--config", required=True)
        p.add_argument("--out")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--svg")
        p.add_argument("--samples", type=int)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except ConfigParseError as exc:
        code, msg = EXIT_PARSE, f"parse error: {exc}"
    except ConfigError as exc:
        code, msg = EXIT_VALIDATION, f"invalid config: {exc}"
    except ConvergenceError as exc:
        code, msg = EXIT_SOLVER, f"solver failure: {exc}"
    except GeodesicError as exc:
        code, msg = EXIT_VALIDATION, f"invalid input: {exc}"
    except OSError as exc:
        code, msg = EXIT_IO, f"i/o error: {exc.filename or ''}: {exc.strerror or exc}"
    print(f"geocurves: {msg}".replace("\n", " "), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
