"""Curve configuration files (JSON) and their validation."""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .core import EuclideanSpace, GeodesicError, GeodesicSpace, SpacePoint
from .matrix import E3, SPD2
from .spaces import SPHERE, ManhattanSpace, ParisSpace

SPACES = ("euclidean", "sphere", "manhattan", "paris", "spd2", "e3")
ALGORITHMS = ("bezier", "rational", "spline", "centroid", "neville", "split", "counterexample")
DEFAULT_SAMPLES = 51


class ConfigParseError(Exception):
    pass


class ConfigError(Exception):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass
class CurveConfig:
    raw: dict
    space: GeodesicSpace
    space_name: str
    algorithm: str
    control_points: list = field(default_factory=list)
    weights: list | None = None
    knots: list | None = None
    degree: int | None = None
    closed: bool = False
    samples: int = DEFAULT_SAMPLES
    split_point: float | None = None
    nodes: list | None = None
    obstacle: dict | None = None
    alpha: float | None = None

    @property
    def inputs_hash(self) -> str:
        blob = json.dumps(self.raw, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def load_config(path) -> dict:
    """Read a JSON config; OSError propagates, malformed JSON raises ConfigParseError."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise ConfigParseError(f"{path}: top level must be an object")
    return raw


def _number(raw, name, positive=False):
    v = raw.get(name)
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(name, f"expected a finite number, got {v!r}")
    if positive and v <= 0:
        raise ConfigError(name, f"must be positive, got {v!r}")
    return float(v)


def _vector(v, name, length=None):
    if not isinstance(v, list) or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in v):
        raise ConfigError(name, f"expected a list of numbers, got {v!r}")
    if length is not None and len(v) != length:
        raise ConfigError(name, f"expected {length} numbers, got {len(v)}")
    return [float(x) for x in v]


def build_space(spec) -> tuple:
    if isinstance(spec, str):
        spec = {"name": spec}
    if not isinstance(spec, dict) or "name" not in spec:
        raise ConfigError("space", "expected a name or an object with 'name'")
    name = spec["name"]
    if name not in SPACES:
        raise ConfigError("space.name", f"unknown space {name!r}; expected one of {', '.join(SPACES)}")
    try:
        if name == "euclidean":
            dim = spec.get("dim", 2)
            if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
                raise ConfigError("space.dim", f"expected a positive integer, got {dim!r}")
            return EuclideanSpace(dim), name
        if name == "sphere":
            return SPHERE, name
        if name == "manhattan":
            k = spec.get("k", 0.0)
            if isinstance(k, bool) or not isinstance(k, (int, float)):
                raise ConfigError("space.k", f"expected a number, got {k!r}")
            return ManhattanSpace(k, spec.get("length_norm", "l1")), name
        if name == "paris":
            hub = _vector(spec.get("hub"), "space.hub")
            return ParisSpace(hub, EuclideanSpace(len(hub))), name
        if name == "spd2":
            return SPD2, name
        return E3, name
    except (GeodesicError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError("space", str(exc)) from None


def parse_point(space: GeodesicSpace, name: str, v, where: str, normalize=False) -> SpacePoint:
    try:
        if name == "e3":
            if not isinstance(v, dict) or "rotation" not in v or "translation" not in v:
                raise ConfigError(where, "expected {rotation: 3x3 row-major, translation: [x,y,z]}")
            rot = np.array(v["rotation"], dtype=float).reshape(3, 3)
            return E3.pose(rot, _vector(v["translation"], where + ".translation", 3))
        if name == "spd2":
            return space.point(np.array(v, dtype=float).reshape(2, 2))
        coords = np.array(_vector(v, where), dtype=float)
        if normalize and name == "sphere":
            coords = coords / np.linalg.norm(coords)
        return space.point(coords)
    except ConfigError:
        raise
    except (GeodesicError, ValueError, TypeError) as exc:
        raise ConfigError(where, str(exc)) from None


def point_to_json(name: str, p: SpacePoint):
    if name == "e3":
        return {"rotation": p.coords[1:, 1:].tolist(), "translation": p.coords[1:, 0].tolist()}
    return p.coords.tolist()


def validate_config(raw: dict, samples_override: int | None = None) -> CurveConfig:
    raw = dict(raw)
    if samples_override is not None:
        raw["samples"] = samples_override
    space, name = build_space(raw.get("space"))
    algorithm = raw.get("algorithm")
    if algorithm not in ALGORITHMS:
        raise ConfigError("algorithm", f"unknown algorithm {algorithm!r}; expected one of "
                                       f"{', '.join(ALGORITHMS)}")
    cfg = CurveConfig(raw=raw, space=space, space_name=name, algorithm=algorithm)

    samples = raw.get("samples", DEFAULT_SAMPLES)
    if isinstance(samples, bool) or not isinstance(samples, int) or samples < 2:
        raise ConfigError("samples", f"expected an integer >= 2, got {samples!r}")
    cfg.samples = samples

    if algorithm == "counterexample":
        if name != "sphere":
            raise ConfigError("space", "counterexample runs on the sphere")
        cfg.alpha = _number(raw, "alpha", positive=True)
        if cfg.alpha > math.pi / 2:
            raise ConfigError("alpha", f"must lie in (0, pi/2], got {cfg.alpha}")
        return cfg

    pts = raw.get("control_points")
    if not isinstance(pts, list) or len(pts) < 2:
        raise ConfigError("control_points", "expected a list of at least two points")
    normalize = bool(raw.get("normalize", False))
    cfg.control_points = [parse_point(space, name, v, f"control_points[{i}]", normalize)
                          for i, v in enumerate(pts)]

    if "weights" in raw:
        w = _vector(raw["weights"], "weights", len(pts))
        if any(v <= 0 for v in w):
            raise ConfigError("weights", "weights must be strictly positive")
        cfg.weights = w
    if "obstacle" in raw:
        ob = raw["obstacle"]
        if not isinstance(ob, dict):
            raise ConfigError("obstacle", "expected {center, radius, mode}")
        mode = ob.get("mode", "attract")
        if mode not in ("attract", "avoid"):
            raise ConfigError("obstacle.mode", f"expected 'attract' or 'avoid', got {mode!r}")
        cfg.obstacle = {
            "center": parse_point(space, name, ob.get("center"), "obstacle.center", normalize),
            "radius": _number(ob, "radius"),
            "mode": mode,
        }

    if algorithm == "rational" and cfg.weights is None and cfg.obstacle is None:
        raise ConfigError("weights", "rational curves need weights or an obstacle")
    if algorithm == "spline":
        deg = raw.get("degree")
        if isinstance(deg, bool) or not isinstance(deg, int) or deg < 1:
            raise ConfigError("degree", f"expected an integer >= 1, got {deg!r}")
        cfg.degree = deg
        cfg.closed = bool(raw.get("closed", False))
        if not cfg.closed:
            if "knots" not in raw:
                raise ConfigError("knots", "open splines need a knot vector")
            cfg.knots = _vector(raw["knots"], "knots")
    if algorithm == "centroid" and not space.capabilities.has_log_exp:
        raise ConfigError("space", f"centroid curves need a space with log/exp, not {name}")
    if algorithm == "neville":
        nodes = raw.get("nodes")
        if nodes is None:
            cfg.nodes = list(np.linspace(0.0, 1.0, len(pts)))
        else:
            cfg.nodes = _vector(nodes, "nodes", len(pts))
    if algorithm == "split" or "split_point" in raw:
        s = _number(raw, "split_point")
        if not 0.0 < s < 1.0:
            raise ConfigError("split_point", f"must lie in (0, 1), got {s}")
        cfg.split_point = s
    return cfg
