"""de Casteljau evaluation in unique geodesic spaces.

Plain and rational Bézier curves, subdivision, Aitken-Neville interpolation
and obstacle-driven weights.  Every algorithm only calls the space's affine
map, so it runs unchanged in any :class:`~geocurves.core.GeodesicSpace`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .core import DomainError, GeodesicError, GeodesicSpace, SpacePoint

DISTANCE_FLOOR = 1e-9


@dataclass(frozen=True)
class ControlPolygon:
    space: GeodesicSpace
    points: tuple
    weights: tuple | None = None

    def __post_init__(self):
        pts = tuple(self.points)
        if len(pts) < 2:
            raise GeodesicError("a control polygon needs at least two points")
        for p in pts:
            self.space.validate(p)
        object.__setattr__(self, "points", pts)
        if self.weights is not None:
            w = tuple(float(v) for v in self.weights)
            if len(w) != len(pts):
                raise GeodesicError(f"{len(w)} weights for {len(pts)} control points")
            if not all(np.isfinite(v) and v > 0.0 for v in w):
                raise DomainError("weights must be strictly positive")
            object.__setattr__(self, "weights", w)

    @property
    def degree(self) -> int:
        return len(self.points) - 1

    def arrays(self) -> list:
        return [p.coords for p in self.points]

    def reversed(self) -> "ControlPolygon":
        w = None if self.weights is None else self.weights[::-1]
        return ControlPolygon(self.space, self.points[::-1], w)


@dataclass
class DeCasteljauTrace:
    """Triangular array of one evaluation; ``rows[r][i]`` is p_i^r(t)."""

    t: float
    rows: list
    weights: list | None = None
    params: list | None = None

    @property
    def point(self) -> SpacePoint:
        return self.rows[-1][0]


def _check_t(t):
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"curve parameter {t} outside [0, 1]")
    return t


def _run(space, pts, t, trace):
    rows = [list(pts)] if trace else None
    row = list(pts)
    while len(row) > 1:
        row = [space._step(t, row[i], row[i + 1]) for i in range(len(row) - 1)]
        if trace:
            rows.append(row)
    return row[0], rows


def de_casteljau(poly: ControlPolygon, t: float) -> SpacePoint:
    if poly.weights is not None:
        raise GeodesicError("weighted polygon: use rational_de_casteljau")
    t = _check_t(t)
    out, _ = _run(poly.space, poly.arrays(), t, False)
    return poly.space._wrap(out)


def de_casteljau_trace(poly: ControlPolygon, t: float) -> DeCasteljauTrace:
    t = _check_t(t)
    _, rows = _run(poly.space, poly.arrays(), t, True)
    wrap = poly.space._wrap
    return DeCasteljauTrace(t, [[wrap(a) for a in row] for row in rows])


def _rational_run(space, pts, weights, t):
    row = list(pts)
    w = np.array(weights, dtype=float)
    rows, wrows, params = [list(row)], [w.copy()], []
    while len(row) > 1:
        w_next = (1.0 - t) * w[:-1] + t * w[1:]
        ti = t * w[1:] / w_next
        row = [space._step(float(ti[i]), row[i], row[i + 1]) for i in range(len(row) - 1)]
        w = w_next
        rows.append(row)
        wrows.append(w.copy())
        params.append(ti)
    return rows, wrows, params


def rational_de_casteljau(poly: ControlPolygon, t: float) -> SpacePoint:
    """Rational Bézier point via the weight-blended de Casteljau recursion."""
    if poly.weights is None:
        return de_casteljau(poly, t)
    t = _check_t(t)
    rows, _, _ = _rational_run(poly.space, poly.arrays(), poly.weights, t)
    return poly.space._wrap(rows[-1][0])


def rational_trace(poly: ControlPolygon, t: float) -> DeCasteljauTrace:
    t = _check_t(t)
    w = poly.weights if poly.weights is not None else (1.0,) * len(poly.points)
    rows, wrows, params = _rational_run(poly.space, poly.arrays(), w, t)
    wrap = poly.space._wrap
    return DeCasteljauTrace(t, [[wrap(a) for a in row] for row in rows],
                            [list(x) for x in wrows], [list(x) for x in params])


def evaluate(poly: ControlPolygon, t: float) -> SpacePoint:
    return de_casteljau(poly, t) if poly.weights is None else rational_de_casteljau(poly, t)


def distance_weights(space: GeodesicSpace, points: Sequence[SpacePoint], center: SpacePoint,
                     radius: float, mode: str = "attract", eps: float = DISTANCE_FLOOR) -> list:
    """Weights from the distances of control points to a ball obstacle.

    ``attract`` gives 1/d(p, B), ``avoid`` gives d(p, B) + eps, where
    d(p, B) = max(d(p, center) - radius, eps).
    """
    if mode not in ("attract", "avoid"):
        raise ValueError(f"mode must be 'attract' or 'avoid', got {mode!r}")
    if radius < 0:
        raise DomainError(f"obstacle radius {radius} is negative")
    out = []
    for i, p in enumerate(points):
        raw = space.distance(p, center) - radius
        if mode == "attract" and raw < 0.0:
            raise DomainError(f"control point {i} lies inside the attracting obstacle")
        d = max(raw, eps)
        out.append(1.0 / d if mode == "attract" else d + eps)
    return out


def split(poly: ControlPolygon, s: float) -> tuple:
    """Split at ``s``: left controls p_0^i(s), right controls p_i^{n-i}(s)."""
    s = float(s)
    if not 0.0 < s < 1.0:
        raise DomainError(f"split point {s} must lie in (0, 1)")
    if poly.weights is not None:
        raise GeodesicError("split is defined for unweighted polygons")
    tr = de_casteljau_trace(poly, s)
    n = poly.degree
    left = [tr.rows[r][0] for r in range(n + 1)]
    right = [tr.rows[n - i][i] for i in range(n + 1)]
    return ControlPolygon(poly.space, left), ControlPolygon(poly.space, right)


def condition1_defect(space: GeodesicSpace, x: SpacePoint, y: SpacePoint, z: SpacePoint,
                      s: float, tau: float) -> float:
    """Distance between the two sides of the commutation condition
    Phi_s(Phi_tau(x, y), Phi_tau(y, z)) = Phi_tau(Phi_s(x, y), Phi_s(y, z))."""
    a, b, c = (space.validate(p) for p in (x, y, z))
    s, tau = _check_t(s), _check_t(tau)
    st = space._step
    lhs = st(s, st(tau, a, b), st(tau, b, c))
    rhs = st(tau, st(s, a, b), st(s, b, c))
    return space._distance(lhs, rhs)


def aitken_neville(space: GeodesicSpace, nodes: Sequence[float], points: Sequence[SpacePoint],
                   t: float) -> SpacePoint:
    """Interpolating curve through points[i] at nodes[i].

    Intermediate steps may need geodesic extrapolation, which only spaces with
    an exp/log map (or a linear structure) provide.
    """
    nodes = [float(v) for v in nodes]
    if len(nodes) != len(points):
        raise GeodesicError(f"{len(nodes)} nodes for {len(points)} points")
    if len(nodes) < 2:
        raise GeodesicError("need at least two nodes")
    if any(b <= a for a, b in zip(nodes, nodes[1:])):
        raise DomainError("nodes must be strictly increasing")
    t = float(t)
    row = [space.validate(p) for p in points]
    n = len(row) - 1
    for r in range(1, n + 1):
        nxt = []
        for i in range(n - r + 1):
            u = (t - nodes[i]) / (nodes[i + r] - nodes[i])
            space._check_pair(row[i], row[i + 1])
            nxt.append(space._extend(u, row[i], row[i + 1]))
        row = nxt
    return space._wrap(row[0])


@dataclass
class CurveSample:
    t: float
    point: SpacePoint
    metadata: dict = field(default_factory=dict)


def sample_parameters(m: int) -> np.ndarray:
    if int(m) < 2:
        raise GeodesicError(f"need at least 2 samples, got {m}")
    return np.linspace(0.0, 1.0, int(m))


def sample_curve(evaluator: Callable[[float], SpacePoint], m: int,
                 metadata: dict | None = None) -> list:
    """Evaluate on m uniform parameters covering [0, 1], endpoints included."""
    meta = dict(metadata or {})
    return [CurveSample(float(t), evaluator(float(t)), meta) for t in sample_parameters(m)]
