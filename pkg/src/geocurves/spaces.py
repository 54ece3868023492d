"""Non-matrix spaces with closed-form affine maps: S², the Manhattan plane and
the Paris (hub) metric over a base space."""

from __future__ import annotations

import math

import numpy as np

from .core import (Capabilities, DomainError, EuclideanSpace, GeodesicSpace,
                   SpacePoint)

ANTIPODAL_MARGIN = 1e-9
UNIT_TOL = 1e-12


class SphereSpace(GeodesicSpace):
    """Unit sphere S² in R³ with the great-circle metric.

    Tangent vectors at x are R³ vectors orthogonal to x.
    """

    space_id = "sphere"
    ambient_shape = (3,)
    capabilities = Capabilities(has_log_exp=True)
    domain_constraint = ("pairs non-antipodal; weighted means need an open ball "
                         "of radius < pi/4")
    mean_radius = math.pi / 4

    def _check(self, a):
        if not np.all(np.isfinite(a)):
            raise DomainError("sphere: non-finite coordinates")
        if abs(np.linalg.norm(a) - 1.0) > UNIT_TOL:
            raise DomainError(f"sphere: point {a.tolist()} is not a unit vector")

    def _check_pair(self, a, b):
        if float(np.dot(a, b)) <= -1.0 + ANTIPODAL_MARGIN:
            raise DomainError("sphere: antipodal points have no unique shortest arc")

    def _distance(self, a, b):
        return math.atan2(np.linalg.norm(np.cross(a, b)), float(np.dot(a, b)))

    def _affine(self, t, a, b):
        phi = self._distance(a, b)
        if phi < 1e-8:
            out = (1.0 - t) * a + t * b
        else:
            s = math.sin(phi)
            out = math.sin((1.0 - t) * phi) / s * a + math.sin(t * phi) / s * b
        return out / np.linalg.norm(out)

    def _extend(self, s, a, b):
        return self._affine(s, a, b)

    def _log(self, a, b):
        c = float(np.dot(a, b))
        u = b - c * a
        nu = np.linalg.norm(u)
        if nu == 0.0:
            return np.zeros(3)
        return math.atan2(nu, c) / nu * u

    def _exp(self, a, v):
        theta = float(np.linalg.norm(v))
        if theta == 0.0:
            return a.copy()
        if theta >= math.pi:
            raise DomainError(f"sphere: tangent norm {theta} reaches the injectivity radius pi")
        out = math.cos(theta) * a + math.sin(theta) / theta * v
        return out / np.linalg.norm(out)

    def _check_tangent(self, a, v):
        if abs(float(np.dot(a, v))) > 1e-10 * max(1.0, float(np.linalg.norm(v))):
            raise DomainError("sphere: tangent vector not orthogonal to its base point")

    def _domain_ok(self, arrays):
        # sufficient test: every point within mean_radius of the normalized centroid
        m = np.sum(arrays, axis=0)
        nm = np.linalg.norm(m)
        if nm < 1e-12:
            return False
        c = m / nm
        return all(self._distance(c, a) < self.mean_radius for a in arrays)


class ManhattanSpace(GeodesicSpace):
    """R² with the taxicab metric and a fixed representative geodesic per pair.

    The representative runs x -> x* -> y* -> y where x*, y* are the orthogonal
    projections of x, y onto the line of slope ``k`` through (x + y)/2.
    ``k = inf`` selects the vertical line.  Segment lengths are measured with
    ``length_norm`` ("l1" by default; "l2" gives the Euclidean lengths).
    """

    space_id = "manhattan"
    ambient_shape = (2,)
    capabilities = Capabilities(is_unique_geodesic=False)
    domain_constraint = "all of R^2 (geodesics fixed by the slope-k representative)"

    def __init__(self, k: float = 0.0, length_norm: str = "l1"):
        if length_norm not in ("l1", "l2"):
            raise ValueError(f"length_norm must be 'l1' or 'l2', got {length_norm!r}")
        self.k = float(k)
        self.length_norm = length_norm
        if math.isinf(self.k):
            self._dir = np.array([0.0, 1.0])
        else:
            self._dir = np.array([1.0, self.k]) / math.hypot(1.0, self.k)

    def _check(self, a):
        if not np.all(np.isfinite(a)):
            raise DomainError("manhattan: non-finite coordinates")

    def _distance(self, a, b):
        return float(np.abs(b - a).sum())

    def _seglen(self, v):
        return float(np.abs(v).sum()) if self.length_norm == "l1" else float(np.linalg.norm(v))

    def path_vertices(self, a, b):
        c = 0.5 * (a + b)
        u = self._dir
        xs = c + np.dot(a - c, u) * u
        ys = c + np.dot(b - c, u) * u
        return [a, xs, ys, b]

    def _affine(self, t, a, b):
        verts = self.path_vertices(a, b)
        lens = [self._seglen(verts[i + 1] - verts[i]) for i in range(3)]
        total = sum(lens)
        if total == 0.0:
            return a.copy()
        s = t * total
        acc = 0.0
        # zero-length segments are skipped; the last nonempty one takes the remainder
        last = max(i for i in range(3) if lens[i] > 0.0)
        for i in range(3):
            if lens[i] == 0.0:
                continue
            if s <= acc + lens[i] or i == last:
                w = min(max((s - acc) / lens[i], 0.0), 1.0)
                return (1.0 - w) * verts[i] + w * verts[i + 1]
            acc += lens[i]
        return b.copy()

    def path_length(self, x: SpacePoint, y: SpacePoint) -> float:
        """Taxicab length of the representative path."""
        v = self.path_vertices(self.validate(x), self.validate(y))
        return float(sum(np.abs(v[i + 1] - v[i]).sum() for i in range(3)))

    def path_is_geodesic(self, x: SpacePoint, y: SpacePoint, tol: float = 1e-12) -> bool:
        return self.path_length(x, y) <= self.distance(x, y) * (1 + tol) + tol


class ParisSpace(GeodesicSpace):
    """Paris (hub) metric over a unique geodesic base space.

    Two points on a common geodesic with the hub keep their base distance;
    all other pairs are routed through the hub.
    """

    space_id = "paris"
    capabilities = Capabilities()
    domain_constraint = "the base space's uniqueness domain"

    def __init__(self, hub, base: GeodesicSpace | None = None, tol: float = 1e-10):
        self.base = base if base is not None else EuclideanSpace(2)
        self.hub = hub if isinstance(hub, SpacePoint) else self.base.point(hub)
        self._c = self.base.validate(self.hub)
        self.tol = float(tol)
        self.ambient_shape = self.base.ambient_shape

    def _check(self, a):
        self.base._check(a)

    def _check_pair(self, a, b):
        self.base._check_pair(a, b)
        self.base._check_pair(a, self._c)
        self.base._check_pair(self._c, b)

    def _collinear(self, a, b) -> bool:
        d = self.base._distance
        c = self._c
        dab, dac, dbc = d(a, b), d(a, c), d(b, c)
        defect = min(abs(dab - dac - dbc), abs(dac - dab - dbc), abs(dbc - dab - dac))
        return defect <= self.tol

    def collinear(self, x: SpacePoint, y: SpacePoint) -> bool:
        """The predicate [x, y, c] = 0."""
        return self._collinear(self.validate(x), self.validate(y))

    def _distance(self, a, b):
        if self._collinear(a, b):
            return self.base._distance(a, b)
        return self.base._distance(a, self._c) + self.base._distance(b, self._c)

    def _affine(self, t, a, b):
        if self._collinear(a, b):
            return self.base._affine(t, a, b)
        l1 = self.base._distance(a, self._c)
        total = l1 + self.base._distance(b, self._c)
        s = total * t
        if s <= l1:
            return np.array(self.base._step(s / l1, a, self._c))
        return np.array(self.base._step((s - l1) / (total - l1), self._c, b))


SPHERE = SphereSpace()


def sphere_affine(t: float, x: SpacePoint, y: SpacePoint) -> SpacePoint:
    return SPHERE.affine(t, x, y)


def manhattan_affine(k: float, t: float, x: SpacePoint, y: SpacePoint) -> SpacePoint:
    return ManhattanSpace(k).affine(t, x, y)
