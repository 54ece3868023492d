"""Generalized de Boor algorithm over a knot vector."""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import DomainError, GeodesicError, GeodesicSpace, SpacePoint


class KnotError(GeodesicError):
    pass


@dataclass(frozen=True)
class KnotVector:
    """Knots tau_0 <= ... <= tau_{m+n+1} for degree m and n+1 control points."""

    knots: tuple
    degree: int

    def __post_init__(self):
        k = tuple(float(v) for v in self.knots)
        object.__setattr__(self, "knots", k)
        m = int(self.degree)
        object.__setattr__(self, "degree", m)
        if m < 1:
            raise KnotError(f"degree must be >= 1, got {m}")
        if not all(np.isfinite(k)):
            raise KnotError("knots must be finite")
        if any(b < a for a, b in zip(k, k[1:])):
            raise KnotError("knots must be nondecreasing")
        n = len(k) - m - 2
        if n < m:
            raise KnotError(f"{len(k)} knots leave {n + 1} control points; degree {m} needs {m + 1}")
        # multiplicity at most m + 1, i.e. tau_j < tau_{j+m+1}
        for j in range(len(k) - m - 1):
            if not k[j] < k[j + m + 1]:
                raise KnotError(f"knot {k[j]} has multiplicity above degree + 1")
        if not (k[m] < k[m + 1] and k[n] < k[n + 1]):
            raise KnotError("first and last spans of the parameter interval must be nonempty")

    @property
    def n_controls(self) -> int:
        return len(self.knots) - self.degree - 1

    @property
    def interval(self) -> tuple:
        m, n = self.degree, self.n_controls - 1
        return self.knots[m], self.knots[n + 1]

    def multiplicity(self, t: float) -> int:
        return sum(1 for v in self.knots if v == t)


def locate_span(knots: Sequence[float], degree: int, t: float) -> int:
    """Index l with tau_l <= t < tau_{l+1}; the right end maps to the last nonempty span."""
    k = list(knots)
    m = int(degree)
    n = len(k) - m - 2
    t = float(t)
    lo, hi = k[m], k[n + 1]
    if not lo <= t <= hi:
        raise DomainError(f"parameter {t} outside [{lo}, {hi}]")
    if t == hi:
        l = n
        while k[l] == k[l + 1]:
            l -= 1
        return l
    return min(bisect.bisect_right(k, t) - 1, n)


@dataclass(frozen=True)
class SplineDef:
    space: GeodesicSpace
    knots: KnotVector
    points: tuple
    closed: bool = False

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) != self.knots.n_controls:
            raise KnotError(f"{len(self.knots.knots)} knots of degree {self.knots.degree} need "
                            f"{self.knots.n_controls} control points, got {len(pts)}")
        for p in pts:
            self.space.validate(p)

    @property
    def degree(self) -> int:
        return self.knots.degree

    @property
    def interval(self) -> tuple:
        return self.knots.interval


def de_boor(spline: SplineDef, t: float, shortcut: bool = True,
            convention: str = "classical") -> SpacePoint:
    """Spline point at t.

    With ``shortcut`` and t equal to a knot of multiplicity mu, the recursion
    stops after m - mu levels.  ``convention="narrow"`` uses the local
    parameter (t - tau_i)/(tau_{i+m-r} - tau_i) instead of
    the classical (t - tau_i)/(tau_{i+m-r+1} - tau_i).  At level r = m that
    denominator is tau_i - tau_i, so this variant always raises KnotError; it
    is kept only to document the failure.
    """
    if convention not in ("classical", "narrow"):
        raise ValueError(f"unknown convention {convention!r}")
    space = spline.space
    tau = spline.knots.knots
    m = spline.degree
    t = float(t)
    l = locate_span(tau, m, t)
    mu = 0
    if shortcut and t == tau[l]:
        mu = min(spline.knots.multiplicity(t), m)
    h = m - mu
    shift = 1 if convention == "classical" else 0
    # p[i] holds p_i^r for i = l - m + r .. l - mu
    p = {i: space.validate(spline.points[i]) for i in range(l - m, l - mu + 1)}
    for r in range(1, h + 1):
        nxt = {}
        for i in range(l - m + r, l - mu + 1):
            den = tau[i + m - r + shift] - tau[i]
            if den == 0.0:
                raise KnotError(f"zero-length knot span in level {r} at index {i}")
            nxt[i] = space._step((t - tau[i]) / den, p[i - 1], p[i])
        p = nxt
    return space._wrap(p[l - mu])


def spline_from_arrays(space: GeodesicSpace, knots: Sequence[float], degree: int,
                       points: Sequence[SpacePoint], closed: bool = False) -> SplineDef:
    return SplineDef(space, KnotVector(tuple(knots), degree), tuple(points), closed)


def close_spline(space: GeodesicSpace, controls: Sequence[SpacePoint], degree: int) -> SplineDef:
    """Periodic uniform spline: controls wrapped by ``degree`` points, unit knot spacing."""
    m = int(degree)
    pts = list(controls)
    if len(pts) < m + 1:
        raise GeodesicError(f"closed spline of degree {m} needs at least {m + 1} controls")
    ext = pts + pts[:m]
    knots = tuple(float(j) for j in range(len(ext) + m + 1))
    return SplineDef(space, KnotVector(knots, m), tuple(ext), closed=True)


def sample_spline(spline: SplineDef, m: int) -> list:
    """Points at m uniform parameters spanning the spline's interval, as (t, point)."""
    lo, hi = spline.interval
    return [(float(t), de_boor(spline, float(t))) for t in np.linspace(lo, hi, int(m))]
