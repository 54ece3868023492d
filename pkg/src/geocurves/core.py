"""Geodesic-space abstraction, Euclidean model space and Bernstein utilities.

A space works on plain numpy arrays internally (``_distance``, ``_affine``,
``_log``, ``_exp``); the public methods take and return :class:`SpacePoint`
and :class:`TangentVector` values and do the validation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

TOL = 1e-10


class GeodesicError(ValueError):
    """Base class for all errors raised by this package."""


class DomainError(GeodesicError):
    """Points or parameters outside the region where the construction is defined."""


class SpaceMismatchError(GeodesicError):
    pass


class CapabilityError(GeodesicError):
    pass


class ConvergenceError(GeodesicError):
    pass


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SpacePoint:
    space_id: str
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", _frozen(self.coords))

    def __repr__(self):
        return f"SpacePoint({self.space_id!r}, {self.coords.tolist()!r})"

    def allclose(self, other: "SpacePoint", atol: float = TOL) -> bool:
        return (self.space_id == other.space_id
                and bool(np.allclose(self.coords, other.coords, rtol=0.0, atol=atol)))


@dataclass(frozen=True, eq=False)
class TangentVector:
    """Tangent vector at ``base``, in the space's ambient representation.

    Arithmetic is only defined between vectors sharing the same base point.
    """

    base: SpacePoint
    vec: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "vec", _frozen(self.vec))

    def _check_base(self, other: "TangentVector"):
        if self.base is other.base:
            return
        if (self.base.space_id != other.base.space_id
                or not np.array_equal(self.base.coords, other.base.coords)):
            raise SpaceMismatchError("tangent vectors attached to different base points")

    def __add__(self, other: "TangentVector") -> "TangentVector":
        self._check_base(other)
        return TangentVector(self.base, self.vec + other.vec)

    def __sub__(self, other: "TangentVector") -> "TangentVector":
        self._check_base(other)
        return TangentVector(self.base, self.vec - other.vec)

    def __mul__(self, s: float) -> "TangentVector":
        return TangentVector(self.base, float(s) * self.vec)

    __rmul__ = __mul__

    def __neg__(self) -> "TangentVector":
        return TangentVector(self.base, -self.vec)

    def __truediv__(self, s: float) -> "TangentVector":
        return TangentVector(self.base, self.vec / float(s))


@dataclass(frozen=True)
class Capabilities:
    has_log_exp: bool = False
    is_unique_geodesic: bool = True
    satisfies_condition_1: bool = False


class GeodesicSpace:
    """A unique geodesic space given by its metric and affine map.

    Subclasses set ``space_id``, ``ambient_shape``, ``capabilities`` and
    ``domain_constraint`` and implement the array-level hooks.
    """

    space_id: str = "abstract"
    ambient_shape: tuple = ()
    capabilities = Capabilities()
    domain_constraint: str = ""

    @property
    def ambient_dim(self) -> int:
        return int(np.prod(self.ambient_shape))

    # -- array-level hooks ---------------------------------------------
    def _check(self, a: np.ndarray) -> None:
        """Raise DomainError unless ``a`` is a valid point."""

    def _distance(self, a, b) -> float:
        raise NotImplementedError

    def _affine(self, t: float, a, b) -> np.ndarray:
        raise NotImplementedError

    def _log(self, a, b) -> np.ndarray:
        raise CapabilityError(f"{self.space_id} has no log map")

    def _exp(self, a, v) -> np.ndarray:
        raise CapabilityError(f"{self.space_id} has no exp map")

    def _norm(self, a, v) -> float:
        return float(np.linalg.norm(v))

    def _check_tangent(self, a, v) -> None:
        pass

    def _check_pair(self, a, b) -> None:
        """Raise DomainError if a and b have no unique shortest geodesic."""

    def _extend(self, s: float, a, b) -> np.ndarray:
        """Point at parameter ``s`` on the geodesic through a and b, s may leave [0, 1]."""
        if 0.0 <= s <= 1.0:
            return self._affine(s, a, b)
        if not self.capabilities.has_log_exp:
            raise DomainError(f"{self.space_id}: geodesic extension beyond [0, 1] is not defined")
        return self._exp(a, s * self._log(a, b))

    def _step(self, t: float, a, b) -> np.ndarray:
        # endpoints are returned untouched so curves interpolate them exactly
        self._check_pair(a, b)
        if t == 0.0:
            return a
        if t == 1.0:
            return b
        return self._affine(t, a, b)

    def _domain_ok(self, arrays: Sequence[np.ndarray]) -> bool:
        """Whether a point set lies where weighted means are unique."""
        return True

    # -- public API -------------------------------------------------------
    def point(self, coords) -> SpacePoint:
        a = np.array(coords, dtype=float)
        if a.size != self.ambient_dim:
            raise DomainError(f"{self.space_id}: expected {self.ambient_dim} coordinates, got {a.size}")
        a = a.reshape(self.ambient_shape)
        self._check(a)
        return SpacePoint(self.space_id, a)

    def _wrap(self, a) -> SpacePoint:
        return SpacePoint(self.space_id, a)

    def validate(self, p: SpacePoint) -> np.ndarray:
        if not isinstance(p, SpacePoint):
            raise TypeError(f"expected SpacePoint, got {type(p).__name__}")
        if p.space_id != self.space_id:
            raise SpaceMismatchError(f"point of {p.space_id!r} used in {self.space_id!r}")
        if p.coords.shape != self.ambient_shape:
            raise DomainError(f"{self.space_id}: bad coordinate shape {p.coords.shape}")
        self._check(p.coords)
        return p.coords

    def is_valid(self, p: SpacePoint) -> bool:
        try:
            self.validate(p)
        except GeodesicError:
            return False
        return True

    def distance(self, x: SpacePoint, y: SpacePoint) -> float:
        return self._distance(self.validate(x), self.validate(y))

    def affine(self, t: float, x: SpacePoint, y: SpacePoint) -> SpacePoint:
        t = float(t)
        if not 0.0 <= t <= 1.0:
            raise DomainError(f"affine parameter {t} outside [0, 1]")
        a, b = self.validate(x), self.validate(y)
        out = self._step(t, a, b)
        return x if out is a else y if out is b else self._wrap(out)

    def log(self, x: SpacePoint, y: SpacePoint) -> TangentVector:
        if not self.capabilities.has_log_exp:
            raise CapabilityError(f"{self.space_id} has no log map")
        a, b = self.validate(x), self.validate(y)
        self._check_pair(a, b)
        return TangentVector(x, self._log(a, b))

    def exp(self, v: TangentVector) -> SpacePoint:
        if not self.capabilities.has_log_exp:
            raise CapabilityError(f"{self.space_id} has no exp map")
        a = self.validate(v.base)
        self._check_tangent(a, v.vec)
        return self._wrap(self._exp(a, v.vec))

    def norm(self, v: TangentVector) -> float:
        return self._norm(self.validate(v.base), v.vec)

    def zero(self, x: SpacePoint) -> TangentVector:
        return TangentVector(x, np.zeros(self.ambient_shape))

    def in_domain(self, points: Sequence[SpacePoint]) -> bool:
        return self._domain_ok([self.validate(p) for p in points])

    def descriptor(self) -> "GeodesicSpaceDescriptor":
        return GeodesicSpaceDescriptor(self.space_id, self.ambient_dim, self.capabilities,
                                       self.domain_constraint, self.in_domain)

    def __repr__(self):
        return f"<{type(self).__name__} {self.space_id}>"


@dataclass(frozen=True)
class GeodesicSpaceDescriptor:
    space_id: str
    ambient_dim: int
    capabilities: Capabilities
    domain_constraint: str
    domain_predicate: Callable[[Sequence[SpacePoint]], bool] = field(repr=False, compare=False)


class EuclideanSpace(GeodesicSpace):
    capabilities = Capabilities(has_log_exp=True, satisfies_condition_1=True)
    domain_constraint = "all of R^n"

    def __init__(self, dim: int):
        if int(dim) < 1:
            raise DomainError(f"dimension must be >= 1, got {dim}")
        self.dim = int(dim)
        self.space_id = f"euclidean{self.dim}"
        self.ambient_shape = (self.dim,)

    def _check(self, a):
        if not np.all(np.isfinite(a)):
            raise DomainError("non-finite coordinates")

    def _distance(self, a, b):
        return float(np.linalg.norm(b - a))

    def _affine(self, t, a, b):
        return (1.0 - t) * a + t * b

    def _extend(self, s, a, b):
        return (1.0 - s) * a + s * b

    def _log(self, a, b):
        return b - a

    def _exp(self, a, v):
        return a + v


def euclidean_space(dim: int) -> EuclideanSpace:
    return EuclideanSpace(dim)


# module-level forms of the space operations

def distance(space: GeodesicSpace, x: SpacePoint, y: SpacePoint) -> float:
    return space.distance(x, y)


def affine(space: GeodesicSpace, t: float, x: SpacePoint, y: SpacePoint) -> SpacePoint:
    return space.affine(t, x, y)


def log_map(space: GeodesicSpace, x: SpacePoint, y: SpacePoint) -> TangentVector:
    return space.log(x, y)


def exp_map(space: GeodesicSpace, v: TangentVector) -> SpacePoint:
    return space.exp(v)


def bernstein_all(n: int, t: float) -> np.ndarray:
    """All Bernstein values B_0^n(t) .. B_n^n(t) by the triangular recurrence."""
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    t = float(t)
    s = 1.0 - t
    b = np.zeros(n + 1)
    b[0] = 1.0
    for r in range(1, n + 1):
        # B_i^r = (1-t) B_i^{r-1} + t B_{i-1}^{r-1}, updated in place from the right
        for i in range(r, 0, -1):
            b[i] = s * b[i] + t * b[i - 1]
        b[0] = s * b[0]
    return b


def bernstein(i: int, n: int, t: float) -> float:
    if not 0 <= i <= n:
        raise ValueError(f"Bernstein index {i} out of range for degree {n}")
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"Bernstein parameter {t} outside [0, 1]")
    return float(bernstein_all(n, t)[i])
