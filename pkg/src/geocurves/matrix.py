"""Matrix-group spaces: the Euclidean motion group E3 and det-one SPD(2).

E3 elements use the block layout

    [[1, 0],
     [b, R]]

with R in SO(3) (lower-right 3x3 block) and the translation b in the first
column.  Tangent vectors at a pose x are left-trivialized Lie-algebra
matrices [[0, 0], [rho, hat(omega)]], so that exp_x(v) = x @ expm(v).
"""

from __future__ import annotations

import math

import numpy as np

from .core import Capabilities, DomainError, GeodesicSpace, SpacePoint, TangentVector

PI_GUARD = 1e-8


def hat(w) -> np.ndarray:
    return np.array([[0.0, -w[2], w[1]],
                     [w[2], 0.0, -w[0]],
                     [-w[1], w[0], 0.0]])


def vee(m) -> np.ndarray:
    return np.array([m[2, 1], m[0, 2], m[1, 0]])


def rotation_angle(r) -> float:
    s = 0.5 * np.linalg.norm(vee(r - r.T))
    c = 0.5 * (np.trace(r) - 1.0)
    return math.atan2(s, c)


def so3_exp(w) -> np.ndarray:
    """Rodrigues' formula."""
    w = np.asarray(w, dtype=float)
    th = float(np.linalg.norm(w))
    k = hat(w)
    if th < 1e-6:
        a = 1.0 - th**2 / 6.0 + th**4 / 120.0
        b = 0.5 - th**2 / 24.0 + th**4 / 720.0
    else:
        a = math.sin(th) / th
        b = (1.0 - math.cos(th)) / th**2
    return np.eye(3) + a * k + b * (k @ k)


def so3_log(r) -> np.ndarray:
    """Principal logarithm of a rotation as an axis-angle vector.

    Rotations within PI_GUARD of angle pi are rejected.
    """
    th = rotation_angle(r)
    if th >= math.pi - PI_GUARD:
        raise DomainError(f"rotation angle {th} too close to pi for the principal log")
    skew = vee(r - r.T)
    if th < 1e-6:
        f = 0.5 * (1.0 + th**2 / 6.0 + 7.0 * th**4 / 360.0)
    else:
        f = th / (2.0 * math.sin(th))
    return f * skew


def _v_coeffs(th):
    if th < 1e-5:
        return 0.5 - th**2 / 24.0 + th**4 / 720.0, 1.0 / 6.0 - th**2 / 120.0 + th**4 / 5040.0
    return (1.0 - math.cos(th)) / th**2, (th - math.sin(th)) / th**3


def se3_exp(xi) -> np.ndarray:
    """Group exponential of an algebra element [[0,0],[rho, hat(w)]]."""
    w = vee(xi[1:, 1:])
    rho = xi[1:, 0]
    th = float(np.linalg.norm(w))
    b, c = _v_coeffs(th)
    k = hat(w)
    v = np.eye(3) + b * k + c * (k @ k)
    out = np.zeros((4, 4))
    out[0, 0] = 1.0
    out[1:, 1:] = so3_exp(w)
    out[1:, 0] = v @ rho
    return out


def se3_log(g) -> np.ndarray:
    w = so3_log(g[1:, 1:])
    th = float(np.linalg.norm(w))
    k = hat(w)
    if th < 1e-5:
        c = 1.0 / 12.0 + th**2 / 720.0 + th**4 / 30240.0
    else:
        c = (1.0 - th * math.sin(th) / (2.0 * (1.0 - math.cos(th)))) / th**2
    vinv = np.eye(3) - 0.5 * k + c * (k @ k)
    out = np.zeros((4, 4))
    out[1:, 1:] = k
    out[1:, 0] = vinv @ g[1:, 0]
    return out


def pose_inverse(g) -> np.ndarray:
    r = g[1:, 1:]
    out = np.zeros((4, 4))
    out[0, 0] = 1.0
    out[1:, 1:] = r.T
    out[1:, 0] = -r.T @ g[1:, 0]
    return out


class E3Space(GeodesicSpace):
    """Euclidean motion group with left-translated one-parameter subgroups as
    geodesics and the product distance sqrt(angle^2 + |translation|^2) of the
    relative pose."""

    space_id = "e3"
    ambient_shape = (4, 4)
    capabilities = Capabilities(has_log_exp=True)
    domain_constraint = "relative rotation angles below pi; means need angles below pi/2"

    def _check(self, a):
        if not np.all(np.isfinite(a)):
            raise DomainError("e3: non-finite entries")
        if a[0, 0] != 1.0 or np.any(a[0, 1:] != 0.0):
            raise DomainError("e3: first row must be exactly (1, 0, 0, 0)")
        r = a[1:, 1:]
        if np.max(np.abs(r.T @ r - np.eye(3))) > 1e-10 or abs(np.linalg.det(r) - 1.0) > 1e-10:
            raise DomainError("e3: rotation block is not in SO(3)")

    def _check_pair(self, a, b):
        th = rotation_angle(a[1:, 1:].T @ b[1:, 1:])
        if th >= math.pi - PI_GUARD:
            raise DomainError(f"e3: relative rotation angle {th} too close to pi")

    def _check_tangent(self, a, v):
        if np.any(v[0, :] != 0.0) or np.max(np.abs(v[1:, 1:] + v[1:, 1:].T)) > 1e-10:
            raise DomainError("e3: tangent is not a left-trivialized algebra element")

    def _distance(self, a, b):
        rel = pose_inverse(a) @ b
        th = rotation_angle(rel[1:, 1:])
        return math.hypot(th, float(np.linalg.norm(rel[1:, 0])))

    def _log(self, a, b):
        return se3_log(pose_inverse(a) @ b)

    def _exp(self, a, v):
        if np.linalg.norm(vee(v[1:, 1:])) >= math.pi:
            raise DomainError("e3: rotation part of the tangent reaches angle pi")
        return a @ se3_exp(v)

    def _norm(self, a, v):
        return float(math.hypot(np.linalg.norm(vee(v[1:, 1:])), np.linalg.norm(v[1:, 0])))

    def _affine(self, t, a, b):
        return a @ se3_exp(t * se3_log(pose_inverse(a) @ b))

    def _domain_ok(self, arrays):
        r0 = arrays[0][1:, 1:]
        return all(rotation_angle(r0.T @ a[1:, 1:]) < math.pi / 2 for a in arrays)

    def pose(self, rotation, translation) -> SpacePoint:
        g = np.zeros((4, 4))
        g[0, 0] = 1.0
        g[1:, 1:] = np.asarray(rotation, dtype=float).reshape(3, 3)
        g[1:, 0] = np.asarray(translation, dtype=float)
        return self.point(g)


def rotation_of(p: SpacePoint) -> np.ndarray:
    return np.array(p.coords[1:, 1:])


def translation_of(p: SpacePoint) -> np.ndarray:
    return np.array(p.coords[1:, 0])


def _sym_apply(a, f):
    w, v = np.linalg.eigh(a)
    out = (v * f(w)) @ v.T
    return 0.5 * (out + out.T)


class Spd2Space(GeodesicSpace):
    """Symmetric positive definite 2x2 matrices of determinant one, with the
    affine-invariant metric."""

    space_id = "spd2"
    ambient_shape = (2, 2)
    capabilities = Capabilities(has_log_exp=True)
    domain_constraint = "whole space (nonpositive curvature)"

    def _check(self, a):
        if not np.all(np.isfinite(a)):
            raise DomainError("spd2: non-finite entries")
        if abs(a[0, 1] - a[1, 0]) > 1e-12 * max(1.0, float(np.abs(a).max())):
            raise DomainError("spd2: matrix is not symmetric")
        if a[0, 0] <= 0.0 or np.linalg.eigvalsh(a)[0] <= 0.0:
            raise DomainError("spd2: matrix is not positive definite")
        if abs(np.linalg.det(a) - 1.0) > 1e-10:
            raise DomainError(f"spd2: determinant {np.linalg.det(a)} is not 1")

    def _check_tangent(self, a, v):
        if abs(v[0, 1] - v[1, 0]) > 1e-10 * max(1.0, float(np.abs(v).max())):
            raise DomainError("spd2: tangent is not symmetric")
        if abs(np.trace(np.linalg.solve(a, v))) > 1e-10 * max(1.0, float(np.abs(v).max())):
            raise DomainError("spd2: tangent leaves the determinant-one surface")

    def _whiten(self, a, b):
        s = _sym_apply(a, np.sqrt)
        si = _sym_apply(a, lambda w: 1.0 / np.sqrt(w))
        return s, si, 0.5 * ((si @ b @ si) + (si @ b @ si).T)

    def _distance(self, a, b):
        _, _, m = self._whiten(a, b)
        return float(np.linalg.norm(np.log(np.linalg.eigvalsh(m))))

    def _affine(self, t, a, b):
        s, _, m = self._whiten(a, b)
        out = s @ _sym_apply(m, lambda w: w**t) @ s
        return 0.5 * (out + out.T)

    def _log(self, a, b):
        s, _, m = self._whiten(a, b)
        out = s @ _sym_apply(m, np.log) @ s
        return 0.5 * (out + out.T)

    def _exp(self, a, v):
        s, si, m = self._whiten(a, v)
        out = s @ _sym_apply(m, np.exp) @ s
        return 0.5 * (out + out.T)

    def _norm(self, a, v):
        _, _, m = self._whiten(a, v)
        return float(np.linalg.norm(m))


E3 = E3Space()
SPD2 = Spd2Space()


def e3_log(x: SpacePoint, y: SpacePoint) -> TangentVector:
    return E3.log(x, y)


def e3_exp(v: TangentVector) -> SpacePoint:
    return E3.exp(v)


def e3_distance(x: SpacePoint, y: SpacePoint) -> float:
    return E3.distance(x, y)


def spd2_affine(t: float, x: SpacePoint, y: SpacePoint) -> SpacePoint:
    return SPD2.affine(t, x, y)


def spd2_distance(x: SpacePoint, y: SpacePoint) -> float:
    return SPD2.distance(x, y)


def spd2_midpoint_closed_form(x: SpacePoint, y: SpacePoint) -> SpacePoint:
    """Geometric mean of two det-one SPD(2) matrices as (x + y)/sqrt(det(x + y))."""
    s = SPD2.validate(x) + SPD2.validate(y)
    return SPD2._wrap(s / math.sqrt(np.linalg.det(s)))
