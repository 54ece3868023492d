"""Random generators and independent oracles shared by the test modules.

Nothing here calls the package's affine maps or recursions: the oracles use
closed forms (Bernstein sums, Cox-de Boor basis, Lagrange polynomials, scipy
matrix functions) so they check the implementation by a different route.
"""

import math

import numpy as np
from scipy.linalg import expm, fractional_matrix_power, logm

from geocurves.matrix import E3, SPD2, hat
from geocurves.spaces import SPHERE


def bernstein_oracle(i, n, t):
    return math.comb(n, i) * t**i * (1.0 - t) ** (n - i)


def bezier_oracle(points, t):
    n = len(points) - 1
    return sum(bernstein_oracle(i, n, t) * np.asarray(p, float) for i, p in enumerate(points))


def rational_oracle(points, weights, t):
    n = len(points) - 1
    b = [weights[i] * bernstein_oracle(i, n, t) for i in range(n + 1)]
    return sum(bi * np.asarray(p, float) for bi, p in zip(b, points)) / sum(b)


def lagrange_oracle(nodes, points, t):
    out = 0.0
    for i, (ti, p) in enumerate(zip(nodes, points)):
        li = 1.0
        for j, tj in enumerate(nodes):
            if j != i:
                li *= (t - tj) / (ti - tj)
        out = out + li * np.asarray(p, float)
    return out


def cox_de_boor_basis(knots, m, t):
    """All N_{i,m}(t), i = 0..n; the right end of the interval uses the last nonempty span."""
    k = list(knots)
    n = len(k) - m - 2
    hi = k[n + 1]
    # degree-0 indicator: half-open spans, except the closing span at the right end
    if t == hi:
        span = max(i for i in range(len(k) - 1) if k[i] < k[i + 1] and k[i + 1] <= hi)
        basis = [1.0 if i == span else 0.0 for i in range(len(k) - 1)]
    else:
        basis = [1.0 if k[i] <= t < k[i + 1] else 0.0 for i in range(len(k) - 1)]
    for p in range(1, m + 1):
        nxt = []
        for i in range(len(k) - 1 - p):
            a = 0.0 if k[i + p] == k[i] else (t - k[i]) / (k[i + p] - k[i]) * basis[i]
            b = (0.0 if k[i + p + 1] == k[i + 1]
                 else (k[i + p + 1] - t) / (k[i + p + 1] - k[i + 1]) * basis[i + 1])
            nxt.append(a + b)
        basis = nxt
    return basis[: n + 1]


def spline_oracle(knots, m, points, t):
    basis = cox_de_boor_basis(knots, m, t)
    return sum(b * np.asarray(p, float) for b, p in zip(basis, points))


def uniform_cubic_oracle(points, t):
    """Uniform cubic B-spline in matrix form on the closed polygon, t in [0, N]."""
    N = len(points)
    j = min(int(math.floor(t)), N - 1)
    u = t - j
    coef = [(1 - u) ** 3, 3 * u**3 - 6 * u**2 + 4, -3 * u**3 + 3 * u**2 + 3 * u + 1, u**3]
    return sum(c * np.asarray(points[(j + r) % N], float) for r, c in enumerate(coef)) / 6.0


def slerp_oracle(t, x, y):
    x, y = np.asarray(x, float), np.asarray(y, float)
    c = float(np.dot(x, y))
    e = y - c * x
    ne = np.linalg.norm(e)
    if ne == 0.0:
        return x.copy()
    phi = math.acos(max(-1.0, min(1.0, c)))
    return math.cos(t * phi) * x + math.sin(t * phi) * e / ne


# -- random generators -------------------------------------------------------

def random_unit(rng, dim=3):
    v = rng.normal(size=dim)
    return v / np.linalg.norm(v)


def sphere_points_in_ball(rng, k, radius, center=None):
    """k random points of S² within geodesic ``radius`` of ``center``."""
    c = random_unit(rng) if center is None else np.asarray(center, float)
    out = []
    for _ in range(k):
        v = rng.normal(size=3)
        v -= np.dot(v, c) * c
        v /= np.linalg.norm(v)
        r = radius * math.sqrt(rng.random())
        out.append(SPHERE.point(math.cos(r) * c + math.sin(r) * v))
    return out


def random_rotation(rng, max_angle=math.pi):
    axis = random_unit(rng)
    return expm(hat(axis * max_angle * rng.random()))


def random_pose(rng, max_angle=1.2, scale=2.0):
    return E3.pose(random_rotation(rng, max_angle), rng.normal(scale=scale, size=3))


def random_spd2(rng, spread=1.0):
    a, b = rng.normal(scale=spread, size=2)
    s = np.array([[a, b], [b, -a]])
    return SPD2.point(expm(s))


def expm_affine_e3(t, x, y):
    rel = np.linalg.solve(x, y)
    return x @ np.real(expm(t * np.real(logm(rel))))


def spd2_affine_oracle(t, x, y):
    return np.real(x @ fractional_matrix_power(np.linalg.solve(x, y), t))
