import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geocurves import DomainError, euclidean_space
from geocurves.spaces import SPHERE, ManhattanSpace, ParisSpace, manhattan_affine, sphere_affine

from helpers import random_rotation, slerp_oracle, sphere_points_in_ball


def test_sphere_affine_examples():
    x, y = SPHERE.point([1, 0, 0]), SPHERE.point([0, 1, 0])
    h = 1 / math.sqrt(2)
    np.testing.assert_allclose(sphere_affine(0.5, x, y).coords, [h, h, 0], atol=1e-15)
    np.testing.assert_allclose(sphere_affine(1 / 3, x, y).coords,
                               [math.sqrt(3) / 2, 0.5, 0], atol=1e-15)
    assert sphere_affine(0.7, x, x).allclose(x, atol=1e-15)


def test_sphere_rejects_antipodes_and_non_unit():
    with pytest.raises(DomainError):
        sphere_affine(0.5, SPHERE.point([1, 0, 0]), SPHERE.point([-1, 0, 0]))
    with pytest.raises(DomainError):
        SPHERE.point([1.0 + 1e-9, 0, 0])


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**31 - 1), t=st.floats(0.0, 1.0))
def test_slerp_matches_rotation_oracle(seed, t):
    x, y = sphere_points_in_ball(np.random.default_rng(seed), 2, 1.5)
    z = sphere_affine(t, x, y)
    np.testing.assert_allclose(z.coords, slerp_oracle(t, x.coords, y.coords), atol=1e-12)
    assert np.linalg.norm(z.coords) == pytest.approx(1.0, abs=1e-15)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**31 - 1), t=st.floats(0.0, 1.0))
def test_slerp_is_rotation_equivariant(seed, t):
    rng = np.random.default_rng(seed)
    x, y = sphere_points_in_ball(rng, 2, 1.5)
    r = random_rotation(rng)
    lhs = r @ sphere_affine(t, x, y).coords
    rhs = sphere_affine(t, SPHERE.point(r @ x.coords), SPHERE.point(r @ y.coords)).coords
    np.testing.assert_allclose(lhs, rhs, atol=1e-10)


def test_sphere_mean_domain():
    rng = np.random.default_rng(0)
    assert SPHERE.in_domain(sphere_points_in_ball(rng, 5, 0.7))
    spread = [SPHERE.point(v) for v in np.eye(3)]
    assert not SPHERE.in_domain(spread)


# -- Manhattan ---------------------------------------------------------------

M0 = ManhattanSpace(0.0)


def test_manhattan_examples():
    x, y = M0.point([0, 0]), M0.point([2, 2])
    np.testing.assert_allclose(manhattan_affine(0, 0.5, x, y).coords, [1, 1], atol=1e-15)
    np.testing.assert_allclose(manhattan_affine(0, 1 / 8, x, y).coords, [0, 0.5], atol=1e-15)
    assert manhattan_affine(0, 0.0, x, y) is x
    assert manhattan_affine(0, 1.0, x, y) is y
    assert M0.distance(x, y) == 4.0


def test_manhattan_path_vertices_and_branches():
    x, y = np.array([0.0, 0.0]), np.array([2.0, 2.0])
    verts = M0.path_vertices(x, y)
    np.testing.assert_allclose(verts[1], [0, 1])
    np.testing.assert_allclose(verts[2], [2, 1])
    # third branch of the piecewise map: L2/L3 = 3/4 < t
    np.testing.assert_allclose(M0._affine(7 / 8, x, y), [2, 1.5], atol=1e-15)


def test_manhattan_degenerate_segments():
    # x on the line g: first segment has zero length
    m = ManhattanSpace(1.0)
    x, y = m.point([0, 0]), m.point([2, 2])
    for t in np.linspace(0, 1, 11):
        np.testing.assert_allclose(m.affine(t, x, y).coords, [2 * t, 2 * t], atol=1e-14)
    # x*, y* coincide: middle segment empty
    v = ManhattanSpace(math.inf)
    a, b = v.point([0, 0]), v.point([2, 0])
    np.testing.assert_allclose(v.affine(0.25, a, b).coords, [0.5, 0], atol=1e-15)
    np.testing.assert_allclose(v.affine(0.75, a, b).coords, [1.5, 0], atol=1e-15)
    assert M0.affine(0.3, x, x).allclose(x, atol=0)


def _arclength_to(verts, point):
    """Taxicab arc-length along the polyline from its start to ``point`` (on it)."""
    acc = 0.0
    for a, b in zip(verts, verts[1:]):
        seg = b - a
        ls = float(np.abs(seg).sum())
        if ls == 0.0:
            continue
        w = np.dot(point - a, seg) / np.dot(seg, seg)
        if -1e-12 <= w <= 1 + 1e-12 and np.linalg.norm(a + w * seg - point) < 1e-9:
            return acc + w * ls
        acc += ls
    raise AssertionError("point not on path")


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 2**31 - 1), t=st.floats(0.0, 1.0),
       k=st.sampled_from([0.0, 0.5, -2.0, 3.0, math.inf]))
def test_manhattan_point_on_path_at_arclength(seed, t, k):
    rng = np.random.default_rng(seed)
    m = ManhattanSpace(k)
    x, y = m.point(rng.normal(size=2)), m.point(rng.normal(size=2))
    verts = m.path_vertices(x.coords, y.coords)
    z = m.affine(t, x, y)
    total = sum(float(np.abs(b - a).sum()) for a, b in zip(verts, verts[1:]))
    assert _arclength_to(verts, z.coords) == pytest.approx(t * total, abs=1e-10)
    if m.path_is_geodesic(x, y):
        assert m.distance(x, z) == pytest.approx(t * m.distance(x, y), abs=1e-10)
        assert m.distance(x, z) + m.distance(z, y) == pytest.approx(m.distance(x, y), abs=1e-10)
    assert z.allclose(m.affine(1 - t, y, x), atol=1e-10)


def test_manhattan_euclidean_lengths_variant():
    m = ManhattanSpace(1.0, length_norm="l2")
    x, y = m.point([0, 0]), m.point([2, 0])
    # path (0,0) -> (0.5,-0.5) -> (1.5,0.5) -> (2,0); Euclidean lengths r, 2r, r with r = 1/sqrt2
    np.testing.assert_allclose(m.affine(0.25, x, y).coords, [0.5, -0.5], atol=1e-15)
    np.testing.assert_allclose(m.affine(0.5, x, y).coords, [1.0, 0.0], atol=1e-15)
    assert not m.path_is_geodesic(x, y)


# -- Paris -------------------------------------------------------------------

P = ParisSpace([0.0, 0.0])


def test_paris_examples():
    x, y = P.point([1, 0]), P.point([0, 1])
    np.testing.assert_allclose(P.affine(0.5, x, y).coords, [0, 0], atol=0)
    np.testing.assert_allclose(P.affine(0.25, x, y).coords, [0.5, 0], atol=1e-15)
    assert P.distance(x, y) == 2.0
    a, b = P.point([1, 0]), P.point([2, 0])
    assert P.collinear(a, b)
    for t in np.linspace(0, 1, 7):
        np.testing.assert_allclose(P.affine(t, a, b).coords, [1 + t, 0], atol=1e-15)


def test_paris_path_passes_through_hub():
    rng = np.random.default_rng(5)
    hub = np.array([0.2, -0.4])
    space = ParisSpace(hub)
    for _ in range(50):
        x, y = space.point(rng.normal(size=2)), space.point(rng.normal(size=2))
        assert not space.collinear(x, y)
        l1 = float(np.linalg.norm(x.coords - hub))
        s = l1 / space.distance(x, y)
        np.testing.assert_allclose(space.affine(s, x, y).coords, hub, atol=1e-12)


def test_paris_triangle_inequality():
    rng = np.random.default_rng(6)
    space = ParisSpace([0.0, 0.0])
    for _ in range(500):
        x, y, z = (space.point(rng.normal(size=2)) for _ in range(3))
        assert space.distance(x, y) <= space.distance(x, z) + space.distance(z, y) + 1e-12


def test_paris_over_sphere_base():
    hub = SPHERE.point([0, 0, 1])
    space = ParisSpace(hub, base=SPHERE)
    x = space.point([1, 0, 0])
    y = space.point([0, 1, 0])
    assert space.distance(x, y) == pytest.approx(math.pi, abs=1e-15)
    np.testing.assert_allclose(space.affine(0.5, x, y).coords, [0, 0, 1], atol=1e-15)
    z = space.point([math.sqrt(0.5), 0, math.sqrt(0.5)])
    assert space.collinear(x, z)
    assert space.distance(x, z) == pytest.approx(math.pi / 4, abs=1e-15)


def test_paris_collinearity_tolerance_band():
    x = P.point([1, 0])
    near = P.point([2, 1e-12])
    far = P.point([2, 1e-3])
    assert P.collinear(x, near)
    assert not P.collinear(x, far)
    assert euclidean_space(2).space_id != P.space_id
