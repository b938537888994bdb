import math

import numpy as np
import pytest

from geometry import hyperbolic
from geometry.hyperbolic import (
    FUNDAMENTAL_DOMAIN,
    INFINITY,
    HalfPlane,
    HPoint,
    HyperbolicPolygon,
    area,
    area_F,
    clip,
    from_klein,
    gamma_ball,
    in_F,
    intersect,
    mobius_apply,
    reduce_to_F,
    tile,
    tile_cover,
    tiles_meeting,
    to_klein,
)
from hecke import exact_core
from hecke.errors import CapExceededError, PreconditionError
from hecke.exact_core import IDENTITY, S, T, T_INV, diag


def test_area_of_fundamental_domain():
    assert area_F() == pytest.approx(math.pi / 3, abs=1e-10)


def test_ideal_triangle_has_area_pi():
    triangle = HyperbolicPolygon([HPoint.ideal(-1.0), HPoint.ideal(1.0), INFINITY])
    assert area(triangle) == pytest.approx(math.pi, abs=1e-9)


def test_interior_points_need_positive_height():
    with pytest.raises(PreconditionError, match="y > 0"):
        HPoint.interior(0.0, 0.0)
    with pytest.raises(PreconditionError):
        _ = INFINITY.z


@pytest.mark.parametrize("z", [0.3 + 0.2j, -2 + 5j, 0.01 + 0.001j, 1j])
def test_klein_round_trip(z):
    back = from_klein(to_klein(HPoint.from_complex(z)))
    assert back.z == pytest.approx(z, rel=1e-7)


def test_ideal_points_in_klein_model():
    assert from_klein(to_klein(INFINITY)) == INFINITY
    assert from_klein(to_klein(HPoint.ideal(2.0))).x == pytest.approx(2.0)
    assert abs(to_klein(HPoint.ideal(-0.5))) == pytest.approx(1.0)


def test_mobius_action():
    i = HPoint.interior(0.0, 1.0)
    assert mobius_apply(S, i).z == pytest.approx(1j)
    assert mobius_apply(T, i).z == pytest.approx(1 + 1j)
    assert mobius_apply(T, INFINITY) == INFINITY
    assert mobius_apply(S, INFINITY).x == pytest.approx(0.0)
    # negative determinant acts on the conjugate
    assert mobius_apply(exact_core.ProjectiveMatrix(1, 0, 0, -1), HPoint.interior(1.0, 2.0)).z == pytest.approx(-1 + 2j)


def test_halfplanes_of_fundamental_domain():
    inside = to_klein(HPoint.interior(0.0, 2.0))
    outside = to_klein(HPoint.interior(0.0, 0.5))
    assert all(h.contains(inside) for h in hyperbolic.F_HALFPLANES)
    assert not HalfPlane.disk_ge(0.0, 1.0).contains(outside)
    assert HalfPlane.disk_ge(0.0, 1.0).complement().contains(outside)


def test_intersection_with_itself():
    assert area(intersect(FUNDAMENTAL_DOMAIN, FUNDAMENTAL_DOMAIN)) == pytest.approx(math.pi / 3, abs=1e-9)


def test_clip_along_the_imaginary_axis():
    left = clip(FUNDAMENTAL_DOMAIN, HalfPlane.re_le(0.0))
    right = clip(FUNDAMENTAL_DOMAIN, HalfPlane.re_le(0.0).complement())
    assert area(left) == pytest.approx(math.pi / 6, abs=1e-9)
    assert area(right) == pytest.approx(math.pi / 6, abs=1e-9)
    assert area(left) + area(right) == pytest.approx(area(FUNDAMENTAL_DOMAIN), abs=1e-9)


def test_clip_inside_the_unit_disk_is_degenerate():
    assert area(clip(FUNDAMENTAL_DOMAIN, HalfPlane.disk_le(0.0, 1.0))) == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("seed", [0, 1, 2, 3, 4])
def test_clip_is_additive(seed):
    rng = np.random.default_rng(seed)
    # points on a Klein circle in angular order form a convex polygon
    angles = np.sort(rng.uniform(0.0, 2 * math.pi, 6))
    poly = HyperbolicPolygon.from_klein([complex(0.8 * np.exp(1j * t)) for t in angles])
    a = rng.uniform(0.0, 2 * math.pi)
    p = complex(0.95 * np.exp(1j * a))
    q = complex(0.95 * np.exp(1j * (a + math.pi + rng.uniform(0.3, 1.0))))
    half = HalfPlane.through(p, q, 0j)
    total = area(clip(poly, half)) + area(clip(poly, half.complement()))
    assert total == pytest.approx(area(poly), abs=1e-8)


def test_translated_tile_meets_only_on_a_side():
    assert area(intersect(hyperbolic.tile(T), FUNDAMENTAL_DOMAIN)) == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("z", [0.3 + 0.1j, 2.7 + 0.05j, -0.49 + 0.9j, 0.1 + 1.5j])
def test_reduce_to_F(z):
    p = HPoint.from_complex(z)
    reduced, gamma = reduce_to_F(p)
    assert in_F(reduced.z)
    assert exact_core.is_in_gamma(gamma)
    assert mobius_apply(gamma, p).z == pytest.approx(reduced.z, rel=1e-9)


def test_reduce_rejects_ideal_points():
    with pytest.raises(PreconditionError, match="interior"):
        reduce_to_F(HPoint.ideal(0.0))


def test_tile_cover_of_doubled_domain():
    cover = tile_cover(hyperbolic.tile(diag(2, 1)))
    assert set(cover.tiles) == {IDENTITY, T, T_INV}
    assert cover.total == pytest.approx(math.pi / 3, abs=1e-8)


@pytest.fixture(scope="module")
def ball_tiles():
    return [(g, tile(g)) for g in gamma_ball(12)]


@pytest.mark.parametrize("sigma", [diag(1, 2), diag(2, 1), diag(1, 3)])
def test_tiles_meeting_agree_with_a_ball_scan(sigma, ball_tiles):
    region = tile(exact_core.inverse(sigma))
    scanned = {g for g, t in ball_tiles if area(intersect(t, region)) > 0}
    assert set(tiles_meeting(region)) == scanned


def test_tile_cover_cap():
    with pytest.raises(CapExceededError):
        tile_cover(hyperbolic.tile(diag(1, 7)), cap=2)


def test_gamma_ball():
    assert set(gamma_ball(1)) == {IDENTITY, S, T, T_INV}
    ball = list(gamma_ball(3))
    assert len(ball) == len(set(ball))
    assert all(exact_core.is_in_gamma(g) for g in ball)


def test_area_is_invariant():
    poly = HyperbolicPolygon([HPoint.interior(0, 1), HPoint.interior(1, 2), HPoint.interior(-1, 3)])
    for g in (T, S, diag(1, 3), exact_core.ProjectiveMatrix(2, 1, 1, 1)):
        assert area(poly.transform(g)) == pytest.approx(area(poly), rel=1e-9)
