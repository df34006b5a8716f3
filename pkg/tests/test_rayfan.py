import random

import pytest

from tautrope.geom import OpenSegment, Ray, dist, orient, pt
from tautrope.rayfan import (
    DegenerateObserver,
    NonCollinearGroup,
    RayCrossing,
    crossed_rays,
    fan_rays,
    group_collinear,
    resolve_collinear_group,
)
from tautrope.sceneio import Scene

from trials import random_scene


def test_fan_rays_directions(one_wall):
    fan = fan_rays(one_wall, pt(-2, 0))
    assert fan.rays == (
        Ray(pt(0, 1), pt(2, 1)),
        Ray(pt(0, 3), pt(2, 3)),
    )


def test_fan_skips_observer_endpoint(one_wall):
    fan = fan_rays(one_wall, pt(0, 1))
    assert fan.rays == (Ray(pt(0, 3), pt(0, 2)),)


def test_fan_empty_scene(empty_scene):
    assert fan_rays(empty_scene, pt(3, 7)).rays == ()


def test_fan_ray_count(two_walls):
    assert len(fan_rays(two_walls, pt(-2, 0)).rays) == 4
    assert len(fan_rays(two_walls, pt(0, 1)).rays) == 3


def test_fan_degenerate_observer(one_wall):
    with pytest.raises(DegenerateObserver):
        fan_rays(one_wall, pt(0, 2))


def test_fan_rays_point_away_random():
    rng = random.Random(7)
    for _ in range(20):
        scene = random_scene(rng, max_obstacles=6)
        observer = pt(rng.uniform(-9, 9), rng.uniform(-9, 9))
        try:
            fan = fan_rays(scene, observer)
        except DegenerateObserver:
            continue
        for ray in fan.rays:
            head = pt(ray.origin.x + ray.dir.x, ray.origin.y + ray.dir.y)
            assert orient(observer, ray.origin, head) == 0
            dot = (ray.origin.x - observer.x) * ray.dir.x + (
                ray.origin.y - observer.y
            ) * ray.dir.y
            assert dot > 0


def test_crossed_rays_single_hit(one_wall):
    fan = fan_rays(one_wall, pt(-2, 0))
    hits = crossed_rays(fan, None, OpenSegment(pt(2, 0), pt(2, 4)))
    assert len(hits) == 1
    assert hits[0].ray.origin == pt(0, 1)
    assert hits[0].point == pt(2, 2)


def test_crossed_rays_below_everything(one_wall):
    fan = fan_rays(one_wall, pt(-2, 0))
    assert crossed_rays(fan, None, OpenSegment(pt(2, 0), pt(2, 0.5))) == []


def test_crossed_rays_extra_ray(one_wall):
    fan = fan_rays(one_wall, pt(0, 1))
    extra = Ray(pt(0, 1), pt(2, 1))
    hits = crossed_rays(fan, extra, OpenSegment(pt(2, 4), pt(2, 0)))
    assert len(hits) == 1
    assert hits[0].ray == extra
    assert hits[0].point == pt(2, 2)


def test_crossed_rays_reproducible_points():
    rng = random.Random(11)
    from tautrope.geom import segment_ray_crossing

    for _ in range(20):
        scene = random_scene(rng, max_obstacles=8)
        observer = pt(rng.uniform(-9, 9), rng.uniform(-9, 9))
        move = OpenSegment(
            pt(rng.uniform(-9, 9), rng.uniform(-9, 9)),
            pt(rng.uniform(-9, 9), rng.uniform(-9, 9)),
        )
        try:
            fan = fan_rays(scene, observer)
            hits = crossed_rays(fan, None, move)
        except Exception:
            continue
        for hit in hits:
            again = segment_ray_crossing(move, hit.ray)
            assert again is not None
            assert dist(again.point, hit.point) <= 1e-12


def _crossing(src, d, point=pt(0, 0), s=0.5):
    return RayCrossing(Ray(src, d), point, s)


def test_resolve_furthest_source():
    crossings = [
        _crossing(pt(0, 1), pt(0, 1)),
        _crossing(pt(0, 2), pt(0, 2)),
        _crossing(pt(0, 3), pt(0, 3)),
        _crossing(pt(0, 4), pt(0, 4)),
    ]
    winner = resolve_collinear_group(crossings, pt(0, 0))
    assert winner.ray.origin == pt(0, 4)


def test_resolve_singleton():
    only = _crossing(pt(0, 1), pt(0, 1))
    assert resolve_collinear_group([only], pt(5, 5)) is only


def test_resolve_reference_above():
    crossings = [
        _crossing(pt(0, 1), pt(0, -1)),
        _crossing(pt(0, 4), pt(0, -1)),
    ]
    winner = resolve_collinear_group(crossings, pt(0, 5))
    assert winner.ray.origin == pt(0, 1)


def test_resolve_permutation_invariant():
    crossings = [
        _crossing(pt(0, 1), pt(0, 1)),
        _crossing(pt(0, 2), pt(0, 2)),
        _crossing(pt(0, 4), pt(0, 4)),
    ]
    rng = random.Random(3)
    for _ in range(10):
        shuffled = crossings[:]
        rng.shuffle(shuffled)
        assert resolve_collinear_group(shuffled, pt(0, 0)).ray.origin == pt(0, 4)


def test_resolve_rejects_non_collinear():
    with pytest.raises(NonCollinearGroup):
        resolve_collinear_group(
            [_crossing(pt(0, 1), pt(0, 1)), _crossing(pt(1, 0), pt(1, 0))],
            pt(0, 0),
        )


def test_group_collinear():
    a = _crossing(pt(0, 1), pt(0, 1))
    b = _crossing(pt(0, 2), pt(0, 2))
    c = _crossing(pt(1, 0), pt(1, 0))
    groups = group_collinear([a, b, c])
    assert sorted(len(g) for g in groups) == [1, 2]
