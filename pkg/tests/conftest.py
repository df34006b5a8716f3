import pytest

from tautrope.geom import OpenSegment, pt
from tautrope.sceneio import Scene


@pytest.fixture
def one_wall():
    """S1: a single vertical wall, anchor left of it."""
    return Scene((OpenSegment(pt(0, 1), pt(0, 3)),))


@pytest.fixture
def two_walls():
    return Scene(
        (
            OpenSegment(pt(0, 1), pt(0, 3)),
            OpenSegment(pt(1, 1), pt(1, 3)),
        )
    )


@pytest.fixture
def collinear_stack():
    """Two collinear wall pieces on the y axis, tie-break territory."""
    return Scene(
        (
            OpenSegment(pt(0, 1), pt(0, 2)),
            OpenSegment(pt(0, 3), pt(0, 4)),
        ),
        allow_collinear=True,
    )


@pytest.fixture
def empty_scene():
    return Scene(())
