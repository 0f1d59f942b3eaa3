import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from glyphgeom.geometry import EmptySkeletonError, universe_of_discourse, zone
from glyphgeom.ingest import BitGrid


def test_crop_keeps_grid_touching_all_borders(x5):
    assert universe_of_discourse(x5) == x5


def test_crop_single_pixel():
    g = BitGrid.from_coords((10, 10), [(4, 7)])
    assert universe_of_discourse(g).shape == (1, 1)


def test_crop_two_pixels():
    g = BitGrid.from_coords((8, 8), [(2, 3), (5, 6)])
    u = universe_of_discourse(g)
    assert u == BitGrid.from_coords((4, 4), [(1, 1), (4, 4)])


def test_crop_empty_raises():
    with pytest.raises(EmptySkeletonError, match="empty skeleton"):
        universe_of_discourse(BitGrid(np.zeros((4, 4), bool)))


def test_zone_9x9_exact():
    zs = zone(BitGrid(np.ones((9, 9), bool)), "grid3x3")
    assert len(zs) == 9
    assert all(z.grid.shape == (3, 3) for z in zs)


def test_zone_10x7_boundaries():
    zs = zone(BitGrid(np.zeros((10, 7), bool)), "grid3x3")
    assert [zs[i * 3].rows for i in range(3)] == [(0, 3), (3, 6), (6, 10)]
    assert [zs[j].cols for j in range(3)] == [(0, 2), (2, 4), (4, 7)]
    assert [zs[i * 3].grid.rows for i in range(3)] == [3, 3, 4]
    assert [zs[j].grid.cols for j in range(3)] == [2, 2, 3]


def test_zone_degenerate_axis():
    zs = zone(BitGrid(np.ones((2, 9), bool)), "grid3x3")
    assert [z.grid.rows for z in zs[:3]] == [0, 0, 0]
    assert sum(z.grid.count() for z in zs) == 18


def test_horizontal_strips_full_width():
    zs = zone(BitGrid(np.ones((7, 5), bool)), "horizontal3")
    assert len(zs) == 3
    assert [z.rows for z in zs] == [(0, 2), (2, 4), (4, 7)]
    assert all(z.cols == (0, 5) for z in zs)


def test_unknown_scheme():
    with pytest.raises(ValueError):
        zone(BitGrid(np.ones((3, 3), bool)), "diagonal")


shapes = st.tuples(st.integers(1, 25), st.integers(1, 25))


@settings(max_examples=100)
@given(shapes, st.sampled_from(["grid3x3", "horizontal3"]))
def test_every_pixel_in_exactly_one_zone(shape, scheme):
    hits = np.zeros(shape, int)
    for z in zone(BitGrid(np.zeros(shape, bool)), scheme):
        hits[z.rows[0]:z.rows[1], z.cols[0]:z.cols[1]] += 1
        assert z.grid.shape == (z.rows[1] - z.rows[0], z.cols[1] - z.cols[0])
    assert (hits == 1).all()


@settings(max_examples=100)
@given(shapes)
def test_zone_sizes_differ_by_at_most_one(shape):
    zs = zone(BitGrid(np.zeros(shape, bool)), "grid3x3")
    heights = [zs[i * 3].grid.rows for i in range(3)]
    widths = [zs[j].grid.cols for j in range(3)]
    assert max(heights) - min(heights) <= 1
    assert max(widths) - min(widths) <= 1


nonempty = arrays(np.bool_, st.tuples(st.integers(1, 15), st.integers(1, 15))).filter(lambda a: a.any())


@settings(max_examples=100)
@given(nonempty, st.tuples(*[st.integers(0, 4)] * 4))
def test_crop_idempotent_and_ignores_padding(a, pad):
    g = BitGrid(a)
    u = universe_of_discourse(g)
    assert universe_of_discourse(u) == u
    assert universe_of_discourse(g.pad(*pad)) == u
    assert u.count() == g.count()
    assert u.data[0].any() and u.data[-1].any() and u.data[:, 0].any() and u.data[:, -1].any()
