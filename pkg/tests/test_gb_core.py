import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra import numpy as hnp

from gbmst.errors import (
    CannotSplit,
    DegenerateBall,
    DimensionMismatch,
    EmptyBall,
    InvalidConfig,
    InvalidDataset,
    InvalidSplit,
)
from gbmst.gb_core import (
    Dataset,
    GenerationConfig,
    GenerationWarning,
    GranularBall,
    compute_center,
    compute_dm,
    compute_radius_and_sum,
    farthest_pair,
    generate_granular_balls,
    split_ball,
    weighted_dm,
)

from oracles import diameter_all_pairs, distance_loop, mean_by_accumulation


def test_center_examples():
    np.testing.assert_array_equal(compute_center([(0, 0), (2, 0)]), [1, 0])
    np.testing.assert_array_equal(compute_center([(3, 4)]), [3, 4])
    with pytest.raises(EmptyBall):
        compute_center(np.empty((0, 2)))


def test_center_matches_accumulation():
    pts = np.random.default_rng(11).normal(size=(100, 5))
    np.testing.assert_allclose(compute_center(pts), mean_by_accumulation(pts.tolist()), rtol=1e-12, atol=1e-15)


def test_radius_and_sum_examples():
    assert compute_radius_and_sum([(0, 0), (2, 0)], [1, 0]) == (1.0, 2.0)
    assert compute_radius_and_sum([(3, 4)], [3, 4]) == (0.0, 0.0)
    with pytest.raises(DimensionMismatch):
        compute_radius_and_sum([(0, 0)], [0, 0, 0])


def test_radius_and_sum_match_loop():
    pts = np.random.default_rng(12).uniform(-3, 3, size=(50, 3))
    c = pts.mean(axis=0)
    d = distance_loop(pts.tolist(), c.tolist())
    r, s = compute_radius_and_sum(pts, c)
    assert r == pytest.approx(max(d), rel=1e-12)
    assert s == pytest.approx(sum(d), rel=1e-12)
    assert r <= s <= len(pts) * r


def test_dm():
    assert compute_dm(2, 2) == 1
    assert compute_dm(0, 1) == 0
    with pytest.raises(EmptyBall):
        compute_dm(1.0, 0)
    pts = np.random.default_rng(13).normal(size=(40, 2))
    ball = GranularBall.from_members(pts, range(40))
    assert ball.dm == pytest.approx(np.mean(distance_loop(pts.tolist(), ball.center.tolist())), rel=1e-12)


def test_weighted_dm_examples():
    pts = np.array([(0.0, 0.0), (5.0, 5.0)])
    a = GranularBall.from_members(pts, [0])
    b = GranularBall.from_members(pts, [1])
    assert weighted_dm(a, b, 2) == 0.0

    # three points on the unit circle around the origin: DM exactly 1
    tri = np.array([(np.cos(t), np.sin(t)) for t in (0, 2 * np.pi / 3, 4 * np.pi / 3)] + [(9.0, 9.0)])
    tri[:3] -= tri[:3].mean(axis=0)
    three = GranularBall.from_members(tri, [0, 1, 2])
    one = GranularBall.from_members(tri, [3])
    assert three.dm == pytest.approx(1.0, rel=1e-12)
    assert weighted_dm(three, one, 4) == pytest.approx(0.75, rel=1e-12)
    with pytest.raises(InvalidSplit):
        weighted_dm(three, one, 5)


@given(st.integers(0, 2**32 - 1), st.integers(2, 60))
def test_weighted_dm_identity(seed, n):
    pts = np.random.default_rng(seed).normal(size=(n, 3))
    parent = GranularBall.from_members(pts, range(n))
    cut = n // 2
    c1 = GranularBall.from_members(pts, range(cut))
    c2 = GranularBall.from_members(pts, range(cut, n))
    assert weighted_dm(c1, c2, n) == pytest.approx((c1.sum_dist + c2.sum_dist) / n, rel=1e-9)
    assert parent.count == n


def test_split_examples():
    pts = np.array([(0, 0), (0, 1), (10, 0), (10, 1)], dtype=float)
    ds = Dataset(pts)
    parent = GranularBall.from_members(pts, range(4))
    for mode in ("heuristic", "exact"):
        c1, c2 = split_ball(parent, ds, GenerationConfig(farthest_pair_mode=mode))
        assert {tuple(c1.members), tuple(c2.members)} == {(0, 1), (2, 3)}

    two = Dataset([(0.0, 0.0), (1.0, 0.0)])
    c1, c2 = split_ball(GranularBall.from_members(two.points, [0, 1]), two, GenerationConfig())
    assert (c1.count, c2.count) == (1, 1)


def test_split_errors():
    ds = Dataset([(1.0, 1.0), (1.0, 1.0), (2.0, 2.0)])
    with pytest.raises(CannotSplit):
        split_ball(GranularBall.from_members(ds.points, [2]), ds, GenerationConfig())
    with pytest.raises(DegenerateBall):
        split_ball(GranularBall.from_members(ds.points, [0, 1]), ds, GenerationConfig())


def test_split_tie_goes_to_first_seed():
    # (1, 0) is equidistant from the seeds (0, 0) and (2, 0)
    ds = Dataset([(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)])
    c1, c2 = split_ball(GranularBall.from_members(ds.points, range(3)), ds, GenerationConfig(farthest_pair_mode="exact"))
    assert list(c1.members) == [0, 1] and list(c2.members) == [2]


@pytest.mark.parametrize("seed", range(10))
def test_exact_mode_finds_diameter(seed):
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(int(rng.integers(2, 256)), 2))
    i, j = farthest_pair(pts, pts.mean(axis=0), "exact")
    assert np.linalg.norm(pts[i] - pts[j]) == pytest.approx(diameter_all_pairs(pts.tolist()), rel=1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_heuristic_is_within_factor_two(seed):
    pts = np.random.default_rng(seed).normal(size=(120, 3))
    i, j = farthest_pair(pts, pts.mean(axis=0), "heuristic")
    assert 2 * np.linalg.norm(pts[i] - pts[j]) >= diameter_all_pairs(pts.tolist())


def test_generation_separates_squares():
    sq = [(0, 0), (0, 1), (1, 0), (1, 1)]
    pts = np.array(sq + [(x + 10, y + 10) for x, y in sq], dtype=float)
    gbs = generate_granular_balls(Dataset(pts), GenerationConfig(min_ball_size=2))
    gbs.check()
    assert len(gbs) >= 2
    for b in gbs.balls:
        assert set(b.members) <= {0, 1, 2, 3} or set(b.members) <= {4, 5, 6, 7}


def test_generation_singleton_and_identical():
    one = generate_granular_balls(Dataset([(3.0, 4.0)]))
    assert len(one) == 1 and one.balls[0].radius == 0 and one.balls[0].dm == 0
    same = generate_granular_balls(Dataset(np.ones((20, 3))), GenerationConfig(min_ball_size=1))
    assert len(same) == 1 and same.balls[0].radius == 0 and same.balls[0].count == 20


def test_generation_with_duplicate_clumps_terminates():
    pts = np.vstack([np.zeros((30, 2)), np.ones((30, 2)), [[5.0, 5.0]]])
    gbs = generate_granular_balls(Dataset(pts), GenerationConfig(min_ball_size=1))
    gbs.check()
    assert len(gbs) == 3


def test_iteration_cap_warns():
    pts = np.random.default_rng(0).normal(size=(300, 2))
    with pytest.warns(GenerationWarning):
        generate_granular_balls(Dataset(pts), GenerationConfig(min_ball_size=1, max_iterations=1))


def test_accepted_dm_splits_strictly_reduce_weighted_dm():
    pts = np.random.default_rng(3).normal(size=(500, 2))
    seen = []

    def check(phase, parent, c1, c2):
        seen.append(phase)
        assert set(c1.members).isdisjoint(c2.members)
        assert c1.count + c2.count == parent.count
        if phase == "dm":
            assert weighted_dm(c1, c2, parent.count) < parent.dm

    generate_granular_balls(Dataset(pts), on_split=check)
    assert "dm" in seen


def test_default_config_resolution():
    cfg = GenerationConfig().resolved(150)
    assert cfg.min_ball_size == 13
    assert cfg.max_iterations == 10 * 8
    assert GenerationConfig().resolved(1).min_ball_size == 1
    with pytest.raises(InvalidConfig):
        GenerationConfig(min_ball_size=0)
    with pytest.raises(InvalidConfig):
        GenerationConfig(oversize_factor=0)


def test_dataset_validation():
    with pytest.raises(InvalidDataset):
        Dataset(np.empty((0, 2)))
    with pytest.raises(InvalidDataset):
        Dataset([(0.0, 1.0)], labels=[1, 2])
    with pytest.raises(InvalidDataset):
        Dataset([(0.0, np.nan)])
    ds = Dataset([1.0, 2.0, 3.0])
    assert (ds.n, ds.dim) == (3, 1)


@given(hnp.arrays(np.float64, st.tuples(st.integers(1, 40), st.integers(1, 4)),
                  elements=st.floats(-100, 100, allow_nan=False, width=32)))
def test_generation_properties(points):
    ds = Dataset(points)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", GenerationWarning)
        gbs = generate_granular_balls(ds, GenerationConfig(min_ball_size=2))
        again = generate_granular_balls(ds, GenerationConfig(min_ball_size=2))
    gbs.check()
    for b in gbs.balls:
        sub = points[b.members]
        d = np.linalg.norm(sub - b.center, axis=1)
        assert d.max() <= b.radius * (1 + 1e-9) + 1e-12
        assert -1e-12 <= b.dm <= b.radius * (1 + 1e-9) + 1e-12
    assert [list(b.members) for b in gbs.balls] == [list(b.members) for b in again.balls]
