"""Shared test utilities: tight-enclosure assertions, deterministic random
trees, and a flood-fill region oracle independent of the library's labeling."""

from __future__ import annotations

import math

import numpy as np
from scipy import ndimage

from fivebar.interval import Box2
from fivebar.quadtree import (
    CODE_BLACK,
    QuadtreeModel,
    RegionLabeling,
    build,
    rasterize,
)


def ulp_scale(*vals: float) -> float:
    """One ulp at the magnitude of the largest argument (floor near zero)."""
    return math.ulp(max(1e-300, *(abs(v) for v in vals)))


def assert_encloses(result, lo: float, hi: float, ulps: int = 8) -> None:
    """The interval must contain [lo, hi] with bounds at most `ulps` outside."""
    tol = ulps * ulp_scale(lo, hi)
    assert result.lo <= lo, f"lower bound {result.lo} does not enclose {lo}"
    assert result.hi >= hi, f"upper bound {result.hi} does not enclose {hi}"
    assert result.lo >= lo - tol, f"lower bound {result.lo} too loose for {lo}"
    assert result.hi <= hi + tol, f"upper bound {result.hi} too loose for {hi}"


def hash_classifier(seed: int, p_black: int = 30, p_white: int = 30):
    """Deterministic pseudo-random box classifier (pure, repeatable)."""

    def classify(box: Box2) -> int:
        h = hash((seed, box.x.lo, box.x.hi, box.y.lo, box.y.hi))
        r = h % 100
        if r < p_black:
            return 1
        if r < p_black + p_white:
            return -1
        return 0

    return classify


def random_models(count: int, d_max: int = 4) -> list[QuadtreeModel]:
    """`count` deterministic pseudo-random canonical trees."""
    box = Box2.from_bounds(0.0, 1.0, 0.0, 1.0)
    return [build(box, d_max, hash_classifier(seed)) for seed in range(count)]


FOUR_CONNECTED = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]])


def flood_fill_region_count(m: QuadtreeModel) -> int:
    """Region count of the Black cells under 4-connectivity (scipy oracle)."""
    raster = rasterize(m)
    _, n = ndimage.label(raster.kinds == CODE_BLACK, structure=FOUR_CONNECTED)
    return int(n)


def assert_labeling_matches_flood_fill(
    m: QuadtreeModel, labels: RegionLabeling
) -> None:
    """The library labeling must induce the same partition as pixel flood fill."""
    raster = rasterize(m, labels)
    black = raster.kinds == CODE_BLACK
    oracle, n = ndimage.label(black, structure=FOUR_CONNECTED)
    assert labels.region_count == n
    if n == 0:
        return
    pairs = np.unique(
        np.stack([raster.regions[black], oracle[black]], axis=1), axis=0
    )
    # same partition <=> the (library id, oracle id) relation is a bijection
    assert len(pairs) == n
    assert len(set(pairs[:, 0])) == n
    assert len(set(pairs[:, 1])) == n
