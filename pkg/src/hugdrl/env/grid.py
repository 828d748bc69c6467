"""Semantic-grid rasterization of the forward-looking window.

The observation is a single-channel grid of category codes; the fixed
palette maps codes to channel values in [0, 1]. Cells are painted when
their center falls inside a participant's footprint rectangle. The window
is axis-aligned, 40 m ahead by 11.25 m wide, with the ego anchored 5 m
from the rear edge and centered laterally.
"""

from __future__ import annotations

import math

import numpy as np

from hugdrl.env.scenarios import FOOTPRINTS
from hugdrl.env.world import EGO_KIND, WorldState

# category codes -> channel values
CATEGORY = {
    "free": 0,
    "lane_marking": 1,
    "ego": 2,
    "vehicle": 3,
    "pedestrian": 4,
    "offroad": 5,
}
PALETTE = np.array([0.0, 0.2, 0.4, 0.6, 0.8, 1.0])

WINDOW_AHEAD = 35.0
WINDOW_BEHIND = 5.0
WINDOW_WIDTH = 11.25
LANE_MARKING_WIDTH = 0.15


def grid_to_floats(codes: np.ndarray) -> np.ndarray:
    """Decode a uint8 category grid into the float observation."""
    return PALETTE[codes]


def cell_sizes(shape: tuple[int, int]) -> tuple[float, float]:
    lat_cells, lon_cells = shape
    return WINDOW_WIDTH / lat_cells, (WINDOW_AHEAD + WINDOW_BEHIND) / lon_cells


def window_origin(world: WorldState) -> tuple[float, float]:
    """(left x, rear y) of the rasterized window in world coordinates."""
    return world.x - WINDOW_WIDTH / 2.0, world.y - WINDOW_BEHIND


def _paint_rect(codes, code, x0, x1, y0, y1, left, rear, cw, cl):
    lat_cells, lon_cells = codes.shape
    i0 = math.ceil((x0 - left) / cw - 0.5)
    i1 = math.floor((x1 - left) / cw - 0.5)
    j0 = math.ceil((y0 - rear) / cl - 0.5)
    j1 = math.floor((y1 - rear) / cl - 0.5)
    i0, i1 = max(i0, 0), min(i1, lat_cells - 1)
    j0, j1 = max(j0, 0), min(j1, lon_cells - 1)
    if i0 <= i1 and j0 <= j1:
        codes[i0 : i1 + 1, j0 : j1 + 1] = code


def render_codes(world: WorldState, shape: tuple[int, int] = (45, 80)) -> np.ndarray:
    """Rasterize the scene as (lateral, longitudinal) category codes."""
    lat_cells, lon_cells = shape
    cw, cl = cell_sizes(shape)
    left, rear = window_origin(world)

    codes = np.full(shape, CATEGORY["free"], dtype=np.uint8)

    # off-road strips where the cell center lies outside the road
    centers = left + (np.arange(lat_cells) + 0.5) * cw
    codes[(centers < 0.0) | (centers > world.spec.road_width), :] = CATEGORY["offroad"]

    # dashed-free center lane marking along the full window
    mid = world.spec.road_width / 2.0
    _paint_rect(codes, CATEGORY["lane_marking"],
                mid - LANE_MARKING_WIDTH / 2.0, mid + LANE_MARKING_WIDTH / 2.0,
                rear, rear + lon_cells * cl, left, rear, cw, cl)

    for p in world.vehicles:
        l, w = p.footprint()
        _paint_rect(codes, CATEGORY["vehicle"], p.x - w / 2, p.x + w / 2,
                    p.y - l / 2, p.y + l / 2, left, rear, cw, cl)
    for p in world.pedestrians:
        l, w = p.footprint()
        _paint_rect(codes, CATEGORY["pedestrian"], p.x - w / 2, p.x + w / 2,
                    p.y - l / 2, p.y + l / 2, left, rear, cw, cl)

    l, w = FOOTPRINTS[EGO_KIND]
    _paint_rect(codes, CATEGORY["ego"], world.x - w / 2, world.x + w / 2,
                world.y - l / 2, world.y + l / 2, left, rear, cw, cl)
    return codes
