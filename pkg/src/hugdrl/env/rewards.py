"""Per-step reward: weighted roadside, front-gap, smoothness, failure costs."""

from __future__ import annotations

import math
from dataclasses import dataclass

from hugdrl.env.world import WorldState, boundary_distances, front_distance


@dataclass
class RewardConfig:
    w_side: float = 1.0
    w_front: float = 1.0
    w_smooth: float = 0.5
    w_fail: float = 5.0
    d_ref: float = 3.5  # saturation scale of the distance squash, m
    front_lookahead: float = 40.0


def f_sig(d: float, d_ref: float = 3.5) -> float:
    """Monotone squash of a distance into [0, 1); 0 at contact."""
    return math.tanh(d / d_ref)


def reward_components(world: WorldState, alpha: float, prev_alpha: float,
                      dt: float, failed: bool, cfg: RewardConfig):
    """(c_side, c_front, c_smo, c_fail) for the state reached this tick."""
    d_left, d_right = boundary_distances(world)
    c_side = -((1.0 - f_sig(min(d_left, d_right), cfg.d_ref)) ** 2)
    d_front = front_distance(world, cfg.front_lookahead)
    c_front = 0.0 if d_front is None else -((1.0 - f_sig(d_front, cfg.d_ref)) ** 2)
    c_smo = -((alpha - prev_alpha) / dt + (alpha - 0.5))
    c_fail = -1.0 if failed else 0.0
    return c_side, c_front, c_smo, c_fail


def total_reward(components, cfg: RewardConfig) -> float:
    c_side, c_front, c_smo, c_fail = components
    return (cfg.w_side * c_side + cfg.w_front * c_front
            + cfg.w_smooth * c_smo + cfg.w_fail * c_fail)
