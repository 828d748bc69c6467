"""Scripted stand-in for the human driver.

Engagement intent triggers on time-to-collision with traffic ahead in the
ego's lane or on drifting toward the road edge; while engaged the oracle
steers a PD lane-change/lane-keep command toward the safer lane (re-judged
as the scene evolves), corrupted by configurable reaction delay, output
noise, and occasional wrong-lane choices. When its intent drops, the
streamed handwheel springs back to center so the derivative-based
detector can terminate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from hugdrl.env.scenarios import FOOTPRINTS
from hugdrl.env.world import EGO_KIND, WorldState
from hugdrl.guidance.arbitration import GuidanceEvent


@dataclass
class OracleConfig:
    lookahead_ttc_s: float = 2.0
    disengage_ttc_s: float = 3.0
    action_noise_sd: float = 0.02
    reaction_delay_ticks: int = 1
    wrong_lane_prob: float = 0.0
    lat_gain: float = 0.22  # handwheel per meter of lateral error
    heading_gain: float = 1.6  # handwheel per rad of heading
    edge_margin: float = 1.3  # engage when this close to a boundary
    release_rate: float = 4.0  # handwheel units/s of spring-back
    heading_aligned: float = 0.03  # rad, disengage needs |heading| below this
    decision_hold_ticks: int = 8  # a lane choice sticks for this long

    def __post_init__(self):
        if self.disengage_ttc_s <= self.lookahead_ttc_s:
            raise ValueError("disengage TTC must exceed engage TTC")
        if not 0.0 <= self.wrong_lane_prob <= 1.0:
            raise ValueError("wrong_lane_prob must be a probability")


PRESETS = {
    "proficient": OracleConfig(),
    "non-proficient": OracleConfig(action_noise_sd=0.10,
                                   reaction_delay_ticks=2,
                                   wrong_lane_prob=0.30,
                                   lookahead_ttc_s=1.25,
                                   disengage_ttc_s=2.25),
}


def lane_ttc(world: WorldState, lane: int) -> float:
    """Seconds until the ego would reach the nearest participant ahead whose
    footprint overlaps the given lane, assuming current speeds; inf when the
    lane is clear."""
    half = world.spec.road_width / 2.0
    lo, hi = (0.0, half) if lane == 0 else (half, world.spec.road_width)
    ego_len = FOOTPRINTS[EGO_KIND][0]
    v_long = world.speed * math.cos(world.heading)
    best = math.inf
    for p in world.participants():
        length, width = p.footprint()
        if p.x + width / 2.0 <= lo or p.x - width / 2.0 >= hi or p.y <= world.y:
            continue
        gap = p.y - world.y - (ego_len + length) / 2.0
        closing = v_long - p.vy
        if closing <= 1e-9:
            continue
        best = min(best, max(gap, 0.0) / closing)
    return best


def time_to_collision(world: WorldState) -> float:
    """TTC in the lane the ego currently occupies."""
    return lane_ttc(world, world.ego_lane())


class ScriptedOracle:
    """Deterministic given (world trace, config, rng)."""

    def __init__(self, cfg: OracleConfig, rng):
        self.cfg = cfg
        self.rng = rng
        self.reset()

    def reset(self):
        self.intent = False
        self.target_lane = None
        self.delay_left = 0
        self.hold_left = 0
        self.stream = 0.5

    def _pick_target_lane(self, world: WorldState, current: int | None = None) -> int:
        t0, t1 = lane_ttc(world, 0), lane_ttc(world, 1)
        safer = 0 if t0 >= t1 else 1
        # keep the current plan unless the other lane is clearly better
        if current is not None and safer != current:
            margin = t1 - t0 if safer == 1 else t0 - t1
            if margin < 0.5:
                safer = current
        if self.cfg.wrong_lane_prob > 0.0 and self.rng.random() < self.cfg.wrong_lane_prob:
            return 1 - safer
        return safer

    def act(self, world: WorldState, step: int, dt: float) -> GuidanceEvent:
        cfg = self.cfg
        d_left = world.x
        d_right = world.spec.road_width - world.x
        near_edge = min(d_left, d_right) < cfg.edge_margin
        ttc_here = time_to_collision(world)

        if not self.intent:
            if ttc_here < cfg.lookahead_ttc_s or near_edge:
                self.intent = True
                self.delay_left = cfg.reaction_delay_ticks
                self.hold_left = cfg.decision_hold_ticks
                if ttc_here < cfg.lookahead_ttc_s:
                    self.target_lane = self._pick_target_lane(world)
                else:
                    # lane-keep rescue: back to the current lane center
                    self.target_lane = world.ego_lane()
        else:
            if self.hold_left > 0:
                self.hold_left -= 1
            elif lane_ttc(world, self.target_lane) < cfg.lookahead_ttc_s:
                new_target = self._pick_target_lane(world, self.target_lane)
                if new_target != self.target_lane:
                    self.target_lane = new_target
                    self.hold_left = cfg.decision_hold_ticks
            aligned = abs(world.heading) < cfg.heading_aligned
            centered = abs(world.x - world.spec.lane_center(self.target_lane)) < 0.4
            if (ttc_here > cfg.disengage_ttc_s and aligned and centered
                    and not near_edge):
                self.intent = False
                self.target_lane = None

        if self.intent and self.delay_left > 0:
            self.delay_left -= 1
            acting = False
        else:
            acting = self.intent

        if acting:
            target_x = world.spec.lane_center(self.target_lane)
            cmd = (0.5 + cfg.lat_gain * (target_x - world.x)
                   - cfg.heading_gain * world.heading)
            if cfg.action_noise_sd > 0.0:
                cmd += self.rng.normal(0.0, cfg.action_noise_sd)
            self.stream = min(max(cmd, 0.0), 1.0)
        else:
            # hands-off: spring the wheel back to center
            off = self.stream - 0.5
            step_back = cfg.release_rate * dt
            if abs(off) <= step_back:
                self.stream = 0.5
            else:
                self.stream -= math.copysign(step_back, off)

        return GuidanceEvent(step=step, action=self.stream, source="oracle",
                             engaged=acting)
