"""Gym-style environment facade: reset/step/render over one scenario."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from hugdrl.env import shaping as shaping_mod
from hugdrl.env.grid import render_codes
from hugdrl.env.rewards import RewardConfig, reward_components, total_reward
from hugdrl.env.scenarios import ScenarioSpec
from hugdrl.env.world import (
    WorldState,
    advance,
    ego_collision,
    ego_offroad,
    spawn_world,
)

CAUSES = ("none", "collision", "offroad", "success", "timeout")


@dataclass
class EnvConfig:
    grid_shape: tuple[int, int] = (45, 80)
    dt: float = 0.05  # 20 Hz control rate
    max_steps: int = 200
    shaping_scheme: int = 0  # 0 none, 1 progress, 2 novelty
    f1_scale: float = shaping_mod.F1_SCALE
    novelty_seed: int = 0
    novelty_clip: float = 5.0
    reward: RewardConfig = field(default_factory=RewardConfig)


@dataclass
class StepOutcome:
    next_state: np.ndarray  # category-code grid
    reward: float
    components: tuple[float, float, float, float]
    shaping: tuple[float, float]
    done: int
    cause: str


class DrivingEnv:
    """Deterministic single-scenario simulator; one instance per run."""

    def __init__(self, spec: ScenarioSpec, config: EnvConfig | None = None):
        self.spec = spec
        self.config = config or EnvConfig()
        if self.config.shaping_scheme not in (0, 1, 2):
            raise ValueError(f"unknown shaping scheme {self.config.shaping_scheme}")
        self.world: WorldState | None = None
        self.prev_alpha = 0.5
        self.done = True
        self.clip_warnings = 0
        self.novelty = None
        if self.config.shaping_scheme == 2:
            self.novelty = shaping_mod.NoveltyState.create(
                self.config.grid_shape, self.config.novelty_seed,
                clip_l=self.config.novelty_clip)

    def reset(self, seed: int) -> np.ndarray:
        rng = np.random.default_rng(seed)
        self.world = spawn_world(self.spec, rng)
        self.prev_alpha = self.world.handwheel
        self.done = False
        if self.novelty is not None:
            self.novelty.begin_episode()
        return self.render()

    def render(self) -> np.ndarray:
        return render_codes(self.world, self.config.grid_shape)

    def step(self, action: float) -> StepOutcome:
        if self.done:
            raise RuntimeError("step() after episode end; call reset()")
        a = float(action)
        if a < 0.0 or a > 1.0:
            self.clip_warnings += 1
            a = min(max(a, 0.0), 1.0)

        advance(self.world, a, self.config.dt)

        cause = "none"
        if ego_collision(self.world):
            cause = "collision"
        elif ego_offroad(self.world):
            cause = "offroad"
        elif self.world.y >= self.spec.finish_line:
            cause = "success"
        elif self.world.step_count >= self.config.max_steps:
            cause = "timeout"

        failed = cause in ("collision", "offroad")
        comps = reward_components(self.world, a, self.prev_alpha,
                                  self.config.dt, failed, self.config.reward)
        r = total_reward(comps, self.config.reward)

        next_codes = self.render()
        f1 = f2 = 0.0
        if self.config.shaping_scheme == 1:
            f1 = shaping_mod.progress_bonus(self.world, self.config.f1_scale)
            r += f1
        elif self.config.shaping_scheme == 2:
            f2 = shaping_mod.novelty_bonus(next_codes, self.world, self.novelty)
            r += f2

        self.prev_alpha = a
        self.done = cause != "none"
        return StepOutcome(next_codes, r, comps, (f1, f2), int(self.done), cause)


def dynamics_metrics(world: WorldState) -> tuple[float, float]:
    """(|yaw rate| rad/s, |lateral acceleration| m/s^2) of the ego."""
    return abs(world.yaw_rate), abs(world.lat_accel)
