"""Reward shaping: forward-progress bonus and a novelty bonus.

Scheme 1 pays proportionally to the longitudinal distance covered since
the spawn point. Scheme 2 modulates an episodic visit-count bonus by the
prediction error of a trainable embedding chasing a frozen random
embedding of the next observation, normalized by running error statistics
and clipped to [1, L].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from hugdrl.env.grid import grid_to_floats
from hugdrl.env.world import WorldState
from hugdrl.nn import AdamState, NetworkSpec, adam_step, backward, forward, he_init

F1_SCALE = 0.01


def progress_bonus(world: WorldState, scale: float = F1_SCALE) -> float:
    """Longitudinal displacement from the spawn point, scaled."""
    return (world.y - world.spawn_y) * scale


def ngu_spec(grid_shape: tuple[int, int]) -> NetworkSpec:
    return NetworkSpec(input_hw=grid_shape, conv_features=(6, 16), kernel=6,
                       dense_features=(), output_units=128, head="linear")


@dataclass
class NoveltyState:
    """Embedding pair, running error statistics, and episodic visit counts."""

    fixed: object
    trainable: object
    adam: AdamState
    lr: float = 1e-4
    clip_l: float = 5.0
    # Welford accumulators over the scalar embedding error
    count: int = 0
    mean: float = 0.0
    m2: float = 0.0
    episodic_counts: dict = field(default_factory=dict)
    lane_half: float = 1.75
    bin_length: float = 1.0

    @classmethod
    def create(cls, grid_shape: tuple[int, int], seed: int,
               clip_l: float = 5.0, lr: float = 1e-4) -> "NoveltyState":
        spec = ngu_spec(grid_shape)
        fixed = he_init(spec, seed)
        trainable = he_init(spec, seed + 1)
        return cls(fixed=fixed, trainable=trainable,
                   adam=AdamState.for_params(trainable), lr=lr, clip_l=clip_l)

    def begin_episode(self):
        self.episodic_counts.clear()

    def episodic_bonus(self, world: WorldState) -> float:
        key = (int(world.x // self.lane_half), int(world.y // self.bin_length))
        n = self.episodic_counts.get(key, 0) + 1
        self.episodic_counts[key] = n
        return 1.0 / math.sqrt(n)

    def std(self) -> float:
        return math.sqrt(self.m2 / self.count) if self.count > 0 else 0.0


def novelty_bonus(next_codes: np.ndarray, world: WorldState,
                  state: NoveltyState) -> float:
    """One shaping evaluation; trains the embedding one step as a side effect."""
    obs = grid_to_floats(next_codes)
    target, _ = forward(state.fixed, obs)
    pred, tape = forward(state.trainable, obs)
    diff = pred - target
    err = float(np.linalg.norm(diff))

    r_episode = state.episodic_bonus(world)
    sd = state.std()
    if sd == 0.0:
        modulation = 1.0
    else:
        modulation = min(max(1.0 + (err - state.mean) / sd, 1.0), state.clip_l)

    # running stats then one regression step toward the frozen embedding
    state.count += 1
    delta = err - state.mean
    state.mean += delta / state.count
    state.m2 += delta * (err - state.mean)

    grads, _ = backward(tape, 2.0 * diff[None, :])
    state.trainable, state.adam = adam_step(state.trainable, grads, state.adam,
                                            state.lr)
    return r_episode * modulation
