"""Guidance participation schedules: continuous or intermittent."""

from __future__ import annotations

import numpy as np


class Schedule:
    """Continuous mode always allows guidance; intermittent mode allows a
    fixed quota of episodes per block, drawn once per block from the seed."""

    def __init__(self, mode: str = "continuous", seed: int = 0,
                 allowed_per_block: int = 30, block_size: int = 100):
        if mode not in ("continuous", "intermittent"):
            raise ValueError(f"unknown schedule mode {mode!r}")
        if allowed_per_block > block_size:
            raise ValueError("quota exceeds block size")
        self.mode = mode
        self.seed = seed
        self.allowed_per_block = allowed_per_block
        self.block_size = block_size
        self._blocks: dict[int, frozenset] = {}

    def _block_choices(self, block: int) -> frozenset:
        if block not in self._blocks:
            rng = np.random.default_rng([self.seed, block])
            picks = rng.choice(self.block_size, size=self.allowed_per_block,
                               replace=False)
            self._blocks[block] = frozenset(int(p) for p in picks)
        return self._blocks[block]

    def allows(self, episode_index: int) -> bool:
        if self.mode == "continuous":
            return True
        block, offset = divmod(episode_index, self.block_size)
        return offset in self._block_choices(block)
