"""Ring-buffer experience storage of flagged transitions.

Grids are stored as uint8 category codes (two per transition dominate
memory at full capacity) and decoded to float observations on sampling.
Sampling is uniform with replacement and never mutates storage.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from hugdrl.env.grid import grid_to_floats
from hugdrl.errors import ChecksumError, InsufficientDataError

DUMP_VERSION = 1


@dataclass(frozen=True)
class Transition:
    state: np.ndarray  # uint8 category codes
    action: float
    reward: float
    done: int
    next_state: np.ndarray
    flag: int  # 1 when a human/oracle action was executed

    def __post_init__(self):
        if not 0.0 <= self.action <= 1.0:
            raise ValueError(f"action {self.action} outside [0, 1]")
        if self.flag not in (0, 1) or self.done not in (0, 1):
            raise ValueError("done and flag must be 0/1")


@dataclass
class Batch:
    """Decoded minibatch ready for network consumption."""

    states: np.ndarray  # (N, H, W) float64
    actions: np.ndarray  # (N,)
    rewards: np.ndarray
    dones: np.ndarray
    next_states: np.ndarray
    flags: np.ndarray

    def __len__(self):
        return self.states.shape[0]


class ReplayBuffer:
    def __init__(self, capacity: int = 384000, grid_shape=(45, 80)):
        if capacity < 1:
            raise ValueError("capacity must be positive")
        self.capacity = capacity
        self.grid_shape = tuple(grid_shape)
        self._states = np.zeros((capacity, *grid_shape), dtype=np.uint8)
        self._next_states = np.zeros((capacity, *grid_shape), dtype=np.uint8)
        self._actions = np.zeros(capacity)
        self._rewards = np.zeros(capacity)
        self._dones = np.zeros(capacity, dtype=np.uint8)
        self._flags = np.zeros(capacity, dtype=np.uint8)
        self._cursor = 0
        self.size = 0

    def push(self, t: Transition):
        if t.state.shape != self.grid_shape or t.next_state.shape != self.grid_shape:
            raise ValueError(
                f"grid shape {t.state.shape} != buffer shape {self.grid_shape}")
        i = self._cursor
        self._states[i] = t.state
        self._next_states[i] = t.next_state
        self._actions[i] = t.action
        self._rewards[i] = t.reward
        self._dones[i] = t.done
        self._flags[i] = t.flag
        self._cursor = (i + 1) % self.capacity
        self.size = min(self.size + 1, self.capacity)

    def sample(self, n: int, rng: np.random.Generator) -> Batch:
        if self.size < n:
            raise InsufficientDataError(
                f"buffer holds {self.size} transitions, minibatch needs {n}")
        idx = rng.integers(0, self.size, size=n)
        return Batch(
            states=grid_to_floats(self._states[idx]),
            actions=self._actions[idx].copy(),
            rewards=self._rewards[idx].copy(),
            dones=self._dones[idx].astype(np.float64),
            next_states=grid_to_floats(self._next_states[idx]),
            flags=self._flags[idx].astype(np.float64),
        )

    def get(self, i: int) -> Transition:
        """Stored transition by age order (0 = oldest)."""
        if not 0 <= i < self.size:
            raise IndexError(i)
        j = (self._cursor - self.size + i) % self.capacity
        return Transition(
            state=self._states[j].copy(),
            action=float(self._actions[j]),
            reward=float(self._rewards[j]),
            done=int(self._dones[j]),
            next_state=self._next_states[j].copy(),
            flag=int(self._flags[j]),
        )

    def dump(self, path):
        np.savez_compressed(
            path,
            version=np.array([DUMP_VERSION]),
            grid_shape=np.array(self.grid_shape),
            capacity=np.array([self.capacity]),
            cursor=np.array([self._cursor]),
            size=np.array([self.size]),
            states=self._states[: max(self.size, 1)],
            next_states=self._next_states[: max(self.size, 1)],
            actions=self._actions,
            rewards=self._rewards,
            dones=self._dones,
            flags=self._flags,
        )

    @classmethod
    def restore(cls, path) -> "ReplayBuffer":
        with np.load(path) as z:
            if int(z["version"][0]) != DUMP_VERSION:
                raise ChecksumError(f"{path}: unsupported buffer dump version")
            buf = cls(int(z["capacity"][0]), tuple(z["grid_shape"]))
            size = int(z["size"][0])
            buf._states[:size] = z["states"][:size]
            buf._next_states[:size] = z["next_states"][:size]
            buf._actions[:] = z["actions"]
            buf._rewards[:] = z["rewards"]
            buf._dones[:] = z["dones"]
            buf._flags[:] = z["flags"]
            buf._cursor = int(z["cursor"][0])
            buf.size = size
        return buf
