"""Replay ring semantics, flag round-trips, sampling statistics."""

import numpy as np
import pytest

from hugdrl.errors import InsufficientDataError
from hugdrl.replay import ReplayBuffer, Transition

SHAPE = (6, 8)


def make_transition(tag: int, flag: int = 0) -> Transition:
    state = np.full(SHAPE, tag % 6, dtype=np.uint8)
    return Transition(state=state, action=0.5, reward=float(tag), done=0,
                      next_state=state, flag=flag)


class TestRing:
    def test_fifo_eviction(self):
        buf = ReplayBuffer(capacity=5, grid_shape=SHAPE)
        for i in range(6):
            buf.push(make_transition(i))
        assert buf.size == 5
        rewards = [buf.get(i).reward for i in range(5)]
        assert rewards == [1.0, 2.0, 3.0, 4.0, 5.0]  # item 0 evicted

    def test_size_grows_until_capacity(self):
        buf = ReplayBuffer(capacity=3, grid_shape=SHAPE)
        for i in range(10):
            buf.push(make_transition(i))
            assert buf.size == min(i + 1, 3)

    def test_flag_round_trip(self):
        buf = ReplayBuffer(capacity=4, grid_shape=SHAPE)
        buf.push(make_transition(0, flag=1))
        batch = buf.sample(1, np.random.default_rng(0))
        assert batch.flags[0] == 1.0
        assert buf.get(0).flag == 1

    def test_action_bounds_enforced(self):
        with pytest.raises(ValueError):
            Transition(state=np.zeros(SHAPE, np.uint8), action=1.5, reward=0.0,
                       done=0, next_state=np.zeros(SHAPE, np.uint8), flag=0)

    def test_shape_mismatch_rejected(self):
        buf = ReplayBuffer(capacity=4, grid_shape=(4, 4))
        with pytest.raises(ValueError):
            buf.push(make_transition(0))


class TestSampling:
    def test_insufficient_data(self):
        buf = ReplayBuffer(capacity=8, grid_shape=SHAPE)
        buf.push(make_transition(0))
        with pytest.raises(InsufficientDataError):
            buf.sample(2, np.random.default_rng(0))

    def test_single_item(self):
        buf = ReplayBuffer(capacity=8, grid_shape=SHAPE)
        buf.push(make_transition(3))
        batch = buf.sample(1, np.random.default_rng(0))
        assert batch.rewards[0] == 3.0
        assert batch.states.shape == (1, *SHAPE)
        assert batch.states.dtype == np.float64

    def test_deterministic_given_rng(self):
        buf = ReplayBuffer(capacity=32, grid_shape=SHAPE)
        for i in range(20):
            buf.push(make_transition(i))
        a = buf.sample(8, np.random.default_rng(7))
        b = buf.sample(8, np.random.default_rng(7))
        assert np.array_equal(a.rewards, b.rewards)
        assert np.array_equal(a.states, b.states)

    def test_uniform_frequencies(self):
        # 1e5 draws over 10 items: each within 10% +/- 1% absolute
        buf = ReplayBuffer(capacity=16, grid_shape=SHAPE)
        for i in range(10):
            buf.push(make_transition(i))
        rng = np.random.default_rng(123)
        counts = np.zeros(10, dtype=int)
        for _ in range(10000):
            batch = buf.sample(10, rng)
            counts += np.bincount(batch.rewards.astype(int), minlength=10)
        freq = counts / 100000.0
        assert np.all(np.abs(freq - 0.1) < 0.01)

    def test_sampling_does_not_mutate(self):
        buf = ReplayBuffer(capacity=8, grid_shape=SHAPE)
        for i in range(4):
            buf.push(make_transition(i))
        before = [buf.get(i) for i in range(4)]
        batch = buf.sample(4, np.random.default_rng(0))
        batch.states[...] = 99.0
        batch.rewards[...] = -1
        after = [buf.get(i) for i in range(4)]
        for x, y in zip(before, after):
            assert x.reward == y.reward
            assert np.array_equal(x.state, y.state)

    def test_decode_matches_palette(self):
        from hugdrl.env.grid import PALETTE
        buf = ReplayBuffer(capacity=4, grid_shape=SHAPE)
        state = np.arange(48, dtype=np.uint8).reshape(SHAPE) % 6
        buf.push(Transition(state, 0.2, 0.0, 0, state, 0))
        batch = buf.sample(1, np.random.default_rng(0))
        assert np.array_equal(batch.states[0], PALETTE[state])


class TestDump:
    def test_roundtrip(self, tmp_path):
        buf = ReplayBuffer(capacity=6, grid_shape=SHAPE)
        for i in range(9):  # wraps
            buf.push(make_transition(i, flag=i % 2))
        path = tmp_path / "buffer.npz"
        buf.dump(path)
        loaded = ReplayBuffer.restore(path)
        assert loaded.size == buf.size
        for i in range(buf.size):
            a, b = buf.get(i), loaded.get(i)
            assert a.reward == b.reward and a.flag == b.flag
            assert np.array_equal(a.state, b.state)
        # sampling after restore continues identically
        ra = buf.sample(4, np.random.default_rng(5))
        rb = loaded.sample(4, np.random.default_rng(5))
        assert np.array_equal(ra.rewards, rb.rewards)
