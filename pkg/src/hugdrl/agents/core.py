"""Actor-critic agent state and the per-variant update rules.

All variants share the same data path (the buffer stores executed actions,
so the value networks learn from human actions on flagged rows without any
special casing). They differ only in the policy update:

- vanilla / hirl: plain deterministic policy gradient through the first
  value network.
- hug: policy gradient on every row plus an imitation pull toward the
  executed action on flagged rows, weighted by an adaptive factor that
  decays across episodes and scales with the value advantage the flagged
  actions show over the policy's own choice.
- iarl: policy gradient masked off on flagged rows; fixed-weight imitation
  there instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from hugdrl.agents.config import AgentConfig, VARIANTS
from hugdrl.errors import ConfigurationError, NumericError
from hugdrl.nn import (
    AdamState,
    NetworkParams,
    adam_step,
    backward,
    forward,
    he_init,
    polyak_update,
)
from hugdrl.replay import Batch


@dataclass
class Agent:
    variant: str
    config: AgentConfig
    actor: NetworkParams
    critic1: NetworkParams
    critic2: NetworkParams
    target_actor: NetworkParams
    target_critic1: NetworkParams
    target_critic2: NetworkParams
    actor_adam: AdamState
    critic1_adam: AdamState
    critic2_adam: AdamState
    episode_index: int = 0
    global_step: int = 0
    critic_updates: int = 0
    actor_updates: int = 0

    @classmethod
    def create(cls, variant: str, config: AgentConfig, seed: int) -> "Agent":
        if variant not in VARIANTS:
            raise ConfigurationError(
                f"unknown variant {variant!r}, expected one of {VARIANTS}")
        ss = np.random.SeedSequence(seed)
        actor_seed, c1_seed, c2_seed = (int(s.generate_state(1)[0])
                                        for s in ss.spawn(3))
        actor = he_init(config.actor_spec(), actor_seed)
        critic1 = he_init(config.critic_spec(), c1_seed)
        critic2 = he_init(config.critic_spec(), c2_seed)
        return cls(
            variant=variant,
            config=config,
            actor=actor,
            critic1=critic1,
            critic2=critic2,
            target_actor=actor.copy(),
            target_critic1=critic1.copy(),
            target_critic2=critic2.copy(),
            actor_adam=AdamState.for_params(actor),
            critic1_adam=AdamState.for_params(critic1),
            critic2_adam=AdamState.for_params(critic2),
        )

    # ------------------------------------------------------------------
    # action selection

    def policy(self, states):
        """Deterministic policy output (no noise)."""
        out, _ = forward(self.actor, states)
        return out

    def select_action(self, state, rng=None, noise_scale=None) -> float:
        """Exploration action: policy plus clipped Gaussian noise, clipped to
        the action bounds. Eval mode (no rng) returns the bare policy."""
        cfg = self.config
        a = self.policy(state)
        if rng is None:
            return float(a)
        scale = cfg.sigma if noise_scale is None else noise_scale
        eps = rng.normal(0.0, scale)
        eps = min(max(eps, -cfg.noise_clip), cfg.noise_clip)
        return float(min(max(a + eps, cfg.action_low), cfg.action_high))

    # ------------------------------------------------------------------
    # critic side

    def critic_target(self, batch: Batch) -> np.ndarray:
        """Bootstrapped targets from the target networks (clipped double-Q)."""
        a_next, _ = forward(self.target_actor, batch.next_states)
        q1, _ = forward(self.target_critic1, batch.next_states, a_next)
        q2, _ = forward(self.target_critic2, batch.next_states, a_next)
        return batch.rewards + self.config.gamma * (1.0 - batch.dones) * np.minimum(q1, q2)

    def critic_update(self, batch: Batch) -> tuple[float, float]:
        """One mean-squared TD step on both critics against shared targets."""
        y = self.critic_target(batch)
        n = len(batch)
        losses = []
        for name in ("critic1", "critic2"):
            params = getattr(self, name)
            state = getattr(self, name + "_adam")
            q, tape = forward(params, batch.states, batch.actions)
            diff = q - y
            loss = float(np.mean(diff**2))
            if not math.isfinite(loss):
                raise NumericError(f"non-finite {name} loss; aborting run")
            grads, _ = backward(tape, 2.0 * diff / n)
            new_params, new_state = adam_step(params, grads, state,
                                              self.config.critic_lr)
            setattr(self, name, new_params)
            setattr(self, name + "_adam", new_state)
            losses.append(loss)
        self.critic_updates += 1
        return losses[0], losses[1]

    # ------------------------------------------------------------------
    # actor side

    def compute_omega(self, batch: Batch) -> float:
        """Adaptive guidance weight: episode-decayed, clamped exponential of
        the best value advantage shown by flagged rows of the minibatch."""
        flagged = batch.flags > 0.5
        if not np.any(flagged):
            return 0.0
        states = batch.states[flagged]
        mu, _ = forward(self.actor, states)
        q_h, _ = forward(self.critic1, states, batch.actions[flagged])
        q_mu, _ = forward(self.critic1, states, mu)
        sup = float(np.max(np.exp(q_h - q_mu)))
        if not math.isfinite(sup):
            raise NumericError("guidance-weight advantage overflowed")
        decay = self.config.guidance_decay**self.episode_index
        return decay * (max(sup, 1.0) - 1.0)

    def actor_update(self, batch: Batch) -> float:
        """One Adam step on the actor by the variant's policy loss."""
        n = len(batch)
        flags = batch.flags
        mu, tape_mu = forward(self.actor, batch.states)
        q, tape_q = forward(self.critic1, batch.states, mu)
        # d(-mean(Q))/d(action input), via the value network only
        _, (_, d_action) = backward(tape_q, np.full(n, -1.0 / n))

        if self.variant in ("vanilla", "hirl"):
            d_mu = d_action
            loss = -float(np.mean(q))
        elif self.variant == "hug":
            omega = self.compute_omega(batch)
            loss = -float(np.mean(q))
            if omega > 0.0:
                d_mu = d_action + 2.0 * omega * flags * (mu - batch.actions) / n
                loss += omega * float(np.mean(flags * (batch.actions - mu) ** 2))
            else:
                d_mu = d_action
        elif self.variant == "iarl":
            w = self.config.omega_fixed
            d_mu = (d_action * (1.0 - flags)
                    + 2.0 * w * flags * (mu - batch.actions) / n)
            loss = (-float(np.mean(q * (1.0 - flags)))
                    + w * float(np.mean(flags * (batch.actions - mu) ** 2)))
        else:
            raise ConfigurationError(f"unknown variant {self.variant!r}")

        grads, _ = backward(tape_mu, d_mu)
        self.actor, self.actor_adam = adam_step(self.actor, grads,
                                                self.actor_adam,
                                                self.config.actor_lr)
        self.actor_updates += 1
        return loss

    def soft_update_targets(self):
        tau = self.config.tau
        self.target_actor = polyak_update(self.target_actor, self.actor, tau)
        self.target_critic1 = polyak_update(self.target_critic1, self.critic1, tau)
        self.target_critic2 = polyak_update(self.target_critic2, self.critic2, tau)

    def sync_targets(self):
        """Hard copy, used after (re-)initialization or pre-training."""
        self.target_actor = self.actor.copy()
        self.target_critic1 = self.critic1.copy()
        self.target_critic2 = self.critic2.copy()

    def learn_step(self, batch: Batch):
        """Critic step plus the delayed actor/target step; returns losses."""
        c1, c2 = self.critic_update(batch)
        a_loss = None
        if self.critic_updates % self.config.policy_delay == 0:
            a_loss = self.actor_update(batch)
            self.soft_update_targets()
        return c1, c2, a_loss
