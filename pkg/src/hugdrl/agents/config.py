"""Agent and training hyperparameters."""

from __future__ import annotations

from dataclasses import dataclass

from hugdrl.errors import ConfigurationError
from hugdrl.nn import NetworkSpec

VARIANTS = ("hug", "iarl", "hirl", "vanilla")


@dataclass
class AgentConfig:
    grid_shape: tuple[int, int] = (45, 80)
    gamma: float = 0.95
    tau: float = 0.001
    policy_delay: int = 2
    sigma: float = 0.2  # exploration noise amplitude, action units
    noise_clip: float = 0.1
    noise_initial: float = 1.0  # exploration scale anneals linearly
    noise_final: float = 0.01
    actor_lr: float = 5e-4
    critic_lr: float = 2e-4
    batch_size: int = 128
    action_low: float = 0.0
    action_high: float = 1.0
    guidance_decay: float = 0.995  # episode decay base of the guidance weight
    omega_fixed: float = 1.0  # fixed imitation weight of the iarl variant
    max_steps: int = 50000
    buffer_capacity: int = 384000

    def __post_init__(self):
        if not 0.0 < self.gamma < 1.0:
            raise ConfigurationError("gamma must lie in (0, 1)")
        if not 0.0 < self.guidance_decay < 1.0:
            raise ConfigurationError("guidance decay base must lie in (0, 1)")
        if self.policy_delay < 1:
            raise ConfigurationError("policy delay must be >= 1")

    def actor_spec(self) -> NetworkSpec:
        return NetworkSpec(input_hw=self.grid_shape, conv_features=(6, 16),
                           kernel=6, dense_features=(256, 128, 64),
                           head="logistic")

    def critic_spec(self) -> NetworkSpec:
        return NetworkSpec(input_hw=self.grid_shape, conv_features=(6, 16),
                           kernel=6, dense_features=(256, 256, 256),
                           head="linear", action_input=True)

    def noise_scale_at(self, step: int) -> float:
        """Linearly annealed exploration noise SD for a global step."""
        frac = min(max(step / self.max_steps, 0.0), 1.0)
        rate = self.noise_initial + (self.noise_final - self.noise_initial) * frac
        return self.sigma * rate
