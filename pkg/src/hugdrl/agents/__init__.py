"""TD3-family agents: adaptive human guidance, fixed-weight intervention,
intervention-only, and vanilla variants, plus supervised pre-initialization."""

from hugdrl.agents.config import AgentConfig, VARIANTS
from hugdrl.agents.core import Agent
from hugdrl.agents.pretrain import pretrain_actor
from hugdrl.agents.loop import EpisodeMetrics, train_run

__all__ = [
    "AgentConfig",
    "VARIANTS",
    "Agent",
    "pretrain_actor",
    "train_run",
    "EpisodeMetrics",
]
