"""Deterministic 2D two-lane driving micro-simulator."""

from hugdrl.env.scenarios import ScenarioSpec, Obstacle, PedestrianSpawn, builtin_scenario, load_scenario, dump_scenario
from hugdrl.env.env import DrivingEnv, EnvConfig, StepOutcome
from hugdrl.env.grid import PALETTE, CATEGORY, grid_to_floats
from hugdrl.env.world import WorldState

__all__ = [
    "ScenarioSpec",
    "Obstacle",
    "PedestrianSpawn",
    "builtin_scenario",
    "load_scenario",
    "dump_scenario",
    "DrivingEnv",
    "EnvConfig",
    "StepOutcome",
    "WorldState",
    "PALETTE",
    "CATEGORY",
    "grid_to_floats",
]
