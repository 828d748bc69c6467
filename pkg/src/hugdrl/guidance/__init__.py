"""Intervention detection, authority arbitration, schedules, scripted oracles."""

from hugdrl.guidance.detector import InterventionDetector
from hugdrl.guidance.arbitration import GuidanceEvent, arbitrate
from hugdrl.guidance.oracle import OracleConfig, ScriptedOracle, PRESETS
from hugdrl.guidance.schedule import Schedule
from hugdrl.guidance.metrics import intervention_metrics

__all__ = [
    "InterventionDetector",
    "GuidanceEvent",
    "arbitrate",
    "OracleConfig",
    "ScriptedOracle",
    "PRESETS",
    "Schedule",
    "intervention_metrics",
]
