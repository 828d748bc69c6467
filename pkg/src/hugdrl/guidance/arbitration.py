"""All-or-nothing control-authority switch between agent and guidance."""

from __future__ import annotations

import logging
from dataclasses import dataclass

log = logging.getLogger(__name__)


@dataclass
class GuidanceEvent:
    step: int
    action: float | None
    source: str  # "oracle" or "live-human"
    engaged: bool

    def __post_init__(self):
        if self.engaged and self.action is None:
            raise ValueError("engaged events must carry an action")


def arbitrate(a_drl: float, event: GuidanceEvent | None, engaged: int):
    """Full authority transfer: returns (executed action, stored flag).

    The executed action is bit-equal to exactly one source's action. An
    engagement with no usable guidance action degrades to agent control.
    """
    if engaged and (event is None or event.action is None):
        log.warning("engaged without a guidance action; treating as disengage")
        return a_drl, 0
    if engaged:
        return event.action, 1
    return a_drl, 0
