"""Engagement state machine over a raw handwheel stream.

Activation: the absolute handwheel derivative exceeds eps_activate while
the termination condition is false. Termination: the derivative stays
below eps_terminate for every tick of the hold window (0.2 s -> 4 ticks
at 20 Hz). The same machine serves scripted oracles and live humans; an
alternative activation mode triggers on handwheel angle offset instead of
its derivative (legacy rule, 5 degrees of a +/-135 degree wheel).
"""

from __future__ import annotations

from collections import deque

HANDWHEEL_RANGE_DEG = 270.0


class InterventionDetector:
    def __init__(self, eps_activate: float = 0.02, eps_terminate: float = 0.01,
                 hold_time: float = 0.2, dt: float = 0.05,
                 mode: str = "derivative", angle_threshold_deg: float = 5.0):
        if mode not in ("derivative", "angle"):
            raise ValueError(f"unknown detector mode {mode!r}")
        if eps_activate <= eps_terminate:
            raise ValueError("activation threshold must exceed termination "
                             "threshold for hysteresis")
        self.eps_activate = eps_activate
        self.eps_terminate = eps_terminate
        self.window = max(1, round(hold_time / dt))
        self.mode = mode
        self.angle_threshold = angle_threshold_deg / HANDWHEEL_RANGE_DEG
        self.reset()

    def reset(self, initial: float = 0.5):
        self._prev = initial
        self._derivs = deque(maxlen=self.window)
        self.engaged = 0

    def detect(self, sample: float, dt: float) -> int:
        """Feed one handwheel sample at the control rate; returns I."""
        deriv = abs(sample - self._prev) / dt
        self._prev = sample
        self._derivs.append(deriv)
        quiet = (len(self._derivs) == self.window
                 and all(d < self.eps_terminate for d in self._derivs))
        if self.engaged:
            if quiet:
                self.engaged = 0
        else:
            if self.mode == "derivative":
                if deriv > self.eps_activate and not quiet:
                    self.engaged = 1
            else:
                if abs(sample - 0.5) > self.angle_threshold and not quiet:
                    self.engaged = 1
        return self.engaged
