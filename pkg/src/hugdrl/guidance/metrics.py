"""Intervention-rate metrics over a run's per-episode guidance counts."""

from __future__ import annotations


def intervention_metrics(episodes) -> tuple[float, float]:
    """(rate by step %, rate by episode %).

    ``episodes`` is an iterable of (guided_steps, total_steps) pairs.
    """
    guided = total = 0
    ep_guided = ep_total = 0
    for g, t in episodes:
        guided += g
        total += t
        ep_total += 1
        if g > 0:
            ep_guided += 1
    by_step = 100.0 * guided / total if total else 0.0
    by_episode = 100.0 * ep_guided / ep_total if ep_total else 0.0
    return by_step, by_episode
