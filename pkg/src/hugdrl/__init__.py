"""Human-guided deep reinforcement learning workbench.

Four TD3-family training variants (adaptive human guidance, fixed-weight
intervention-aided, intervention-only, vanilla), imitation-learning
baselines, a deterministic 2D lane-change micro-simulator with a scripted
oracle driver, and a live-session bridge for a browser cockpit.
"""

__version__ = "0.1.0"
