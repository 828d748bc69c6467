"""Scenario catalog 0-5 and YAML (de)serialization.

Geometry: lateral x in [0, road_width] meters (lane 0 on the left, lane 1
on the right), longitudinal y increasing ahead of the ego spawn. Obstacle
``rel_speed`` is ego speed minus obstacle speed, so +5 means the ego closes
at 5 m/s. Offsets are spawn-time longitudinal positions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import yaml

from hugdrl.errors import ConfigurationError

# footprint (length, width) meters per participant kind
FOOTPRINTS = {
    "sedan": (4.5, 1.8),
    "bus": (11.0, 2.5),
    "motorcycle": (2.2, 0.8),
    "pedestrian": (0.5, 0.5),
}


@dataclass
class Obstacle:
    kind: str
    lane: int
    offset: float  # longitudinal spawn position, m
    rel_speed: float  # ego speed - obstacle speed, m/s

    def footprint(self):
        return FOOTPRINTS[self.kind]


@dataclass
class PedestrianSpawn:
    window: tuple[float, float]  # longitudinal band the crossing happens in
    speed: float  # lateral crossing speed, m/s (sign = direction)
    start_x: float  # lateral start position (off-road)
    random_position: bool = True


@dataclass
class ScenarioSpec:
    scenario_id: int
    obstacles: list[Obstacle] = field(default_factory=list)
    pedestrians: list[PedestrianSpawn] = field(default_factory=list)
    finish_line: float = 55.0
    road_width: float = 7.0
    ego_spawn_x: float = 1.75
    ego_spawn_y: float = 0.0
    ego_speed: float = 10.0

    def __post_init__(self):
        half = self.road_width / 2.0
        for ob in self.obstacles:
            if ob.kind not in FOOTPRINTS:
                raise ConfigurationError(f"unknown participant kind {ob.kind!r}")
            if ob.lane not in (0, 1):
                raise ConfigurationError(f"lane {ob.lane} outside the two-lane road")
            if not 0.0 <= ob.offset:
                raise ConfigurationError("obstacle spawned behind the ego")
        last = max((ob.offset for ob in self.obstacles), default=0.0)
        if self.finish_line <= last:
            raise ConfigurationError("finish line must lie beyond the last obstacle")
        if not 0.0 < self.ego_spawn_x < self.road_width:
            raise ConfigurationError("ego spawn off the road")

    def lane_center(self, lane: int) -> float:
        return self.road_width * (0.25 + 0.5 * lane)


def builtin_scenario(scenario_id: int) -> ScenarioSpec:
    """Desk-scale catalog; ids follow the training/testing suite."""
    s = int(scenario_id)
    if s == 0:
        # training: three slower sedans to overtake plus two crossing
        # pedestrians that gate the return into the left lane
        return ScenarioSpec(
            scenario_id=0,
            finish_line=58.0,
            obstacles=[
                Obstacle("sedan", 0, 13.0, 5.0),
                Obstacle("sedan", 1, 40.0, 5.0),
                Obstacle("sedan", 0, 54.0, 5.0),
            ],
            pedestrians=[
                PedestrianSpawn((20.0, 26.0), 1.2, -1.5),
                PedestrianSpawn((32.0, 38.0), 1.2, -1.5),
            ],
        )
    if s == 1:
        # freeway steadiness check: no traffic participants at all
        return ScenarioSpec(scenario_id=1, finish_line=58.0)
    if s == 2:
        return ScenarioSpec(
            scenario_id=2,
            finish_line=58.0,
            obstacles=[
                Obstacle("sedan", 0, 16.0, 3.0),
                Obstacle("sedan", 1, 30.0, 3.0),
                Obstacle("sedan", 1, 48.0, 3.0),
            ],
            pedestrians=[
                PedestrianSpawn((18.0, 24.0), -1.2, 8.5),
                PedestrianSpawn((40.0, 46.0), 1.2, -1.5),
            ],
        )
    if s == 3:
        # urban lane-keeping: the ego lane stays clear
        return ScenarioSpec(
            scenario_id=3,
            finish_line=58.0,
            obstacles=[
                Obstacle("sedan", 1, 10.0, 3.0),
                Obstacle("sedan", 1, 24.0, 3.0),
                Obstacle("sedan", 1, 38.0, 3.0),
            ],
            pedestrians=[PedestrianSpawn((44.0, 50.0), 1.2, -1.5)],
        )
    if s == 4:
        # highway: mixed closing speeds, no pedestrians
        return ScenarioSpec(
            scenario_id=4,
            finish_line=58.0,
            obstacles=[
                Obstacle("sedan", 0, 12.0, 2.0),
                Obstacle("sedan", 1, 30.0, 4.0),
                Obstacle("sedan", 0, 46.0, 3.0),
            ],
        )
    if s == 5:
        return ScenarioSpec(
            scenario_id=5,
            finish_line=58.0,
            obstacles=[
                Obstacle("motorcycle", 0, 13.0, 5.0),
                Obstacle("bus", 1, 34.0, 4.0),
                Obstacle("motorcycle", 0, 50.0, 5.0),
            ],
            pedestrians=[
                PedestrianSpawn((21.0, 27.0), 1.5, -1.5),
                PedestrianSpawn((36.0, 42.0), -0.9, 8.5),
            ],
        )
    raise ConfigurationError(f"unknown scenario id {scenario_id}")


def dump_scenario(spec: ScenarioSpec, path):
    doc = {
        "scenario_id": spec.scenario_id,
        "road_width": spec.road_width,
        "finish_line": spec.finish_line,
        "ego_spawn_x": spec.ego_spawn_x,
        "ego_spawn_y": spec.ego_spawn_y,
        "ego_speed": spec.ego_speed,
        "obstacles": [
            {"kind": o.kind, "lane": o.lane, "offset": o.offset,
             "rel_speed": o.rel_speed}
            for o in spec.obstacles
        ],
        "pedestrians": [
            {"window": list(p.window), "speed": p.speed, "start_x": p.start_x,
             "random_position": p.random_position}
            for p in spec.pedestrians
        ],
    }
    with open(path, "w") as f:
        yaml.safe_dump(doc, f, sort_keys=False)


def load_scenario(path) -> ScenarioSpec:
    with open(path) as f:
        doc = yaml.safe_load(f)
    try:
        return ScenarioSpec(
            scenario_id=doc["scenario_id"],
            road_width=doc.get("road_width", 7.0),
            finish_line=doc.get("finish_line", 55.0),
            ego_spawn_x=doc.get("ego_spawn_x", 1.75),
            ego_spawn_y=doc.get("ego_spawn_y", 0.0),
            ego_speed=doc.get("ego_speed", 10.0),
            obstacles=[Obstacle(**o) for o in doc.get("obstacles", [])],
            pedestrians=[
                PedestrianSpawn(window=tuple(p["window"]), speed=p["speed"],
                                start_x=p["start_x"],
                                random_position=p.get("random_position", True))
                for p in doc.get("pedestrians", [])
            ],
        )
    except (KeyError, TypeError) as e:
        raise ConfigurationError(f"{path}: malformed scenario file: {e}") from e
