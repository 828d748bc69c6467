"""World state and kinematics: ego bicycle model plus scripted traffic."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from hugdrl.env.scenarios import FOOTPRINTS, ScenarioSpec

EGO_KIND = "sedan"

# handwheel range is +/-135 degrees mapped from alpha in [0, 1]
HANDWHEEL_RANGE_DEG = 270.0
STEERING_RATIO = 15.0
WHEELBASE = 2.7


@dataclass
class Participant:
    kind: str
    x: float
    y: float
    vx: float  # lateral speed, m/s
    vy: float  # longitudinal speed, m/s

    def footprint(self):
        return FOOTPRINTS[self.kind]


@dataclass
class WorldState:
    spec: ScenarioSpec
    x: float
    y: float
    heading: float  # rad, 0 = straight ahead, positive = rightward
    speed: float
    handwheel: float = 0.5  # normalized alpha
    yaw_rate: float = 0.0
    lat_accel: float = 0.0
    vehicles: list[Participant] = field(default_factory=list)
    pedestrians: list[Participant] = field(default_factory=list)
    step_count: int = 0
    spawn_y: float = 0.0

    def ego_lane(self) -> int:
        return 0 if self.x < self.spec.road_width / 2.0 else 1

    def participants(self):
        yield from self.vehicles
        yield from self.pedestrians


def front_wheel_angle(alpha: float) -> float:
    """Road-wheel steering angle (rad) for a normalized handwheel position."""
    handwheel_deg = (alpha - 0.5) * HANDWHEEL_RANGE_DEG
    return math.radians(handwheel_deg / STEERING_RATIO)


def spawn_world(spec: ScenarioSpec, rng) -> WorldState:
    """Place the ego and traffic; pedestrian departure points use the rng."""
    vehicles = [
        Participant(ob.kind, spec.lane_center(ob.lane), ob.offset, 0.0,
                    spec.ego_speed - ob.rel_speed)
        for ob in spec.obstacles
    ]
    pedestrians = []
    for ped in spec.pedestrians:
        lo, hi = ped.window
        y = rng.uniform(lo, hi) if ped.random_position else 0.5 * (lo + hi)
        pedestrians.append(Participant("pedestrian", ped.start_x, y, ped.speed, 0.0))
    return WorldState(
        spec=spec,
        x=spec.ego_spawn_x,
        y=spec.ego_spawn_y,
        heading=0.0,
        speed=spec.ego_speed,
        vehicles=vehicles,
        pedestrians=pedestrians,
        spawn_y=spec.ego_spawn_y,
    )


def advance(world: WorldState, alpha: float, dt: float):
    """One kinematic tick: ego bicycle update plus scripted traffic motion."""
    delta = front_wheel_angle(alpha)
    yaw_rate = world.speed * math.tan(delta) / WHEELBASE
    world.heading += yaw_rate * dt
    world.x += world.speed * math.sin(world.heading) * dt
    world.y += world.speed * math.cos(world.heading) * dt
    world.handwheel = alpha
    world.yaw_rate = yaw_rate
    world.lat_accel = world.speed * yaw_rate
    for p in world.participants():
        p.x += p.vx * dt
        p.y += p.vy * dt
    world.step_count += 1


def boxes_overlap(x1, y1, fp1, x2, y2, fp2) -> bool:
    l1, w1 = fp1
    l2, w2 = fp2
    return abs(x1 - x2) < (w1 + w2) / 2.0 and abs(y1 - y2) < (l1 + l2) / 2.0


def ego_collision(world: WorldState) -> bool:
    fp = FOOTPRINTS[EGO_KIND]
    return any(
        boxes_overlap(world.x, world.y, fp, p.x, p.y, p.footprint())
        for p in world.participants()
    )


def ego_offroad(world: WorldState) -> bool:
    half_width = FOOTPRINTS[EGO_KIND][1] / 2.0
    return world.x < half_width or world.x > world.spec.road_width - half_width


def boundary_distances(world: WorldState) -> tuple[float, float]:
    """(d_left, d_right): ego center to each roadside boundary."""
    return world.x, world.spec.road_width - world.x


def front_distance(world: WorldState, lookahead: float = 40.0):
    """Bumper gap to the nearest same-lane vehicle ahead, or None."""
    lane = world.ego_lane()
    half = world.spec.road_width / 2.0
    ego_len = FOOTPRINTS[EGO_KIND][0]
    best = None
    for p in world.vehicles:
        p_lane = 0 if p.x < half else 1
        if p_lane != lane or p.y <= world.y:
            continue
        gap = p.y - world.y - (ego_len + p.footprint()[0]) / 2.0
        if gap < lookahead and (best is None or gap < best):
            best = gap
    if best is None:
        return None
    return max(best, 0.0)
