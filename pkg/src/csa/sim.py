"""Deterministic simulated microwave oven.

Holds the door, weight/smoke sensors and the three actuators, plus a
first-order lumped thermal model of the food load (explicit Euler).
The hardware layer mirrors the engine's interlocks: the door switch
cuts the magnetron and carousel, and a command to energize the
magnetron against an open door is refused and logged as a fault.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Union

from . import engine
from .engine import Effect, Event


@dataclass(frozen=True)
class SimConfig:
    efficiency: float = 0.5
    specific_heat_j_per_kg_k: float = 4186.0
    cooling_coeff_per_sec: float = 0.005
    smoke_point_c: float = 150.0
    ambient_c: float = 20.0
    tick_millis: int = 250


DEFAULT_SIM_CONFIG = SimConfig()


@dataclass(frozen=True)
class HardwareFault:
    clock_millis: int
    message: str


@dataclass(frozen=True)
class ApplianceState:
    door_open: bool = False
    load_grams: int = 0
    food_temp_c: float = 20.0
    ambient_c: float = 20.0
    smoke_active: bool = False
    magnetron_on: bool = False
    carousel_on: bool = False
    light_on: bool = False
    clock_millis: int = 0
    faults: tuple[HardwareFault, ...] = ()


def initial_state(cfg: SimConfig = DEFAULT_SIM_CONFIG) -> ApplianceState:
    return ApplianceState(food_temp_c=cfg.ambient_c, ambient_c=cfg.ambient_c)


# --- user actions -----------------------------------------------------------

@dataclass(frozen=True)
class OpenDoor:
    pass


@dataclass(frozen=True)
class CloseDoor:
    pass


@dataclass(frozen=True)
class PlaceLoad:
    grams: int
    initial_temp_c: float


@dataclass(frozen=True)
class RemoveLoad:
    pass


@dataclass(frozen=True)
class Confirm:
    pass


@dataclass(frozen=True)
class ScanBarcode:
    digits: str


UserAction = Union[OpenDoor, CloseDoor, PlaceLoad, RemoveLoad, Confirm, ScanBarcode]


class PreconditionViolated(ValueError):
    """Physically impossible action; appliance state unchanged."""


def apply_effect(s: ApplianceState, e: Effect) -> ApplianceState:
    """Apply one engine effect to the hardware. Media effects are no-ops."""
    if isinstance(e, engine.SetMagnetron):
        if e.on and s.door_open:
            fault = HardwareFault(
                clock_millis=s.clock_millis,
                message="refused SetMagnetron(on) with door open",
            )
            return replace(s, magnetron_on=False, faults=s.faults + (fault,))
        return replace(s, magnetron_on=e.on)
    if isinstance(e, engine.SetCarousel):
        if e.on and s.door_open:
            fault = HardwareFault(
                clock_millis=s.clock_millis,
                message="refused SetCarousel(on) with door open",
            )
            return replace(s, carousel_on=False, faults=s.faults + (fault,))
        return replace(s, carousel_on=e.on)
    if isinstance(e, engine.SetLight):
        return replace(s, light_on=e.on)
    return s


def tick(
    s: ApplianceState,
    cfg: SimConfig,
    dt_millis: int,
    magnetron_power_watts: int = 0,
) -> tuple[ApplianceState, list[Event]]:
    """Advance virtual time by dt_millis; emits Tick and edge-triggered smoke.

    The active heating power is supplied by the session host (zero when
    no device instruction is running). Temperature integrates by one
    explicit Euler step of size dt.
    """
    if dt_millis <= 0:
        raise ValueError("dt_millis must be positive")
    dt = dt_millis / 1000.0
    temp = s.food_temp_c
    if s.magnetron_on and s.load_grams > 0 and magnetron_power_watts > 0:
        mass_kg = s.load_grams / 1000.0
        temp += magnetron_power_watts * cfg.efficiency * dt / (
            mass_kg * cfg.specific_heat_j_per_kg_k
        )
    temp -= cfg.cooling_coeff_per_sec * (temp - s.ambient_c) * dt
    # smoke is reported ahead of the Tick so the hold takes priority over
    # whatever the elapsed time would otherwise advance
    events: list[Event] = []
    smoke_active = s.smoke_active
    if (
        not smoke_active
        and s.load_grams > 0
        and s.food_temp_c < cfg.smoke_point_c <= temp
    ):
        smoke_active = True
        events.append(engine.SmokeDetected())
    events.append(engine.Tick(dt_millis=dt_millis))
    return (
        replace(
            s,
            clock_millis=s.clock_millis + dt_millis,
            food_temp_c=temp,
            smoke_active=smoke_active,
        ),
        events,
    )


def user_action(
    s: ApplianceState, a: UserAction
) -> tuple[ApplianceState, list[Event]]:
    """Apply a physical user action, emitting the sensor events it causes."""
    if isinstance(a, OpenDoor):
        if s.door_open:
            return s, []
        # the door switch cuts the magnetron and carousel at hardware level
        return (
            replace(s, door_open=True, magnetron_on=False, carousel_on=False),
            [engine.DoorOpen()],
        )
    if isinstance(a, CloseDoor):
        if not s.door_open:
            return s, []
        return replace(s, door_open=False), [engine.DoorClosed()]
    if isinstance(a, PlaceLoad):
        if not s.door_open:
            raise PreconditionViolated("cannot place food through a closed door")
        if s.load_grams > 0:
            raise PreconditionViolated("cavity already holds a load")
        if a.grams <= 0:
            raise PreconditionViolated("load must weigh at least one gram")
        return (
            replace(s, load_grams=a.grams, food_temp_c=a.initial_temp_c),
            [engine.WeightChange(delta_grams=a.grams)],
        )
    if isinstance(a, RemoveLoad):
        if not s.door_open:
            raise PreconditionViolated("cannot remove food through a closed door")
        if s.load_grams == 0:
            raise PreconditionViolated("no load to remove")
        grams = s.load_grams
        return (
            replace(
                s,
                load_grams=0,
                food_temp_c=s.ambient_c,
                smoke_active=False,
            ),
            [engine.WeightChange(delta_grams=-grams)],
        )
    if isinstance(a, Confirm):
        return s, [engine.UserConfirm()]
    # ScanBarcode is consumed by the session host, not the workflow
    return s, []
