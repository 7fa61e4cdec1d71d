"""Cooking workflow engine.

A pure transition function over immutable session state: events go in,
a new state plus an ordered list of effects comes out. Safety rules are
unconditional and independent of the authored content:

  * the magnetron and carousel are switched off before anything else
    whenever the door opens during heating,
  * smoke detection halts heating and alerts without any audible alarm
    (the effect vocabulary has no such constructor),
  * the cavity light is on during heating and waiting and whenever the
    door is open.

Time is injected solely via Tick events, so a session replays
deterministically from its event stream.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Union

from .lint import lint_instruction_set
from .model import (
    EVENT_DOOR_CLOSED,
    EVENT_DOOR_OPEN,
    EVENT_TIMER_EXPIRED,
    EVENT_USER_CONFIRM,
    EVENT_WEIGHT_CHANGE,
    CookingInstructionSet,
    DeviceInstruction,
    MediaRef,
    TransitionSpec,
    UserInstruction,
)


# --- events -----------------------------------------------------------------

@dataclass(frozen=True)
class DoorOpen:
    pass


@dataclass(frozen=True)
class DoorClosed:
    pass


@dataclass(frozen=True)
class WeightChange:
    delta_grams: int


@dataclass(frozen=True)
class SmokeDetected:
    pass


@dataclass(frozen=True)
class UserConfirm:
    pass


@dataclass(frozen=True)
class Tick:
    dt_millis: int


@dataclass(frozen=True)
class Abort:
    pass


Event = Union[DoorOpen, DoorClosed, WeightChange, SmokeDetected, UserConfirm, Tick, Abort]


# --- effects ----------------------------------------------------------------

@dataclass(frozen=True)
class SetMagnetron:
    on: bool


@dataclass(frozen=True)
class SetCarousel:
    on: bool


@dataclass(frozen=True)
class SetLight:
    on: bool


@dataclass(frozen=True)
class ShowInstruction:
    text: str
    media: tuple[MediaRef, ...] = ()


@dataclass(frozen=True)
class PlayAudio:
    media: MediaRef


@dataclass(frozen=True)
class Suggest:
    text: str
    media: tuple[MediaRef, ...] = ()


class AlertKind(str, Enum):
    SMOKE = "Smoke"
    DOOR_LEFT_OPEN = "DoorLeftOpen"
    ABORTED = "Aborted"


@dataclass(frozen=True)
class Alert:
    kind: AlertKind
    text: str


@dataclass(frozen=True)
class SessionComplete:
    pass


Effect = Union[
    SetMagnetron, SetCarousel, SetLight, ShowInstruction, PlayAudio, Suggest,
    Alert, SessionComplete,
]


# --- state ------------------------------------------------------------------

class Phase(str, Enum):
    AWAITING_USER = "AwaitingUser"
    HEATING = "Heating"
    HEATING_PAUSED = "HeatingPaused"
    SMOKE_HOLD = "SmokeHold"
    COMPLETE = "Complete"
    ABORTED = "Aborted"


TERMINAL_PHASES = (Phase.COMPLETE, Phase.ABORTED)


@dataclass(frozen=True)
class EngineConfig:
    door_left_open_timeout_millis: int = 30_000
    smoke_notice_clip: MediaRef = MediaRef(name="smoke-notice", kind="audio")


DEFAULT_ENGINE_CONFIG = EngineConfig()


@dataclass(frozen=True)
class SessionState:
    instruction_set: CookingInstructionSet
    phase: Phase
    index: int = 0
    remaining_millis: int = 0
    door_open: bool = False
    elapsed_in_phase_millis: int = 0
    pause_alerts_sent: int = 0


@dataclass(frozen=True)
class StepResult:
    state: SessionState
    effects: tuple[Effect, ...] = ()


class LintDirty(ValueError):
    """The instruction set carries error-severity lint diagnostics."""


def is_terminal(state: SessionState) -> bool:
    return state.phase in TERMINAL_PHASES


def expected_transition(state: SessionState) -> Optional[TransitionSpec]:
    """The stimulus the session is waiting for, when a user step is active."""
    if state.phase is not Phase.AWAITING_USER:
        return None
    instr = state.instruction_set.instructions[state.index]
    assert isinstance(instr, UserInstruction)
    return instr.until


def _enter(
    iset: CookingInstructionSet, index: int, door_open: bool
) -> tuple[SessionState, tuple[Effect, ...]]:
    """State and entry effects for instruction `index`, or Complete."""
    if index >= len(iset.instructions):
        state = SessionState(
            instruction_set=iset, phase=Phase.COMPLETE, index=index, door_open=door_open
        )
        return state, (SetLight(False), SessionComplete())
    instr = iset.instructions[index]
    if isinstance(instr, UserInstruction):
        state = SessionState(
            instruction_set=iset,
            phase=Phase.AWAITING_USER,
            index=index,
            door_open=door_open,
        )
        effects: list[Effect] = [
            SetLight(True),
            ShowInstruction(text=instr.text, media=instr.media_refs()),
        ]
        if instr.audio is not None:
            effects.append(PlayAudio(instr.audio))
        return state, tuple(effects)
    remaining = instr.duration_seconds * 1000
    if door_open:
        # heating cannot start against an open door; wait for DoorClosed
        state = SessionState(
            instruction_set=iset,
            phase=Phase.HEATING_PAUSED,
            index=index,
            remaining_millis=remaining,
            door_open=True,
        )
        return state, (SetLight(True), Suggest(text="Close the door to start heating"))
    state = SessionState(
        instruction_set=iset,
        phase=Phase.HEATING,
        index=index,
        remaining_millis=remaining,
        door_open=False,
    )
    return state, (
        SetMagnetron(True),
        SetCarousel(instr.activations.carousel),
        SetLight(True),
    )


def init_session(
    iset: CookingInstructionSet, config: EngineConfig = DEFAULT_ENGINE_CONFIG
) -> StepResult:
    """Start a session for a lint-clean instruction set, door closed."""
    errors = [d for d in lint_instruction_set(iset) if d.severity == "error"]
    if errors:
        raise LintDirty(
            "; ".join(f"{d.rule} {d.path}: {d.message}" for d in errors)
        )
    state, effects = _enter(iset, 0, door_open=False)
    return StepResult(state=state, effects=effects)


def _matches(until: TransitionSpec, event: Event, elapsed_millis: int) -> bool:
    if isinstance(event, DoorOpen):
        return until.event == EVENT_DOOR_OPEN
    if isinstance(event, DoorClosed):
        return until.event == EVENT_DOOR_CLOSED
    if isinstance(event, WeightChange) and until.event == EVENT_WEIGHT_CHANGE:
        wanted = until.min_delta_grams or 0
        if (wanted > 0) != (event.delta_grams > 0):
            return False
        return abs(event.delta_grams) >= abs(wanted)
    if isinstance(event, Tick) and until.event == EVENT_TIMER_EXPIRED:
        return elapsed_millis >= (until.duration_seconds or 0) * 1000
    if isinstance(event, UserConfirm):
        return until.event == EVENT_USER_CONFIRM
    return False


def _suggestion(instr: UserInstruction) -> Suggest:
    return Suggest(text=instr.text, media=instr.media_refs())


def step(
    state: SessionState,
    event: Event,
    config: EngineConfig = DEFAULT_ENGINE_CONFIG,
) -> StepResult:
    """Apply one event. Total over valid states; pure and deterministic."""
    iset = state.instruction_set

    if is_terminal(state):
        if isinstance(event, DoorOpen):
            return StepResult(replace(state, door_open=True), (SetLight(True),))
        if isinstance(event, DoorClosed):
            return StepResult(replace(state, door_open=False), (SetLight(False),))
        return StepResult(state)

    if isinstance(event, Abort):
        aborted = SessionState(
            instruction_set=iset,
            phase=Phase.ABORTED,
            index=state.index,
            door_open=state.door_open,
        )
        return StepResult(
            aborted,
            (
                SetMagnetron(False),
                SetCarousel(False),
                Alert(AlertKind.ABORTED, "Cooking stopped"),
            ),
        )

    if isinstance(event, SmokeDetected):
        hold = SessionState(
            instruction_set=iset,
            phase=Phase.SMOKE_HOLD,
            index=state.index,
            door_open=state.door_open,
        )
        return StepResult(
            hold,
            (
                SetMagnetron(False),
                SetCarousel(False),
                Alert(AlertKind.SMOKE, "Smoke detected, heating stopped"),
                PlayAudio(config.smoke_notice_clip),
            ),
        )

    if state.phase is Phase.AWAITING_USER:
        return _step_awaiting(state, event)
    if state.phase is Phase.HEATING:
        return _step_heating(state, event)
    if state.phase is Phase.HEATING_PAUSED:
        return _step_paused(state, event, config)
    # SmokeHold: only Abort (handled above) leaves; door events tracked
    if isinstance(event, DoorOpen):
        return StepResult(replace(state, door_open=True), (SetLight(True),))
    if isinstance(event, DoorClosed):
        return StepResult(replace(state, door_open=False))
    if isinstance(event, Tick):
        return StepResult(
            replace(
                state,
                elapsed_in_phase_millis=state.elapsed_in_phase_millis + event.dt_millis,
            )
        )
    return StepResult(state)


def _step_awaiting(state: SessionState, event: Event) -> StepResult:
    iset = state.instruction_set
    instr = iset.instructions[state.index]
    assert isinstance(instr, UserInstruction)
    elapsed = state.elapsed_in_phase_millis
    if isinstance(event, Tick):
        elapsed += event.dt_millis

    door_open = state.door_open
    prefix: list[Effect] = []
    if isinstance(event, DoorOpen):
        door_open = True
        prefix.append(SetLight(True))
    elif isinstance(event, DoorClosed):
        door_open = False

    if _matches(instr.until, event, elapsed):
        nxt, entry = _enter(iset, state.index + 1, door_open)
        return StepResult(nxt, tuple(prefix) + entry)

    if isinstance(event, (DoorOpen, DoorClosed)):
        return StepResult(
            replace(state, door_open=door_open), tuple(prefix)
        )
    if isinstance(event, Tick):
        # time passing is not an unexpected user action; no suggestion
        return StepResult(replace(state, elapsed_in_phase_millis=elapsed))
    return StepResult(state, (_suggestion(instr),))


def _step_heating(state: SessionState, event: Event) -> StepResult:
    iset = state.instruction_set
    if isinstance(event, Tick):
        remaining = state.remaining_millis - event.dt_millis
        if remaining <= 0:
            nxt, entry = _enter(iset, state.index + 1, state.door_open)
            return StepResult(
                nxt, (SetMagnetron(False), SetCarousel(False)) + entry
            )
        return StepResult(
            replace(
                state,
                remaining_millis=remaining,
                elapsed_in_phase_millis=state.elapsed_in_phase_millis
                + event.dt_millis,
            )
        )
    if isinstance(event, DoorOpen):
        paused = SessionState(
            instruction_set=iset,
            phase=Phase.HEATING_PAUSED,
            index=state.index,
            remaining_millis=state.remaining_millis,
            door_open=True,
        )
        return StepResult(
            paused, (SetMagnetron(False), SetCarousel(False), SetLight(True))
        )
    if isinstance(event, DoorClosed):
        return StepResult(replace(state, door_open=False))
    return StepResult(state)


def _step_paused(
    state: SessionState, event: Event, config: EngineConfig
) -> StepResult:
    iset = state.instruction_set
    instr = iset.instructions[state.index]
    assert isinstance(instr, DeviceInstruction)
    if isinstance(event, DoorClosed):
        resumed = SessionState(
            instruction_set=iset,
            phase=Phase.HEATING,
            index=state.index,
            remaining_millis=state.remaining_millis,
            door_open=False,
        )
        return StepResult(
            resumed,
            (
                SetMagnetron(True),
                SetCarousel(instr.activations.carousel),
                SetLight(True),
            ),
        )
    if isinstance(event, DoorOpen):
        return StepResult(replace(state, door_open=True), (SetLight(True),))
    if isinstance(event, Tick):
        elapsed = state.elapsed_in_phase_millis + event.dt_millis
        intervals = elapsed // config.door_left_open_timeout_millis
        nxt = replace(state, elapsed_in_phase_millis=elapsed)
        if intervals > state.pause_alerts_sent:
            nxt = replace(nxt, pause_alerts_sent=intervals)
            return StepResult(
                nxt,
                (
                    Alert(AlertKind.DOOR_LEFT_OPEN, "The door has been left open"),
                    Suggest(text="Close the door to continue heating"),
                ),
            )
        return StepResult(nxt)
    return StepResult(state)
