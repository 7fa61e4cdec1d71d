"""Session host: one cooking session coupling the workflow engine to a
simulated appliance.

The host owns the single serialized event stream of a session: a user
action (or clock advance) becomes sensor events, each event is stepped
through the engine, and the resulting effects are applied back to the
appliance. Every applied input bumps the session revision.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import engine, sim
from .engine import Effect, Event
from .model import CookingInstructionSet, DeviceInstruction, MediaRef, TransitionSpec


@dataclass(frozen=True)
class AppliedStep:
    """One engine step: the event consumed and the effects it produced."""

    event: Event
    effects: tuple[Effect, ...]


@dataclass(frozen=True)
class SessionSnapshot:
    session_id: str
    barcode: str
    ability_level: int
    set_id: str
    revision: int
    phase: str
    instruction_index: int
    instruction_count: int
    instruction_text: str
    remaining_millis: int
    expected_event: Optional[TransitionSpec]
    pending_media: tuple[MediaRef, ...]
    alerts: tuple[str, ...]
    door_open: bool
    load_grams: int
    food_temp_c: float
    smoke_active: bool
    magnetron_on: bool
    carousel_on: bool
    light_on: bool
    clock_millis: int
    faults: tuple[str, ...]
    terminal: bool


class SessionHost:
    def __init__(
        self,
        instruction_set: CookingInstructionSet,
        sim_config: sim.SimConfig = sim.DEFAULT_SIM_CONFIG,
        engine_config: engine.EngineConfig = engine.DEFAULT_ENGINE_CONFIG,
        session_id: str = "local",
        barcode: str = "",
        ability_level: int = 1,
    ):
        self.session_id = session_id
        self.barcode = barcode
        self.ability_level = ability_level
        self.sim_config = sim_config
        self.engine_config = engine_config
        self.appliance = sim.initial_state(sim_config)
        self.revision = 0
        self.alerts: list[str] = []
        self.steps: list[AppliedStep] = []
        init = engine.init_session(instruction_set, engine_config)
        self.state = init.state
        for eff in init.effects:
            self.appliance = sim.apply_effect(self.appliance, eff)
            if isinstance(eff, engine.Alert):
                self.alerts.append(f"{eff.kind.value}: {eff.text}")
        self.revision = 1

    # -- internals -----------------------------------------------------------

    def _absorb(self, applied: AppliedStep) -> None:
        for eff in applied.effects:
            self.appliance = sim.apply_effect(self.appliance, eff)
            if isinstance(eff, engine.Alert):
                self.alerts.append(f"{eff.kind.value}: {eff.text}")
        self.steps.append(applied)

    def _feed(self, events: list[Event]) -> None:
        for ev in events:
            result = engine.step(self.state, ev, self.engine_config)
            self.state = result.state
            self._absorb(AppliedStep(event=ev, effects=result.effects))

    def _active_power_watts(self) -> int:
        if self.state.phase is not engine.Phase.HEATING:
            return 0
        instr = self.state.instruction_set.instructions[self.state.index]
        assert isinstance(instr, DeviceInstruction)
        return instr.power_watts

    # -- inputs --------------------------------------------------------------

    def do(self, action: sim.UserAction) -> SessionSnapshot:
        """Apply one user action; PreconditionViolated leaves state unchanged."""
        appliance, events = sim.user_action(self.appliance, action)
        self.appliance = appliance
        self._feed(events)
        self.revision += 1
        return self.snapshot()

    def abort(self) -> SessionSnapshot:
        self._feed([engine.Abort()])
        self.revision += 1
        return self.snapshot()

    def advance_clock(self, dt_millis: int) -> SessionSnapshot:
        """Advance virtual time, chunked at the configured tick size."""
        if dt_millis <= 0:
            raise ValueError("dt_millis must be positive")
        remaining = dt_millis
        while remaining > 0:
            chunk = min(remaining, self.sim_config.tick_millis)
            remaining -= chunk
            power = self._active_power_watts()
            self.appliance, events = sim.tick(
                self.appliance, self.sim_config, chunk, power
            )
            self._feed(events)
        self.revision += 1
        return self.snapshot()

    # -- observation ---------------------------------------------------------

    def snapshot(self) -> SessionSnapshot:
        state = self.state
        iset = state.instruction_set
        in_range = state.index < len(iset.instructions)
        instr = iset.instructions[state.index] if in_range else None
        text = ""
        media: tuple[MediaRef, ...] = ()
        if isinstance(instr, DeviceInstruction):
            text = f"Heating at {instr.power_watts} W"
        elif instr is not None:
            text = instr.text
            media = instr.media_refs()
        return SessionSnapshot(
            session_id=self.session_id,
            barcode=self.barcode,
            ability_level=self.ability_level,
            set_id=iset.id,
            revision=self.revision,
            phase=state.phase.value,
            instruction_index=state.index,
            instruction_count=len(iset.instructions),
            instruction_text=text,
            remaining_millis=state.remaining_millis,
            expected_event=engine.expected_transition(state),
            pending_media=media,
            alerts=tuple(self.alerts),
            door_open=self.appliance.door_open,
            load_grams=self.appliance.load_grams,
            food_temp_c=round(self.appliance.food_temp_c, 6),
            smoke_active=self.appliance.smoke_active,
            magnetron_on=self.appliance.magnetron_on,
            carousel_on=self.appliance.carousel_on,
            light_on=self.appliance.light_on,
            clock_millis=self.appliance.clock_millis,
            faults=tuple(f.message for f in self.appliance.faults),
            terminal=engine.is_terminal(state),
        )


def snapshot_to_json(snap: SessionSnapshot) -> dict:
    expected = None
    if snap.expected_event is not None:
        expected = {"event": snap.expected_event.event}
        if snap.expected_event.min_delta_grams is not None:
            expected["minDeltaGrams"] = snap.expected_event.min_delta_grams
        if snap.expected_event.duration_seconds is not None:
            expected["durationSeconds"] = snap.expected_event.duration_seconds
    return {
        "sessionId": snap.session_id,
        "barcode": snap.barcode,
        "abilityLevel": snap.ability_level,
        "setId": snap.set_id,
        "revision": snap.revision,
        "phase": snap.phase,
        "instructionIndex": snap.instruction_index,
        "instructionCount": snap.instruction_count,
        "instructionText": snap.instruction_text,
        "remainingMillis": snap.remaining_millis,
        "expectedEvent": expected,
        "pendingMedia": [
            {"name": m.name, "kind": m.kind} for m in snap.pending_media
        ],
        "alerts": list(snap.alerts),
        "appliance": {
            "doorOpen": snap.door_open,
            "loadGrams": snap.load_grams,
            "foodTempC": snap.food_temp_c,
            "smokeActive": snap.smoke_active,
            "magnetronOn": snap.magnetron_on,
            "carouselOn": snap.carousel_on,
            "lightOn": snap.light_on,
            "clockMillis": snap.clock_millis,
        },
        "faults": list(snap.faults),
        "terminal": snap.terminal,
    }
