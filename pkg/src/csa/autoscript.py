"""Derive a happy-path action script from an instruction set.

Walks the authored sequence and emits, for each instruction, the user
actions and clock advances that satisfy its transition: open/close the
door, place food, wait out timers, confirm. Useful for demos and for
verifying that a set can actually be completed.
"""
from __future__ import annotations

from .model import (
    EVENT_DOOR_CLOSED,
    EVENT_DOOR_OPEN,
    EVENT_TIMER_EXPIRED,
    EVENT_USER_CONFIRM,
    EVENT_WEIGHT_CHANGE,
    CookingInstructionSet,
    DeviceInstruction,
)
from .transcript import ScriptEntry


def derive_happy_path(iset: CookingInstructionSet) -> list[ScriptEntry]:
    entries: list[ScriptEntry] = []
    t = 0
    door_open = False
    load_grams = 0

    def act(action: dict) -> None:
        entries.append(ScriptEntry(t_millis=t, action=action))

    def open_door() -> None:
        nonlocal door_open
        if not door_open:
            act({"action": "openDoor"})
            door_open = True

    def close_door() -> None:
        nonlocal door_open
        if door_open:
            act({"action": "closeDoor"})
            door_open = False

    for instr in iset.instructions:
        if isinstance(instr, DeviceInstruction):
            close_door()
            t += instr.duration_seconds * 1000
            entries.append(ScriptEntry(t_millis=t, action=None))
            continue
        until = instr.until
        if until.event == EVENT_DOOR_OPEN:
            if door_open:
                close_door()
            open_door()
        elif until.event == EVENT_DOOR_CLOSED:
            if not door_open:
                open_door()
            close_door()
        elif until.event == EVENT_WEIGHT_CHANGE:
            open_door()
            if load_grams:
                act({"action": "removeLoad"})
                load_grams = 0
            grams = abs(until.min_delta_grams or 100) + 50
            act({"action": "placeLoad", "grams": grams, "initialTempC": 20})
            load_grams = grams
        elif until.event == EVENT_TIMER_EXPIRED:
            t += (until.duration_seconds or 1) * 1000
            entries.append(ScriptEntry(t_millis=t, action=None))
        elif until.event == EVENT_USER_CONFIRM:
            act({"action": "confirm"})
    return entries


def script_text(entries: list[ScriptEntry]) -> str:
    from .transcript import script_line

    return "\n".join(script_line(e.t_millis, e.action) for e in entries) + "\n"
