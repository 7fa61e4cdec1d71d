"""Line-delimited canonical formats for action scripts and transcripts.

A script drives a session: one JSON object per line with a
non-decreasing virtual timestamp and an optional action (a line with no
action just advances the clock). A transcript records what happened:
a header line embedding the resource and configs, then one line per
applied input with the resulting phase and effects. Both formats are
byte-stable, which makes record -> replay an equality check.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Optional

from . import documents, engine, sim
from .engine import Effect
from .model import CookingInstructionSet, MediaRef, ProductResource
from .session import SessionHost


def _dumps(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


# --- actions ----------------------------------------------------------------

def action_to_json(action: sim.UserAction) -> dict:
    if isinstance(action, sim.OpenDoor):
        return {"action": "openDoor"}
    if isinstance(action, sim.CloseDoor):
        return {"action": "closeDoor"}
    if isinstance(action, sim.PlaceLoad):
        return {
            "action": "placeLoad",
            "grams": action.grams,
            "initialTempC": action.initial_temp_c,
        }
    if isinstance(action, sim.RemoveLoad):
        return {"action": "removeLoad"}
    if isinstance(action, sim.Confirm):
        return {"action": "confirm"}
    if isinstance(action, sim.ScanBarcode):
        return {"action": "scanBarcode", "digits": action.digits}
    raise ValueError(f"unknown action {action!r}")


class ScriptError(ValueError):
    pass


def action_from_json(obj: dict) -> Optional[sim.UserAction]:
    """Decode an action object; 'abort' maps to None (engine-level event)."""
    kind = obj.get("action")
    if kind == "openDoor":
        return sim.OpenDoor()
    if kind == "closeDoor":
        return sim.CloseDoor()
    if kind == "placeLoad":
        return sim.PlaceLoad(
            grams=int(obj["grams"]), initial_temp_c=float(obj["initialTempC"])
        )
    if kind == "removeLoad":
        return sim.RemoveLoad()
    if kind == "confirm":
        return sim.Confirm()
    if kind == "scanBarcode":
        return sim.ScanBarcode(digits=str(obj.get("digits", "")))
    if kind == "abort":
        return None
    raise ScriptError(f"unknown action kind {kind!r}")


# --- effects ----------------------------------------------------------------

def _media_json(ref: MediaRef) -> dict:
    return {"name": ref.name, "kind": ref.kind}


def effect_to_json(e: Effect) -> dict:
    if isinstance(e, engine.SetMagnetron):
        return {"effect": "setMagnetron", "on": e.on}
    if isinstance(e, engine.SetCarousel):
        return {"effect": "setCarousel", "on": e.on}
    if isinstance(e, engine.SetLight):
        return {"effect": "setLight", "on": e.on}
    if isinstance(e, engine.ShowInstruction):
        return {
            "effect": "showInstruction",
            "text": e.text,
            "media": [_media_json(m) for m in e.media],
        }
    if isinstance(e, engine.PlayAudio):
        return {"effect": "playAudio", "media": _media_json(e.media)}
    if isinstance(e, engine.Suggest):
        return {
            "effect": "suggest",
            "text": e.text,
            "media": [_media_json(m) for m in e.media],
        }
    if isinstance(e, engine.Alert):
        return {"effect": "alert", "kind": e.kind.value, "text": e.text}
    if isinstance(e, engine.SessionComplete):
        return {"effect": "sessionComplete"}
    raise ValueError(f"unknown effect {e!r}")


# --- scripts ----------------------------------------------------------------

@dataclass(frozen=True)
class ScriptEntry:
    t_millis: int
    action: Optional[dict]  # raw action object; None = clock advance only


def parse_script(text: str) -> list[ScriptEntry]:
    entries: list[ScriptEntry] = []
    last_t = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ScriptError(f"line {lineno}: malformed JSON: {exc}") from exc
        if not isinstance(obj, dict) or "t" not in obj:
            raise ScriptError(f"line {lineno}: expected object with 't'")
        t = obj["t"]
        if not isinstance(t, int) or t < last_t:
            raise ScriptError(f"line {lineno}: timestamps must be non-decreasing")
        last_t = t
        entries.append(ScriptEntry(t_millis=t, action=obj.get("action")))
    return entries


def script_line(t_millis: int, action: Optional[dict]) -> str:
    obj: dict[str, Any] = {"t": t_millis}
    if action is not None:
        obj["action"] = action
    return _dumps(obj)


# --- transcripts ------------------------------------------------------------

def _sim_config_json(cfg: sim.SimConfig) -> dict:
    return {
        "efficiency": cfg.efficiency,
        "specificHeatJPerKgK": cfg.specific_heat_j_per_kg_k,
        "coolingCoeffPerSec": cfg.cooling_coeff_per_sec,
        "smokePointC": cfg.smoke_point_c,
        "ambientC": cfg.ambient_c,
        "tickMillis": cfg.tick_millis,
    }


def _sim_config_from_json(obj: dict) -> sim.SimConfig:
    return sim.SimConfig(
        efficiency=obj["efficiency"],
        specific_heat_j_per_kg_k=obj["specificHeatJPerKgK"],
        cooling_coeff_per_sec=obj["coolingCoeffPerSec"],
        smoke_point_c=obj["smokePointC"],
        ambient_c=obj["ambientC"],
        tick_millis=obj["tickMillis"],
    )


def header_line(
    resource: ProductResource, set_id: str, sim_config: sim.SimConfig
) -> str:
    return _dumps(
        {
            "type": "header",
            "resource": documents.resource_to_json(resource),
            "setId": set_id,
            "simConfig": _sim_config_json(sim_config),
        }
    )


def transcript_step_line(
    t_millis: int,
    input_obj: dict,
    host: SessionHost,
    effects: list[Effect],
) -> str:
    return _dumps(
        {
            "t": t_millis,
            "input": input_obj,
            "phase": host.state.phase.value,
            "index": host.state.index,
            "remainingMillis": host.state.remaining_millis,
            "effects": [effect_to_json(e) for e in effects],
        }
    )


class Recorder:
    """Runs script entries through a host, producing canonical transcript lines."""

    def __init__(self, resource: ProductResource, iset: CookingInstructionSet,
                 sim_config: sim.SimConfig = sim.DEFAULT_SIM_CONFIG):
        self.resource = resource
        self.iset = iset
        self.sim_config = sim_config
        self.host = SessionHost(iset, sim_config=sim_config)
        self.clock = 0
        self.lines: list[str] = [header_line(resource, iset.id, sim_config)]

    def _collect(self, start: int) -> list[Effect]:
        out: list[Effect] = []
        for applied in self.host.steps[start:]:
            out.extend(applied.effects)
        return out

    def apply_entry(self, entry: ScriptEntry) -> None:
        if entry.t_millis > self.clock:
            dt = entry.t_millis - self.clock
            mark = len(self.host.steps)
            self.host.advance_clock(dt)
            self.clock = entry.t_millis
            self.lines.append(
                transcript_step_line(
                    self.clock, {"advance": dt}, self.host, self._collect(mark)
                )
            )
        if entry.action is not None:
            action = action_from_json(entry.action)
            mark = len(self.host.steps)
            if action is None:
                self.host.abort()
            else:
                self.host.do(action)
            self.lines.append(
                transcript_step_line(
                    self.clock,
                    {"action": entry.action},
                    self.host,
                    self._collect(mark),
                )
            )

    def run(self, entries: list[ScriptEntry]) -> None:
        for entry in entries:
            self.apply_entry(entry)

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


@dataclass(frozen=True)
class ReplayDivergence:
    lineno: int
    expected: str
    actual: str


def replay(transcript_text: str) -> Optional[ReplayDivergence]:
    """Re-execute a transcript's inputs; None means byte-identical."""
    lines = [l for l in transcript_text.splitlines() if l.strip()]
    if not lines:
        return None
    header = json.loads(lines[0])
    if header.get("type") != "header":
        raise ScriptError("transcript must start with a header line")
    doc = json.dumps(header["resource"], ensure_ascii=False).encode("utf-8")
    resource = documents.parse_resource(doc)
    iset = next(s for s in resource.instruction_sets if s.id == header["setId"])
    sim_config = _sim_config_from_json(header["simConfig"])
    rec = Recorder(resource, iset, sim_config)
    for lineno, line in enumerate(lines[1:], start=2):
        obj = json.loads(line)
        input_obj = obj["input"]
        if "advance" in input_obj:
            rec.apply_entry(ScriptEntry(t_millis=rec.clock + input_obj["advance"], action=None))
        else:
            rec.apply_entry(ScriptEntry(t_millis=rec.clock, action=input_obj["action"]))
        actual = rec.lines[-1]
        if actual != line:
            return ReplayDivergence(lineno=lineno, expected=line, actual=actual)
    return None
