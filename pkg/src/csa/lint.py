"""Static safety and consistency rules for parsed resources.

Rules:
  L1  door context: device instructions must run with the door provably
      closed (error when provably open, warning when unknown)
  L2  first heat should be preceded by a weight change (food placed)
  L3  power/duration bounds
  L4  set ids and ability levels unique within a resource
  L5  media slot kind must match the referenced media kind
  L6  a device instruction must engage the heater (magnetron on)

A resource with any error-severity diagnostic is rejected for storage
and execution; warnings are advisory.
"""
from __future__ import annotations

from dataclasses import dataclass

from .model import (
    DURATION_SECONDS_MAX,
    EVENT_DOOR_CLOSED,
    EVENT_DOOR_OPEN,
    EVENT_WEIGHT_CHANGE,
    POWER_WATTS_MAX,
    POWER_WATTS_MIN,
    CookingInstructionSet,
    DeviceInstruction,
    ProductResource,
    UserInstruction,
)

SEVERITY_ERROR = "error"
SEVERITY_WARNING = "warning"

# door context while walking an instruction sequence
_CLOSED = "closed"
_OPEN = "open"
_UNKNOWN = "unknown"


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    rule: str
    path: str
    message: str


@dataclass(frozen=True)
class LintReport:
    diagnostics: tuple[Diagnostic, ...]

    @property
    def errors(self) -> tuple[Diagnostic, ...]:
        return tuple(d for d in self.diagnostics if d.severity == SEVERITY_ERROR)

    @property
    def clean(self) -> bool:
        return not self.errors

    def to_json(self) -> dict:
        return {
            "diagnostics": [
                {
                    "severity": d.severity,
                    "rule": d.rule,
                    "path": d.path,
                    "message": d.message,
                }
                for d in self.diagnostics
            ]
        }


def _media_slot_diags(instr: UserInstruction, path: str) -> list[Diagnostic]:
    out = []
    for slot, want in (("image", "image"), ("audio", "audio"), ("video", "video")):
        ref = getattr(instr, slot)
        if ref is not None and ref.kind != want:
            out.append(
                Diagnostic(
                    SEVERITY_ERROR,
                    "L5",
                    f"{path}/{slot}",
                    f"{slot} slot references media of kind '{ref.kind}'",
                )
            )
    return out


def lint_instruction_set(
    iset: CookingInstructionSet, base_path: str = ""
) -> list[Diagnostic]:
    """Per-set rules L1, L2, L3, L5, L6."""
    diags: list[Diagnostic] = []
    door = _CLOSED
    weight_seen = False
    first_device_checked = False
    for i, instr in enumerate(iset.instructions):
        path = f"{base_path}/instructions/{i}"
        if isinstance(instr, DeviceInstruction):
            if door == _OPEN:
                diags.append(
                    Diagnostic(
                        SEVERITY_ERROR,
                        "L1",
                        path,
                        "device instruction in a provably open-door context",
                    )
                )
            elif door == _UNKNOWN:
                diags.append(
                    Diagnostic(
                        SEVERITY_WARNING,
                        "L1",
                        path,
                        "device instruction in an unknown door context",
                    )
                )
            if not first_device_checked:
                first_device_checked = True
                if not weight_seen:
                    diags.append(
                        Diagnostic(
                            SEVERITY_WARNING,
                            "L2",
                            path,
                            "no weight change precedes the first heating step",
                        )
                    )
            if not (POWER_WATTS_MIN <= instr.power_watts <= POWER_WATTS_MAX):
                diags.append(
                    Diagnostic(
                        SEVERITY_ERROR,
                        "L3",
                        f"{path}/powerWatts",
                        f"power must be in [{POWER_WATTS_MIN}, {POWER_WATTS_MAX}] W",
                    )
                )
            if not (1 <= instr.duration_seconds <= DURATION_SECONDS_MAX):
                diags.append(
                    Diagnostic(
                        SEVERITY_ERROR,
                        "L3",
                        f"{path}/durationSeconds",
                        f"duration must be in [1, {DURATION_SECONDS_MAX}] s",
                    )
                )
            if not instr.activations.magnetron:
                diags.append(
                    Diagnostic(
                        SEVERITY_ERROR,
                        "L6",
                        f"{path}/activations/magnetron",
                        "device instruction must engage the magnetron",
                    )
                )
        else:
            diags.extend(_media_slot_diags(instr, path))
            event = instr.until.event
            if event == EVENT_DOOR_OPEN:
                door = _OPEN
            elif event == EVENT_DOOR_CLOSED:
                door = _CLOSED
            elif event == EVENT_WEIGHT_CHANGE:
                # the user had to open the door to change the load
                weight_seen = True
                door = _UNKNOWN
    return diags


def lint(resource: ProductResource) -> LintReport:
    """Deterministic report over one parsed resource."""
    diags: list[Diagnostic] = []
    if resource.product.image.kind != "image":
        diags.append(
            Diagnostic(
                SEVERITY_ERROR,
                "L5",
                "/product/image",
                f"product image has kind '{resource.product.image.kind}'",
            )
        )
    seen_ids: dict[str, int] = {}
    seen_levels: dict[int, int] = {}
    for i, iset in enumerate(resource.instruction_sets):
        path = f"/instructionSets/{i}"
        if iset.id in seen_ids:
            diags.append(
                Diagnostic(
                    SEVERITY_ERROR,
                    "L4",
                    f"{path}/id",
                    f"set id '{iset.id}' already used by set {seen_ids[iset.id]}",
                )
            )
        else:
            seen_ids[iset.id] = i
        if iset.ability_level in seen_levels:
            diags.append(
                Diagnostic(
                    SEVERITY_ERROR,
                    "L4",
                    f"{path}/abilityLevel",
                    f"ability level {iset.ability_level} already used by set "
                    f"{seen_levels[iset.ability_level]}",
                )
            )
        else:
            seen_levels[iset.ability_level] = i
        diags.extend(lint_instruction_set(iset, path))
    return LintReport(diagnostics=tuple(diags))
