"""Domain model for community-authored cooking instruction resources.

A ProductResource bundles one food product with one or more
CookingInstructionSets, each targeting a user ability level. Instances
are plain frozen dataclasses; structural validation lives in
csa.documents (parsing) and csa.lint (static rules).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .barcode import Barcode

MEDIA_KINDS = ("image", "audio", "video", "text")

EVENT_DOOR_OPEN = "DoorOpen"
EVENT_DOOR_CLOSED = "DoorClosed"
EVENT_WEIGHT_CHANGE = "WeightChange"
EVENT_TIMER_EXPIRED = "TimerExpired"
EVENT_USER_CONFIRM = "UserConfirm"

AUTHORABLE_EVENTS = (
    EVENT_DOOR_OPEN,
    EVENT_DOOR_CLOSED,
    EVENT_WEIGHT_CHANGE,
    EVENT_TIMER_EXPIRED,
    EVENT_USER_CONFIRM,
)

POWER_WATTS_MIN = 50
POWER_WATTS_MAX = 1200
DURATION_SECONDS_MAX = 3600


@dataclass(frozen=True)
class MediaRef:
    """Named reference into the media store; no path traversal allowed."""

    name: str
    kind: str


def media_name_is_safe(name: str) -> bool:
    if not name or name != name.strip():
        return False
    if "/" in name or "\\" in name or name in (".", ".."):
        return False
    if ".." in name.split("."):
        return False
    return True


@dataclass(frozen=True)
class FoodProduct:
    barcode: Barcode
    name: str
    category: str
    image: MediaRef


@dataclass(frozen=True)
class TransitionSpec:
    """The stimulus that ends one instruction and begins the next."""

    event: str
    min_delta_grams: Optional[int] = None
    duration_seconds: Optional[int] = None


@dataclass(frozen=True)
class Activations:
    light: bool
    carousel: bool
    magnetron: bool
    smoke_alarm_audible: bool


@dataclass(frozen=True)
class UserInstruction:
    text: str
    until: TransitionSpec
    image: Optional[MediaRef] = None
    audio: Optional[MediaRef] = None
    video: Optional[MediaRef] = None

    def media_refs(self) -> tuple[MediaRef, ...]:
        return tuple(m for m in (self.image, self.audio, self.video) if m)


@dataclass(frozen=True)
class DeviceInstruction:
    power_watts: int
    duration_seconds: int
    activations: Activations


Instruction = Union[UserInstruction, DeviceInstruction]


@dataclass(frozen=True)
class CookingInstructionSet:
    id: str
    ability_level: int
    instructions: tuple[Instruction, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class ProductResource:
    product: FoodProduct
    instruction_sets: tuple[CookingInstructionSet, ...] = field(default_factory=tuple)


def select_instruction_set(
    resource: ProductResource, ability_level: int
) -> CookingInstructionSet:
    """Pick the set whose level best matches the requested ability.

    Returns the set with the greatest ability level not above the
    request; when every set demands more ability than requested, falls
    back to the most detailed one (minimum level).
    """
    candidates = [
        s for s in resource.instruction_sets if s.ability_level <= ability_level
    ]
    if candidates:
        return max(candidates, key=lambda s: s.ability_level)
    return min(resource.instruction_sets, key=lambda s: s.ability_level)
