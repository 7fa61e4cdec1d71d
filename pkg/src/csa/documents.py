"""Canonical JSON wire format for ProductResource documents.

Parsing is strict: unknown keys, missing keys and ill-typed values are
rejected with a slash-delimited path locator. Serialization emits one
canonical byte form (fixed key order, two-space indent, UTF-8, trailing
newline) so that serialize(parse(d)) is a byte-level fixpoint on
canonical input.
"""
from __future__ import annotations

import json
from typing import Any, Optional

from . import barcode as bc
from .model import (
    AUTHORABLE_EVENTS,
    EVENT_TIMER_EXPIRED,
    EVENT_WEIGHT_CHANGE,
    MEDIA_KINDS,
    Activations,
    CookingInstructionSet,
    DeviceInstruction,
    FoodProduct,
    Instruction,
    MediaRef,
    ProductResource,
    TransitionSpec,
    UserInstruction,
    media_name_is_safe,
)


class DocumentError(ValueError):
    """Document-level failure with a slash-delimited path locator."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path or "/"
        self.message = message


class ResourceSyntaxError(DocumentError):
    """The bytes are not well-formed JSON (or not UTF-8)."""


class SchemaError(DocumentError):
    """Missing, unknown or ill-typed field."""


class InvariantError(DocumentError):
    """Well-shaped document violating a semantic invariant."""


def _require_object(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise SchemaError(path, f"expected object, got {type(value).__name__}")
    return value


def _check_keys(obj: dict, path: str, required: tuple, optional: tuple = ()) -> None:
    for key in obj:
        if key not in required and key not in optional:
            raise SchemaError(f"{path}/{key}", "unknown field")
    for key in required:
        if key not in obj:
            raise SchemaError(path, f"missing field '{key}'")


def _string(obj: dict, key: str, path: str) -> str:
    value = obj[key]
    if not isinstance(value, str):
        raise SchemaError(f"{path}/{key}", "expected string")
    return value

def _nonempty_string(obj: dict, key: str, path: str) -> str:
    value = _string(obj, key, path).strip()
    if not value:
        raise InvariantError(f"{path}/{key}", "must be non-empty")
    return value


def _integer(obj: dict, key: str, path: str) -> int:
    value = obj[key]
    # bool is an int subclass; reject it explicitly
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"{path}/{key}", "expected integer")
    return value


def _boolean(obj: dict, key: str, path: str) -> bool:
    value = obj[key]
    if not isinstance(value, bool):
        raise SchemaError(f"{path}/{key}", "expected boolean")
    return value


def _parse_media(value: Any, path: str) -> MediaRef:
    obj = _require_object(value, path)
    _check_keys(obj, path, required=("name", "kind"))
    name = _nonempty_string(obj, "name", path)
    kind = _string(obj, "kind", path)
    if kind not in MEDIA_KINDS:
        raise SchemaError(f"{path}/kind", f"kind must be one of {MEDIA_KINDS}")
    if not media_name_is_safe(name):
        raise InvariantError(
            f"{path}/name", "media name must not contain path separators"
        )
    return MediaRef(name=name, kind=kind)


def _parse_until(value: Any, path: str) -> TransitionSpec:
    obj = _require_object(value, path)
    event = obj.get("event")
    if not isinstance(event, str) or event not in AUTHORABLE_EVENTS:
        raise SchemaError(
            f"{path}/event", f"event must be one of {AUTHORABLE_EVENTS}"
        )
    if event == EVENT_WEIGHT_CHANGE:
        _check_keys(obj, path, required=("event", "minDeltaGrams"))
        min_delta = _integer(obj, "minDeltaGrams", path)
        if min_delta < 1:
            raise InvariantError(f"{path}/minDeltaGrams", "must be >= 1")
        return TransitionSpec(event=event, min_delta_grams=min_delta)
    if event == EVENT_TIMER_EXPIRED:
        _check_keys(obj, path, required=("event", "durationSeconds"))
        duration = _integer(obj, "durationSeconds", path)
        if duration < 1:
            raise InvariantError(f"{path}/durationSeconds", "must be >= 1")
        return TransitionSpec(event=event, duration_seconds=duration)
    _check_keys(obj, path, required=("event",))
    return TransitionSpec(event=event)


def _parse_instruction(value: Any, path: str) -> Instruction:
    obj = _require_object(value, path)
    kind = obj.get("kind")
    if kind == "user":
        _check_keys(
            obj,
            path,
            required=("kind", "text", "until"),
            optional=("image", "audio", "video"),
        )
        text = _string(obj, "text", path).strip()
        media: dict[str, Optional[MediaRef]] = {}
        for slot in ("image", "audio", "video"):
            media[slot] = (
                _parse_media(obj[slot], f"{path}/{slot}") if slot in obj else None
            )
        if not text and not any(media.values()):
            raise InvariantError(
                path, "user instruction needs text or at least one media reference"
            )
        until = _parse_until(obj["until"], f"{path}/until")
        return UserInstruction(text=text, until=until, **media)
    if kind == "device":
        _check_keys(
            obj,
            path,
            required=("kind", "powerWatts", "durationSeconds", "activations"),
        )
        power = _integer(obj, "powerWatts", path)
        duration = _integer(obj, "durationSeconds", path)
        act_path = f"{path}/activations"
        act_obj = _require_object(obj["activations"], act_path)
        _check_keys(
            act_obj,
            act_path,
            required=("light", "carousel", "magnetron", "smokeAlarmAudible"),
        )
        activations = Activations(
            light=_boolean(act_obj, "light", act_path),
            carousel=_boolean(act_obj, "carousel", act_path),
            magnetron=_boolean(act_obj, "magnetron", act_path),
            smoke_alarm_audible=_boolean(act_obj, "smokeAlarmAudible", act_path),
        )
        if activations.smoke_alarm_audible:
            raise InvariantError(
                f"{act_path}/smokeAlarmAudible",
                "an audible smoke alarm is never permitted",
            )
        return DeviceInstruction(
            power_watts=power, duration_seconds=duration, activations=activations
        )
    raise SchemaError(f"{path}/kind", "kind must be 'user' or 'device'")


def _parse_set(value: Any, path: str) -> CookingInstructionSet:
    obj = _require_object(value, path)
    _check_keys(obj, path, required=("id", "abilityLevel", "instructions"))
    set_id = _nonempty_string(obj, "id", path)
    level = _integer(obj, "abilityLevel", path)
    if level < 1:
        raise InvariantError(f"{path}/abilityLevel", "must be >= 1")
    raw = obj["instructions"]
    if not isinstance(raw, list):
        raise SchemaError(f"{path}/instructions", "expected array")
    if not raw:
        raise InvariantError(f"{path}/instructions", "must be non-empty")
    instructions = tuple(
        _parse_instruction(item, f"{path}/instructions/{i}")
        for i, item in enumerate(raw)
    )
    return CookingInstructionSet(id=set_id, ability_level=level, instructions=instructions)


def _parse_product(value: Any, path: str) -> FoodProduct:
    obj = _require_object(value, path)
    _check_keys(obj, path, required=("barcode", "name", "category", "image"))
    raw_barcode = _string(obj, "barcode", path)
    try:
        code = bc.validate_barcode(raw_barcode)
    except bc.BarcodeError as exc:
        raise InvariantError(f"{path}/barcode", str(exc)) from exc
    return FoodProduct(
        barcode=code,
        name=_nonempty_string(obj, "name", path),
        category=_nonempty_string(obj, "category", path),
        image=_parse_media(obj["image"], f"{path}/image"),
    )


def parse_resource(data: bytes) -> ProductResource:
    """Parse a canonical resource document. Strict: unknown fields reject."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ResourceSyntaxError("", f"not valid UTF-8: {exc}") from exc
    try:
        root = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ResourceSyntaxError("", f"malformed JSON: {exc}") from exc
    obj = _require_object(root, "")
    _check_keys(obj, "", required=("product", "instructionSets"))
    product = _parse_product(obj["product"], "/product")
    raw_sets = obj["instructionSets"]
    if not isinstance(raw_sets, list):
        raise SchemaError("/instructionSets", "expected array")
    if not raw_sets:
        raise InvariantError("/instructionSets", "must be non-empty")
    sets = tuple(
        _parse_set(item, f"/instructionSets/{i}") for i, item in enumerate(raw_sets)
    )
    return ProductResource(product=product, instruction_sets=sets)


def _media_json(ref: MediaRef) -> dict:
    return {"name": ref.name, "kind": ref.kind}


def _until_json(until: TransitionSpec) -> dict:
    out: dict[str, Any] = {"event": until.event}
    if until.event == EVENT_WEIGHT_CHANGE:
        out["minDeltaGrams"] = until.min_delta_grams
    elif until.event == EVENT_TIMER_EXPIRED:
        out["durationSeconds"] = until.duration_seconds
    return out


def instruction_to_json(instr: Instruction) -> dict:
    if isinstance(instr, UserInstruction):
        out: dict[str, Any] = {"kind": "user", "text": instr.text}
        for slot in ("image", "audio", "video"):
            ref = getattr(instr, slot)
            if ref is not None:
                out[slot] = _media_json(ref)
        out["until"] = _until_json(instr.until)
        return out
    return {
        "kind": "device",
        "powerWatts": instr.power_watts,
        "durationSeconds": instr.duration_seconds,
        "activations": {
            "light": instr.activations.light,
            "carousel": instr.activations.carousel,
            "magnetron": instr.activations.magnetron,
            "smokeAlarmAudible": instr.activations.smoke_alarm_audible,
        },
    }


def resource_to_json(resource: ProductResource) -> dict:
    return {
        "product": {
            "barcode": resource.product.barcode.digits,
            "name": resource.product.name,
            "category": resource.product.category,
            "image": _media_json(resource.product.image),
        },
        "instructionSets": [
            {
                "id": s.id,
                "abilityLevel": s.ability_level,
                "instructions": [instruction_to_json(i) for i in s.instructions],
            }
            for s in resource.instruction_sets
        ],
    }


def serialize_resource(resource: ProductResource) -> bytes:
    """Canonical bytes: fixed key order, two-space indent, UTF-8, newline."""
    text = json.dumps(resource_to_json(resource), ensure_ascii=False, indent=2)
    return (text + "\n").encode("utf-8")
