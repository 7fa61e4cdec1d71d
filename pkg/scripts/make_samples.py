#!/usr/bin/env python3
"""Regenerate the canonical sample documents under samples/."""
from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from csa.barcode import compute_check_digit  # noqa: E402
from csa.documents import parse_resource, serialize_resource  # noqa: E402
import json  # noqa: E402

SAMPLES = Path(__file__).resolve().parents[1] / "samples"


def ean(first12: str) -> str:
    return first12 + str(compute_check_digit(first12))


def media(name, kind):
    return {"name": name, "kind": kind}


def user(text, until, **refs):
    out = {"kind": "user", "text": text}
    out.update(refs)
    out["until"] = until
    return out


def device(power, seconds, carousel=True):
    return {
        "kind": "device",
        "powerWatts": power,
        "durationSeconds": seconds,
        "activations": {
            "light": True,
            "carousel": carousel,
            "magnetron": True,
            "smokeAlarmAudible": False,
        },
    }


def prelude(grams):
    return [
        user("Open the door", {"event": "DoorOpen"},
             audio=media("open-door.ogg", "audio")),
        user("Place the food inside", {"event": "WeightChange", "minDeltaGrams": grams},
             image=media("place-food.png", "image")),
        user("Close the door", {"event": "DoorClosed"},
             audio=media("close-door.ogg", "audio")),
    ]


FINISH = user("Open the door and take the food out", {"event": "DoorOpen"},
              image=media("take-out.png", "image"))


def iset(set_id, level, steps):
    return {"id": set_id, "abilityLevel": level, "instructions": steps}


def resource(barcode12, name, category, image_name, sets):
    return {
        "product": {
            "barcode": ean(barcode12),
            "name": name,
            "category": category,
            "image": media(image_name, "image"),
        },
        "instructionSets": sets,
    }


DOCS = {
    "tomato-soup.json": resource(
        "500011122233", "Tomato soup", "soup", "tomato-soup.png",
        [
            iset("guided", 1,
                 prelude(100)
                 + [device(600, 120),
                    user("Wait while the soup settles",
                         {"event": "TimerExpired", "durationSeconds": 30}),
                    FINISH]),
            iset("quick", 3, prelude(100) + [device(800, 90), FINISH]),
        ],
    ),
    "porridge.json": resource(
        "500044455566", "Porridge", "breakfast", "porridge.png",
        [
            iset("guided", 1,
                 prelude(150)
                 + [device(700, 90),
                    user("Stir the porridge, then close the door",
                         {"event": "DoorClosed"},
                         video=media("stir.mp4", "video")),
                    device(700, 60),
                    user("Let it cool before eating",
                         {"event": "TimerExpired", "durationSeconds": 60}),
                    FINISH]),
        ],
    ),
    "frozen-lasagne.json": resource(
        "500077788899", "Frozen lasagne", "ready-meal", "lasagne.png",
        [
            iset("guided", 1,
                 prelude(300)
                 + [device(800, 300),
                    user("Press confirm to continue", {"event": "UserConfirm"}),
                    device(800, 180),
                    FINISH]),
            iset("standard", 2, prelude(300) + [device(900, 420), FINISH]),
        ],
    ),
    "warm-milk.json": resource(
        "500010120123", "Warm milk", "drink", "milk.png",
        [iset("guided", 1, prelude(200) + [device(500, 60, carousel=False), FINISH])],
    ),
    "jacket-potato.json": resource(
        "500031415926", "Jacket potato", "vegetable", "potato.png",
        [iset("standard", 2, prelude(250) + [device(900, 360), FINISH])],
    ),
    "gemuesesuppe.json": resource(
        "400027182818", "Gemüsesuppe", "soup", "gemuesesuppe.png",
        [iset("geführt", 1, prelude(120) + [device(600, 150), FINISH])],
    ),
}


def main():
    SAMPLES.mkdir(exist_ok=True)
    for filename, doc in DOCS.items():
        raw = json.dumps(doc, ensure_ascii=False).encode("utf-8")
        canonical = serialize_resource(parse_resource(raw))
        (SAMPLES / filename).write_bytes(canonical)
        print(f"wrote samples/{filename}")


if __name__ == "__main__":
    main()
