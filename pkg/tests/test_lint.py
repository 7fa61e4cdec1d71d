import random

from csa.lint import lint
from csa.model import (
    Activations,
    CookingInstructionSet,
    DeviceInstruction,
    FoodProduct,
    MediaRef,
    ProductResource,
    TransitionSpec,
    UserInstruction,
)
from csa.barcode import Barcode
from csa.documents import parse_resource, serialize_resource
from generators import random_resource


def u(event, **kw):
    return UserInstruction(text="step", until=TransitionSpec(event=event, **kw))


def dev(power=600, seconds=60, magnetron=True):
    return DeviceInstruction(
        power_watts=power,
        duration_seconds=seconds,
        activations=Activations(
            light=True, carousel=True, magnetron=magnetron, smoke_alarm_audible=False
        ),
    )


def make_resource(*sets):
    return ProductResource(
        product=FoodProduct(
            barcode=Barcode("0000000000000"),
            name="Test food",
            category="test",
            image=MediaRef("food.png", "image"),
        ),
        instruction_sets=sets,
    )


def iset(instructions, set_id="main", level=1):
    return CookingInstructionSet(
        id=set_id, ability_level=level, instructions=tuple(instructions)
    )


def rules(report, severity=None):
    return [
        d.rule
        for d in report.diagnostics
        if severity is None or d.severity == severity
    ]


def test_device_after_door_open_is_l1_error():
    report = lint(make_resource(iset([u("DoorOpen"), dev()])))
    assert "L1" in rules(report, "error")


def test_canonical_happy_path_has_no_errors():
    steps = [
        u("DoorOpen"),
        u("WeightChange", min_delta_grams=100),
        u("DoorClosed"),
        dev(),
        u("DoorOpen"),
    ]
    report = lint(make_resource(iset(steps)))
    assert report.clean
    assert not report.diagnostics


def test_unknown_door_context_is_l1_warning():
    steps = [u("WeightChange", min_delta_grams=100), dev()]
    report = lint(make_resource(iset(steps)))
    assert "L1" in rules(report, "warning")
    assert "L1" not in rules(report, "error")


def test_heat_without_weight_change_is_l2_warning():
    report = lint(make_resource(iset([u("UserConfirm"), dev()])))
    assert "L2" in rules(report, "warning")


def test_power_and_duration_bounds_are_l3_errors():
    steps = [u("WeightChange", min_delta_grams=1), u("DoorClosed"),
             dev(power=2000), dev(seconds=4000)]
    report = lint(make_resource(iset(steps)))
    assert rules(report, "error").count("L3") == 2
    paths = [d.path for d in report.errors]
    assert "/instructionSets/0/instructions/2/powerWatts" in paths
    assert "/instructionSets/0/instructions/3/durationSeconds" in paths


def test_duplicate_ability_levels_are_l4_error():
    a = iset([u("UserConfirm")], set_id="a", level=1)
    b = iset([u("UserConfirm")], set_id="b", level=1)
    report = lint(make_resource(a, b))
    assert "L4" in rules(report, "error")


def test_duplicate_set_ids_are_l4_error():
    a = iset([u("UserConfirm")], set_id="same", level=1)
    b = iset([u("UserConfirm")], set_id="same", level=2)
    report = lint(make_resource(a, b))
    assert "L4" in rules(report, "error")


def test_media_kind_mismatch_is_l5_error():
    instr = UserInstruction(
        text="listen",
        until=TransitionSpec(event="UserConfirm"),
        audio=MediaRef("cover.png", "image"),
    )
    report = lint(make_resource(iset([instr])))
    assert "L5" in rules(report, "error")


def test_magnetron_off_is_l6_error():
    steps = [u("WeightChange", min_delta_grams=1), u("DoorClosed"),
             dev(magnetron=False)]
    report = lint(make_resource(iset(steps)))
    assert "L6" in rules(report, "error")


def test_lint_is_deterministic_over_bytes():
    rng = random.Random(99)
    for _ in range(25):
        resource = random_resource(rng)
        data = serialize_resource(resource)
        first = lint(parse_resource(data))
        second = lint(parse_resource(data))
        assert first == second


def test_generated_clean_sets_are_clean():
    rng = random.Random(7)
    for _ in range(50):
        resource = random_resource(rng, clean=True)
        assert lint(resource).clean
