import random

import pytest

from csa import sim
from csa.autoscript import derive_happy_path
from csa.model import select_instruction_set
from csa.session import SessionHost, snapshot_to_json
from generators import random_clean_set


def count_phase_advances(host_states, instruction_count):
    """Instruction entries: index increments plus the final completion."""
    advances = 0
    prev_index = 0
    prev_phase = None
    for phase, index in host_states:
        index = min(index, instruction_count - 1)
        if index > prev_index:
            advances += index - prev_index
        if phase == "Complete" and prev_phase != "Complete":
            advances += 1
        prev_index = index
        prev_phase = phase
    return advances


def drive_happy_path(iset):
    host = SessionHost(iset)
    observed = [(host.snapshot().phase, host.snapshot().instruction_index)]
    clock = 0
    for entry in derive_happy_path(iset):
        if entry.t_millis > clock:
            host.advance_clock(entry.t_millis - clock)
            clock = entry.t_millis
            observed.append((host.snapshot().phase, host.snapshot().instruction_index))
        if entry.action is not None:
            from csa.transcript import action_from_json

            action = action_from_json(entry.action)
            if action is None:
                host.abort()
            else:
                host.do(action)
            observed.append((host.snapshot().phase, host.snapshot().instruction_index))
    return host, observed


def test_happy_path_completes_sample_soup(sample_resources):
    resource = sample_resources["tomato-soup.json"]
    iset = select_instruction_set(resource, 1)
    host, observed = drive_happy_path(iset)
    snap = host.snapshot()
    assert snap.phase == "Complete"
    assert count_phase_advances(observed, len(iset.instructions)) == len(iset.instructions)


def test_happy_path_completes_all_samples_all_sets(sample_resources):
    for name, resource in sample_resources.items():
        for iset in resource.instruction_sets:
            host, observed = drive_happy_path(iset)
            assert host.snapshot().phase == "Complete", (name, iset.id)
            assert count_phase_advances(observed, len(iset.instructions)) == len(iset.instructions)


def test_happy_path_on_generated_clean_sets():
    rng = random.Random(1234)
    for i in range(30):
        iset = random_clean_set(rng, f"gen-{i}", 1)
        host, observed = drive_happy_path(iset)
        assert host.snapshot().phase == "Complete"
        assert count_phase_advances(observed, len(iset.instructions)) == len(iset.instructions)


def test_door_open_during_heating_shows_paused(sample_resources):
    resource = sample_resources["warm-milk.json"]
    iset = resource.instruction_sets[0]
    host = SessionHost(iset)
    host.do(sim.OpenDoor())
    host.do(sim.PlaceLoad(300, 10.0))
    host.do(sim.CloseDoor())
    assert host.snapshot().phase == "Heating"
    assert host.snapshot().magnetron_on
    snap = host.do(sim.OpenDoor())
    assert snap.phase == "HeatingPaused"
    assert not snap.magnetron_on
    assert not snap.carousel_on
    assert snap.light_on


def test_interlock_holds_through_session(sample_resources):
    resource = sample_resources["tomato-soup.json"]
    iset = select_instruction_set(resource, 3)
    host = SessionHost(iset)
    host.do(sim.OpenDoor())
    host.do(sim.PlaceLoad(400, 10.0))
    host.do(sim.CloseDoor())
    for _ in range(20):
        host.advance_clock(1000)
        host.do(sim.OpenDoor())
        snap = host.snapshot()
        assert not (snap.magnetron_on and snap.door_open)
        host.do(sim.CloseDoor())
    assert host.snapshot().faults == ()


def test_precondition_violation_leaves_state_unchanged(sample_resources):
    resource = sample_resources["warm-milk.json"]
    host = SessionHost(resource.instruction_sets[0])
    before = host.snapshot()
    with pytest.raises(sim.PreconditionViolated):
        host.do(sim.PlaceLoad(300, 10.0))  # door closed
    after = host.snapshot()
    assert before == after


def test_revision_increases_per_input(sample_resources):
    resource = sample_resources["warm-milk.json"]
    host = SessionHost(resource.instruction_sets[0])
    r0 = host.snapshot().revision
    r1 = host.do(sim.OpenDoor()).revision
    r2 = host.advance_clock(500).revision
    assert r0 < r1 < r2


def test_snapshot_json_shape(sample_resources):
    resource = sample_resources["tomato-soup.json"]
    host = SessionHost(resource.instruction_sets[0], barcode="5000111222334")
    obj = snapshot_to_json(host.snapshot())
    assert obj["phase"] == "AwaitingUser"
    assert obj["expectedEvent"] == {"event": "DoorOpen"}
    assert obj["appliance"]["doorOpen"] is False
    assert obj["terminal"] is False


def test_smoke_path_through_host():
    from test_lint import dev, iset as make_set, u

    iset = make_set(
        [u("WeightChange", min_delta_grams=50), dev(power=600, seconds=120), u("DoorOpen")]
    )
    # force an early, certain smoke crossing
    host = SessionHost(
        iset,
        sim_config=sim.SimConfig(
            efficiency=1.0, cooling_coeff_per_sec=0.0, smoke_point_c=30.0
        ),
    )
    host.do(sim.OpenDoor())
    host.do(sim.PlaceLoad(100, 25.0))
    host.do(sim.CloseDoor())
    assert host.snapshot().phase == "Heating"
    host.advance_clock(120_000)
    snap = host.snapshot()
    assert snap.phase == "SmokeHold"
    assert not snap.magnetron_on
    assert any(a.startswith("Smoke") for a in snap.alerts)
