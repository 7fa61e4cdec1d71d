import json

import pytest
from fastapi.testclient import TestClient

from csa.service import ServiceConfig, create_app


@pytest.fixture()
def client(tmp_path):
    app = create_app(ServiceConfig(data_dir=str(tmp_path / "data")))
    with TestClient(app) as c:
        yield c


@pytest.fixture()
def stored(client, soup_doc):
    barcode = json.loads(soup_doc)["product"]["barcode"]
    response = client.put(f"/products/{barcode}", content=soup_doc)
    assert response.status_code == 200
    return barcode


class TestProducts:
    def test_put_get_round_trip(self, client, soup_doc, stored):
        response = client.get(f"/products/{stored}")
        assert response.status_code == 200
        assert response.content == soup_doc

    def test_revision_counter(self, client, soup_doc, stored):
        response = client.put(f"/products/{stored}", content=soup_doc)
        assert response.json() == {"revision": 2}

    def test_parse_failure_400_with_diagnostics(self, client):
        response = client.put("/products/0000000000000", content=b"{broken")
        assert response.status_code == 400
        body = response.json()
        assert body["code"] == "ParseFailed"
        assert body["diagnostics"]

    def test_lint_failure_422_with_full_report(self, client, soup_doc):
        obj = json.loads(soup_doc)
        steps = obj["instructionSets"][0]["instructions"]
        steps.insert(2, steps.pop(0))
        barcode = obj["product"]["barcode"]
        response = client.put(
            f"/products/{barcode}",
            content=json.dumps(obj, ensure_ascii=False).encode("utf-8"),
        )
        assert response.status_code == 422
        body = response.json()
        assert body["code"] == "LintFailed"
        assert any(d["rule"] == "L1" for d in body["diagnostics"])
        # never observable
        assert client.get(f"/products/{barcode}").status_code == 404

    def test_barcode_mismatch(self, client, soup_doc):
        response = client.put("/products/0000000000000", content=soup_doc)
        assert response.status_code == 409
        assert response.json()["code"] == "BarcodeMismatch"

    def test_unknown_product_404(self, client):
        response = client.get("/products/0000000000000")
        assert response.status_code == 404

    def test_listing_with_category_filter(self, client, stored):
        response = client.get("/products", params={"category": "soup"})
        rows = response.json()["products"]
        assert [r["name"] for r in rows] == ["Tomato soup"]
        assert client.get("/products").json()["products"]


class TestMedia:
    def test_round_trip(self, client):
        payload = b"fake-bytes"
        put = client.put("/media/soup.png", params={"kind": "image"}, content=payload)
        assert put.status_code == 200
        got = client.get("/media/soup.png")
        assert got.content == payload

    def test_unsafe_name(self, client):
        # path traversal with an encoded slash is stopped at routing
        assert client.put("/media/..%2Fetc", content=b"x").status_code == 404
        # a backslash name reaches the handler and is refused there
        response = client.put("/media/a%5Cb", content=b"x")
        assert response.status_code == 400
        assert response.json()["code"] == "UnsafeName"

    def test_unknown_404(self, client):
        assert client.get("/media/missing.png").status_code == 404


class TestSessions:
    def create(self, client, stored, level=1):
        response = client.post(
            "/sessions", json={"barcode": stored, "abilityLevel": level}
        )
        assert response.status_code == 200
        return response.json()

    def test_create_starts_awaiting_first_instruction(self, client, stored):
        snap = self.create(client, stored)
        assert snap["phase"] == "AwaitingUser"
        assert snap["instructionIndex"] == 0
        assert snap["expectedEvent"] == {"event": "DoorOpen"}

    def test_create_unknown_barcode_404(self, client):
        response = client.post(
            "/sessions", json={"barcode": "0000000000000", "abilityLevel": 1}
        )
        assert response.status_code == 404

    def test_high_ability_level_selects_highest_set(self, client, stored):
        snap = self.create(client, stored, level=99)
        assert snap["setId"] == "quick"  # levels {1, 3}; request 99 picks 3

    def test_session_cap(self, tmp_path, soup_doc):
        app = create_app(
            ServiceConfig(data_dir=str(tmp_path / "capped"), session_cap=2)
        )
        with TestClient(app) as client:
            barcode = json.loads(soup_doc)["product"]["barcode"]
            client.put(f"/products/{barcode}", content=soup_doc)
            for _ in range(2):
                self.create(client, barcode)
            response = client.post(
                "/sessions", json={"barcode": barcode, "abilityLevel": 1}
            )
            assert response.status_code == 429

    def test_action_flow_door_open_pauses_heating(self, client, stored):
        snap = self.create(client, stored, level=3)
        sid = snap["sessionId"]

        def act(action, **kw):
            response = client.post(
                f"/sessions/{sid}/actions", json={"action": action, **kw}
            )
            assert response.status_code == 200, response.text
            return response.json()

        act("openDoor")
        act("placeLoad", grams=400, initialTempC=10)
        snap = act("closeDoor")
        assert snap["phase"] == "Heating"
        assert snap["appliance"]["magnetronOn"] is True
        snap = act("openDoor")
        assert snap["phase"] == "HeatingPaused"
        assert snap["appliance"]["magnetronOn"] is False

    def test_precondition_violated_409_without_state_change(self, client, stored):
        snap = self.create(client, stored)
        sid = snap["sessionId"]
        response = client.post(
            f"/sessions/{sid}/actions",
            json={"action": "placeLoad", "grams": 100, "initialTempC": 5},
        )
        assert response.status_code == 409
        after = client.get(f"/sessions/{sid}").json()
        assert after["revision"] == snap["revision"]

    def test_clock_advance_completes_heating(self, client, stored):
        snap = self.create(client, stored, level=3)
        sid = snap["sessionId"]
        for action in (
            {"action": "openDoor"},
            {"action": "placeLoad", "grams": 400, "initialTempC": 10},
            {"action": "closeDoor"},
        ):
            client.post(f"/sessions/{sid}/actions", json=action)
        response = client.post(f"/sessions/{sid}/clock", json={"dtMillis": 90_000})
        snap = response.json()
        assert snap["phase"] == "AwaitingUser"
        assert snap["instructionIndex"] == 4

    def test_clock_rejects_nonpositive(self, client, stored):
        sid = self.create(client, stored)["sessionId"]
        response = client.post(f"/sessions/{sid}/clock", json={"dtMillis": 0})
        assert response.status_code == 400

    def test_unknown_session_404(self, client):
        assert client.get("/sessions/nope").status_code == 404
        assert (
            client.post("/sessions/nope/actions", json={"action": "confirm"}).status_code
            == 404
        )
        assert client.get("/sessions/nope/stream").status_code == 404

    def test_action_on_completed_session_stays_complete(self, client, stored):
        sid = self.create(client, stored, level=3)["sessionId"]
        for action in (
            {"action": "openDoor"},
            {"action": "placeLoad", "grams": 400, "initialTempC": 10},
            {"action": "closeDoor"},
        ):
            client.post(f"/sessions/{sid}/actions", json=action)
        client.post(f"/sessions/{sid}/clock", json={"dtMillis": 90_000})
        snap = client.post(
            f"/sessions/{sid}/actions", json={"action": "openDoor"}
        ).json()
        assert snap["phase"] == "Complete"
        snap = client.post(
            f"/sessions/{sid}/actions", json={"action": "confirm"}
        ).json()
        assert snap["phase"] == "Complete"

    def test_stream_replays_history_in_order(self, client, stored):
        sid = self.create(client, stored)["sessionId"]
        client.post(f"/sessions/{sid}/actions", json={"action": "openDoor"})
        client.post(f"/sessions/{sid}/clock", json={"dtMillis": 1000})
        client.post(f"/sessions/{sid}/actions", json={"action": "abort"})
        with client.stream("GET", f"/sessions/{sid}/stream") as response:
            snaps = [json.loads(line) for line in response.iter_lines() if line]
        revisions = [s["revision"] for s in snaps]
        assert revisions == sorted(revisions)
        assert revisions == list(range(revisions[0], revisions[0] + len(revisions)))
        assert snaps[0]["phase"] == "AwaitingUser"
        assert snaps[-1]["phase"] == "Aborted"
