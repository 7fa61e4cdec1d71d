import json

import pytest

from csa.documents import parse_resource, serialize_resource
from csa.store import (
    BarcodeMismatch,
    LintFailed,
    NotFound,
    ProductStore,
    UnsafeName,
)


@pytest.fixture()
def store(tmp_path):
    return ProductStore(tmp_path / "data")


def dirty_doc(soup_doc):
    """Reorder a sample so a heating step runs against an open door."""
    obj = json.loads(soup_doc)
    steps = obj["instructionSets"][0]["instructions"]
    # door-open instruction directly before the device instruction
    steps.insert(2, steps.pop(0))
    return json.dumps(obj, ensure_ascii=False).encode("utf-8")


def test_put_then_get_round_trips_canonically(store, soup_doc):
    barcode = json.loads(soup_doc)["product"]["barcode"]
    revision = store.put_product(barcode, soup_doc)
    assert revision == 1
    fetched = store.get_product(barcode)
    assert fetched == serialize_resource(parse_resource(soup_doc))
    assert fetched == soup_doc  # samples are canonical already


def test_revision_counts_up_and_last_write_wins(store, soup_doc):
    obj = json.loads(soup_doc)
    barcode = obj["product"]["barcode"]
    assert store.put_product(barcode, soup_doc) == 1
    obj["product"]["name"] = "Tomato soup v2"
    second = json.dumps(obj, ensure_ascii=False).encode("utf-8")
    assert store.put_product(barcode, second) == 2
    assert b"Tomato soup v2" in store.get_product(barcode)
    assert store.revision(barcode) == 2


def test_lint_dirty_put_rejected_and_unobservable(store, soup_doc):
    barcode = json.loads(soup_doc)["product"]["barcode"]
    with pytest.raises(LintFailed) as exc:
        store.put_product(barcode, dirty_doc(soup_doc))
    assert any(d.rule == "L1" for d in exc.value.report.errors)
    with pytest.raises(NotFound):
        store.get_product(barcode)


def test_barcode_mismatch(store, soup_doc):
    with pytest.raises(BarcodeMismatch):
        store.put_product("0000000000000", soup_doc)


def test_unknown_barcode_not_found(store):
    with pytest.raises(NotFound):
        store.get_product("0000000000000")


def test_list_products_sorted_and_filtered(store, samples_dir):
    for path in sorted(samples_dir.glob("*.json")):
        data = path.read_bytes()
        barcode = json.loads(data)["product"]["barcode"]
        store.put_product(barcode, data)
    rows = store.list_products()
    names = [r.name for r in rows]
    assert names == sorted(names)
    soups = store.list_products(category="soup")
    assert {r.name for r in soups} == {"Tomato soup", "Gemüsesuppe"}
    assert store.list_products(category="nope") == []


def test_restart_preserves_documents_and_revisions(tmp_path, soup_doc):
    barcode = json.loads(soup_doc)["product"]["barcode"]
    first = ProductStore(tmp_path / "data")
    first.put_product(barcode, soup_doc)
    first.put_product(barcode, soup_doc)
    reopened = ProductStore(tmp_path / "data")
    assert reopened.get_product(barcode) == soup_doc
    assert reopened.revision(barcode) == 2


def test_media_round_trip(store):
    payload = b"\x89PNG fake image bytes"
    store.put_media("soup.png", "image", payload)
    data, kind = store.get_media("soup.png")
    assert data == payload
    assert kind == "image"


def test_media_unsafe_names_rejected(store):
    for name in ("../etc", "a/b", "..", "c\\d"):
        with pytest.raises(UnsafeName):
            store.put_media(name, "image", b"x")
        with pytest.raises(UnsafeName):
            store.get_media(name)


def test_media_unknown_not_found(store):
    with pytest.raises(NotFound):
        store.get_media("missing.png")
