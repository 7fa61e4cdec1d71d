"""File-backed product repository with media blobs.

One canonical document per barcode under <data>/products, media blobs
under <data>/media. Writes are atomic (temp file + rename) and
last-write-wins per barcode; revisions survive restarts via a sidecar
meta file. A resource with any error-severity lint diagnostic is never
stored.
"""
from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from . import barcode as bc
from . import documents
from .lint import LintReport, lint
from .model import ProductResource, media_name_is_safe


class StoreError(Exception):
    pass


class NotFound(StoreError):
    pass


class BarcodeMismatch(StoreError):
    pass


class UnsafeName(StoreError):
    pass


class LintFailed(StoreError):
    def __init__(self, report: LintReport):
        super().__init__("resource has lint errors")
        self.report = report


@dataclass(frozen=True)
class ProductRow:
    barcode: str
    name: str
    category: str
    image_name: str


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


class ProductStore:
    def __init__(self, data_dir: str | Path):
        self.root = Path(data_dir)
        self.products_dir = self.root / "products"
        self.media_dir = self.root / "media"
        self.products_dir.mkdir(parents=True, exist_ok=True)
        self.media_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    # -- products ------------------------------------------------------------

    def _doc_path(self, digits: str) -> Path:
        return self.products_dir / f"{digits}.json"

    def _meta_path(self, digits: str) -> Path:
        return self.products_dir / f"{digits}.meta.json"

    def put_product(self, digits: str, data: bytes) -> int:
        """Parse, lint and store; returns the new revision."""
        code = bc.validate_barcode(digits)
        resource = documents.parse_resource(data)
        if resource.product.barcode != code:
            raise BarcodeMismatch(
                f"path barcode {digits} != document barcode "
                f"{resource.product.barcode.digits}"
            )
        report = lint(resource)
        if not report.clean:
            raise LintFailed(report)
        canonical = documents.serialize_resource(resource)
        with self._lock:
            revision = self._revision(digits) + 1
            _atomic_write(self._doc_path(digits), canonical)
            meta = {
                "revision": revision,
                "updatedAt": datetime.now(timezone.utc).isoformat(),
            }
            _atomic_write(
                self._meta_path(digits), json.dumps(meta).encode("utf-8")
            )
        return revision

    def _revision(self, digits: str) -> int:
        try:
            meta = json.loads(self._meta_path(digits).read_text("utf-8"))
            return int(meta["revision"])
        except (OSError, ValueError, KeyError):
            return 0

    def get_product(self, digits: str) -> bytes:
        path = self._doc_path(digits)
        try:
            return path.read_bytes()
        except OSError:
            raise NotFound(f"no product for barcode {digits}") from None

    def get_resource(self, digits: str) -> ProductResource:
        return documents.parse_resource(self.get_product(digits))

    def revision(self, digits: str) -> int:
        rev = self._revision(digits)
        if rev == 0:
            raise NotFound(f"no product for barcode {digits}")
        return rev

    def list_products(self, category: Optional[str] = None) -> list[ProductRow]:
        rows = []
        for path in self.products_dir.glob("*.json"):
            if path.name.endswith(".meta.json"):
                continue
            try:
                resource = documents.parse_resource(path.read_bytes())
            except documents.DocumentError:
                continue
            product = resource.product
            if category is not None and product.category != category:
                continue
            rows.append(
                ProductRow(
                    barcode=product.barcode.digits,
                    name=product.name,
                    category=product.category,
                    image_name=product.image.name,
                )
            )
        rows.sort(key=lambda r: (r.name, r.barcode))
        return rows

    # -- media ---------------------------------------------------------------

    def put_media(self, name: str, kind: str, data: bytes) -> None:
        if not media_name_is_safe(name):
            raise UnsafeName(f"unsafe media name {name!r}")
        with self._lock:
            _atomic_write(self.media_dir / name, data)
            _atomic_write(
                self.media_dir / f"{name}.kind.txt", kind.encode("utf-8")
            )

    def get_media(self, name: str) -> tuple[bytes, str]:
        if not media_name_is_safe(name):
            raise UnsafeName(f"unsafe media name {name!r}")
        path = self.media_dir / name
        try:
            data = path.read_bytes()
        except OSError:
            raise NotFound(f"no media named {name!r}") from None
        try:
            kind = (self.media_dir / f"{name}.kind.txt").read_text("utf-8")
        except OSError:
            kind = "text"
        return data, kind
