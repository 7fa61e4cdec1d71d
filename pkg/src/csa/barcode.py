"""EAN-13 barcode validation.

The repository keys every product by a 13-digit EAN-13 code; the 13th
digit is a modulo-10 check digit over the first twelve.
"""
from __future__ import annotations

from dataclasses import dataclass


class BarcodeError(ValueError):
    """Base class for barcode validation failures."""


class WrongLength(BarcodeError):
    pass


class NonDigit(BarcodeError):
    pass


class ChecksumMismatch(BarcodeError):
    pass


@dataclass(frozen=True)
class Barcode:
    """A validated EAN-13 code. Construct via validate_barcode()."""

    digits: str

    def __str__(self) -> str:
        return self.digits


def compute_check_digit(first12: str) -> int:
    """Check digit for a 12-digit payload.

    Odd positions (1st, 3rd, ...) weigh 1, even positions weigh 3; the
    check digit brings the weighted sum to a multiple of 10.
    """
    if len(first12) != 12 or not first12.isdigit():
        raise ValueError("expected exactly 12 decimal digits")
    total = sum(int(d) * (1 if i % 2 == 0 else 3) for i, d in enumerate(first12))
    return (10 - total % 10) % 10


def validate_barcode(text: str) -> Barcode:
    """Validate an EAN-13 string, reporting which rule failed."""
    if len(text) != 13:
        raise WrongLength(f"barcode must be 13 digits, got {len(text)}")
    if not text.isdigit():
        raise NonDigit("barcode must contain only decimal digits")
    expected = compute_check_digit(text[:12])
    actual = int(text[12])
    if actual != expected:
        raise ChecksumMismatch(
            f"check digit is {actual}, checksum requires {expected}"
        )
    return Barcode(text)


def is_valid_barcode(text: str) -> bool:
    try:
        validate_barcode(text)
    except BarcodeError:
        return False
    return True
