from pathlib import Path

import pytest

from csa.documents import parse_resource

REPO_ROOT = Path(__file__).resolve().parents[1]
SAMPLES_DIR = REPO_ROOT / "samples"


@pytest.fixture(scope="session")
def samples_dir() -> Path:
    return SAMPLES_DIR


@pytest.fixture(scope="session")
def sample_paths() -> list[Path]:
    return sorted(SAMPLES_DIR.glob("*.json"))


@pytest.fixture(scope="session")
def sample_resources(sample_paths):
    return {p.name: parse_resource(p.read_bytes()) for p in sample_paths}


@pytest.fixture()
def soup_doc(samples_dir) -> bytes:
    return (samples_dir / "tomato-soup.json").read_bytes()
