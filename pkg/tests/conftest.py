from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from ranklabel import Dataset, FairnessConfig, ScoringSpec, build_ranking, load_csv

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "ranklabel" / "fixtures"


def fixture_bytes(name: str) -> bytes:
    return (FIXTURES / f"{name}.csv").read_bytes()


@pytest.fixture(scope="session")
def cs_dataset() -> Dataset:
    return load_csv(fixture_bytes("cs_departments"))


@pytest.fixture(scope="session")
def german_dataset() -> Dataset:
    return load_csv(fixture_bytes("german_credit"))


@pytest.fixture(scope="session")
def compas_dataset() -> Dataset:
    return load_csv(fixture_bytes("compas"))


@pytest.fixture(scope="session")
def cs_label_inputs(cs_dataset):
    """CS fixture ranked with the canonical demo weights."""
    spec = ScoringSpec({"PubCount": 1.0, "GRE": 0.3}, "minmax")
    annotated, ranking = build_ranking(cs_dataset, spec, 10, require=["DeptSizeBin"])
    return annotated, ranking, FairnessConfig(alpha=0.05, k=10)
