# tests/conftest.py
from __future__ import annotations

import json

import pytest

from rapprox.core.config import settings
from rapprox.geometry.projective import ProjPoint
from rapprox.lattice.presets import load_preset


@pytest.fixture
def two_workers(monkeypatch):
    monkeypatch.setattr(settings, "threads", 2)


@pytest.fixture
def origin_p1() -> ProjPoint:
    return ProjPoint((0, 1))


@pytest.fixture
def origin_p2() -> ProjPoint:
    return ProjPoint((0, 0, 1))


@pytest.fixture
def four_points():
    return load_preset("blowup_p2:4")


@pytest.fixture
def scenario_file(tmp_path):
    def write(data: dict, name: str = "scenario.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return path

    return write


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-scale enumeration runs")
