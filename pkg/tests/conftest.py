import random

import pytest


@pytest.fixture(autouse=True)
def isolated_home(tmp_path, monkeypatch):
    """Point the config directory at a scratch location for every test."""
    home = tmp_path / "home"
    monkeypatch.setenv("MODULAR_PI1_HOME", str(home))
    return home


@pytest.fixture
def rng():
    return random.Random(20240611)
