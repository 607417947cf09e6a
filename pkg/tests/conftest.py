"""Shared fixtures: the module battery and compiled movie fixtures."""
from __future__ import annotations

import pytest

from xmod.battery import standard_battery
from xmod.fixtures import FIXTURE_NAMES, load_fixture
from xmod.movies import compile_movie


@pytest.fixture(scope="session")
def battery():
    return standard_battery()


@pytest.fixture(scope="session")
def battery_by_name(battery):
    return dict(battery)


@pytest.fixture(scope="session")
def compiled_fixtures():
    return {name: compile_movie(load_fixture(name)) for name in FIXTURE_NAMES}
