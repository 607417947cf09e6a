"""Shipped movie scripts: unknotted baselines and two knotted spun surfaces."""
from __future__ import annotations

from importlib import resources

from ..movies import MovieScript, parse_movie_script

FIXTURE_NAMES = (
    "trivial1",
    "trivial2",
    "trivial3",
    "trivial4",
    "two_spheres",
    "two_tori",
    "spun_hopf",
    "spun_trefoil",
)


def fixture_text(name: str) -> str:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}")
    return (
        resources.files(__package__).joinpath(f"{name}.movie").read_text("utf-8")
    )


def load_fixture(name: str) -> MovieScript:
    return parse_movie_script(fixture_text(name), name=name)
