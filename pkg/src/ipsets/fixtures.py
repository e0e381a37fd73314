"""Point sets shipped with the package as point-set files."""

from __future__ import annotations

from importlib import resources

from .pointfile import PointSetFile, parse_point_set

NAMES = (
    "hexagon_3_5",
    "line_apex_960",
    "solid_8_13",
    "trapezoid_4_3_2",
    "trapezoid_x15",
    "two_line_13",
)


def path(name: str):
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}")
    return resources.files("ipsets") / "data" / f"{name}.ips"


def load(name: str) -> PointSetFile:
    return parse_point_set(path(name).read_text(encoding="utf-8"))
