"""Shared canonical profiles used across the test suite."""

from fractions import Fraction
from pathlib import Path

import pytest

from stairspec.diagram import (
    EMPTY_ROWS,
    FULL_ROWS,
    DiagramProfile,
    GeometricBlocksTail,
    PeriodicTail,
)

SPEC_DIR = Path(__file__).resolve().parent.parent / "specs"


def line_profile(period: int = 1, rise: int = 1) -> DiagramProfile:
    """Staircase along a single rational slope on both sides."""
    return DiagramProfile(0, (0,), PeriodicTail(period, rise), PeriodicTail(period, rise))


def half_lines_profile() -> DiagramProfile:
    """Slope 1/2 behind the window, slope 1 ahead of it."""
    return DiagramProfile(0, (0,), PeriodicTail(2, 1), PeriodicTail(1, 1))


def gb01_profile() -> DiagramProfile:
    """Geometric blocks cycling slopes 0 and 1 below, slope 1 above."""
    return DiagramProfile(
        0, (0,), GeometricBlocksTail((Fraction(0), Fraction(1)), 2, 1), PeriodicTail(1, 1)
    )


def quarter_steps_profile() -> DiagramProfile:
    """A two-step staircase inside the quarter plane (both operators shifts)."""
    return DiagramProfile(0, (1, 0), EMPTY_ROWS, PeriodicTail(1, 0))


def wold_mixed_profile() -> DiagramProfile:
    """Both operators have unitary parts; not the notched plane (outer corners exist)."""
    return DiagramProfile(0, (1, 0), PeriodicTail(1, 0), FULL_ROWS)


def notched_plane_profile() -> DiagramProfile:
    """The plane minus a closed quadrant: constant rows below, full rows above."""
    return DiagramProfile(0, (0,), PeriodicTail(1, 0), FULL_ROWS)


def simple_quarter_profile() -> DiagramProfile:
    """A translate of the quarter plane (simple)."""
    return DiagramProfile(0, (0,), EMPTY_ROWS, PeriodicTail(1, 0))


def canonical_nonsimple() -> list[tuple[str, DiagramProfile]]:
    return [
        ("line_slope1", line_profile()),
        ("half_lines", half_lines_profile()),
        ("gb01", gb01_profile()),
        ("quarter_steps", quarter_steps_profile()),
        ("wold_mixed", wold_mixed_profile()),
        ("notched_plane", notched_plane_profile()),
    ]


@pytest.fixture
def spec_dir() -> Path:
    return SPEC_DIR
