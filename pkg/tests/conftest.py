import math

import pytest

from beamsim.geometry import ArrayGeometry, Medium

REF_MICS = 8
REF_SPACING = 0.06
BROADSIDE = math.pi / 2

_acceptance_lines = []


@pytest.fixture
def medium():
    return Medium(343.0)


@pytest.fixture
def linear_defaults():
    return ArrayGeometry.linear(REF_MICS, REF_SPACING)


@pytest.fixture
def circular_defaults():
    return ArrayGeometry.circular_from_spacing(REF_MICS, REF_SPACING)


@pytest.fixture
def report():
    """Record one PASS/FAIL line per acceptance criterion."""
    def _report(number, title, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        _acceptance_lines.append(f"[{status}] criterion {number}: {title}"
                                 + (f" -- {detail}" if detail else ""))
        return ok
    return _report


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines,
                           key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
