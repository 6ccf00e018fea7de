from pathlib import Path

import pytest

from argselect.parser import parse_file

DATA = Path(__file__).resolve().parents[1] / "src" / "argselect" / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def listing_kb():
    return parse_file(DATA / "listing.gkb")


@pytest.fixture
def curated_kb():
    return parse_file(DATA / "curated.gkb")


def pytest_terminal_summary(terminalreporter):
    reports = [
        r
        for key in ("passed", "failed")
        for r in terminalreporter.stats.get(key, [])
        if r.when == "call" and "test_acceptance.py" in r.nodeid
    ]
    if not reports:
        return
    terminalreporter.section("acceptance criteria")
    for r in sorted(reports, key=lambda r: r.nodeid):
        name = r.nodeid.split("::")[-1]
        terminalreporter.write_line(f"{'PASS' if r.passed else 'FAIL'}  {name}")
