import sys
import time
from contextlib import contextmanager
from importlib import resources
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

import syzshift.resolution
import syzshift.shifts
from syzshift.algebra import FieldSpec, RingSpec
from syzshift.ideal_io import parse

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# Every Hilbert-series check made anywhere in the session is counted here.
HILBERT = {"checked": 0, "failed": 0, "paused": False}
TIMINGS = {}
ACCEPTANCE = []
_hilbert_consistency = syzshift.resolution.hilbert_consistency


def _counting_hilbert_consistency(*args, **kw):
    ok = _hilbert_consistency(*args, **kw)
    if HILBERT["paused"]:
        return ok
    HILBERT["checked"] += 1
    HILBERT["failed"] += not ok
    return ok


syzshift.resolution.hilbert_consistency = _counting_hilbert_consistency
syzshift.shifts.hilbert_consistency = _counting_hilbert_consistency


@contextmanager
def tampered_table():
    """Deliberately wrong tables are not computed resolutions; keep them out of the census."""
    HILBERT["paused"] = True
    try:
        yield
    finally:
        HILBERT["paused"] = False


def pytest_collection_modifyitems(items):
    """The session-wide Hilbert census must run after everything else."""
    last = [it for it in items if "census" in it.name]
    items[:] = [it for it in items if "census" not in it.name] + last


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def fixture_text(name: str) -> str:
    return (resources.files("syzshift") / "fixtures" / f"{name}.ideal").read_text(encoding="utf-8")


def load_fixture(name: str, **kw):
    return parse(fixture_text(name), name, **kw)


def ring(names="xyzw", p=32003, order="grevlex"):
    return RingSpec(FieldSpec(p), list(names), order)


def polys(R, text):
    """Comma-separated polynomials over R."""
    from syzshift.ideal_io import parse_polynomial
    return [parse_polynomial(s, R) for s in text.split(",")]


@pytest.fixture(scope="session")
def fixture1():
    return load_fixture("gorenstein-h4-mixed")


@pytest.fixture(scope="session")
def fixture2():
    return load_fixture("gorenstein-h4-pure")


@pytest.fixture(scope="session")
def fixture3_analysis():
    """Full analysis (with witnesses) of the seven-variable fixture; about two minutes."""
    from syzshift.shifts import analyze
    doc = load_fixture("gorenstein-h7")
    start = time.perf_counter()
    A = analyze(doc.ideal, doc.ring)
    TIMINGS["gorenstein-h7"] = time.perf_counter() - start
    return A
