import json
from fractions import Fraction
from pathlib import Path

import pytest

from ckepoly import _pykernels
from ckepoly.platform import resolve_platform

DATA = Path(__file__).parent / "data"

try:
    from ckepoly import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = [pytest.param(_pykernels, id="python")]
if _ckernels is not None:
    BACKENDS.append(pytest.param(_ckernels, id="cython"))

SMALL = ("x2", "x5", "x7", "x9", "x11")
ALL = SMALL + ("x15", "x20")


@pytest.fixture(params=BACKENDS)
def kernels(request):
    return request.param


@pytest.fixture(scope="session")
def oracles():
    return json.loads((DATA / "oracles.json").read_text())


@pytest.fixture(scope="session")
def golden():
    return resolve_platform("x2")


def fr(values):
    return [Fraction(v) for v in values]


# criterion number -> (passed, detail), filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
