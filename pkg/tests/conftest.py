from collections import OrderedDict

import pytest

from lefschetz import GorensteinAlgebra, builtin, face_polynomial
from lefschetz.polytope import BUILTIN_NAMES, face_point
from lefschetz.report import load_fixture, resolve_hints, resolve_points

SOLIDS = BUILTIN_NAMES

_acceptance: "OrderedDict[str, list[tuple[str, str]]]" = OrderedDict()


class Solid:
    """Poset, form, fixture-hinted algebra and named points for one solid."""

    def __init__(self, name):
        self.name = name
        self.poset = builtin(name)
        self.form = face_polynomial(self.poset)
        self.fixture = load_fixture(name)
        self.algebra = GorensteinAlgebra(self.form, resolve_hints(self.poset, self.fixture))
        self.points = resolve_points(self.poset, self.fixture)

    @property
    def ones(self):
        return face_point(self.poset)


_solids: dict = {}


def get_solid(name) -> Solid:
    if name not in _solids:
        _solids[name] = Solid(name)
    return _solids[name]


@pytest.fixture(scope="session")
def solid():
    return get_solid


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion label")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    label = dict(report.user_properties).get("criterion")
    if label is not None:
        _acceptance.setdefault(label, []).append((report.nodeid, report.outcome))


@pytest.fixture(autouse=True)
def _criterion_label(request, record_property):
    marker = request.node.get_closest_marker("criterion")
    if marker is not None:
        record_property("criterion", marker.args[0])


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcomes in _acceptance.items():
        failed = [n for n, o in outcomes if o != "passed"]
        terminalreporter.write_line(f"ACCEPTANCE {label}: {'FAIL' if failed else 'PASS'}")
        for n in failed:
            terminalreporter.write_line(f"    failing: {n}")
