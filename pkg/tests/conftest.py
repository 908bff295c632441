import pytest
from hypothesis import settings
from hypothesis import strategies as st

settings.register_profile("default", deadline=None)
settings.load_profile("default")

small = st.integers(-10**6, 10**6)
pairs = st.tuples(small, small)
nonzero_pairs = pairs.filter(lambda p: p != (0, 0))


@pytest.fixture(scope="session")
def model():
    from eislat.model import build_model
    return build_model()
small_pairs = st.tuples(st.integers(-10**5, 10**5), st.integers(-10**5, 10**5))


_criteria: dict[str, str] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" in report.nodeid and name.startswith("test_criterion_"):
        if report.when == "call" or report.outcome != "passed":
            _criteria[name] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name in sorted(_criteria):
        num, label = name[len("test_criterion_"):].split("_", 1)
        terminalreporter.write_line(f"criterion {num} {label.replace('_', ' ')}: {_criteria[name]}")
