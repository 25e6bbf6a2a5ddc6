import pytest

from assignbench import new_cost_matrix

# Worked 3x3 example: every one of the six assignments costs 15.
EXAMPLE_ROWS = [[9, 8, 7], [6, 5, 4], [3, 2, 1]]
# Small instance with a unique optimum, used across modules.
SMALL_ROWS = [[4, 1, 3], [2, 0, 5], [3, 2, 2]]

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): exit criterion, summarised at session end")


@pytest.fixture
def example_matrix():
    return new_cost_matrix(EXAMPLE_ROWS)


@pytest.fixture
def small_matrix():
    return new_cost_matrix(SMALL_ROWS)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        details = [v for k, v in item.user_properties if k == "detail"]
        _ACCEPTANCE.append((marker.args[0], rep.outcome, details))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for label, outcome, details in sorted(_ACCEPTANCE):
        status = "PASS" if outcome == "passed" else "FAIL"
        suffix = f" ({'; '.join(details)})" if details else ""
        terminalreporter.write_line(f"{status}  {label}{suffix}")
