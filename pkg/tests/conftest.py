import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")
    config._criterion_outcomes = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    results = item.config._criterion_outcomes.setdefault(marker.args[0], [])
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        results.append(rep.passed)


def pytest_terminal_summary(terminalreporter, config):
    # one pass/fail line per acceptance criterion
    outcomes = getattr(config, "_criterion_outcomes", {})
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(outcomes):
        ok = bool(outcomes[key]) and all(outcomes[key])
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'} ({len(outcomes[key])} checks)")
