import pytest

_acceptance = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance") and (rep.when == "call" or rep.failed):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        prev = _acceptance.get(item.name, (True, doc))[0]
        _acceptance[item.name] = (prev and not rep.failed, doc)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        ok, doc = _acceptance[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {doc}")
