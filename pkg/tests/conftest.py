"""Prints one PASS/FAIL line per acceptance criterion at the end of the run."""

import re

import pytest

_RESULTS: dict[int, dict] = {}


@pytest.fixture
def record(request):
    """Attach a one-line detail to the current acceptance test."""

    def add(text: str) -> None:
        request.node.user_properties.append(("detail", text))

    return add


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    entry = _RESULTS.setdefault(n, {"name": m.group(2).replace("_", " "), "outcome": "passed", "details": []})
    if report.failed:
        entry["outcome"] = "failed"
    elif report.skipped and entry["outcome"] == "passed":
        entry["outcome"] = "skipped"
    if report.when == "call":
        entry["details"].extend(v for k, v in report.user_properties if k == "detail")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        e = _RESULTS[n]
        tag = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[e["outcome"]]
        detail = "; ".join(e["details"])
        terminalreporter.write_line(f"{tag} criterion {n}: {e['name']}" + (f" ({detail})" if detail else ""))
