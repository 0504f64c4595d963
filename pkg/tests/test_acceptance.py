"""Acceptance suite: one test and one printed PASS/FAIL line per criterion.

The lines are written to the terminal even under output capture, so
``pytest tests/test_acceptance.py`` shows the eleven verdicts in order.
"""

import json

import pytest

from diagstrat.acceptance import CRITERIA, run_criterion, summary_line


@pytest.fixture
def report(request):
    tr = request.config.pluginmanager.getplugin("terminalreporter")

    def emit(result):
        lines = [summary_line(result)]
        if not result["pass"]:
            lines.append(json.dumps(result["details"], sort_keys=True, default=str)[:4000])
        for line in lines:
            if tr is not None:
                tr.write_line("")
                tr.write_line(line)
            else:
                print(line)
    return emit


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, report):
    result = run_criterion(k)
    report(result)
    assert result["pass"], "criterion %d failed: %s" % (k, result["title"])
