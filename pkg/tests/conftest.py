"""Shared fixtures and the acceptance-summary report hook."""

import re

import pytest

from fixture_gen import write_synthetic_design


@pytest.fixture(scope="session")
def synth_aux(tmp_path_factory):
    """One ibm01-scale synthetic Bookshelf design per session."""
    return write_synthetic_design(tmp_path_factory.mktemp("synth"))


_CRIT_RE = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")
_RANK = {"PASS": 0, "SKIP": 1, "FAIL": 2}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one PASS/FAIL line per acceptance criterion."""
    crits = {}
    for status, label in (("passed", "PASS"), ("skipped", "SKIP"),
                          ("failed", "FAIL"), ("error", "FAIL")):
        for rep in terminalreporter.stats.get(status, ()):
            m = _CRIT_RE.search(getattr(rep, "nodeid", ""))
            if not m:
                continue
            num = int(m.group(1))
            if num not in crits or _RANK[label] > _RANK[crits[num]]:
                crits[num] = label
    if not crits:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(crits):
        terminalreporter.write_line(f"[ACCEPTANCE] criterion {num:02d}: {crits[num]}")
