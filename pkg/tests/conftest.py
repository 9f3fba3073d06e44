import os

import pytest
from hypothesis import HealthCheck, settings

from sarcorpus.corpus import Corpus, Label, Post, QuoteResponsePair

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

S, N = Label.SARCASTIC, Label.NOT_SARCASTIC


def pair(pid, text, label=None, parent=True, quote="the quote"):
    parent_id = f"q{pid}" if parent else None
    q = Post(parent_id, quote) if parent else None
    return QuoteResponsePair(Post(str(pid), text, parent_id=parent_id), q, label)


def corpus(rows):
    """rows: iterable of (text, label) or (text, label, parent)."""
    return Corpus(tuple(pair(i, *r) for i, r in enumerate(rows)))


_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion number and description")


def pytest_runtest_logreport(report):
    m = getattr(report, "_criterion", None)
    if m is None:
        return
    n, text = m
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[n] = (text, "SKIP" if report.skipped else ("PASS" if report.passed else "FAIL"))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep._criterion = tuple(m.args)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        text, status = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {text}")
