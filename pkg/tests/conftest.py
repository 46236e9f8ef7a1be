"""Shared strategies and the acceptance summary.

Tests marked ``@pytest.mark.acceptance(number, description)`` are collected
into a one-line-per-criterion PASS/FAIL summary at the end of the run.
"""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rscpolar.channel import canonicalize

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, description): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, desc = marker.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        status = "PASS" if rep.passed else "FAIL"
        previous = _ACCEPTANCE.get(number)
        if previous is None or previous[0] == "PASS":
            _ACCEPTANCE[number] = (status, desc)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, desc = _ACCEPTANCE[number]
        terminalreporter.write_line(f"{status} criterion {number:2d}: {desc}")


# -- strategies --------------------------------------------------------------

exact_probs = st.fractions(min_value=0, max_value=1, max_denominator=40)
interior_exact = st.fractions(min_value=Fraction(1, 40), max_value=Fraction(39, 40), max_denominator=40)
float_probs = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@st.composite
def exact_channels(draw, max_components=3):
    eps = draw(st.lists(st.fractions(0, Fraction(1, 2), max_denominator=20), min_size=1,
                        max_size=max_components, unique=True))
    raw = draw(st.lists(st.integers(1, 5), min_size=len(eps), max_size=len(eps)))
    total = sum(raw)
    return canonicalize([(e, Fraction(w, total)) for e, w in zip(eps, raw)])


@st.composite
def float_channels(draw, max_components=5):
    n = draw(st.integers(1, max_components))
    eps = draw(st.lists(st.floats(0.0, 0.5), min_size=n, max_size=n))
    raw = draw(st.lists(st.floats(0.05, 1.0), min_size=n, max_size=n))
    total = sum(raw)
    return canonicalize([(e, w / total) for e, w in zip(eps, raw)])
