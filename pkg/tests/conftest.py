"""Shared caches for expensive catalog computations and the acceptance summary hook."""

from __future__ import annotations

import time
from fractions import Fraction
from functools import lru_cache

import pytest

from structura.catalog import build
from structura.solver import (
    centroid_with_certificate,
    delta_derivation_space,
    generalized_space,
    resolve_mode,
)

ACCEPTANCE_LINES: dict[int, str] = {}
SUITE_BUDGET_S = 600
_session = {"start": time.perf_counter()}


@lru_cache(maxsize=None)
def centroid_of(name: str, mode: str = "auto"):
    a = build(name)
    return centroid_with_certificate(a, resolve_mode(a, mode))


@lru_cache(maxsize=None)
def delta_space(name: str, delta: Fraction, mode: str = "auto"):
    a = build(name)
    mode = resolve_mode(a, mode)
    cen = centroid_of(name, mode)[0]
    return delta_derivation_space(a, delta, mode, centroid_space=cen)


@lru_cache(maxsize=None)
def pair_space(name: str, delta: Fraction, mode: str = "auto"):
    a = build(name)
    mode = resolve_mode(a, mode)
    return generalized_space(a, delta, mode, centroid_space=centroid_of(name, mode)[0])


@pytest.fixture(scope="session")
def acceptance_lines():
    return ACCEPTANCE_LINES


def pytest_sessionstart(session):
    _session["start"] = time.perf_counter()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
    elapsed = time.perf_counter() - _session["start"]
    status = "PASS" if elapsed < SUITE_BUDGET_S else "FAIL"
    terminalreporter.write_line(f"[{status}] criterion 9 (suite runtime): this pytest session took {elapsed:.0f} s (budget {SUITE_BUDGET_S} s)")
