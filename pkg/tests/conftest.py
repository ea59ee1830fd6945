"""Shared fixtures: corpus presentations and small helpers."""

from __future__ import annotations

import itertools

import pytest

from wordrev import corpus


@pytest.fixture(scope="session")
def load():
    return corpus.load


@pytest.fixture(scope="session")
def ex12():
    return corpus.load("example_1_2")


@pytest.fixture(scope="session")
def ex12c():
    return corpus.load("example_1_2_completed")


@pytest.fixture(scope="session")
def b3():
    return corpus.load("b3")


@pytest.fixture(scope="session")
def b4():
    return corpus.load("b4")


@pytest.fixture(scope="session")
def flag():
    return corpus.load("flag_braid")


@pytest.fixture(scope="session")
def nonhom():
    return corpus.load("nonhomogeneous")


def all_words(p, max_len):
    return [w for n in range(max_len + 1) for w in itertools.product(p.letters, repeat=n)]


# -- acceptance report -------------------------------------------------------

_CRITERIA: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and rep.passed):
        return
    number, title = mark.args
    entry = _CRITERIA.setdefault(number, [title, True])
    entry[1] = entry[1] and rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")
