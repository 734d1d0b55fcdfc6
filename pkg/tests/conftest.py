"""Shared fixtures and brute-force oracles."""

import functools

import pytest

from sftgalois import fixtures
from sftgalois.shifts import PeriodicPoint

ACCEPTANCE_LINES = []


@functools.lru_cache(maxsize=None)
def built(spec):
    """Build a fixture once per session."""
    return fixtures.build(spec)


COVER_SPECS = [
    "xor_cover",
    "modn_cover:6",
    "klein_cover",
    "s3_cover",
    "group_shift_cover:Z2",
    "group_shift_cover:Z4",
    "group_shift_cover:Z2xZ2",
    "group_shift_cover:S3",
    "group_shift_cover:D4",
    "group_shift_cover:Q8",
    "sigma1_cycle:6",
    "join_cover",
]

ALL_CODE_SPECS = COVER_SPECS + ["nongalois_cover"]


@pytest.fixture(scope="session")
def build():
    return built


def brute_force_fiber(code, x, max_sheets):
    """Preimages of the periodic point ``x`` by backtracking over domain words.

    A preimage of a point of period ``m`` has period ``m·k`` with
    ``k ≤ max_sheets``; every closed walk of such a length whose image
    matches ``x`` position by position is collected.
    """
    y = code.domain
    g = y.graph
    mem, ant = code.memory, code.anticipation
    m = x.period
    found = set()
    for k in range(1, max_sheets + 1):
        n = m * k
        word = []

        def ok_at(i):
            w = tuple(word[(i + j) % n] for j in range(-mem, ant + 1))
            return code.rule[w] == x.at(i)

        def extend():
            j = len(word)
            if j == n:
                if g.dst(word[-1]) != g.src(word[0]):
                    return
                if all(ok_at(i) for i in range(n)):
                    found.add(PeriodicPoint.make(tuple(word), 0))
                return
            cands = g.out_edges(g.dst(word[-1])) if word else g.edges
            for e in cands:
                word.append(e.id)
                i = len(word) - 1 - ant
                if i - mem < 0 or code.rule[tuple(word[i - mem : i + ant + 1])] == x.at(i):
                    extend()
                word.pop()

        extend()
    return found


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
