import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy.functions.combinatorial.numbers import mobius

from sftgalois.codes import codes_equal, compose, identity_code
from sftgalois.errors import DegenerateInputError, WordNotInDomainError
from sftgalois.fixtures import full_shift, golden_mean
from sftgalois.graph import DirectedMultigraph
from sftgalois.shifts import (
    EdgeShift,
    PeriodicPoint,
    higher_block,
    periodic_orbits,
    periodic_points,
    smallest_orbit,
    words_of_length,
)


def orbit_count(a, m):
    """Necklace count from traces of powers of the adjacency matrix."""
    total = sum(int(mobius(m // d)) * int(np.trace(np.linalg.matrix_power(a, d))) for d in range(1, m + 1) if m % d == 0)
    assert total % m == 0
    return total // m


@pytest.mark.parametrize("x", [full_shift(2), full_shift(3), golden_mean()], ids=["Σ2", "Σ3", "golden"])
def test_orbit_counts_match_traces(x):
    a = x.graph.adjacency_matrix()
    for m in range(1, 7):
        orbits = periodic_orbits(x, m)
        assert len(orbits) == orbit_count(a, m)
        assert len(periodic_points(x, m)) == m * len(orbits)
        keys = [o.sort_key() for o in orbits]
        assert keys == sorted(keys)


def test_edge_shift_requires_essential_nonempty_graph():
    with pytest.raises(DegenerateInputError):
        EdgeShift(DirectedMultigraph([], []))
    with pytest.raises(DegenerateInputError):
        EdgeShift(DirectedMultigraph(["a", "b"], [("x", "a", "b")]))


def test_words_and_language():
    x = golden_mean()
    assert words_of_length(x, 1) == {("a",), ("b",), ("c",)}
    assert len(list(x.iter_words(4))) == int(np.linalg.matrix_power(x.graph.adjacency_matrix(), 4).sum())
    assert x.is_word(("a", "b", "c")) and not x.is_word(("b", "b"))
    assert x.irreducible
    with pytest.raises(WordNotInDomainError):
        x.check_cycle(("a", "b"))


@settings(max_examples=80, deadline=None)
@given(st.lists(st.sampled_from("01"), min_size=1, max_size=8), st.integers(0, 20), st.integers(-10, 10))
def test_canonical_points(cycle, phase, n):
    p = PeriodicPoint.make(cycle, phase)
    # same sequence
    for i in range(-5, 5):
        assert p.at(i) == cycle[(phase + i) % len(cycle)]
    assert p.shift(n).at(0) == p.at(n)
    assert PeriodicPoint.make(p.word(), 0) == p
    assert len(cycle) % p.period == 0


def test_smallest_orbit():
    assert smallest_orbit(golden_mean()).rep.cycle == ("a",)
    assert smallest_orbit(full_shift(3)).rep.cycle == ("0",)


@pytest.mark.parametrize("n,memory", [(2, 0), (2, 1), (3, 1)])
def test_higher_block_is_a_conjugacy(n, memory):
    x = golden_mean()
    hb = higher_block(x, n, memory)
    assert codes_equal(compose(hb.backward, hb.forward), identity_code(x))
    assert codes_equal(compose(hb.forward, hb.backward), identity_code(hb.shift))
    for o in periodic_orbits(x, 4):
        assert hb.backward(hb.forward(o.rep)) == o.rep
