import random

import numpy as np
import pytest
import sympy
from sympy.combinatorics import Permutation

from sftgalois.cohomology import (
    Character,
    character_for_vector,
    characters_equal,
    check_automorphism,
    constant_cocycle,
    cylinder_cocycle,
    det_mod_p,
    ev,
    frobenius,
    linear_combination,
    orbit_permutation,
    os_sign,
    permutation_parity,
    pushforward_character,
    quotient_rep_matrix,
    quotient_rep_matrix_from_characters,
    separation_radius,
    skew_product,
    trace_mod_p,
)
from sftgalois.errors import NotAnAutomorphismError
from sftgalois.fixtures import Automorphism, full_shift, golden_mean, shift_automorphism, symbol_perm_automorphism
from sftgalois.shifts import periodic_orbits


@pytest.fixture(scope="module")
def sigma2():
    return full_shift(2)


def test_skew_products(sigma2):
    assert skew_product(sigma2, constant_cocycle(sigma2, 0, 3)) is None
    chi, witness = skew_product(sigma2, constant_cocycle(sigma2, 1, 2))
    assert chi.cover.degree == 2 and witness.period == 1
    assert list(ev(chi, 1)) == [1, 1]
    chi3, _ = skew_product(sigma2, cylinder_cocycle(sigma2, "1", 3))
    assert list(ev(chi3, 1)) == [0, 1]
    assert list(ev(chi3, 2)) == [1]


def test_frobenius_is_cocycle_sum(sigma2):
    rng = random.Random(3)
    for _ in range(5):
        vals = {("0",): rng.randrange(3), ("1",): rng.randrange(3)}
        from sftgalois.cohomology import Cocycle

        f = Cocycle(0, vals, 3)
        made = skew_product(sigma2, f)
        if made is None:
            continue
        chi = made[0]
        for m in (1, 2, 3):
            for o in periodic_orbits(sigma2, m):
                assert frobenius(chi, o, check=True) == f.orbit_sum(o.rep)


def test_xor_character(build):
    gc = build("xor_cover").cover
    chi = Character(2, gc.base, gc, (0, 1))
    assert list(ev(chi, 1)) == [0, 1]
    assert list(ev(chi, 3)) == [1, 0]


def test_zero_character(sigma2):
    z = Character.zero(sigma2, 5)
    assert z.is_zero and not any(ev(z, 2))
    assert character_for_vector(sigma2, 1, [0, 0], 5).is_zero
    with pytest.raises(ValueError):
        Character.zero(sigma2, 4)
    with pytest.raises(ValueError):
        character_for_vector(sigma2, 1, [1], 3)


def test_character_on_golden_mean():
    x = golden_mean()
    orbits = periodic_orbits(x, 2)
    v = list(range(1, len(orbits) + 1))
    chi = character_for_vector(x, 2, v, 5)
    assert list(ev(chi, 2)) == [t % 5 for t in v]
    assert separation_radius(x, 2) >= 0


def test_linearity(sigma2):
    a = character_for_vector(sigma2, 1, [1, 0], 3)
    b = character_for_vector(sigma2, 1, [1, 1], 3)
    c = linear_combination(2, a, b)
    assert list(ev(c, 1)) == [0, 1]
    for m in (2, 3):
        assert list(ev(c, m)) == [(2 * s + t) % 3 for s, t in zip(ev(a, m), ev(b, m))]
    assert linear_combination(2, a, a).is_zero
    doubled = linear_combination(1, a, a)
    assert characters_equal(doubled, a.scaled(2))


def test_characters_equal(sigma2):
    a = character_for_vector(sigma2, 1, [1, 2], 3)
    assert characters_equal(a, a)
    assert not characters_equal(a, a.scaled(2))
    assert characters_equal(a.scaled(2), character_for_vector(sigma2, 1, [2, 1], 3))
    assert not characters_equal(a, Character.zero(sigma2, 3))


def test_pushforward_and_shift_invariance(sigma2):
    chi = character_for_vector(sigma2, 1, [0, 1], 2)
    swap = symbol_perm_automorphism(2, [1, 0], shift=sigma2)
    assert list(ev(pushforward_character(swap, chi), 1)) == [1, 0]
    sigma = shift_automorphism(sigma2)
    pushed = pushforward_character(sigma, chi)
    for m in (1, 2, 3):
        assert list(ev(pushed, m)) == list(ev(chi, m))
    bad = Automorphism(swap.forward, swap.forward.__class__(sigma2, sigma2, 0, 0, {("0",): "0", ("1",): "0"}))
    with pytest.raises(NotAnAutomorphismError):
        check_automorphism(bad)


def test_det_mod_p_against_sympy():
    rng = np.random.default_rng(5)
    for p in (2, 3, 5, 7):
        for k in (1, 3, 6):
            a = rng.integers(0, p, size=(k, k))
            assert det_mod_p(a, p) == int(sympy.Matrix(a).det()) % p


def test_matrix_routes_agree_and_sign():
    x = full_shift(3)
    f = symbol_perm_automorphism(3, [1, 2, 0], shift=x)
    for m in (1, 2):
        for p in (2, 3):
            assert np.array_equal(quotient_rep_matrix(f, m, p), quotient_rep_matrix_from_characters(f, m, p))
    swap = symbol_perm_automorphism(3, [1, 0, 2], shift=x)
    assert os_sign(swap, 1) == -1
    mat = quotient_rep_matrix(swap, 1, 5)
    assert det_mod_p(mat, 5) == 4 and trace_mod_p(mat, 5) == 1
    assert orbit_permutation(swap, 2).perm == (0, 2, 1)


def test_permutation_parity_matches_sympy():
    rng = random.Random(1)
    for _ in range(30):
        perm = list(range(rng.randint(1, 9)))
        rng.shuffle(perm)
        assert permutation_parity(perm) == Permutation(perm).signature()
