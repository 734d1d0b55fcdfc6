import random

import pytest

from conftest import COVER_SPECS
from sftgalois.codes import codes_equal, compose, identity_code
from sftgalois.errors import BudgetExceededError
from sftgalois.fixtures import (
    build,
    full_shift,
    klein_cover,
    modn_cover,
    parse_cycles,
    shift_automorphism,
    sigma1_cycle,
    symbol_perm_automorphism,
)
from sftgalois.groups import cyclic_group, group_isomorphism
from sftgalois.serialize import cover_bundle, dumps


def test_klein_factors_compose_to_the_cover():
    fx = klein_cover()
    assert [m.label for m in fx.intermediates] == ["Z_1", "Z_2", "Z_3"]
    for mid in fx.intermediates:
        assert codes_equal(compose(mid.beta, mid.alpha), fx.code)
        assert mid.alpha.certificate().degree == 2 and mid.beta.certificate().degree == 2


def test_s3_group_shift_has_degree_six(build):
    fx = build("group_shift_cover:S3")
    assert fx.cover.degree == 6 and not fx.cover.group.is_abelian()


def test_cycle_cover_deck_group_is_generated_by_the_shift():
    fx = sigma1_cycle(6)
    assert group_isomorphism(fx.cover.group, cyclic_group(6)) is not None
    sigma = shift_automorphism(fx.total).forward
    assert any(codes_equal(g.code, sigma) for g in fx.cover.elements)


def test_symbol_permutations():
    x = full_shift(4)
    ident = symbol_perm_automorphism(4, [0, 1, 2, 3], shift=x)
    assert codes_equal(ident.forward, identity_code(x)) and codes_equal(ident.inverse, identity_code(x))
    rng = random.Random(2)
    for _ in range(10):
        perm = list(range(4))
        rng.shuffle(perm)
        f = symbol_perm_automorphism(4, perm, shift=x)
        assert codes_equal(compose(f.inverse, f.forward), identity_code(x))
    with pytest.raises(ValueError):
        symbol_perm_automorphism(3, [0, 0, 1])


def test_parse_cycles():
    assert parse_cycles("(1,2)(3,4)") == {1: 2, 2: 1, 3: 4, 4: 3}
    assert parse_cycles("(1,2,3)") == {1: 2, 2: 3, 3: 1}
    assert parse_cycles("()") == {}
    with pytest.raises(ValueError):
        parse_cycles("(1,2)(2,3)")


def test_budget_guard():
    with pytest.raises(BudgetExceededError):
        modn_cover(13)
    with pytest.raises(BudgetExceededError):
        sigma1_cycle(20)


def test_build_specs():
    with pytest.raises(KeyError):
        build("no_such_fixture")
    with pytest.raises(ValueError):
        build("modn_cover")
    with pytest.raises(ValueError):
        build("group_shift_cover:Z99")
    assert list(build("full_shift:3").base.alphabet) == ["0", "1", "2"]


@pytest.mark.parametrize("spec", ["xor_cover", "klein_cover", "modn_cover:4", "group_shift_cover:Q8"])
def test_rebuilds_serialize_identically(spec):
    a, b = build(spec), build(spec)
    assert dumps(cover_bundle(a.code, a.cover.deck)) == dumps(cover_bundle(b.code, b.cover.deck))


@pytest.mark.parametrize("spec", COVER_SPECS)
def test_every_cover_fixture_is_galois(build, spec):
    gc = build(spec).cover
    assert gc.degree == gc.group.order == gc.code.certificate().degree
