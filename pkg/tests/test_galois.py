import pytest

from conftest import COVER_SPECS
from sftgalois.codes import codes_equal, compose, identity_code
from sftgalois.errors import BasePairNotFoundError, NotGaloisError
from sftgalois.galois import certify_galois, deck_group, fiber_product, is_galois
from sftgalois.shifts import periodic_orbits


@pytest.mark.parametrize("spec", COVER_SPECS)
def test_deck_elements_are_deck_transformations(build, spec):
    gc = build(spec).cover
    assert gc.group.order == gc.degree
    assert gc.elements[0].index == gc.group.identity == 0
    for g in gc.elements:
        # ϖ∘g = ϖ exactly
        assert codes_equal(compose(gc.code, g.code), gc.code)
    for a in gc.elements:
        for b in gc.elements:
            ab = gc.group.mul[a.index][b.index]
            assert codes_equal(compose(a.code, b.code), gc.elements[ab].code)


def test_xor_deck_group_is_symbol_flip(build):
    gc = build("xor_cover").cover
    flip = gc.elements[1].code
    assert flip.is_one_block and {k[0]: v for k, v in flip.rule.items()} == {"0": "1", "1": "0"}
    assert [str(y) for y in gc.fiber] == ["(0)^∞@0", "(1)^∞@0"]


def test_translations_match_deck_group(build):
    fx = build("modn_cover:6")
    for g in fx.cover.elements:
        assert any(codes_equal(g.code, t) for t in fx.extras["translations"].values())


def test_pointed_and_transitive(build):
    gc = build("klein_cover").cover
    for y in gc.fiber:
        pc = gc.pointed_at(y)
        assert pc.base_fiber_point == y
        assert gc.element_sending(gc.base_fiber_point, y) is not None


def test_non_galois_cover(build):
    c = build("nongalois_cover").code
    assert c.certificate().degree == 3
    assert deck_group(c).order == 1
    assert not is_galois(c)
    with pytest.raises(NotGaloisError) as err:
        certify_galois(c)
    assert (err.value.deck_order, err.value.degree) == (1, 3)


def test_self_fiber_product_components(build):
    gc = build("s3_cover").cover
    dg = gc.deck
    # a Galois cover's self fiber product splits into graphs of deck maps only
    assert all(d == (1, 1) for d in dg.component_degrees)
    assert dg.product.n_components == gc.degree


def test_fiber_product_base_pair(build):
    xor = build("xor_cover").cover
    fp = fiber_product(xor.code, xor.code, (xor.fiber[0], xor.fiber[1]))
    assert codes_equal(compose(xor.code, fp.proj1), fp.to_base)
    assert fp.to_base.certificate().degree == 2
    other = periodic_orbits(xor.total, 2)[0].rep
    with pytest.raises(BasePairNotFoundError):
        fiber_product(xor.code, xor.code, (xor.fiber[0], other))


def test_identity_is_galois_of_degree_one(build):
    x = build("xor_cover").base
    gc = certify_galois(identity_code(x))
    assert gc.degree == 1 and gc.group.order == 1
