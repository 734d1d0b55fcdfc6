import pytest

from sftgalois.codes import codes_equal, compose
from sftgalois.errors import DomainMismatchError, TowerMismatchError
from sftgalois.fixtures import sigma1_cycle
from sftgalois.groups import group_isomorphism, klein_group
from sftgalois.tower import (
    covers_isomorphic,
    join,
    kernel,
    pointed_cover_isomorphic,
    pointed_lift,
    sigma1_tower,
    transition_hom,
)


def test_pointed_lifts_follow_divisibility():
    c6, c3, c4 = (sigma1_cycle(d).cover for d in (6, 3, 4))
    f = pointed_lift(c6, c3)
    assert f is not None and f(c6.base_fiber_point) == c3.base_fiber_point
    assert codes_equal(compose(c3.code, f), c6.code)
    assert pointed_lift(c6, c4) is None
    assert pointed_lift(c3, c6) is None
    p = transition_hom(f, c6, c3)
    assert len(kernel(p, c3.group)) == 2


def test_alternate_naming_is_pointed_isomorphic():
    a, b = sigma1_cycle(5).cover, sigma1_cycle(5, naming="r").cover
    conj = pointed_cover_isomorphic(a, b)
    assert conj is not None
    # any other designated point gives an unpointed isomorphism only
    other = b.pointed_at(b.fiber[2])
    assert pointed_cover_isomorphic(a, other) is not None  # deck group acts transitively
    assert covers_isomorphic(a, other) is not None


def test_transition_requires_a_tower():
    c6, c3 = sigma1_cycle(6).cover, sigma1_cycle(3).cover
    f = pointed_lift(c6, c3)
    with pytest.raises(TowerMismatchError):
        transition_hom(f, c3, c6)


def test_covers_over_different_bases(build):
    with pytest.raises(DomainMismatchError):
        pointed_lift(sigma1_cycle(2).cover, build("xor_cover").cover)


def test_join_of_two_quadratic_covers(build):
    fx = build("join_cover")
    first, second = fx.extras["factors"]
    assert fx.cover.degree == 4
    assert group_isomorphism(fx.cover.group, klein_group()) is not None
    p1, p2 = fx.extras["projections"]
    assert codes_equal(compose(first.code, p1), fx.cover.code)
    assert codes_equal(compose(second.code, p2), fx.cover.code)
    # joining a cover with itself gives the cover back
    again, q1, _ = join(first, first)
    assert again.degree == 2


def test_small_tower_report():
    rep = sigma1_tower(6, alternate_naming=False)
    assert rep["divisibility_match"] and rep["functorial"] and rep["transition_surjective"]
    assert [2, 1] in rep["maps"] and [6, 3] in rep["maps"] and [4, 3] not in rep["maps"]
