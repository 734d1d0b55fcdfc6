"""Pointed covers, transition homomorphisms and finite towers.

A pointed cover is a :class:`~sftgalois.galois.GaloisCover` together with its
designated point ``y0`` over the canonical base point ``x0`` of ``X``.  There
is at most one pointed map between two pointed covers; it exists exactly when
the fiber-product component through ``(y2_0, y1_0)`` projects one-to-one
onto ``Y2``.
"""

from dataclasses import dataclass

from .codes import codes_equal, compose, identity_code
from .errors import DomainMismatchError, InternalError, TowerMismatchError
from .galois import PairProduct, certify_galois, fiber_product
from .groups import group_isomorphism, cyclic_group


def _pair_degrees(prod, k, fiber1, fiber2):
    """Degrees of the two projections of component ``k`` read off the fibers over the base point."""
    comp = [[prod.component_of(a, b) for b in fiber2] for a in fiber1]
    i0 = next(i for i in range(len(fiber1)) for j in range(len(fiber2)) if comp[i][j] == k)
    d1 = sum(1 for j in range(len(fiber2)) if comp[i0][j] == k)
    j0 = next(j for j in range(len(fiber2)) if comp[i0][j] == k)
    d2 = sum(1 for i in range(len(fiber1)) if comp[i][j0] == k)
    return d1, d2


def pointed_lift(source, target):
    """The pointed map ``α: source.total -> target.total`` over ``X``, or ``None``.

    ``α`` satisfies ``ϖ_target ∘ α = ϖ_source`` and sends the designated
    point of ``source`` to that of ``target``.
    """
    if source.base != target.base:
        raise DomainMismatchError("covers over different bases")
    prod = PairProduct(source.code, target.code)
    a, b = source.base_fiber_point, target.base_fiber_point
    k = prod.component_of(a, b)
    if k is None:
        return None
    d1, _ = _pair_degrees(prod, k, source.fiber, target.fiber)
    if d1 != 1:
        return None
    code = prod.graph_map(k)
    if code is None:
        raise InternalError("one-to-one component has no finite window")
    if code(a) != b:
        raise InternalError("pointed lift misses the designated point")
    return code


@dataclass(frozen=True)
class PointedConjugacy:
    forward: object
    inverse: object


def pointed_cover_isomorphic(first, second):
    """A pointed conjugacy ``f`` with ``ϖ_second ∘ f = ϖ_first`` and ``f(y0) = y0'``, or ``None``."""
    f = pointed_lift(first, second)
    if f is None:
        return None
    g = pointed_lift(second, first)
    if g is None:
        return None
    if not (
        codes_equal(compose(g, f), identity_code(first.total))
        and codes_equal(compose(f, g), identity_code(second.total))
    ):
        raise InternalError("pointed maps in both directions are not inverse")
    return PointedConjugacy(f, g)


def covers_isomorphic(first, second):
    """Unpointed version: try every point of the second fiber as target."""
    for y in second.fiber:
        conj = pointed_cover_isomorphic(first, second.pointed_at(y))
        if conj is not None:
            return conj
    return None


def transition_hom(alpha, upper, lower, check=True):
    """The homomorphism ``p_α: Gal(upper) -> Gal(lower)`` with ``p_α(φ) ∘ α = α ∘ φ``.

    Parameters
    ----------
    alpha : BlockCode
        Map ``upper.total -> lower.total`` with ``ϖ_lower ∘ α = ϖ_upper``.
    check : bool
        Also verify ``ψ∘α = α∘φ`` exactly as codes.

    Returns
    -------
    list
        ``p[φ]`` is the index of the image of ``φ``.

    Raises
    ------
    TowerMismatchError
    """
    try:
        tower = compose(lower.code, alpha)
    except DomainMismatchError as exc:
        raise TowerMismatchError(str(exc)) from exc
    if not codes_equal(tower, upper.code):
        raise TowerMismatchError("ϖ_lower ∘ α differs from ϖ_upper")
    y = upper.base_fiber_point
    ay = alpha(y)
    j = lower.fiber.index(ay)
    p = []
    for phi in upper.elements:
        target = lower.fiber.index(alpha(phi(y)))
        psi = next(g for g in range(lower.group.order) if lower.action[g][j] == target)
        if check and not codes_equal(compose(lower.elements[psi].code, alpha), compose(alpha, phi.code)):
            raise InternalError("transition element fails ψ∘α = α∘φ")
        p.append(psi)
    if not upper.group.is_homomorphism(lower.group, p):
        raise InternalError("transition map is not a homomorphism")
    if set(p) != set(range(lower.group.order)):
        raise InternalError("transition map is not surjective")
    return p


def kernel(p, group):
    return frozenset(g for g in range(len(p)) if p[g] == group.identity)


def sigma1_tower(d_max, alternate_naming=True):
    """Finite truncation of the tower of cycle covers of the one-point shift.

    For each ``d ≤ d_max`` the ``d``-cycle cover is certified with group
    ``Z/d``; pointed maps ``C_m -> C_n`` are searched for every pair and
    compared with divisibility; transition homomorphisms are checked for
    surjectivity and functoriality along every chain ``n | m | k``.
    """
    from .fixtures import sigma1_cycle

    covers = {d: sigma1_cycle(d).cover for d in range(1, d_max + 1)}
    nodes = []
    for d, c in covers.items():
        iso = group_isomorphism(c.group, cyclic_group(d)) is not None
        nodes.append({"d": d, "degree": c.degree, "group_order": c.group.order, "cyclic": iso})
    maps = {}
    edges = []
    mismatches = []
    for m in range(1, d_max + 1):
        for n in range(1, d_max + 1):
            f = pointed_lift(covers[m], covers[n])
            if (f is not None) != (m % n == 0):
                mismatches.append([m, n])
            if f is not None:
                maps[(m, n)] = f
                if m != n:
                    edges.append([m, n])
    homs = {}
    surjective = True
    for (m, n), f in maps.items():
        p = transition_hom(f, covers[m], covers[n], check=False)
        homs[(m, n)] = p
        surjective &= set(p) == set(range(n))
    functorial = True
    for (m, n), f in maps.items():
        for (k, mm), g in maps.items():
            if mm != m:
                continue
            comp = [homs[(m, n)][homs[(k, m)][x]] for x in range(k)]
            if comp != homs[(k, n)]:
                functorial = False
    unique = True
    if alternate_naming:
        from .fixtures import sigma1_cycle as build

        for d in covers:
            other = build(d, naming="r").cover
            if pointed_cover_isomorphic(covers[d], other) is None:
                unique = False
    return {
        "d_max": d_max,
        "nodes": nodes,
        "maps": sorted(edges),
        "divisibility_match": not mismatches,
        "mismatches": mismatches,
        "transition_surjective": surjective,
        "functorial": functorial,
        "unique_up_to_pointed_isomorphism": unique,
    }


def join(first, second):
    """The fiber-product cover through the designated points, certified Galois.

    Returns the joined cover and the two projections, as pointed maps to each factor.
    """
    fp = fiber_product(first.code, second.code, (first.base_fiber_point, second.base_fiber_point))
    cover = certify_galois(fp.to_base)
    cover = cover.pointed_at(fp.base_point)
    return cover, fp.proj1, fp.proj2
