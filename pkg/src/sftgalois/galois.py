"""Deck groups and Galois certification.

Deck transformations of an unramified map ``ϖ: Y -> X`` are realized as
irreducible components of the self fiber product ``Y ×_X Y`` whose two
projections are both one-to-one.  Lifts are unique, so such a component is
the graph of exactly one deck transformation, and every deck transformation
arises this way.
"""

from dataclasses import dataclass
from functools import cached_property
from math import lcm

from .codes import (
    BlockCode,
    compose,
    factor_through,
    induced_on_periodic,
    label_product,
    minimize_window,
    periodic_fiber,
)
from .errors import BasePairNotFoundError, CrossEdgeAnomalyError, InternalError, NotGaloisError
from .graph import component_subgraph, essentialize, scc_decompose
from .groups import FiniteGroupTable
from .shifts import EdgeShift, PeriodicPoint, smallest_orbit


class PairProduct:
    """The essential part of the pair graph of two 1-block presentations over a common base.

    Raises
    ------
    CrossEdgeAnomalyError
        If the SCC decomposition has cross edges, which cannot happen when
        both maps are unramified.
    """

    def __init__(self, c1, c2):
        if c1.codomain != c2.codomain:
            raise InternalError("fiber product over different bases")
        self.c1, self.c2 = c1, c2
        self.ob1, self.ob2 = c1.one_block, c2.one_block
        raw = label_product(self.ob1.graph, self.ob1.labels, self.ob2.graph, self.ob2.labels)
        self.graph = essentialize(raw)
        self.decomposition = scc_decompose(self.graph)
        if self.decomposition.cross_edges:
            raise CrossEdgeAnomalyError(
                f"fiber product has {len(self.decomposition.cross_edges)} cross edge(s)"
            )

    @property
    def n_components(self):
        return len(self.decomposition.components)

    def component_graph(self, j):
        return component_subgraph(self.graph, self.decomposition, j)

    def component_of_recoded(self, p1, p2):
        """Component holding the pair of recoded points, or ``None`` if the pair is not in the product."""
        n = lcm(p1.period, p2.period)
        first = None
        for i in range(n):
            e = (p1.at(i), p2.at(i))
            if not self.graph.has_edge(e):
                return None
            if first is None:
                first = e
        return self.decomposition.component_of[self.graph.src(first)]

    def component_of(self, y1, y2):
        return self.component_of_recoded(self.ob1.lift(y1), self.ob2.lift(y2))

    def projection_codes(self, j):
        """Codes from component ``j`` to the two original domains."""
        w = EdgeShift(self.component_graph(j))
        r1 = {(e,): e[0] for e in w.alphabet}
        r2 = {(e,): e[1] for e in w.alphabet}
        p1 = BlockCode(w, self.ob1.recoded_domain, 0, 0, r1, validate=False)
        p2 = BlockCode(w, self.ob2.recoded_domain, 0, 0, r2, validate=False)
        if not self.c1.is_one_block:
            p1 = compose(self.ob1.from_recoded, p1)
        if not self.c2.is_one_block:
            p2 = compose(self.ob2.from_recoded, p2)
        return w, p1, p2

    def graph_map(self, j, reverse=False):
        """Code ``Y1 -> Y2`` (or back) whose graph is component ``j``, or ``None``."""
        g = self.component_graph(j)
        lab1 = {e.id: e.id[0] for e in g.edges}
        lab2 = {e.id: e.id[1] for e in g.edges}
        src, dst = (self.c1, self.c2) if not reverse else (self.c2, self.c1)
        if reverse:
            lab1, lab2 = lab2, lab1
        sob, dob = src.one_block, dst.one_block
        code = factor_through(g, lab1, lab2, sob.recoded_domain, dob.recoded_domain)
        if code is None:
            return None
        if not src.is_one_block:
            code = compose(code, sob.to_recoded)
        if not dst.is_one_block:
            code = compose(dob.from_recoded, code)
        return minimize_window(code)


@dataclass(frozen=True)
class DeckElement:
    """One deck transformation.

    Attributes
    ----------
    index : int
        Position in the group table; the identity is 0.
    component : int
        Component of the self fiber product that is the graph of this element.
    seed : tuple
        ``(y*, g(y*))`` for the designated fiber point ``y*``.
    code : BlockCode
        The element as a sliding block code ``Y -> Y``.
    """

    index: int
    name: str
    component: int
    seed: tuple
    code: BlockCode

    @property
    def radius(self):
        return max(self.code.memory, self.code.anticipation)

    def __call__(self, p):
        return induced_on_periodic(self.code, p)


@dataclass(frozen=True)
class DeckGroup:
    """Deck transformations of an unramified code with their action on a designated fiber.

    ``action[g][j]`` is the index in ``fiber`` of ``g(fiber[j])``; ``table``
    multiplies by composition.
    """

    code: BlockCode
    base_point: PeriodicPoint
    fiber: tuple
    elements: tuple
    table: FiniteGroupTable
    action: tuple
    component_degrees: tuple
    product: PairProduct

    @property
    def order(self):
        return len(self.elements)

    def apply(self, g, p):
        return induced_on_periodic(self.elements[g].code, p)

    def element_sending(self, y, target):
        """The deck element carrying ``y`` to ``target``, or ``None``."""
        for g in self.elements:
            if g(y) == target:
                return g.index
        return None

    def fiber_index(self, y):
        return self.fiber.index(y)


def deck_group(c):
    """Deck group of a certified unramified code (cached on the code)."""
    cached = c.__dict__.get("_deck")
    if cached is not None:
        return cached
    c.certificate()
    prod = PairProduct(c, c)
    ob = prod.ob1
    base = smallest_orbit(c.codomain).rep
    fiber = periodic_fiber(c, base)
    lifted = [ob.lift(y) for y in fiber]
    d = len(fiber)
    comp = [[prod.component_of_recoded(a, b) for b in lifted] for a in lifted]
    if any(v is None for row in comp for v in row):
        raise InternalError("fiber pair missing from the self fiber product")
    n_comp = prod.n_components
    if {comp[0][j] for j in range(d)} != set(range(n_comp)):
        raise InternalError("a component of the self fiber product does not project onto Y")
    degrees = []
    for k in range(n_comp):
        d1 = sum(1 for j in range(d) if comp[0][j] == k)
        partner = next(j for j in range(d) if comp[0][j] == k)
        d2 = sum(1 for i in range(d) if comp[i][partner] == k)
        degrees.append((d1, d2))
    deck_comps = [k for k in range(n_comp) if degrees[k] == (1, 1)]
    image0 = {k: next(j for j in range(d) if comp[0][j] == k) for k in deck_comps}
    deck_comps.sort(key=lambda k: image0[k])
    action = []
    for k in deck_comps:
        row = []
        for i in range(d):
            js = [j for j in range(d) if comp[i][j] == k]
            if len(js) != 1:
                raise InternalError("deck component is not the graph of a map on the fiber")
            row.append(js[0])
        action.append(tuple(row))
    pos = {row[0]: g for g, row in enumerate(action)}
    mul = [[pos[action[a][action[b][0]]] for b in range(len(action))] for a in range(len(action))]
    names = [f"g{i}" for i in range(len(action))]
    table = FiniteGroupTable(names, mul)
    elements = []
    for g, k in enumerate(deck_comps):
        code = prod.graph_map(k)
        if code is None:
            raise InternalError("deck component has no finite window")
        el = DeckElement(g, names[g], k, (fiber[0], fiber[action[g][0]]), code)
        for i in range(d):
            if el(fiber[i]) != fiber[action[g][i]]:
                raise InternalError("extracted deck code disagrees with the fiber action")
        elements.append(el)
    result = DeckGroup(
        c, base, tuple(fiber), tuple(elements), table, tuple(action), tuple(degrees), prod
    )
    c.__dict__["_deck"] = result
    return result


@dataclass(frozen=True)
class GaloisCover:
    """A Galois factor map ``ϖ: Y -> X`` with its deck group.

    ``base_index`` selects the designated point ``y0`` of the fiber over the
    base point, which makes the cover pointed.
    """

    code: BlockCode
    deck: DeckGroup
    base_index: int = 0

    @property
    def total(self):
        return self.code.domain

    @property
    def base(self):
        return self.code.codomain

    @property
    def degree(self):
        return self.code.certificate().degree

    @property
    def group(self):
        return self.deck.table

    @property
    def elements(self):
        return self.deck.elements

    @property
    def fiber(self):
        return self.deck.fiber

    @property
    def base_point(self):
        return self.deck.base_point

    @property
    def action(self):
        return self.deck.action

    @property
    def base_fiber_point(self):
        return self.deck.fiber[self.base_index]

    def pointed_at(self, y):
        return GaloisCover(self.code, self.deck, self.deck.fiber.index(y))

    def apply(self, g, p):
        return self.deck.apply(g, p)

    def element_sending(self, y, target):
        return self.deck.element_sending(y, target)

    @cached_property
    def certificate(self):
        return self.code.certificate()


def certify_galois(c):
    """Certify that ``c`` is a Galois factor map.

    Raises
    ------
    NotGaloisError
        When the deck group is smaller than the degree.
    """
    deg = c.certificate().degree
    dg = deck_group(c)
    if dg.order != deg:
        raise NotGaloisError(dg.order, deg)
    if sorted(row[0] for row in dg.action) != list(range(len(dg.fiber))):
        raise InternalError("deck group of full order does not act transitively")
    return GaloisCover(c, dg)


def is_galois(c):
    return deck_group(c).order == c.certificate().degree


@dataclass(frozen=True)
class FiberProduct:
    """Irreducible component of ``Y1 ×_X Y2`` containing a base pair."""

    shift: EdgeShift
    proj1: BlockCode
    proj2: BlockCode
    to_base: BlockCode
    base_point: PeriodicPoint
    component: int
    product: PairProduct


def fiber_product(c1, c2, base_pair):
    """The component of the fiber product of ``c1`` and ``c2`` through ``base_pair``.

    Raises
    ------
    BasePairNotFoundError
        If the two base points do not have the same image.
    CrossEdgeAnomalyError
    """
    y1, y2 = base_pair
    if c1(y1) != c2(y2):
        raise BasePairNotFoundError("the base pair points have different images")
    prod = PairProduct(c1, c2)
    k = prod.component_of(y1, y2)
    if k is None:
        raise BasePairNotFoundError("base pair is not in the fiber product")
    w, p1, p2 = prod.projection_codes(k)
    lab = prod.ob1.labels
    to_base = BlockCode(w, c1.codomain, 0, 0, {(e,): lab[e[0]] for e in w.alphabet}, validate=False)
    a, b = prod.ob1.lift(y1), prod.ob2.lift(y2)
    n = lcm(a.period, b.period)
    point = PeriodicPoint.make([(a.at(i), b.at(i)) for i in range(n)], 0)
    return FiberProduct(w, p1, p2, to_base, point, k, prod)
