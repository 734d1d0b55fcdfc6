"""Sliding block codes between edge shifts.

A :class:`BlockCode` is given by a local rule on windows of length
``memory + anticipation + 1``.  All structural tests (surjectivity, closing,
fibers, degree) run on the 1-block presentation obtained by recoding the
domain to a higher block shift, where the code is a graph homomorphism.
"""

from dataclasses import dataclass, field
from functools import cached_property
from math import inf

import numpy as np

from .budget import check_budget
from .errors import (
    DegenerateInputError,
    DomainMismatchError,
    InfiniteFiberError,
    InternalError,
    InvalidCodeError,
    NotClosingError,
    NotConstantToOneError,
    NotOntoError,
)
from .graph import DirectedMultigraph, GraphHom, essentialize, longest_path_lengths, scc_decompose
from .ids import id_key, sorted_ids
from .shifts import PeriodicPoint, higher_block, periodic_orbits

#: Cap on the number of closed codomain walks scanned as fiber-count evidence.
EVIDENCE_WALKS = 3000


class BlockCode:
    """Sliding block code ``Φ_∞`` with ``Φ_∞(x)_i = rule(x_{[i-m, i+a]})``.

    Parameters
    ----------
    domain, codomain : EdgeShift
    memory, anticipation : int
    rule : dict
        Maps every word of length ``memory + anticipation + 1`` of the domain
        to an edge id of the codomain.
    validate : bool
        Check totality, the codomain alphabet and path-consistency.
    """

    def __init__(self, domain, codomain, memory, anticipation, rule, validate=True, name=None):
        if memory < 0 or anticipation < 0:
            raise InvalidCodeError("memory and anticipation must be nonnegative")
        self.domain = domain
        self.codomain = codomain
        self.memory = memory
        self.anticipation = anticipation
        self.rule = dict(rule)
        self.name = name
        if validate:
            self.validate()

    @property
    def window(self):
        return self.memory + self.anticipation + 1

    @property
    def is_one_block(self):
        return self.memory == 0 and self.anticipation == 0

    def validate(self):
        n = self.window
        words = set(self.domain.iter_words(n))
        missing = sorted(words - set(self.rule), key=lambda w: [id_key(e) for e in w])
        if missing:
            shown = ", ".join(str(list(w)) for w in missing[:10])
            raise InvalidCodeError(f"rule is missing {len(missing)} word(s): {shown}")
        extra = set(self.rule) - words
        if extra:
            raise InvalidCodeError(f"rule has {len(extra)} key(s) that are not words of the domain")
        cg = self.codomain.graph
        for w, out in self.rule.items():
            if not cg.has_edge(out):
                raise InvalidCodeError(f"rule maps {list(w)} to {out!r}, not a codomain edge")
        for w in self.domain.iter_words(n + 1):
            a, b = self.rule[w[:-1]], self.rule[w[1:]]
            if cg.dst(a) != cg.src(b):
                raise InvalidCodeError(f"outputs for {list(w)} are not composable in the codomain")
        return self

    def image_word(self, w):
        n = self.window
        return tuple(self.rule[tuple(w[i : i + n])] for i in range(len(w) - n + 1))

    def __call__(self, p):
        return induced_on_periodic(self, p)

    @cached_property
    def one_block(self):
        return one_block_recode(self)

    def certificate(self):
        """Cached :func:`certify_unramified` result."""
        cert = self.__dict__.get("_certificate")
        if cert is None:
            cert = certify_unramified(self)
            self.__dict__["_certificate"] = cert
        return cert

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"BlockCode({label}memory={self.memory}, anticipation={self.anticipation})"


def identity_code(x):
    return BlockCode(x, x, 0, 0, {(e,): e for e in x.alphabet}, validate=False, name="id")


def one_block_code(domain, codomain, mapping, name=None):
    """1-block code from an edge-to-edge mapping."""
    return BlockCode(domain, codomain, 0, 0, {(e,): f for e, f in mapping.items()}, name=name)


def induced_on_periodic(c, p):
    """``Φ_∞(p)`` for a periodic point ``p`` of the domain."""
    c.domain.check_cycle(p.cycle)
    m, a = c.memory, c.anticipation
    out = [c.rule[p.window(i - m, i + a + 1)] for i in range(p.period)]
    return PeriodicPoint.make(out, 0)


def compose(f, g):
    """The code ``f ∘ g`` (apply ``g`` first)."""
    if g.codomain != f.domain:
        raise DomainMismatchError("codomain of the inner code is not the domain of the outer code")
    n = g.window + f.window - 1
    rule = {w: f.rule[g.image_word(w)] for w in g.domain.iter_words(n)}
    return BlockCode(
        g.domain, f.codomain, g.memory + f.memory, g.anticipation + f.anticipation, rule, validate=False
    )


def codes_equal(f, g):
    """Exact equality of the induced maps, comparing both rules on a common window."""
    if f.domain != g.domain or f.codomain != g.codomain:
        return False
    m = max(f.memory, g.memory)
    a = max(f.anticipation, g.anticipation)
    for w in f.domain.iter_words(m + a + 1):
        fo = f.rule[w[m - f.memory : m - f.memory + f.window]]
        go = g.rule[w[m - g.memory : m - g.memory + g.window]]
        if fo != go:
            return False
    return True


def minimize_window(c):
    """Drop memory and anticipation that the rule does not depend on."""
    m, a, rule = c.memory, c.anticipation, c.rule
    while m > 0:
        trimmed = _trim(rule, lambda w: w[1:])
        if trimmed is None:
            break
        m, rule = m - 1, trimmed
    while a > 0:
        trimmed = _trim(rule, lambda w: w[:-1])
        if trimmed is None:
            break
        a, rule = a - 1, trimmed
    if (m, a) == (c.memory, c.anticipation):
        return c
    return BlockCode(c.domain, c.codomain, m, a, rule, validate=False, name=c.name)


def _trim(rule, cut):
    out = {}
    for w, v in rule.items():
        k = cut(w)
        if out.setdefault(k, v) != v:
            return None
    return out


# -- 1-block presentation ----------------------------------------------------


@dataclass(frozen=True)
class OneBlockPresentation:
    """A code recoded so that it is induced by a graph homomorphism.

    ``to_recoded`` and ``from_recoded`` are the conjugacies between the
    original domain and ``recoded_domain``; ``labels`` is the edge map of ``hom``.
    """

    recoded_domain: object
    recoded_codomain: object
    hom: GraphHom
    to_recoded: BlockCode
    from_recoded: BlockCode
    memory: int

    @property
    def labels(self):
        return self.hom.emap

    @property
    def graph(self):
        return self.recoded_domain.graph

    @cached_property
    def code(self):
        return BlockCode(
            self.recoded_domain,
            self.recoded_codomain,
            0,
            0,
            {(e,): f for e, f in self.hom.emap.items()},
            validate=False,
        )

    def lift(self, p):
        """Carry a point of the original domain to the recoded domain."""
        return induced_on_periodic(self.to_recoded, p)

    def lower(self, p):
        return induced_on_periodic(self.from_recoded, p)


def one_block_recode(c):
    """Recode ``c`` as a graph homomorphism on a higher block presentation."""
    if c.is_one_block:
        hb = higher_block(c.domain, 1)
        emap = {e: c.rule[(e,)] for e in c.domain.alphabet}
    else:
        hb = higher_block(c.domain, c.window, memory=c.memory)
        emap = {w: c.rule[w] for w in hb.shift.alphabet}
    g = hb.shift.graph
    cg = c.codomain.graph
    vmap = {}
    for v in g.vertices:
        vmap[v] = cg.src(emap[g.out_edges(v)[0].id])
    hom = GraphHom(g, cg, vmap, emap)
    try:
        hom.validate()
    except ValueError as exc:
        raise InternalError(f"recoded code is not a graph homomorphism: {exc}") from exc
    return OneBlockPresentation(hb.shift, c.codomain, hom, hb.forward, hb.backward, c.memory)


# -- labeled pair graphs -------------------------------------------------------


def label_product(g1, lab1, g2, lab2):
    """Pairs of edges with equal labels, as a graph on vertex pairs."""
    by_label = {}
    for e in g2.edges:
        by_label.setdefault(lab2[e.id], []).append(e)
    edges = []
    verts = set()
    check_budget("pair graph edges", sum(len(by_label.get(lab1[d.id], ())) for d in g1.edges))
    for d1 in g1.edges:
        for d2 in by_label.get(lab1[d1.id], ()):
            s, t = (d1.src, d2.src), (d1.dst, d2.dst)
            edges.append(((d1.id, d2.id), s, t))
            verts.add(s)
            verts.add(t)
    return DirectedMultigraph(verts, edges)


def image_is_onto(c):
    """Whether every word of the codomain is the image of a domain word.

    Runs the subset construction on the labeled 1-block presentation; a
    reachable empty subset is a codomain word without preimage.
    """
    ob = c.one_block
    g, lab = ob.graph, ob.labels
    cg = c.codomain.graph
    over = {v: set() for v in cg.vertices}
    for v, w in ob.hom.vmap.items():
        over[w].add(v)
    start = [(frozenset(s), v) for v, s in over.items()]
    if any(not s for s, _ in start):
        return False
    seen = set(start)
    stack = list(start)
    while stack:
        s, v = stack.pop()
        for f in cg.out_edges(v):
            t = frozenset(d.dst for u in s for d in g.out_edges(u) if lab[d.id] == f.id)
            if not t:
                return False
            state = (t, f.dst)
            if state not in seen:
                seen.add(state)
                stack.append(state)
    return True


def _closing_radius(g, lab):
    pg = label_product(g, lab, g, lab)
    far = longest_path_lengths(pg, forward=True)
    best = 0
    for v in g.vertices:
        if not pg.has_vertex((v, v)):
            continue
        for e in pg.out_edges((v, v)):
            d1, d2 = e.id
            if d1 != d2:
                best = max(best, 1 + far[e.dst])
    return None if best == inf else best


def _closing_witness(g, lab):
    """A pair path leaving the diagonal and reaching a cycle of the pair graph."""
    pg = label_product(g, lab, g, lab)
    dec = scc_decompose(pg)
    cyclic = {v for i, comp in enumerate(dec.components) if dec.internal_edges[i] for v in comp}
    for v in g.vertices:
        if not pg.has_vertex((v, v)):
            continue
        for e in pg.out_edges((v, v)):
            if e.id[0] == e.id[1]:
                continue
            prev = {e.dst: None}
            queue = [e.dst]
            while queue:
                u = queue.pop(0)
                if u in cyclic:
                    path = []
                    while prev[u] is not None:
                        path.append(prev[u].id)
                        u = prev[u].src
                    return [e.id] + path[::-1]
                for f in pg.out_edges(u):
                    if f.dst not in prev:
                        prev[f.dst] = f
                        queue.append(f.dst)
    return None


def right_closing(c):
    """Least right-closing radius of the 1-block presentation, or ``None``."""
    ob = c.one_block
    return _closing_radius(ob.graph, ob.labels)


def left_closing(c):
    """Least left-closing radius of the 1-block presentation, or ``None``."""
    ob = c.one_block
    return _closing_radius(ob.graph.reversed(), ob.labels)


def closing_witness(c, side):
    ob = c.one_block
    g = ob.graph if side == "right" else ob.graph.reversed()
    return _closing_witness(g, ob.labels)


# -- fibers ------------------------------------------------------------------------


def periodic_fiber_recoded(ob, x):
    """Fiber over ``x`` as points of the recoded domain, sorted."""
    g, lab = ob.graph, ob.labels
    by_label = {}
    for e in g.edges:
        by_label.setdefault(lab[e.id], []).append(e)
    m = x.period
    edges = []
    for i in range(m):
        for d in by_label.get(x.at(i), ()):
            edges.append(((d.id, i), (d.src, i), (d.dst, (i + 1) % m)))
    verts = {e[1] for e in edges} | {e[2] for e in edges}
    layered = essentialize(DirectedMultigraph(verts, edges))
    for v in layered.vertices:
        if len(layered.out_edges(v)) > 1:
            raise InfiniteFiberError(f"the fiber over {x} is infinite")
    points = []
    for v in layered.vertices:
        if v[1] != 0:
            continue
        word = []
        u = v
        while True:
            e = layered.out_edges(u)[0]
            word.append(e.id[0])
            u = e.dst
            if u == v:
                break
        points.append(PeriodicPoint.make(word, 0))
    return tuple(sorted(points, key=PeriodicPoint.sort_key))


def periodic_fiber(c, x):
    """All preimages of the periodic point ``x``, sorted.

    Raises
    ------
    InfiniteFiberError
        If ``x`` has infinitely many preimages.
    """
    c.codomain.check_cycle(x.cycle)
    ob = c.one_block
    pts = periodic_fiber_recoded(ob, x)
    if c.is_one_block:
        return pts
    return tuple(sorted((ob.lower(p) for p in pts), key=PeriodicPoint.sort_key))


# -- unramified certification ----------------------------------------------------


@dataclass(frozen=True)
class UnramifiedCertificate:
    """Evidence that a code is constant-to-one.

    Attributes
    ----------
    degree : int
    right_radius, left_radius : int
        Closing radii of the 1-block presentation.
    separation_radius : int
        Distinct preimages of a point differ somewhere in ``[-N, N]``.
    evidence : tuple
        ``(orbit, fiber size)`` for every codomain orbit up to ``period_bound``.
    period_bound : int
        Largest codomain period scanned.
    pair_vertices : int
        Vertex count of the 1-block pair graph.
    """

    degree: int
    right_radius: int
    left_radius: int
    separation_radius: int
    evidence: tuple = field(repr=False)
    period_bound: int
    pair_vertices: int


def _evidence_bound(x, cap, walks):
    a = x.graph.adjacency_matrix().astype(object)
    power = np.identity(a.shape[0], dtype=object)
    total = 0
    k = 0
    while k < cap:
        power = power.dot(a)
        total += int(np.trace(power))
        if total > walks and k >= 1:
            break
        k += 1
    return max(k, 1)


def certify_unramified(c, period_bound=None):
    """Certify that ``c`` is a constant-to-one factor map and find its degree.

    The code must be onto and bi-closing; fiber sizes are then compared over
    every codomain orbit up to the period bound.

    Parameters
    ----------
    period_bound : int, optional
        Largest codomain period to scan. Defaults to the pair-graph vertex
        count, capped so that at most :data:`EVIDENCE_WALKS` closed walks are scanned.

    Raises
    ------
    NotOntoError, NotClosingError, NotConstantToOneError, DegenerateInputError
    """
    if not c.domain.irreducible or not c.codomain.irreducible:
        raise DegenerateInputError("certification needs irreducible domain and codomain")
    if not image_is_onto(c):
        raise NotOntoError("the code is not onto")
    k1 = right_closing(c)
    if k1 is None:
        raise NotClosingError("right", closing_witness(c, "right"))
    k2 = left_closing(c)
    if k2 is None:
        raise NotClosingError("left", closing_witness(c, "left"))
    ob = c.one_block
    pairs = label_product(ob.graph, ob.labels, ob.graph, ob.labels)
    p_full = len(pairs.vertices)
    if period_bound is None:
        period_bound = _evidence_bound(c.codomain, p_full, EVIDENCE_WALKS)
    evidence = []
    first = None
    for k in range(1, period_bound + 1):
        for orbit in periodic_orbits(c.codomain, k):
            n = len(periodic_fiber_recoded(ob, orbit.rep))
            if first is None:
                first = (orbit, n)
            elif n != first[1]:
                raise NotConstantToOneError(first[0], first[1], orbit, n)
            evidence.append((orbit, n))
    if first is None:
        raise InternalError("codomain has no periodic orbit within the bound")
    sep = max(k1, k2) + max(c.memory, c.anticipation)
    return UnramifiedCertificate(first[1], k1, k2, sep, tuple(evidence), period_bound, p_full)


# -- factoring one labeling through another ----------------------------------------


def factor_radius(g, lab1, lab2):
    """Least ``r`` such that ``lab1`` on a path of length ``2r+1`` fixes ``lab2`` at its center.

    Returns ``None`` when no finite radius works.
    """
    pg = label_product(g, lab1, g, lab1)
    back = longest_path_lengths(pg, forward=False)
    fwd = longest_path_lengths(pg, forward=True)
    r = 0
    for e in pg.edges:
        d1, d2 = e.id
        if lab2[d1] != lab2[d2]:
            r = max(r, 1 + min(back[e.src], fwd[e.dst]))
    return None if r == inf else r


def factor_rule(g, lab1, lab2, r):
    """Local rule reading ``lab1`` on windows of length ``2r+1``."""
    rule = {}
    n = 2 * r + 1

    def walk(v, word):
        if len(word) == n:
            key = tuple(lab1[e] for e in word)
            out = lab2[word[r]]
            if rule.setdefault(key, out) != out:
                raise InternalError("factor rule is ambiguous")
            return
        for e in g.out_edges(v):
            word.append(e.id)
            walk(e.dst, word)
            word.pop()

    for v in g.vertices:
        walk(v, [])
    return rule


def factor_through(g, lab1, lab2, domain, codomain):
    """The code ``domain -> codomain`` sending the ``lab1`` reading of a path to its ``lab2`` reading.

    ``g`` is a graph whose edge shift maps onto ``domain`` via ``lab1``.
    Returns ``None`` if ``lab2`` is not a function of the ``lab1`` reading.
    """
    r = factor_radius(g, lab1, lab2)
    if r is None:
        return None
    rule = factor_rule(g, lab1, lab2, r)
    code = BlockCode(domain, codomain, r, r, rule, validate=False)
    return minimize_window(code)


