"""The Galois correspondence between subgroups and intermediate factors.

Given a Galois cover ``ϖ: Y -> X`` with group ``G``:

* :func:`quotient_cover` builds, for ``H ≤ G``, the intermediate factor
  ``Y -> Y/H -> X``;
* :func:`subgroup_of_intermediate` recovers ``H(Z, α, β) = {φ : α∘φ = α}``;
* :func:`intermediate_conjugate` decides whether two intermediate factors are
  conjugate over ``Y`` and ``X``;
* :func:`verify_fundamental_theorem` checks that these maps are mutually
  inverse over the whole subgroup lattice.
"""

from dataclasses import dataclass, field

from .codes import BlockCode, codes_equal, compose, factor_through, identity_code
from .errors import DomainMismatchError, FreeActionNotAchievedError, InternalError, TowerMismatchError
from .galois import certify_galois, deck_group
from .graph import DirectedMultigraph
from .groups import group_isomorphism, subgroup_table
from .ids import id_key
from .shifts import EdgeShift, higher_block


@dataclass(frozen=True)
class IntermediateFactor:
    """A factorization ``ϖ = β ∘ α`` through ``Z``.

    ``subgroup`` is filled in when known; ``alpha_cover`` is the certified
    Galois cover ``α: Y -> Z`` for quotient constructions.
    """

    mid: EdgeShift
    alpha: BlockCode
    beta: BlockCode
    subgroup: frozenset = None
    alpha_cover: object = field(default=None, repr=False)
    deck_map: dict = field(default=None, repr=False)
    label: str = None


@dataclass(frozen=True)
class Conjugacy:
    forward: BlockCode
    inverse: BlockCode


def _check_subgroup(gc, h):
    h = frozenset(h)
    if not gc.group.is_subgroup(h):
        raise ValueError(f"{sorted(h)} is not a subgroup of the deck group")
    return sorted(h)


def _tuple_presentation(gc, hs, s_inner):
    """Edges are the H-tuples of windows ``(h(y)_{[i-s, i+s]})_{h ∈ H}``."""
    codes = [gc.elements[h].code for h in hs]
    r = max(max(c.memory, c.anticipation) for c in codes)
    s = s_inner + r
    y = gc.total
    g = y.graph
    width = 2 * s_inner + 1
    by_word = {}
    for w in y.iter_words(2 * s + 1):
        t = []
        for c in codes:
            u = []
            for k in range(width):
                at = r + k
                u.append(c.rule[w[at - c.memory : at + c.anticipation + 1]])
            t.append(tuple(u))
        by_word[w] = tuple(t)

    def src(t):
        return tuple((g.src(u[0]), u[:-1]) for u in t)

    def dst(t):
        return tuple((g.dst(u[-1]), u[1:]) for u in t)

    return by_word, src, dst, s


def quotient_cover(gc, h, max_steps=None):
    """The intermediate factor ``Y -> Y/H -> X`` for a subgroup ``H`` of the deck group.

    ``Y`` is recoded so that each point is replaced by the tuple of its
    ``H``-translates, read through centered windows of half-width ``s``.
    ``H`` then acts by permuting tuple coordinates, which is a graph
    automorphism; ``s`` grows until that action is free on edges and
    vertices, and the quotient graph presents ``Y/H``.

    Raises
    ------
    FreeActionNotAchievedError
        If the action is still not free at the cap ``2(2N+1)+L`` on the window length.
    """
    hs = _check_subgroup(gc, h)
    grp = gc.group
    varpi = gc.code
    n0 = max(varpi.memory, varpi.anticipation)
    codes = [gc.elements[x].code for x in hs]
    r = max(max(c.memory, c.anticipation) for c in codes)
    n = max(n0, r)
    longest = max(c.window for c in codes)
    cap = (2 * (2 * n + 1) + longest - 1) // 2
    if max_steps is not None:
        cap = min(cap, n + max_steps)
    pos = {x: i for i, x in enumerate(hs)}
    # coordinate permutation for acting by hp: (hp . t)_h = t_{h∘hp}
    perms = {hp: [pos[grp.mul[x][hp]] for x in hs] for hp in hs}
    ident = pos[grp.identity]
    for s_inner in range(n, cap + 1):
        by_word, src, dst, s = _tuple_presentation(gc, hs, s_inner)
        edges = set(by_word.values())
        verts = {src(t) for t in edges} | {dst(t) for t in edges}

        def act(hp, t):
            p = perms[hp]
            return tuple(t[p[i]] for i in range(len(t)))

        free = all(
            act(hp, t) != t for hp in hs if hp != grp.identity for t in list(edges) + list(verts)
        )
        if free:
            break
    else:
        raise FreeActionNotAchievedError(f"H-action not free up to half-width {cap}")

    def orbit_rep(t):
        return min((act(hp, t) for hp in hs), key=id_key)

    edge_reps = sorted({orbit_rep(t) for t in edges}, key=id_key)
    vert_reps = sorted({orbit_rep(v) for v in verts}, key=id_key)
    ename = {t: f"z{i}" for i, t in enumerate(edge_reps)}
    vname = {v: f"u{i}" for i, v in enumerate(vert_reps)}
    zg = DirectedMultigraph(
        vname.values(), [(ename[t], vname[orbit_rep(src(t))], vname[orbit_rep(dst(t))]) for t in edge_reps]
    )
    z = EdgeShift(zg, name=f"Y/H{len(hs)}")
    edge_of = {}
    for t in edges:
        edge_of[t] = ename[orbit_rep(t)]
    q_rule = {w: edge_of[t] for w, t in by_word.items()}
    q = BlockCode(gc.total, z, s, s, q_rule, name="q_H")
    b_rule = {}
    for t in edge_reps:
        u = t[ident]
        b_rule[(ename[t],)] = varpi.rule[u[s_inner - varpi.memory : s_inner + varpi.anticipation + 1]]
    beta = BlockCode(z, gc.base, 0, 0, b_rule, name="beta")
    cover = certify_galois(q)
    if cover.degree != len(hs):
        raise InternalError(f"quotient map has degree {cover.degree}, expected {len(hs)}")
    y0 = cover.fiber[0]
    deck_map = {}
    for x in hs:
        target = gc.apply(x, y0)
        j = cover.fiber.index(target)
        k = next(g for g in range(cover.group.order) if cover.action[g][0] == j)
        deck_map[k] = x
    sub, elems = subgroup_table(grp, hs)
    f = [elems.index(deck_map[k]) for k in range(cover.group.order)]
    if not cover.group.is_homomorphism(sub, f):
        raise InternalError("deck group of the quotient map does not match H")
    return IntermediateFactor(z, q, beta, frozenset(hs), cover, deck_map, label=_subgroup_label(gc, hs))


def _subgroup_label(gc, hs):
    return "{" + ",".join(gc.group.names[x] for x in sorted(hs)) + "}"


def subgroup_of_intermediate(gc, alpha, beta):
    """The subgroup ``{φ ∈ G : α∘φ = α}`` for an intermediate factor ``(Z, α, β)``.

    Raises
    ------
    TowerMismatchError
        If ``β ∘ α ≠ ϖ``.
    """
    try:
        composite = compose(beta, alpha)
    except DomainMismatchError as exc:
        raise TowerMismatchError(str(exc)) from exc
    if not codes_equal(composite, gc.code):
        raise TowerMismatchError("β ∘ α differs from the cover map")
    alpha.certificate()
    out = set()
    for g in gc.elements:
        exact = codes_equal(compose(alpha, g.code), alpha)
        on_fiber = all(alpha(g(y)) == alpha(y) for y in gc.fiber)
        if exact != on_fiber:
            raise InternalError("fiber test and code test disagree on α∘φ = α")
        if exact:
            out.add(g.index)
    if not gc.group.is_subgroup(out):
        raise InternalError("stabilizer of α is not a subgroup")
    return frozenset(out)


def extract_factor(a1, a2):
    """The code ``f: Z1 -> Z2`` with ``f ∘ a1 = a2``, or ``None`` if none exists."""
    if a1.domain != a2.domain:
        raise DomainMismatchError("the two maps have different domains")
    m = max(a1.memory, a2.memory)
    a = max(a1.anticipation, a2.anticipation)
    hb = higher_block(a1.domain, m + a + 1, memory=m)
    g = hb.shift.graph

    def reader(c):
        lo = m - c.memory
        if m + a == 0:
            return {e.id: c.rule[(e.id,)] for e in g.edges}
        return {e.id: c.rule[e.id[lo : lo + c.window]] for e in g.edges}

    return factor_through(g, reader(a1), reader(a2), a1.codomain, a2.codomain)


def intermediate_conjugate(gc, first, second):
    """A conjugacy ``f: Z1 -> Z2`` with ``f∘α1 = α2`` and ``β2∘f = β1``, or ``None``."""
    f = extract_factor(first.alpha, second.alpha)
    if f is None:
        return None
    g = extract_factor(second.alpha, first.alpha)
    if g is None:
        return None
    ok = (
        codes_equal(compose(second.beta, f), first.beta)
        and codes_equal(compose(g, f), identity_code(first.mid))
        and codes_equal(compose(f, g), identity_code(second.mid))
    )
    if not ok:
        raise InternalError("mutual factor maps are not inverse conjugacies over X")
    return Conjugacy(f, g)


def factor_exists(first, second):
    """Whether some ``f: Z1 -> Z2`` satisfies ``f∘α1 = α2``."""
    return extract_factor(first.alpha, second.alpha) is not None


def verify_fundamental_theorem(gc, intermediates=(), check_order=True):
    """Check the correspondence over the full subgroup lattice.

    For every subgroup ``H`` the quotient factor must give back ``H``; for
    every supplied intermediate factor the quotient by its subgroup must be
    conjugate to it; and (``check_order``) a factor map ``Y/H1 -> Y/H2``
    must exist exactly when ``H1 ⊆ H2``.

    Returns
    -------
    dict
        Report with lattice nodes, covering relations, supplied factors and
        a list of counterexamples (empty on success).
    """
    grp = gc.group
    subs = grp.subgroups()
    quotients = []
    nodes = []
    counter = []
    for i, h in enumerate(subs):
        q = quotient_cover(gc, h)
        quotients.append(q)
        back = subgroup_of_intermediate(gc, q.alpha, q.beta)
        if back != h:
            counter.append({"kind": "subgroup->factor->subgroup", "subgroup": sorted(h), "got": sorted(back)})
        deg_beta = q.beta.certificate().degree
        if deg_beta != grp.order // len(h):
            counter.append({"kind": "index", "subgroup": sorted(h), "deg_beta": deg_beta})
        nodes.append(
            {
                "id": i,
                "elements": [grp.names[x] for x in sorted(h)],
                "order": len(h),
                "index": grp.order // len(h),
                "deg_alpha": q.alpha.certificate().degree,
                "deg_beta": deg_beta,
                "normal": grp.is_normal(h),
                "mid_edges": len(q.mid.graph.edges),
            }
        )
    covers = []
    for i, a in enumerate(subs):
        for j, b in enumerate(subs):
            if a < b and not any(a < c < b for c in subs):
                covers.append([i, j])
    order_checks = 0
    if check_order:
        for i, a in enumerate(subs):
            for j, b in enumerate(subs):
                if i == j:
                    continue
                exists = factor_exists(quotients[i], quotients[j])
                order_checks += 1
                if exists != (a <= b):
                    counter.append({"kind": "order-reversal", "pair": [i, j], "factor_exists": exists})
    supplied = []
    for mid in intermediates:
        h = subgroup_of_intermediate(gc, mid.alpha, mid.beta)
        i = subs.index(h)
        conj = intermediate_conjugate(gc, mid, quotients[i])
        if conj is None:
            counter.append({"kind": "factor->subgroup->factor", "factor": mid.label, "subgroup": sorted(h)})
        supplied.append({"label": mid.label, "subgroup": i, "conjugate_to_quotient": conj is not None})
    return {
        "group_order": grp.order,
        "nodes": nodes,
        "covers": covers,
        "supplied": supplied,
        "order_checks": order_checks,
        "conjugacy_notion": "intermediate: f∘α1 = α2 and β2∘f = β1 (no base points)",
        "counterexamples": counter,
        "lattice_markdown": lattice_markdown(nodes, covers),
    }


def lattice_markdown(nodes, covers):
    """Indented tree of the subgroup lattice, largest subgroup at the top."""
    above = {n["id"]: [] for n in nodes}
    for a, b in covers:
        above[b].append(a)
    top = max(nodes, key=lambda n: n["order"])["id"]
    by_id = {n["id"]: n for n in nodes}
    lines = []

    def show(i, depth, seen):
        n = by_id[i]
        tag = " (normal)" if n["normal"] else ""
        lines.append(
            f"{'  ' * depth}- H{i} = {{{', '.join(n['elements'])}}}: |H| = {n['order']}, "
            f"[G:H] = {n['index']}{tag}"
        )
        if i in seen:
            return
        seen.add(i)
        for j in sorted(above[i], key=lambda j: (-by_id[j]["order"], j)):
            show(j, depth + 1, seen)

    show(top, 0, set())
    return "\n".join(lines)


@dataclass(frozen=True)
class NormalityResult:
    is_normal: bool
    beta_degree: int
    beta_deck_order: int
    quotient: object = None
    isomorphism: list = None
    coset_of: dict = None


def normality_check(gc, h):
    """Compare normality of ``H`` with the Galois property of ``β: Y/H -> X``.

    For normal ``H`` returns the Galois cover ``β`` and an isomorphism
    ``Gal(Z/X) -> G/H`` found by table matching.
    """
    hs = frozenset(_check_subgroup(gc, h))
    grp = gc.group
    q = quotient_cover(gc, hs)
    deg = q.beta.certificate().degree
    order = deck_group(q.beta).order
    normal = grp.is_normal(hs)
    if not normal:
        if order == deg:
            raise InternalError("β is Galois over a non-normal subgroup")
        return NormalityResult(False, deg, order)
    cover = certify_galois(q.beta)
    quot, which = grp.quotient(hs)
    iso = group_isomorphism(cover.group, quot)
    if iso is None:
        raise InternalError("Gal(Z/X) is not isomorphic to G/H")
    return NormalityResult(True, deg, order, cover, iso, which)
