"""Finite directed multigraphs and the structural algorithms on them.

Every shift space in the package is the edge shift of a
:class:`DirectedMultigraph`.  Graphs are immutable; every operation returns a
new graph.
"""

from dataclasses import dataclass
from itertools import permutations, product
from math import inf

from .budget import Counter
from .errors import DegenerateInputError, InternalError
from .ids import id_key, sorted_ids


@dataclass(frozen=True)
class Edge:
    id: object
    src: object
    dst: object


class DirectedMultigraph:
    """Finite directed multigraph with parallel edges and self-loops.

    Parameters
    ----------
    vertices : iterable
        Vertex ids.
    edges : iterable
        :class:`Edge` records or ``(id, src, dst)`` triples.
    """

    __slots__ = ("vertices", "edges", "_edge", "_out", "_in", "_hash")

    def __init__(self, vertices, edges):
        vs = sorted_ids(set(vertices))
        es = [e if isinstance(e, Edge) else Edge(*e) for e in edges]
        table = {}
        for e in es:
            if e.id in table:
                raise ValueError(f"duplicate edge id {e.id!r}")
            table[e.id] = e
        vset = set(vs)
        out = {v: [] for v in vs}
        inc = {v: [] for v in vs}
        for e in es:
            if e.src not in vset or e.dst not in vset:
                raise ValueError(f"edge {e.id!r} has an endpoint outside the vertex set")
        es.sort(key=lambda e: id_key(e.id))
        for e in es:
            out[e.src].append(e)
            inc[e.dst].append(e)
        self.vertices = tuple(vs)
        self.edges = tuple(es)
        self._edge = table
        self._out = {v: tuple(l) for v, l in out.items()}
        self._in = {v: tuple(l) for v, l in inc.items()}
        self._hash = None

    # -- access -----------------------------------------------------------
    def edge(self, eid):
        return self._edge[eid]

    def has_edge(self, eid):
        return eid in self._edge

    def has_vertex(self, v):
        return v in self._out

    def src(self, eid):
        return self._edge[eid].src

    def dst(self, eid):
        return self._edge[eid].dst

    def out_edges(self, v):
        return self._out[v]

    def in_edges(self, v):
        return self._in[v]

    @property
    def edge_ids(self):
        return tuple(e.id for e in self.edges)

    def __len__(self):
        return len(self.edges)

    def is_empty(self):
        return not self.vertices

    # -- derived graphs ---------------------------------------------------
    def subgraph(self, edge_ids, vertices=None):
        """Subgraph on the given edges; vertices default to their endpoints."""
        es = [self._edge[e] for e in edge_ids]
        if vertices is None:
            vertices = {e.src for e in es} | {e.dst for e in es}
        return DirectedMultigraph(vertices, es)

    def reversed(self):
        return DirectedMultigraph(self.vertices, [Edge(e.id, e.dst, e.src) for e in self.edges])

    def is_path(self, word):
        return all(self._edge[a].dst == self._edge[b].src for a, b in zip(word, word[1:]))

    def adjacency_matrix(self):
        import numpy as np

        index = {v: i for i, v in enumerate(self.vertices)}
        a = np.zeros((len(index), len(index)), dtype=np.int64)
        for e in self.edges:
            a[index[e.src], index[e.dst]] += 1
        return a

    # -- value semantics --------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, DirectedMultigraph):
            return NotImplemented
        return self is other or (self.vertices == other.vertices and self.edges == other.edges)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vertices, self.edges))
        return self._hash

    def __repr__(self):
        return f"DirectedMultigraph({len(self.vertices)} vertices, {len(self.edges)} edges)"


@dataclass(frozen=True)
class GraphHom:
    """Graph homomorphism given by a vertex map and an edge map."""

    domain: DirectedMultigraph
    codomain: DirectedMultigraph
    vmap: dict
    emap: dict

    def validate(self):
        for v in self.domain.vertices:
            if self.vmap.get(v) is None or not self.codomain.has_vertex(self.vmap[v]):
                raise ValueError(f"vertex {v!r} has no image")
        for e in self.domain.edges:
            f = self.emap.get(e.id)
            if f is None or not self.codomain.has_edge(f):
                raise ValueError(f"edge {e.id!r} has no image")
            img = self.codomain.edge(f)
            if img.src != self.vmap[e.src] or img.dst != self.vmap[e.dst]:
                raise ValueError(f"edge {e.id!r}: endpoints are not preserved")
        return self

    def compose(self, other):
        """``self ∘ other``."""
        return GraphHom(
            other.domain,
            self.codomain,
            {v: self.vmap[w] for v, w in other.vmap.items()},
            {e: self.emap[f] for e, f in other.emap.items()},
        )

    def is_bijective(self):
        return (
            len(set(self.vmap.values())) == len(self.codomain.vertices) == len(self.domain.vertices)
            and len(set(self.emap.values())) == len(self.codomain.edges) == len(self.domain.edges)
        )

    def inverse(self):
        return GraphHom(
            self.codomain,
            self.domain,
            {w: v for v, w in self.vmap.items()},
            {f: e for e, f in self.emap.items()},
        )

    def is_identity(self):
        return all(k == v for k, v in self.vmap.items()) and all(k == v for k, v in self.emap.items())

    def key(self):
        """Hashable, order-independent fingerprint."""
        return (
            tuple(sorted(self.vmap.items(), key=lambda kv: id_key(kv[0]))),
            tuple(sorted(self.emap.items(), key=lambda kv: id_key(kv[0]))),
        )


def identity_hom(g):
    return GraphHom(g, g, {v: v for v in g.vertices}, {e.id: e.id for e in g.edges})


def essentialize(g):
    """Largest subgraph in which every vertex has an in-edge and an out-edge."""
    outdeg = {v: len(g.out_edges(v)) for v in g.vertices}
    indeg = {v: len(g.in_edges(v)) for v in g.vertices}
    dead = set()
    stack = [v for v in g.vertices if outdeg[v] == 0 or indeg[v] == 0]
    while stack:
        v = stack.pop()
        if v in dead:
            continue
        dead.add(v)
        for e in g.out_edges(v):
            if e.dst not in dead:
                indeg[e.dst] -= 1
                if indeg[e.dst] == 0:
                    stack.append(e.dst)
        for e in g.in_edges(v):
            if e.src not in dead:
                outdeg[e.src] -= 1
                if outdeg[e.src] == 0:
                    stack.append(e.src)
    if not dead:
        return g
    keep = [e for e in g.edges if e.src not in dead and e.dst not in dead]
    return DirectedMultigraph([v for v in g.vertices if v not in dead], keep)


def is_essential(g):
    return all(g.out_edges(v) and g.in_edges(v) for v in g.vertices)


@dataclass(frozen=True)
class SccDecomposition:
    """Strongly connected components ``C_j`` with internal edges ``D_j`` and cross edges ``T``.

    Components are listed in a topological order of the condensation (sources first).
    """

    components: tuple
    internal_edges: tuple
    cross_edges: frozenset
    component_of: dict

    def __len__(self):
        return len(self.components)

    def condensation_edges(self, g):
        return {(self.component_of[g.src(e)], self.component_of[g.dst(e)]) for e in self.cross_edges}

    def topological_order(self, g):
        """Kahn's algorithm on the condensation; raises if a cycle is found."""
        n = len(self.components)
        succ = {i: set() for i in range(n)}
        indeg = [0] * n
        for a, b in self.condensation_edges(g):
            if b not in succ[a]:
                succ[a].add(b)
                indeg[b] += 1
        ready = [i for i in range(n) if indeg[i] == 0]
        order = []
        while ready:
            i = ready.pop()
            order.append(i)
            for j in sorted(succ[i]):
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
        if len(order) != n:
            raise InternalError("condensation has a cycle")
        return order


def scc_decompose(g):
    """Tarjan's algorithm, iterative so deep graphs do not hit the recursion limit."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    comps = []
    counter = 0
    for root in g.vertices:
        if root in index:
            continue
        work = [(root, iter(g.out_edges(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for e in it:
                w = e.dst
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.out_edges(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(frozenset(comp))
    # Tarjan emits sinks first
    comps.reverse()
    component_of = {v: i for i, c in enumerate(comps) for v in c}
    internal = [set() for _ in comps]
    cross = set()
    for e in g.edges:
        a, b = component_of[e.src], component_of[e.dst]
        if a == b:
            internal[a].add(e.id)
        else:
            cross.add(e.id)
    return SccDecomposition(
        tuple(comps), tuple(frozenset(s) for s in internal), frozenset(cross), component_of
    )


def is_strongly_connected(g):
    if g.is_empty():
        raise DegenerateInputError("strong connectivity of the empty graph is undefined")
    d = scc_decompose(g)
    return len(d.components) == 1 and not d.cross_edges


def component_subgraph(g, decomposition, j):
    return g.subgraph(decomposition.internal_edges[j], decomposition.components[j])


def longest_path_lengths(g, forward=True):
    """Length of the longest path leaving (``forward``) or entering each vertex.

    Vertices from which arbitrarily long paths exist get ``math.inf``.
    """
    d = scc_decompose(g)
    cyclic = [bool(d.internal_edges[i]) for i in range(len(d.components))]
    result = {}
    order = range(len(d.components) - 1, -1, -1) if forward else range(len(d.components))
    for i in order:
        best = inf if cyclic[i] else 0
        if not cyclic[i]:
            (v,) = d.components[i]
            nbrs = [e.dst for e in g.out_edges(v)] if forward else [e.src for e in g.in_edges(v)]
            for w in nbrs:
                best = max(best, 1 + result[w])
        for v in d.components[i]:
            result[v] = best
    return result


# -- isomorphism search ----------------------------------------------------


def _bfs_order(g):
    seen = []
    mark = set()
    for root in g.vertices:
        if root in mark:
            continue
        queue = [root]
        mark.add(root)
        while queue:
            v = queue.pop(0)
            seen.append(v)
            nbrs = [e.dst for e in g.out_edges(v)] + [e.src for e in g.in_edges(v)]
            for w in sorted_ids(set(nbrs)):
                if w not in mark:
                    mark.add(w)
                    queue.append(w)
    return seen


def _between(g, color, u, v):
    """Edges from u to v grouped by color."""
    groups = {}
    for e in g.out_edges(u):
        if e.dst == v:
            groups.setdefault(color(e.id), []).append(e.id)
    return groups


def _signature(g, color, v):
    outs = sorted((id_key(color(e.id)) for e in g.out_edges(v)))
    ins = sorted((id_key(color(e.id)) for e in g.in_edges(v)))
    loops = sorted((id_key(color(e.id)) for e in g.out_edges(v) if e.dst == v))
    return (tuple(outs), tuple(ins), tuple(loops))


def graph_isomorphisms(g, h, edge_color_g=None, edge_color_h=None, vertex_constraint=None, limit=None):
    """Enumerate graph isomorphisms ``g -> h`` preserving optional edge colors.

    Backtracking over vertex images with pruning on colored degree signatures
    and colored edge multiplicities, followed by enumeration of bijections
    between parallel edge classes.

    Parameters
    ----------
    edge_color_g, edge_color_h : dict, optional
        Edge colors; isomorphisms must map each edge to an edge of the same color.
    vertex_constraint : dict, optional
        Forced vertex images.
    limit : int, optional
        Stop after this many isomorphisms.

    Raises
    ------
    BudgetExceededError
        If the number of partial assignments exceeds the search budget.
    """
    cg = (lambda e: edge_color_g[e]) if edge_color_g is not None else (lambda e: 0)
    ch = (lambda e: edge_color_h[e]) if edge_color_h is not None else (lambda e: 0)
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return []
    counter = Counter("graph isomorphism search")
    sig_g = {v: _signature(g, cg, v) for v in g.vertices}
    sig_h = {w: _signature(h, ch, w) for w in h.vertices}
    order = _bfs_order(g)
    constraint = vertex_constraint or {}
    results = []

    def mult_match(u, v, x, y):
        a = _between(g, cg, u, v)
        b = _between(h, ch, x, y)
        if set(a) != set(b):
            return False
        return all(len(a[k]) == len(b[k]) for k in a)

    def edge_bijections(vmap):
        classes = []
        for u in g.vertices:
            for v in sorted_ids({e.dst for e in g.out_edges(u)}):
                a = _between(g, cg, u, v)
                b = _between(h, ch, vmap[u], vmap[v])
                for k in sorted(a, key=id_key):
                    classes.append((a[k], b[k]))
        choices = [list(permutations(tb)) for _, tb in classes]
        for combo in product(*choices):
            counter.tick()
            emap = {}
            for (ta, _), img in zip(classes, combo):
                emap.update(zip(ta, img))
            yield emap

    def extend(i, vmap, used):
        if limit is not None and len(results) >= limit:
            return
        if i == len(order):
            for emap in edge_bijections(vmap):
                results.append(GraphHom(g, h, dict(vmap), emap))
                if limit is not None and len(results) >= limit:
                    return
            return
        v = order[i]
        cands = [constraint[v]] if v in constraint else h.vertices
        for w in cands:
            if w in used or sig_g[v] != sig_h[w]:
                continue
            counter.tick()
            ok = True
            for u, x in vmap.items():
                if not (mult_match(u, v, x, w) and mult_match(v, u, w, x)):
                    ok = False
                    break
            if not ok or not mult_match(v, v, w, w):
                continue
            vmap[v] = w
            used.add(w)
            extend(i + 1, vmap, used)
            del vmap[v]
            used.discard(w)

    extend(0, {}, set())
    return results


def graph_automorphisms(g, edge_color=None):
    """The full automorphism group of ``g`` as a list of :class:`GraphHom`."""
    return graph_isomorphisms(g, g, edge_color, edge_color)
