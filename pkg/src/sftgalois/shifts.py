"""Edge shifts, words, periodic points and higher block presentations."""

from dataclasses import dataclass
from functools import cached_property

from .budget import check_budget
from .errors import DegenerateInputError, WordNotInDomainError
from .graph import DirectedMultigraph, is_essential, is_strongly_connected
from .ids import id_key, word_key


class EdgeShift:
    """The edge shift of an essential, nonempty directed multigraph.

    Parameters
    ----------
    graph : DirectedMultigraph
        Presenting graph; must be essential and nonempty.
    name : str, optional
        Display name used in reports.
    """

    def __init__(self, graph, name=None):
        if graph.is_empty() or not graph.edges:
            raise DegenerateInputError("an edge shift needs a nonempty graph")
        if not is_essential(graph):
            raise DegenerateInputError("an edge shift needs an essential graph; essentialize it first")
        self.graph = graph
        self.name = name

    @property
    def alphabet(self):
        return self.graph.edge_ids

    @cached_property
    def irreducible(self):
        return is_strongly_connected(self.graph)

    def __eq__(self, other):
        return isinstance(other, EdgeShift) and self.graph == other.graph

    def __hash__(self):
        return hash(self.graph)

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"EdgeShift({label}{len(self.graph.vertices)} vertices, {len(self.graph.edges)} edges)"

    # -- language ---------------------------------------------------------
    def is_word(self, word):
        return all(self.graph.has_edge(e) for e in word) and self.graph.is_path(word)

    def word_count(self, n):
        """Number of paths of length ``n``, from powers of the adjacency matrix."""
        counts = self.__dict__.setdefault("_word_counts", {})
        if n not in counts:
            g = self.graph
            ones = {v: 1 for v in g.vertices}
            for _ in range(n):
                nxt = {v: 0 for v in g.vertices}
                for e in g.edges:
                    nxt[e.src] += ones[e.dst]
                ones = nxt
            counts[n] = sum(ones.values())
        return counts[n]

    def iter_words(self, n):
        """All paths of length ``n`` in lexicographic order of edge ids.

        Raises
        ------
        BudgetExceededError
            If there are more such paths than the search budget allows.
        """
        check_budget(f"words of length {n}", self.word_count(n))
        if n == 0:
            yield ()
            return
        g = self.graph

        def grow(word):
            if len(word) == n:
                yield tuple(word)
                return
            for e in g.out_edges(g.dst(word[-1])):
                word.append(e.id)
                yield from grow(word)
                word.pop()

        for e in g.edges:
            yield from grow([e.id])

    def iter_words_from(self, v, n):
        g = self.graph
        stack = [((), v)]
        while stack:
            word, at = stack.pop()
            if len(word) == n:
                yield word
                continue
            for e in reversed(g.out_edges(at)):
                stack.append((word + (e.id,), e.dst))

    def closed_walks(self, n):
        """Closed paths of length ``n`` (as words, all rotations included)."""
        check_budget(f"paths of length {n}", self.word_count(n))
        g = self.graph
        for v in g.vertices:
            for w in self.iter_words_from(v, n):
                if g.dst(w[-1]) == v:
                    yield w

    def point(self, cycle, phase=0):
        """Periodic point with the given closed cycle, validated against the graph."""
        cycle = tuple(cycle)
        self.check_cycle(cycle)
        return PeriodicPoint.make(cycle, phase)

    def check_cycle(self, cycle):
        if not cycle:
            raise WordNotInDomainError("empty cycle")
        for e in cycle:
            if not self.graph.has_edge(e):
                raise WordNotInDomainError(f"edge {e!r} is not in the shift")
        if not self.graph.is_path(cycle + cycle[:1]):
            raise WordNotInDomainError(f"{list(cycle)} is not a closed path")

    def contains(self, p):
        try:
            self.check_cycle(p.cycle)
        except WordNotInDomainError:
            return False
        return True


def words_of_length(x, n):
    """The set ``B_n(X)`` of words of length ``n``."""
    return set(x.iter_words(n))


def _least_period(cycle):
    n = len(cycle)
    for d in range(1, n + 1):
        if n % d == 0 and cycle[:d] * (n // d) == cycle:
            return d
    return n


@dataclass(frozen=True, order=False)
class PeriodicPoint:
    """The periodic point ``x`` with ``x_i = cycle[(phase + i) % len(cycle)]``.

    Instances built through :meth:`make` are canonical, so equality of points
    is equality of fields.
    """

    cycle: tuple
    phase: int

    @staticmethod
    def make(cycle, phase=0):
        cycle = tuple(cycle)
        d = _least_period(cycle)
        base = cycle[:d]
        keys = [id_key(e) for e in base]
        r = min(range(d), key=lambda s: keys[s:] + keys[:s])
        return PeriodicPoint(base[r:] + base[:r], (phase - r) % d)

    @property
    def period(self):
        return len(self.cycle)

    def at(self, i):
        return self.cycle[(self.phase + i) % len(self.cycle)]

    def window(self, start, stop):
        """The word ``x_{[start, stop)}``."""
        return tuple(self.at(i) for i in range(start, stop))

    def shift(self, n=1):
        """``σ^n(x)``."""
        return PeriodicPoint(self.cycle, (self.phase + n) % len(self.cycle))

    def orbit(self):
        return PeriodicOrbit(PeriodicPoint(self.cycle, 0))

    def word(self):
        """One period starting at coordinate 0."""
        return self.window(0, self.period)

    def sort_key(self):
        return (self.period, word_key(self.cycle), self.phase)

    def __str__(self):
        body = " ".join(str(e) for e in self.cycle)
        return f"({body})^∞@{self.phase}"


@dataclass(frozen=True)
class PeriodicOrbit:
    """Orbit of a periodic point, stored by its canonical phase-0 representative."""

    rep: PeriodicPoint

    @property
    def length(self):
        return self.rep.period

    def points(self):
        return [self.rep.shift(k) for k in range(self.length)]

    def sort_key(self):
        return (self.length, word_key(self.rep.cycle))

    def __contains__(self, p):
        return p.cycle == self.rep.cycle

    def __str__(self):
        return "(" + " ".join(str(e) for e in self.rep.cycle) + ")"


def _primitive_canonical_cycles(x, m):
    out = []
    for w in x.closed_walks(m):
        p = PeriodicPoint.make(w, 0)
        if p.period == m and p.cycle == w:
            out.append(w)
    out.sort(key=word_key)
    return out


def periodic_orbits(x, m):
    """Orbits of least period ``m`` sorted lexicographically by canonical cycle."""
    if m < 1:
        raise ValueError("period must be positive")
    return [PeriodicOrbit(PeriodicPoint(w, 0)) for w in _primitive_canonical_cycles(x, m)]


def periodic_points(x, m):
    """All points of least period exactly ``m``."""
    return {p for o in periodic_orbits(x, m) for p in o.points()}


def orbit_index(orbits):
    return {o.rep.cycle: i for i, o in enumerate(orbits)}


def smallest_orbit(x):
    """The first orbit in (period, lexicographic) order."""
    m = 1
    while True:
        orbits = periodic_orbits(x, m)
        if orbits:
            return orbits[0]
        m += 1


@dataclass(frozen=True)
class HigherBlock:
    """An ``n``-block presentation with its conjugacies.

    ``forward`` maps the original shift to the block shift (the edge at time
    ``i`` is the window ``x_{[i-memory, i-memory+n)}``) and ``backward`` reads
    off coordinate ``memory`` of each block.
    """

    shift: EdgeShift
    n: int
    memory: int
    forward: object
    backward: object


def higher_block(x, n, memory=0):
    """The ``n``-th higher block presentation of ``x``.

    For ``n = 1`` the presentation is the shift itself with identity recodings.
    For ``n >= 2`` edges are the words of length ``n`` and vertices the words
    of length ``n - 1``.
    """
    from .codes import BlockCode, identity_code

    if n < 1 or not 0 <= memory < n:
        raise ValueError("need n >= 1 and 0 <= memory < n")
    if n == 1:
        ident = identity_code(x)
        return HigherBlock(x, 1, 0, ident, ident)
    words = list(x.iter_words(n))
    verts = {w[:-1] for w in words} | {w[1:] for w in words}
    g = DirectedMultigraph(verts, [(w, w[:-1], w[1:]) for w in words])
    y = EdgeShift(g, name=f"{x.name}^[{n}]" if x.name else None)
    fwd = BlockCode(x, y, memory, n - 1 - memory, {w: w for w in words}, validate=False)
    back = BlockCode(y, x, 0, 0, {(w,): w[memory] for w in words}, validate=False)
    return HigherBlock(y, n, memory, fwd, back)
