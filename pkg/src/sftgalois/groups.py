"""Finite groups as multiplication tables."""

from itertools import permutations, product

from .budget import DEFAULT_GROUP_BUDGET
from .errors import BudgetExceededError, InternalError


class FiniteGroupTable:
    """A finite group given by its Cayley table.

    Elements are the indices ``0 .. n-1``; ``mul[g][h]`` is the product
    ``g·h`` (for deck groups, the composition ``g ∘ h``).

    Parameters
    ----------
    names : sequence of str
    mul : sequence of sequences of int
    check : bool
        Verify the group axioms.
    """

    def __init__(self, names, mul, check=True):
        self.names = tuple(names)
        self.mul = tuple(tuple(r) for r in mul)
        n = len(self.names)
        ident = [e for e in range(n) if all(self.mul[e][g] == g == self.mul[g][e] for g in range(n))]
        if len(ident) != 1:
            raise InternalError("table has no unique identity")
        self.identity = ident[0]
        inv = []
        for g in range(n):
            hs = [h for h in range(n) if self.mul[g][h] == self.identity]
            if len(hs) != 1:
                raise InternalError(f"element {self.names[g]} has no unique inverse")
            inv.append(hs[0])
        self.inv = tuple(inv)
        if check:
            self.check_axioms()

    @property
    def order(self):
        return len(self.names)

    def __len__(self):
        return len(self.names)

    def check_axioms(self):
        n = len(self)
        r = range(n)
        for g in r:
            if sorted(self.mul[g]) != list(r):
                raise InternalError("table row is not a permutation")
        m = self.mul
        for a, b, c in product(r, r, r):
            if m[m[a][b]][c] != m[a][m[b][c]]:
                raise InternalError("table is not associative")

    def op(self, g, h):
        return self.mul[g][h]

    def power(self, g, k):
        out = self.identity
        for _ in range(k % self.element_order(g)):
            out = self.mul[out][g]
        return out

    def element_order(self, g):
        k, x = 1, g
        while x != self.identity:
            x = self.mul[x][g]
            k += 1
        return k

    def is_abelian(self):
        n = len(self)
        return all(self.mul[a][b] == self.mul[b][a] for a in range(n) for b in range(a))

    def is_cyclic(self):
        return any(self.element_order(g) == len(self) for g in range(len(self)))

    def closure(self, gens):
        """Subgroup generated by ``gens``."""
        elems = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul[x][g]
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
        return frozenset(elems)

    def subgroups(self, budget=DEFAULT_GROUP_BUDGET):
        """All subgroups, sorted by order then elements."""
        if len(self) > budget:
            raise BudgetExceededError("subgroup enumeration", len(self), budget)
        found = {self.closure([g]) for g in range(len(self))}
        frontier = set(found)
        cyclic = sorted(found, key=lambda s: (len(s), sorted(s)))
        while frontier:
            new = set()
            for h in frontier:
                for c in cyclic:
                    if c <= h:
                        continue
                    j = self.closure(h | c)
                    if j not in found:
                        new.add(j)
            found |= new
            frontier = new
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def is_subgroup(self, h):
        h = frozenset(h)
        return self.identity in h and all(self.mul[a][self.inv[b]] in h for a in h for b in h)

    def is_normal(self, h):
        return all(self.mul[self.mul[g][x]][self.inv[g]] in h for g in range(len(self)) for x in h)

    def left_cosets(self, h):
        seen = set()
        out = []
        for g in range(len(self)):
            if g in seen:
                continue
            c = frozenset(self.mul[g][x] for x in h)
            seen |= c
            out.append(c)
        return out

    def quotient(self, h):
        """``G/H`` for a normal subgroup ``H`` with the coset of each element."""
        if not self.is_normal(h):
            raise ValueError("quotient by a non-normal subgroup")
        cosets = self.left_cosets(h)
        which = {g: i for i, c in enumerate(cosets) for g in c}
        reps = [min(c) for c in cosets]
        mul = [[which[self.mul[a][b]] for b in reps] for a in reps]
        names = ["{" + ",".join(self.names[g] for g in sorted(c)) + "}" for c in cosets]
        return FiniteGroupTable(names, mul), which

    def generators(self):
        """A small generating set, chosen greedily by element order."""
        gens = []
        current = frozenset({self.identity})
        for g in sorted(range(len(self)), key=lambda g: (-self.element_order(g), g)):
            if g not in current:
                gens.append(g)
                current = self.closure(gens)
                if len(current) == len(self):
                    break
        return gens

    def is_homomorphism(self, other, f):
        return all(
            f[self.mul[a][b]] == other.mul[f[a]][f[b]] for a in range(len(self)) for b in range(len(self))
        )

    def __repr__(self):
        return f"FiniteGroupTable(order={len(self)})"


def group_isomorphism(g, h):
    """An isomorphism ``g -> h`` as a list ``f[i]``, or ``None``.

    Backtracking over images of a generating set, matching element orders.
    """
    if len(g) != len(h):
        return None
    if sorted(g.element_order(x) for x in range(len(g))) != sorted(
        h.element_order(x) for x in range(len(h))
    ):
        return None
    gens = g.generators()
    cands = [[y for y in range(len(h)) if h.element_order(y) == g.element_order(x)] for x in gens]
    for images in product(*cands):
        f = _extend(g, h, gens, images)
        if f is not None:
            return f
    return None


def _extend(g, h, gens, images):
    f = {g.identity: h.identity}
    frontier = [g.identity]
    while frontier:
        x = frontier.pop()
        for s, t in zip(gens, images):
            y = g.mul[x][s]
            v = h.mul[f[x]][t]
            if y in f:
                if f[y] != v:
                    return None
            else:
                f[y] = v
                frontier.append(y)
    if len(f) != len(g) or len(set(f.values())) != len(h):
        return None
    f = [f[i] for i in range(len(g))]
    return f if g.is_homomorphism(h, f) else None


def subgroup_table(g, h):
    """The subgroup ``h`` as a group table, with the inclusion map."""
    elems = sorted(h)
    pos = {x: i for i, x in enumerate(elems)}
    mul = [[pos[g.mul[a][b]] for b in elems] for a in elems]
    return FiniteGroupTable([g.names[x] for x in elems], mul, check=False), elems


# -- constructors ----------------------------------------------------------------


def cyclic_group(n):
    return FiniteGroupTable([str(i) for i in range(n)], [[(a + b) % n for b in range(n)] for a in range(n)])


def direct_product(g, h):
    pairs = [(a, b) for a in range(len(g)) for b in range(len(h))]
    pos = {p: i for i, p in enumerate(pairs)}
    names = [f"{g.names[a]}{h.names[b]}" for a, b in pairs]
    mul = [[pos[(g.mul[a][c], h.mul[b][d])] for (c, d) in pairs] for (a, b) in pairs]
    return FiniteGroupTable(names, mul)


def klein_group():
    return direct_product(cyclic_group(2), cyclic_group(2))


def permutation_group(generators, names=None):
    """Group generated by permutations of ``range(k)`` given as tuples, composed right to left."""
    k = len(generators[0])
    ident = tuple(range(k))
    elems = {ident}
    frontier = [ident]
    while frontier:
        p = frontier.pop()
        for s in generators:
            q = tuple(p[s[i]] for i in range(k))
            if q not in elems:
                elems.add(q)
                frontier.append(q)
    elems = sorted(elems)
    pos = {p: i for i, p in enumerate(elems)}
    mul = [[pos[tuple(a[b[i]] for i in range(k))] for b in elems] for a in elems]
    if names is None:
        names = ["".join(str(i) for i in p) for p in elems]
    return FiniteGroupTable(names, mul)


def symmetric_group(k):
    return permutation_group(list(permutations(range(k))))


def dihedral_group(k):
    """Symmetries of a regular ``k``-gon (order ``2k``)."""
    rot = tuple((i + 1) % k for i in range(k))
    ref = tuple((-i) % k for i in range(k))
    return permutation_group([rot, ref])


def quaternion_group():
    """``Q8`` from quaternion multiplication on ``±1, ±i, ±j, ±k``."""
    units = ["1", "i", "j", "k"]
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }  # fmt: skip
    elems = [(s, u) for s in (1, -1) for u in units]
    pos = {e: i for i, e in enumerate(elems)}
    names = [("" if s == 1 else "-") + u for s, u in elems]

    def mul(a, b):
        s, u = table[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    return FiniteGroupTable(names, [[pos[mul(a, b)] for b in elems] for a in elems])


GROUPS = {
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "Z6": lambda: cyclic_group(6),
    "Z2xZ2": klein_group,
    "S3": lambda: symmetric_group(3),
    "D4": lambda: dihedral_group(4),
    "Q8": quaternion_group,
}
