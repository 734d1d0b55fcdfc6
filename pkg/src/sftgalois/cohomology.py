"""Characters, skew products, Frobenius elements and the quotient representation.

A character is a Galois cover of prime degree ``p`` together with an
isomorphism of its deck group onto ``F_p``; the zero character is a
sentinel without a cover.  The Frobenius value at a periodic orbit of length
``m`` is the label of the deck element that ``σ^m`` induces on a lift.
"""

from dataclasses import dataclass, field

import numpy as np

from .codes import BlockCode, codes_equal, compose, identity_code, periodic_fiber
from .correspondence import quotient_cover
from .errors import DegenerateInputError, InternalError, NotAnAutomorphismError
from .galois import certify_galois
from .graph import DirectedMultigraph, is_strongly_connected
from .shifts import EdgeShift, higher_block, periodic_orbits, periodic_points
from .tower import join, transition_hom


def is_prime(p):
    return p >= 2 and all(p % k for k in range(2, int(p**0.5) + 1))


def _check_prime(p):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


@dataclass(frozen=True)
class Cocycle:
    """A map ``f: B_{2N+1}(X) -> F_p`` read on centered windows."""

    radius: int
    table: dict
    p: int

    def __call__(self, word):
        return self.table[tuple(word)] % self.p

    def orbit_sum(self, point, m=None):
        """``Σ_{i<m} f(σ^i x)`` (``m`` defaults to the period)."""
        m = point.period if m is None else m
        n = self.radius
        return sum(self(point.window(i - n, i + n + 1)) for i in range(m)) % self.p


def constant_cocycle(x, value, p):
    return Cocycle(0, {(e,): value % p for e in x.alphabet}, p)


def cylinder_cocycle(x, symbol, p, value=1):
    """Indicator of the cylinder ``[symbol]_0`` times ``value``."""
    return Cocycle(0, {(e,): (value if e == symbol else 0) % p for e in x.alphabet}, p)


@dataclass(frozen=True)
class Character:
    """A cyclic degree-``p`` cover with ``labeling[g] ∈ F_p`` on its deck elements.

    ``cover is None`` encodes the zero character over ``base``.
    """

    p: int
    base: EdgeShift
    cover: object = field(default=None, repr=False)
    labeling: tuple = None

    @staticmethod
    def zero(base, p):
        _check_prime(p)
        return Character(p, base)

    @property
    def is_zero(self):
        return self.cover is None

    def scaled(self, a):
        """The character ``a·χ`` for ``a ≢ 0``, by relabeling the same cover."""
        a %= self.p
        if self.is_zero:
            return self
        if a == 0:
            return Character.zero(self.base, self.p)
        return Character(self.p, self.base, self.cover, tuple((a * v) % self.p for v in self.labeling))


def _validate_labeling(cover, labeling, p):
    grp = cover.group
    if grp.order != p:
        raise InternalError(f"character cover has degree {grp.order}, not {p}")
    if sorted(labeling) != list(range(p)):
        raise InternalError("labeling is not a bijection onto F_p")
    for a in range(p):
        for b in range(p):
            if labeling[grp.mul[a][b]] != (labeling[a] + labeling[b]) % p:
                raise InternalError("labeling is not a homomorphism")


def skew_product(x, f):
    """The skew product ``σ_f(x, c) = (σx, c + f(x))`` as a labeled degree-``p`` cover.

    Returns ``None`` when the skew product is reducible, which for prime
    ``p`` happens exactly when ``f`` sums to zero around every cycle.

    Returns
    -------
    (Character, witness) or None
        ``witness`` is a periodic point with nonzero cocycle sum.
    """
    p = f.p
    _check_prime(p)
    n = f.radius
    hb = higher_block(x, 2 * n + 1, memory=n)
    xb = hb.shift.graph

    def word(e):
        return e if n > 0 else (e,)

    verts = [(v, c) for v in xb.vertices for c in range(p)]
    edges = []
    for e in xb.edges:
        fv = f(word(e.id))
        for c in range(p):
            edges.append(((e.id, c), (e.src, c), (e.dst, (c + fv) % p)))
    g = DirectedMultigraph(verts, edges)
    if not is_strongly_connected(g):
        return None
    witness = None
    for m in range(1, len(xb.vertices) + 1):
        for o in periodic_orbits(x, m):
            if f.orbit_sum(o.rep) != 0:
                witness = o.rep
                break
        if witness is not None:
            break
    if witness is None:
        raise InternalError("irreducible skew product without a cycle of nonzero sum")
    y = EdgeShift(g, name=f"skew(p={p})")
    center = {(e.id, c): (e.id[n] if n > 0 else e.id) for e in xb.edges for c in range(p)}
    code = BlockCode(y, x, 0, 0, {(k,): v for k, v in center.items()}, name="skew projection")
    cover = certify_galois(code)
    y0 = cover.fiber[0]
    labeling = [None] * p
    for a in range(p):
        moved = y.point([(e, (c + a) % p) for e, c in y0.word()], 0)
        g_idx = cover.element_sending(y0, moved)
        if g_idx is None:
            raise InternalError("translation by a is not a deck transformation")
        labeling[g_idx] = a
    labeling = tuple(labeling)
    _validate_labeling(cover, labeling, p)
    return Character(p, x, cover, labeling), witness


def frobenius(chi, orbit, check=False):
    """Frobenius value of ``chi`` at a periodic orbit.

    Lifts the orbit representative to ``y``, and returns the label of the
    unique deck element carrying ``y`` to ``σ^m(y)``.  With ``check`` every
    representative and every lift is tried and the values must agree.
    """
    if chi.is_zero:
        return 0
    cover = chi.cover
    m = orbit.length
    reps = orbit.points() if check else [orbit.rep]
    values = set()
    for x in reps:
        lifts = periodic_fiber(cover.code, x)
        for y in lifts if check else lifts[:1]:
            g = cover.element_sending(y, y.shift(m))
            if g is None:
                raise InternalError("σ^m of a lift is not a deck translate")
            values.add(chi.labeling[g])
    if len(values) != 1:
        raise InternalError(f"Frobenius depends on choices: {sorted(values)}")
    return values.pop()


def ev(chi, m, check=False):
    """The vector ``(Frob_Γ(χ))_Γ`` over orbits of length ``m`` in the fixed order."""
    orbits = periodic_orbits(chi.base, m)
    if not orbits:
        raise DegenerateInputError(f"no periodic orbits of length {m}")
    return np.array([frobenius(chi, o, check) for o in orbits], dtype=np.int64)


def separation_radius(x, m):
    """Least ``N ≥ 0`` such that all points of least period ``m`` have distinct central ``(2N+1)``-blocks."""
    pts = sorted(periodic_points(x, m), key=lambda q: q.sort_key())
    n = 0
    while True:
        blocks = {q.window(-n, n + 1) for q in pts}
        if len(blocks) == len(pts):
            return n
        n += 1


def character_for_vector(x, m, v, p):
    """A character whose Frobenius vector over orbits of length ``m`` is ``v``.

    Builds the indicator cocycle ``f = Σ v_i 1_{U_i}``, where ``U_i`` is the
    central ``(2N+1)``-cylinder of the representative of the ``i``-th orbit
    and ``N`` separates all points of period ``m``, then takes the skew product.
    """
    _check_prime(p)
    orbits = periodic_orbits(x, m)
    v = [int(t) % p for t in v]
    if len(v) != len(orbits):
        raise ValueError(f"vector has length {len(v)} but there are {len(orbits)} orbits")
    if not any(v):
        return Character.zero(x, p)
    n = separation_radius(x, m)
    table = {w: 0 for w in x.iter_words(2 * n + 1)}
    for o, val in zip(orbits, v):
        table[o.rep.window(-n, n + 1)] = val
    made = skew_product(x, Cocycle(n, table, p))
    if made is None:
        raise InternalError("skew product of a nonzero indicator cocycle is reducible")
    chi = made[0]
    got = ev(chi, m)
    if list(got) != v:
        raise InternalError(f"constructed character has Frobenius vector {list(got)}, expected {v}")
    return chi


def check_automorphism(f):
    x = f.forward.domain
    if f.forward.codomain != x or f.inverse.domain != x or f.inverse.codomain != x:
        raise NotAnAutomorphismError("automorphism codes must map the shift to itself")
    ident = identity_code(x)
    if not (codes_equal(compose(f.forward, f.inverse), ident) and codes_equal(compose(f.inverse, f.forward), ident)):
        raise NotAnAutomorphismError("forward and inverse codes are not mutually inverse")


def pushforward_character(f, chi):
    """Transport ``chi`` along an automorphism ``f``: the cover ``(Y, f∘ϖ)`` with the same labels."""
    check_automorphism(f)
    if chi.is_zero:
        return chi
    old = chi.cover
    new_code = compose(f.forward, old.code)
    cover = certify_galois(new_code)
    y = cover.fiber[0]
    labeling = [None] * chi.p
    for g in cover.elements:
        h = old.element_sending(y, g(y))
        if h is None:
            raise InternalError("deck elements of the transported cover differ")
        labeling[g.index] = chi.labeling[h]
    labeling = tuple(labeling)
    _validate_labeling(cover, labeling, chi.p)
    return Character(chi.p, chi.base, cover, labeling)


def linear_combination(a, chi1, chi2):
    """The character ``a·χ1 + χ2`` built from the join of the two covers.

    The join carries ``λ(φ) = a·l1(p1 φ) + l2(p2 φ)``; its kernel cuts out a
    degree-``p`` quotient whose deck group inherits the label ``λ``.
    """
    p = chi1.p
    if chi1.is_zero:
        return chi2
    if chi2.is_zero:
        return chi1.scaled(a)
    joined, proj1, proj2 = join(chi1.cover, chi2.cover)
    p1 = transition_hom(proj1, joined, chi1.cover, check=False)
    p2 = transition_hom(proj2, joined, chi2.cover, check=False)
    lam = [(a * chi1.labeling[p1[g]] + chi2.labeling[p2[g]]) % p for g in range(joined.group.order)]
    if not any(lam):
        return Character.zero(chi1.base, p)
    ker = frozenset(g for g, val in enumerate(lam) if val == 0)
    mid = quotient_cover(joined, ker)
    lower = certify_galois(mid.beta)
    down = transition_hom(mid.alpha, joined, lower, check=False)
    labeling = [None] * p
    for g, val in enumerate(lam):
        labeling[down[g]] = val
    labeling = tuple(labeling)
    _validate_labeling(lower, labeling, p)
    return Character(p, chi1.base, lower, labeling)


def characters_equal(chi1, chi2):
    """Equality as classes: an isomorphism of covers over ``X`` matching the labelings."""
    from .tower import covers_isomorphic

    if chi1.p != chi2.p or chi1.base != chi2.base:
        return False
    if chi1.is_zero or chi2.is_zero:
        return chi1.is_zero and chi2.is_zero
    conj = covers_isomorphic(chi1.cover, chi2.cover)
    if conj is None:
        return False
    y = chi1.cover.fiber[0]
    fy = conj.forward(y)
    for g in chi1.cover.elements:
        h = chi2.cover.element_sending(fy, conj.forward(g(y)))
        if chi2.labeling[h] != chi1.labeling[g.index]:
            return False
    return True


# -- quotient representation -----------------------------------------------------


@dataclass(frozen=True)
class OrbitPermutation:
    """``perm[i]`` is the index of the image of the ``i``-th orbit of length ``m``."""

    m: int
    perm: tuple
    parity: int


def permutation_parity(perm):
    seen = set()
    sign = 1
    for i in range(len(perm)):
        if i in seen:
            continue
        k, j = 0, i
        while j not in seen:
            seen.add(j)
            j = perm[j]
            k += 1
        if k % 2 == 0:
            sign = -sign
    return sign


def orbit_permutation(f, m, check=True):
    """The permutation an automorphism induces on orbits of length ``m``."""
    if check:
        check_automorphism(f)
    x = f.forward.domain
    orbits = periodic_orbits(x, m)
    index = {o.rep.cycle: i for i, o in enumerate(orbits)}
    perm = tuple(index[f.forward(o.rep).cycle] for o in orbits)
    if sorted(perm) != list(range(len(orbits))):
        raise InternalError("automorphism does not permute orbits")
    return OrbitPermutation(m, perm, permutation_parity(perm))


def os_sign(f, m):
    return orbit_permutation(f, m).parity


def quotient_rep_matrix(f, m, p):
    """Permutation matrix over ``F_p`` of the orbit permutation: column ``i`` is ``e_{π(i)}``."""
    _check_prime(p)
    op = orbit_permutation(f, m)
    k = len(op.perm)
    mat = np.zeros((k, k), dtype=np.int64)
    for i, j in enumerate(op.perm):
        mat[j, i] = 1
    return mat % p


def quotient_rep_matrix_from_characters(f, m, p):
    """Same matrix computed by transporting basis characters and reading their Frobenius vectors."""
    x = f.forward.domain
    k = len(periodic_orbits(x, m))
    cols = []
    for i in range(k):
        e = [0] * k
        e[i] = 1
        chi = character_for_vector(x, m, e, p)
        cols.append(ev(pushforward_character(f, chi), m))
    return np.array(cols, dtype=np.int64).T % p


def det_mod_p(mat, p):
    """Determinant over ``F_p`` by Gaussian elimination."""
    a = np.array(mat, dtype=np.int64) % p
    n = a.shape[0]
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r, col] % p), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            det = -det
        det = det * int(a[col, col]) % p
        inv = pow(int(a[col, col]), -1, p)
        for r in range(col + 1, n):
            if a[r, col]:
                a[r] = (a[r] - a[r, col] * inv * a[col]) % p
    return det % p


def trace_mod_p(mat, p):
    return int(np.trace(mat)) % p


def residue_of_sign(sign, p):
    return sign % p
