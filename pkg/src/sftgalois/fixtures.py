"""Builders for the worked examples: full shifts, the XOR and mod-n covers,
the Klein cover, group-shift covers, cycle covers of the one-point shift,
symbol-permutation automorphisms and a non-Galois degree-3 cover.

Every builder is deterministic: ids and orderings do not depend on hashing.
"""

from dataclasses import dataclass, field

from .budget import DEFAULT_FIXTURE_BUDGET
from .codes import BlockCode, one_block_code
from .errors import BudgetExceededError
from .galois import certify_galois
from .correspondence import IntermediateFactor
from .graph import DirectedMultigraph
from .groups import GROUPS, symmetric_group
from .shifts import EdgeShift


@dataclass
class Fixture:
    """A named bundle of shifts, codes and certified covers."""

    name: str
    base: EdgeShift
    total: EdgeShift = None
    code: BlockCode = None
    cover: object = None
    intermediates: list = field(default_factory=list)
    automorphisms: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Automorphism:
    """An automorphism of a shift given as a pair of mutually inverse codes."""

    forward: BlockCode
    inverse: BlockCode


def _guard(n, what="fixture size"):
    if n > DEFAULT_FIXTURE_BUDGET:
        raise BudgetExceededError(what, n, DEFAULT_FIXTURE_BUDGET)


def full_shift(n=None, symbols=None, name=None):
    """The full shift on ``n`` symbols ``"0" .. "n-1"`` (or on ``symbols``), one vertex ``"v"``."""
    if symbols is None:
        symbols = [str(i) for i in range(n)]
    symbols = list(symbols)
    g = DirectedMultigraph(["v"], [(s, "v", "v") for s in symbols])
    return EdgeShift(g, name=name or f"Σ{len(symbols)}")


def golden_mean():
    g = DirectedMultigraph(["v", "w"], [("a", "v", "v"), ("b", "v", "w"), ("c", "w", "v")])
    return EdgeShift(g, name="golden mean")


def one_point_shift():
    return full_shift(symbols=["0"], name="Σ1")


def difference_code(y, x, n, name=None):
    """``ϖ(y)_i = y_{i+1} - y_i mod n`` on full shifts with symbols ``0 .. n-1``."""
    rule = {(a, b): str((int(b) - int(a)) % n) for a in y.alphabet for b in y.alphabet}
    return BlockCode(y, x, 0, 1, rule, name=name or f"Δ mod {n}")


def xor_cover():
    """``ϖ(y)_i = y_{i+1} - y_i mod 2`` on the full 2-shift; degree 2, group Z/2."""
    return modn_cover(2, name="xor_cover", intermediates=False)


def modn_cover(n, name=None, intermediates=True):
    """The difference cover mod ``n`` of the full ``n``-shift, with deck maps ``τ_c(y)_i = y_i + c``.

    For every divisor ``k`` of ``n`` the intermediate factor
    ``Z_k`` is built by hand: vertices ``Z/k``, edges ``"a,b"`` from ``a`` to
    ``a+b mod k``, ``α_k(y)_i = (y_i mod k, y_{i+1} - y_i)`` and ``β_k(a,b) = b``.
    Its subgroup is ``{τ_c : k | c}``.
    """
    _guard(n)
    y = full_shift(n, name=f"Y=Σ{n}")
    x = full_shift(n, name=f"X=Σ{n}")
    code = difference_code(y, x, n)
    fx = Fixture(name or f"modn_cover:{n}", x, y, code)
    fx.cover = certify_galois(code)
    fx.extras["translations"] = {c: _translation(y, n, c) for c in range(n)}
    if intermediates:
        for k in range(1, n + 1):
            if n % k == 0:
                fx.intermediates.append(mod_intermediate(y, x, n, k))
    return fx


def _translation(y, n, c):
    return one_block_code(y, y, {s: str((int(s) + c) % n) for s in y.alphabet}, name=f"τ{c}")


def mod_intermediate(y, x, n, k):
    """The hand-built factor ``Z_k`` of the mod-``n`` cover (``k | n``)."""
    verts = [str(a) for a in range(k)]
    edges = [(f"{a},{b}", str(a), str((a + b) % k)) for a in range(k) for b in range(n)]
    z = EdgeShift(DirectedMultigraph(verts, edges), name=f"Z_{k}")
    alpha = BlockCode(
        y,
        z,
        0,
        1,
        {(s, t): f"{int(s) % k},{(int(t) - int(s)) % n}" for s in y.alphabet for t in y.alphabet},
        name=f"α_{k}",
    )
    beta = one_block_code(z, x, {e[0]: e[0].split(",")[1] for e in edges}, name=f"β_{k}")
    return IntermediateFactor(z, alpha, beta, label=f"Z_{k}")


KLEIN_SYMBOLS = ["00", "01", "10", "11"]


def _pair(s):
    return int(s[0]), int(s[1])


def _sym(a, b):
    return f"{a % 2}{b % 2}"


def klein_cover():
    """Coordinatewise difference on the full shift over ``Z/2 ⊕ Z/2`` with its three intermediate factors.

    Symbols ``"ab"`` stand for ``(y¹, y²) = (a, b)``.

    * ``α1 = (Δy¹, y²)``, ``β1 = (z¹, Δz²)``
    * ``α2 = (y¹, Δy²)``, ``β2 = (Δz¹, z²)``
    * ``α3 = (Δy¹, y² - y¹)``, ``β3 = (z¹, z²_{i+1} + z¹_i - z²_i)``
    """
    y = full_shift(symbols=KLEIN_SYMBOLS, name="Y")
    x = full_shift(symbols=KLEIN_SYMBOLS, name="X")
    pairs = [(s, t) for s in KLEIN_SYMBOLS for t in KLEIN_SYMBOLS]

    def two_block(dom, cod, f, name):
        return BlockCode(dom, cod, 0, 1, {(s, t): _sym(*f(_pair(s), _pair(t))) for s, t in pairs}, name=name)

    def one_block(dom, cod, f, name):
        return one_block_code(dom, cod, {s: _sym(*f(_pair(s))) for s in KLEIN_SYMBOLS}, name=name)

    code = two_block(y, x, lambda a, b: (b[0] - a[0], b[1] - a[1]), "ϖ")
    fx = Fixture("klein_cover", x, y, code)
    fx.cover = certify_galois(code)
    specs = [
        (lambda a, b: (b[0] - a[0], a[1]), lambda a, b: (a[0], b[1] - a[1])),
        (lambda a, b: (a[0], b[1] - a[1]), lambda a, b: (b[0] - a[0], a[1])),
        (lambda a, b: (b[0] - a[0], a[1] - a[0]), lambda a, b: (a[0], b[1] + a[0] - a[1])),
    ]
    for k, (fa, fb) in enumerate(specs, start=1):
        z = full_shift(symbols=KLEIN_SYMBOLS, name=f"Z_{k}")
        alpha = two_block(y, z, fa, f"α_{k}")
        beta = two_block(z, x, fb, f"β_{k}")
        fx.intermediates.append(IntermediateFactor(z, alpha, beta, label=f"Z_{k}"))
    fx.extras["translations"] = {
        c: one_block_code(
            y, y, {s: _sym(_pair(s)[0] + _pair(c)[0], _pair(s)[1] + _pair(c)[1]) for s in KLEIN_SYMBOLS}
        )
        for c in KLEIN_SYMBOLS
    }
    return fx


def group_shift_cover(group, name=None):
    """``ϖ(y)_i = y_i^{-1} y_{i+1}`` on the full shift over a finite group.

    Symbols are the group's element names; left translations
    ``τ_g(y)_i = g y_i`` are recorded in ``extras["translations"]``.
    """
    _guard(len(group), "group order")
    names = list(group.names)
    y = full_shift(symbols=names, name="Y")
    x = full_shift(symbols=names, name="X")
    idx = {s: i for i, s in enumerate(names)}
    rule = {(s, t): names[group.mul[group.inv[idx[s]]][idx[t]]] for s in names for t in names}
    code = BlockCode(y, x, 0, 1, rule, name="ϖ")
    fx = Fixture(name or "group_shift_cover", x, y, code)
    fx.cover = certify_galois(code)
    fx.extras["group"] = group
    fx.extras["translations"] = {
        g: one_block_code(y, y, {s: names[group.mul[idx[g]][idx[s]]] for s in names}) for g in names
    }
    return fx


def s3_cover():
    return group_shift_cover(symmetric_group(3), name="s3_cover")


def sigma1_cycle(d, naming="c"):
    """The ``d``-cycle graph over the one-point shift; deck group ``⟨σ_Y⟩ ≅ Z/d``."""
    _guard(d)
    x = one_point_shift()
    verts = [f"{naming}{i}" for i in range(d)]
    edges = [(f"{naming}e{i}", verts[i], verts[(i + 1) % d]) for i in range(d)]
    y = EdgeShift(DirectedMultigraph(verts, edges), name=f"C{d}")
    code = one_block_code(y, x, {e[0]: "0" for e in edges}, name=f"cycle {d}")
    fx = Fixture(f"sigma1_cycle:{d}", x, y, code)
    fx.cover = certify_galois(code)
    return fx


def symbol_perm_automorphism(n, perm, start=0, shift=None):
    """Automorphism of the full ``n``-shift permuting symbols.

    Parameters
    ----------
    perm : dict or sequence
        ``perm[s]`` is the image of symbol ``s``; a sequence is read as the
        images of ``start, start+1, ...``.  Symbols may be ints or strings.
    start : int
        First symbol, ``0`` or ``1``.
    """
    x = shift or full_shift(symbols=[str(i) for i in range(start, start + n)])
    if not isinstance(perm, dict):
        perm = {start + i: v for i, v in enumerate(perm)}
    mapping = {str(k): str(v) for k, v in perm.items()}
    for s in x.alphabet:
        mapping.setdefault(s, s)
    if sorted(mapping.values()) != sorted(x.alphabet):
        raise ValueError("not a permutation of the symbols")
    inverse = {v: k for k, v in mapping.items()}
    return Automorphism(one_block_code(x, x, mapping, name="f"), one_block_code(x, x, inverse, name="f⁻¹"))


def shift_automorphism(x):
    """The shift map ``σ`` and its inverse on a shift."""
    rule = {w: w[1] for w in x.iter_words(2)}
    inv = {w: w[0] for w in x.iter_words(2)}
    return Automorphism(BlockCode(x, x, 0, 1, rule, name="σ"), BlockCode(x, x, 1, 0, inv, name="σ⁻¹"))


def parse_cycles(text, start=1):
    """Parse cycle notation such as ``"(1,2)(3,4)"`` into a mapping of ints."""
    text = text.replace(" ", "")
    mapping = {}
    if text in ("", "()", "id"):
        return mapping
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"bad cycle notation {text!r}")
    for chunk in text[1:-1].split(")("):
        items = [int(t) for t in chunk.split(",") if t]
        for a, b in zip(items, items[1:] + items[:1]):
            if a in mapping:
                raise ValueError(f"symbol {a} appears twice")
            mapping[a] = b
    return mapping


def sigma8_perm_pair():
    """The full 8-shift on symbols ``1..8`` with the automorphisms of ``(1,2)(3,4)`` and ``(1,2)(3,4)(5,6)(7,8)``."""
    x = full_shift(symbols=[str(i) for i in range(1, 9)], name="Σ8")
    fx = Fixture("sigma8_perm_pair", x)
    fx.automorphisms["f"] = symbol_perm_automorphism(8, parse_cycles("(1,2)(3,4)"), start=1, shift=x)
    fx.automorphisms["g"] = symbol_perm_automorphism(8, parse_cycles("(1,2)(3,4)(5,6)(7,8)"), start=1, shift=x)
    return fx


def nongalois_cover():
    """Degree-3 cover of the full 2-shift from the permutations ``(0 1)`` and ``(0 1 2)``.

    Symbol ``s`` at sheet ``i`` leads to sheet ``σ_s(i)``.  The permutations
    generate ``S3`` acting on three sheets, whose centralizer is trivial, so
    the deck group is trivial while the degree is 3.
    """
    x = full_shift(2, name="Σ2")
    sigma = {"0": [1, 0, 2], "1": [1, 2, 0]}
    verts = [f"s{i}" for i in range(3)]
    edges = [(f"{s}.{i}", f"s{i}", f"s{sigma[s][i]}") for s in "01" for i in range(3)]
    y = EdgeShift(DirectedMultigraph(verts, edges), name="Y3")
    code = one_block_code(y, x, {e[0]: e[0].split(".")[0] for e in edges}, name="ϖ3")
    fx = Fixture("nongalois_cover", x, y, code)
    return fx


def group_fixture(key):
    return group_shift_cover(GROUPS[key](), name=f"group_shift_cover:{key}")


def join_cover():
    """Join of the XOR cover and the skew product of the constant cocycle ``1`` over the full 2-shift.

    Both factors are degree-2 cyclic covers; the join is a degree-4 Galois
    cover with deck group ``Z/2 × Z/2``.
    """
    from .cohomology import constant_cocycle, skew_product
    from .tower import join

    xor = xor_cover()
    chi, _ = skew_product(xor.base, constant_cocycle(xor.base, 1, 2))
    cover, p1, p2 = join(xor.cover, chi.cover)
    fx = Fixture("join_cover", xor.base, cover.total, cover.code, cover)
    fx.extras["factors"] = (xor.cover, chi.cover)
    fx.extras["projections"] = (p1, p2)
    return fx


def _int_arg(name, arg):
    try:
        return int(arg)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"fixture {name} needs an integer parameter") from exc


BUILDERS = {
    "full_shift": lambda a: Fixture(f"full_shift:{a}", full_shift(_guard_n(_int_arg("full_shift", a)))),
    "golden_mean": lambda a: Fixture("golden_mean", golden_mean()),
    "xor_cover": lambda a: xor_cover(),
    "modn_cover": lambda a: modn_cover(_int_arg("modn_cover", a)),
    "klein_cover": lambda a: klein_cover(),
    "s3_cover": lambda a: s3_cover(),
    "group_shift_cover": lambda a: group_fixture(a),
    "sigma1_cycle": lambda a: sigma1_cycle(_int_arg("sigma1_cycle", a)),
    "sigma8_perm_pair": lambda a: sigma8_perm_pair(),
    "nongalois_cover": lambda a: nongalois_cover(),
    "join_cover": lambda a: join_cover(),
}


def _guard_n(n):
    if n < 1:
        raise ValueError("the full shift needs at least one symbol")
    _guard(n)
    return n


def build(spec):
    """Build a fixture from ``"name"`` or ``"name:param"``, e.g. ``"modn_cover:6"``.

    Raises
    ------
    KeyError
        Unknown fixture name.
    ValueError
        Missing or malformed parameter.
    """
    name, _, arg = spec.partition(":")
    if name not in BUILDERS:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(sorted(BUILDERS))}")
    if name == "group_shift_cover" and arg not in GROUPS:
        raise ValueError(f"group_shift_cover needs one of {', '.join(GROUPS)}")
    return BUILDERS[name](arg or None)
