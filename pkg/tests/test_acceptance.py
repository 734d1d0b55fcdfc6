"""The eleven acceptance criteria, one test each.

Each test records a ``PASS``/``FAIL`` line that is printed immediately and
again in the terminal summary.  Run ``python3 tests/test_acceptance.py`` for
the lines alone.
"""

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES, ALL_CODE_SPECS, brute_force_fiber, built  # noqa: E402

from sftgalois.codes import periodic_fiber  # noqa: E402
from sftgalois.cohomology import (  # noqa: E402
    character_for_vector,
    det_mod_p,
    ev,
    frobenius,
    orbit_permutation,
    os_sign,
    pushforward_character,
    quotient_rep_matrix,
    residue_of_sign,
    trace_mod_p,
)
from sftgalois.correspondence import (  # noqa: E402
    intermediate_conjugate,
    normality_check,
    quotient_cover,
    subgroup_of_intermediate,
    verify_fundamental_theorem,
)
from sftgalois.fixtures import full_shift, symbol_perm_automorphism  # noqa: E402
from sftgalois.galois import deck_group  # noqa: E402
from sftgalois.groups import GROUPS, cyclic_group, group_isomorphism, klein_group  # noqa: E402
from sftgalois.shifts import periodic_orbits, periodic_points  # noqa: E402
from sftgalois.tower import sigma1_tower  # noqa: E402

DEGREES = {
    "xor_cover": 2,
    "modn_cover:6": 6,
    "klein_cover": 4,
    "s3_cover": 6,
    "group_shift_cover:Z2": 2,
    "group_shift_cover:Z4": 4,
    "group_shift_cover:Z2xZ2": 4,
    "group_shift_cover:S3": 6,
    "group_shift_cover:D4": 8,
    "group_shift_cover:Q8": 8,
    "sigma1_cycle:6": 6,
    "join_cover": 4,
    "nongalois_cover": 3,
}


def record(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def check(number, title, failures, detail=""):
    ok = not failures
    record(number, title, ok, detail if ok else "; ".join(map(str, failures[:5])))
    assert ok, failures


# -- 1 ---------------------------------------------------------------------------


def test_criterion_01_xor_cover():
    fx = built("xor_cover")
    cert = fx.code.certificate()
    fails = []
    if cert.degree != 2:
        fails.append(f"degree {cert.degree}")
    if group_isomorphism(fx.cover.group, cyclic_group(2)) is None:
        fails.append("deck group is not Z/2")
    check(1, "XOR cover unramified, deg 2, Gal = Z/2", fails, f"deg={cert.degree}, |Gal|={fx.cover.group.order}")


# -- 2 ---------------------------------------------------------------------------


def test_criterion_02_mod6_cover():
    fx = built("modn_cover:6")
    gc = fx.cover
    grp = gc.group
    fails = []
    if group_isomorphism(grp, cyclic_group(6)) is None:
        fails.append("Gal is not Z/6")
    # deck element g acts on points as τ_c for the c with τ_c(y0) = g(y0)
    y0 = gc.base_fiber_point
    tau = fx.extras["translations"]
    c_of = {}
    for g in gc.elements:
        c_of[g.index] = next(c for c, t in tau.items() if t(y0) == g(y0))
    proper = [h for h in grp.subgroups() if 1 < len(h) < grp.order]
    as_shifts = sorted(sorted(c_of[g] for g in h) for h in proper)
    if as_shifts != [[0, 2, 4], [0, 3]]:
        fails.append(f"proper subgroups {as_shifts}")
    h1 = next(h for h in proper if sorted(c_of[g] for g in h) == [0, 3])
    z1 = next(mid for mid in fx.intermediates if mid.label == "Z_3")
    if subgroup_of_intermediate(gc, z1.alpha, z1.beta) != h1:
        fails.append("hand-built Z1 does not give H1")
    q = quotient_cover(gc, h1)
    if intermediate_conjugate(gc, q, z1) is None:
        fails.append("quotient by H1 is not conjugate to the hand-built Z1")
    nr = normality_check(gc, h1)
    if not nr.is_normal or nr.quotient is None:
        fails.append("H1 not normal or beta not Galois")
    else:
        if group_isomorphism(nr.quotient.group, cyclic_group(3)) is None:
            fails.append("Gal(Z1/X) is not Z/3")
        quot, _ = grp.quotient(h1)
        if group_isomorphism(nr.quotient.group, quot) is None:
            fails.append("Gal(Z1/X) is not G/H1")
    check(2, "mod-6 cover: Z/6, subgroups {τ0,τ3} and {τ0,τ2,τ4}, Z1 ~ Y/H1, Gal(Z1/X) = Z/3 = G/H1", fails)


# -- 3 ---------------------------------------------------------------------------


def test_criterion_03_klein_cover():
    fx = built("klein_cover")
    gc = fx.cover
    grp = gc.group
    fails = []
    if group_isomorphism(grp, klein_group()) is None:
        fails.append("Gal is not the Klein four-group")
    proper = [h for h in grp.subgroups() if 1 < len(h) < grp.order]
    if len(proper) != 3:
        fails.append(f"{len(proper)} proper nontrivial subgroups")
    mids = fx.intermediates
    subs = [subgroup_of_intermediate(gc, m.alpha, m.beta) for m in mids]
    if sorted(map(sorted, subs)) != sorted(map(sorted, proper)):
        fails.append("the three listed factors do not realize the three subgroups")
    for i in range(3):
        for j in range(i + 1, 3):
            if intermediate_conjugate(gc, mids[i], mids[j]) is not None:
                fails.append(f"factors {i + 1} and {j + 1} are conjugate")
    rep = verify_fundamental_theorem(gc, mids)
    shape = sorted(len(n["elements"]) for n in rep["nodes"])
    if shape != [1, 2, 2, 2, 4] or len(rep["covers"]) != 6:
        fails.append(f"lattice shape {shape} with {len(rep['covers'])} covering relations")
    md = rep["lattice_markdown"].splitlines()
    if not (md[0].startswith("- ") and sum(1 for ln in md if ln.startswith("  - ")) == 3):
        fails.append("lattice tree is not a top with three children")
    if rep["counterexamples"]:
        fails.append(rep["counterexamples"])
    check(3, "Klein cover: 3 subgroups, 3 non-conjugate factors, diamond lattice", fails)


# -- 4 ---------------------------------------------------------------------------


def test_criterion_04_s3_cover():
    fx = built("s3_cover")
    gc = fx.cover
    grp = gc.group
    fails = []
    if gc.degree != 6:
        fails.append(f"degree {gc.degree}")
    if grp.is_abelian():
        fails.append("deck group is abelian")
    for h in grp.subgroups():
        if len(h) == 3:
            nr = normality_check(gc, h)
            if not nr.is_normal or nr.quotient is None:
                fails.append("order-3 subgroup: not normal or β not Galois")
            elif group_isomorphism(nr.quotient.group, cyclic_group(2)) is None:
                fails.append("quotient by the order-3 subgroup is not Z/2")
        elif len(h) == 2:
            nr = normality_check(gc, h)
            if nr.is_normal or nr.beta_deck_order == nr.beta_degree:
                fails.append(f"order-2 subgroup {sorted(h)}: normal or β Galois")
    check(4, "S3 cover: deg 6, nonabelian, A3 normal with Galois β, order-2 subgroups not", fails)


# -- 5 ---------------------------------------------------------------------------


def test_criterion_05_group_shifts():
    fails = []
    for key in ["Z2", "Z4", "Z2xZ2", "S3", "D4", "Q8"]:
        fx = built(f"group_shift_cover:{key}")
        if fx.cover.degree != GROUPS[key]().order:
            fails.append(f"{key}: degree {fx.cover.degree}")
        if group_isomorphism(fx.cover.group, GROUPS[key]()) is None:
            fails.append(f"{key}: Gal not isomorphic")
    check(5, "group shift covers: Gal = G for Z2, Z4, Z2xZ2, S3, D4, Q8", fails)


# -- 6 ---------------------------------------------------------------------------


def test_criterion_06_fundamental_theorem():
    fails = []
    specs = ["xor_cover", "modn_cover:6", "klein_cover", "s3_cover"] + [
        f"group_shift_cover:{k}" for k in ["Z2", "Z4", "Z2xZ2", "S3", "D4", "Q8"]
    ]
    total = 0
    for spec in specs:
        fx = built(spec)
        rep = verify_fundamental_theorem(fx.cover, fx.intermediates)
        total += len(rep["nodes"])
        if rep["counterexamples"]:
            fails.append(f"{spec}: {rep['counterexamples']}")
    check(6, "fundamental theorem on fixtures 1-5, zero counterexamples", fails, f"{total} subgroups checked")


# -- 7 ---------------------------------------------------------------------------


def test_criterion_07_sigma1_tower():
    rep = sigma1_tower(12)
    fails = []
    for key in ["divisibility_match", "transition_surjective", "functorial", "unique_up_to_pointed_isomorphism"]:
        if not rep[key]:
            fails.append(key)
    for node in rep["nodes"]:
        if not (node["degree"] == node["group_order"] == node["d"] and node["cyclic"]):
            fails.append(f"d={node['d']}: {node}")
    expected = sorted([m, n] for m in range(1, 13) for n in range(1, 13) if m != n and m % n == 0)
    if rep["maps"] != expected:
        fails.append("covering maps differ from divisibility")
    check(7, "cycle covers of the one-point shift up to d=12 match divisibility", fails)


# -- 8 ---------------------------------------------------------------------------


def test_criterion_08_ev_surjective():
    fails = []
    x2 = full_shift(2)
    for p in (2, 3):
        for a in range(p):
            for b in range(p):
                chi = character_for_vector(x2, 1, [a, b], p)
                if list(ev(chi, 1)) != [a, b]:
                    fails.append(f"Σ2 p={p} v={[a, b]}")
    x8 = full_shift(symbols=[str(i) for i in range(1, 9)])
    for i in range(8):
        v = [0] * 8
        v[i] = 1
        if list(ev(character_for_vector(x8, 1, v, 3), 1)) != v:
            fails.append(f"Σ8 e{i}")
    check(8, "Ev surjective: Σ2 all p^2 vectors for p=2,3; Σ8 basis for p=3", fails)


# -- 9 ---------------------------------------------------------------------------


def test_criterion_09_sigma8_rep_matrix():
    fx = built("sigma8_perm_pair")
    fails = []
    got = {}
    for key, want_trace in (("f", 1), ("g", 0)):
        aut = fx.automorphisms[key]
        mat = quotient_rep_matrix(aut, 1, 3)
        tr, det, sgn = trace_mod_p(mat, 3), det_mod_p(mat, 3), os_sign(aut, 1)
        got[key] = (tr, det, sgn)
        if tr != want_trace:
            fails.append(f"{key}: trace {tr}")
        if det != 1 or sgn != 1:
            fails.append(f"{key}: det {det}, os {sgn}")
    check(9, "Σ8 over F3: traces 1 and 0, det 1, os sign +1", fails, f"(trace, det, os) = {got}")


# -- 10 --------------------------------------------------------------------------


def _free_action_failures(spec, max_period=4):
    fx = built(spec)
    gc = fx.cover
    fails = []
    pts = [q for n in range(1, max_period + 1) for q in periodic_points(gc.total, n)]
    for g in gc.elements[1:]:
        for q in pts:
            if g(q) == q:
                fails.append(f"{spec}: {g.name} fixes {q}")
                break
    return fails


def test_criterion_10_properties():
    fails = []
    # degree multiplicativity on towers
    for spec in ["modn_cover:6", "klein_cover", "s3_cover", "group_shift_cover:D4", "join_cover"]:
        fx = built(spec)
        gc = fx.cover
        towers = list(fx.intermediates) + [quotient_cover(gc, h) for h in gc.group.subgroups()]
        for mid in towers:
            da, db = mid.alpha.certificate().degree, mid.beta.certificate().degree
            if da * db != gc.degree:
                fails.append(f"{spec}: {da}·{db} ≠ {gc.degree}")
    join = built("join_cover")
    for proj, factor in zip(join.extras["projections"], join.extras["factors"]):
        if proj.certificate().degree * factor.degree != join.cover.degree:
            fails.append("join projections break multiplicativity")
    # |deck| ≤ deg on every certified code
    for spec in ALL_CODE_SPECS:
        c = built(spec).code
        if deck_group(c).order > c.certificate().degree:
            fails.append(f"{spec}: deck larger than degree")
    # free action on periodic points of period ≤ 4
    for spec in ["xor_cover", "modn_cover:6", "klein_cover", "s3_cover", "group_shift_cover:Q8", "join_cover"]:
        fails += _free_action_failures(spec)
    # Frobenius independent of representative and lift
    rng = random.Random(20240601)
    for n, p, m in [(2, 2, 3), (2, 3, 2), (3, 3, 2), (3, 2, 1)]:
        x = full_shift(n)
        k = len(periodic_orbits(x, m))
        for _ in range(3):
            v = [rng.randrange(p) for _ in range(k)]
            chi = character_for_vector(x, m, v, p)
            for mm in (1, 2, 3):
                for o in periodic_orbits(x, mm):
                    frobenius(chi, o, check=True)
    # equivariance on 200 random (automorphism, character) pairs
    eq_count = 0
    rng = random.Random(7)
    while eq_count < 200:
        n = rng.choice([2, 3])
        p = rng.choice([2, 3])
        m = rng.choice([1, 2])
        x = full_shift(n)
        orbits = periodic_orbits(x, m)
        v = [rng.randrange(p) for _ in orbits]
        chi = character_for_vector(x, m, v, p)
        perm = list(range(n))
        rng.shuffle(perm)
        f = symbol_perm_automorphism(n, perm, shift=x)
        pushed = pushforward_character(f, chi)
        for mm in (1, 2):
            for o in periodic_orbits(x, mm):
                image = next(t for t in periodic_orbits(x, mm) if f.forward(o.rep) in t)
                if frobenius(pushed, image) != frobenius(chi, o):
                    fails.append(f"equivariance n={n} p={p} perm={perm} orbit={o}")
        eq_count += 1
    # det ≡ sign on 200 random symbol permutations
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(2, 8)
        m = rng.randint(1, 3)
        p = rng.choice([2, 3, 5])
        perm = list(range(n))
        rng.shuffle(perm)
        f = symbol_perm_automorphism(n, perm)
        op = orbit_permutation(f, m)
        mat = quotient_rep_matrix(f, m, p)
        if det_mod_p(mat, p) != residue_of_sign(op.parity, p):
            fails.append(f"det≢sign n={n} m={m} p={p} perm={perm}")
    check(10, "property suite: multiplicativity, |deck| ≤ deg, free action, Frobenius, equivariance, det ≡ sign", fails,
          "200 equivariance pairs, 200 determinant checks")


# -- 11 --------------------------------------------------------------------------


@pytest.mark.parametrize("max_period", [4])
def test_criterion_11_fiber_oracle(max_period):
    fails = []
    checked = 0
    for spec in ALL_CODE_SPECS:
        code = built(spec).code
        for m in range(1, max_period + 1):
            for o in periodic_orbits(code.codomain, m):
                fast = set(periodic_fiber(code, o.rep))
                slow = brute_force_fiber(code, o.rep, DEGREES[spec])
                checked += 1
                if fast != slow:
                    fails.append(f"{spec} over {o}: {len(fast)} vs {len(slow)}")
    check(11, "periodic_fiber agrees with brute-force preimages (periods ≤ 4)", fails, f"{checked} orbits")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
