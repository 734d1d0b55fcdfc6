"""Command-line front end.

Every subcommand prints a report ``{"command", "inputs_digest", "result"}``
as JSON or Markdown.  Exit codes: 0 on success, 1 on domain errors (for
example a code that is not Galois), 2 on I/O and validation errors.

Sources are either a JSON file (graph, cover bundle or character bundle) or
a fixture name such as ``xor_cover``, ``modn_cover:6`` or ``full_shift:2``;
``zero:<name>`` is the zero character over the base of ``<name>``.
"""

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .budget import budget_scope
from .errors import BudgetExceededError, DomainError, LoadError, SftgError, WordNotInDomainError
from .graph import essentialize, is_essential, scc_decompose
from .ids import id_to_str
from .serialize import (
    code_to_json,
    cover_bundle,
    check_deck_table,
    character_bundle,
    dumps,
    graph_from_json,
    graph_to_json,
    load_character_bundle,
    load_cover_bundle,
    read_json,
    write_json,
)
from .shifts import PeriodicPoint, periodic_orbits

EXIT_OK, EXIT_DOMAIN, EXIT_LOAD = 0, 1, 2


class UsageError(LoadError):
    """Bad command-line arguments detected after parsing."""


@dataclass
class Source:
    """A resolved input: whatever of graph, shifts, code, fixture and character it provides."""

    label: str
    digest: str
    graph: object = None
    fixture: object = None
    code: object = None
    character: object = None
    bundle: dict = None
    shifts: list = field(default_factory=list)


# -- input resolution --------------------------------------------------------------


def _sha(data):
    return hashlib.sha256(data).hexdigest()


def load_source(spec, p=None):
    """Resolve a file path or fixture name into a :class:`Source`."""
    from . import fixtures
    from .cohomology import Character

    path = Path(spec)
    if path.is_file():
        digest = _sha(path.read_bytes())
        obj = read_json(path)
        base_dir = path.parent
        if not isinstance(obj, dict):
            raise LoadError(f"{spec}: expected a JSON object")
        if "vertices" in obj:
            return Source(spec, digest, graph=graph_from_json(obj))
        if "p" in obj:
            chi = load_character_bundle(obj, base_dir)
            src = Source(spec, digest, character=chi, bundle=obj)
            src.shifts = [("base", chi.base)]
            if not chi.is_zero:
                src.code = chi.cover.code
                src.shifts.insert(0, ("total", chi.cover.total))
            return src
        if "map" in obj:
            code = load_cover_bundle(obj, base_dir)
            src = Source(spec, digest, code=code, bundle=obj)
            src.shifts = [("total", code.domain), ("base", code.codomain)]
            return src
        raise LoadError(f"{spec}: not a graph, cover bundle or character bundle")
    if spec.startswith("zero:"):
        if p is None:
            raise UsageError("a zero character needs --p")
        inner = load_source(spec[len("zero:"):])
        base = inner.shifts[-1][1] if inner.shifts else None
        if base is None:
            raise LoadError(f"{spec}: no base shift")
        try:
            chi = Character.zero(base, p)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        return Source(spec, _sha(spec.encode()), character=chi, shifts=[("base", base)])
    try:
        fx = fixtures.build(spec)
    except (KeyError, ValueError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        raise LoadError(f"{spec!r} is neither a file nor a fixture: {msg}") from exc
    src = Source(spec, _sha(spec.encode()), fixture=fx, code=fx.code)
    if fx.total is not None:
        src.shifts.append(("total", fx.total))
    src.shifts.append(("base", fx.base))
    return src


def _need_code(src):
    if src.code is None:
        raise LoadError(f"{src.label}: source has no factor map")
    return src.code


def _galois(src):
    from .galois import certify_galois

    if src.fixture is not None and src.fixture.cover is not None:
        return src.fixture.cover
    cover = certify_galois(_need_code(src))
    if src.bundle is not None:
        check_deck_table(src.bundle, cover)
    return cover


def _character(src, p):
    """The character carried by the source, or the canonical one on a prime cyclic cover."""
    from .cohomology import Character, is_prime

    if src.character is not None:
        chi = src.character
    else:
        cover = _galois(src)
        q = cover.group.order
        if not is_prime(q):
            raise LoadError(f"{src.label}: deck group has order {q}, not a prime")
        # label g ↦ j where g = g1^j, with g1 the first non-identity element
        labeling = [0] * q
        g = cover.group.identity
        for j in range(q):
            labeling[g] = j
            g = cover.group.mul[1][g]
        chi = Character(q, cover.base, cover, tuple(labeling))
    if p is not None and p != chi.p:
        raise UsageError(f"--p {p} does not match the character's prime {chi.p}")
    return chi


def _parse_ints(text, what):
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"{what} must be a list of integers") from exc


def _parse_perm(text, n):
    from .fixtures import parse_cycles

    try:
        mapping = parse_cycles(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if any(not 1 <= k <= n for k in list(mapping) + list(mapping.values())):
        raise UsageError(f"permutation moves a symbol outside 1..{n}")
    return mapping


def _subgroup(cover, text):
    names = [t for t in text.replace(",", " ").split() if t]
    index = {nm: i for i, nm in enumerate(cover.group.names)}
    unknown = [nm for nm in names if nm not in index]
    if unknown:
        raise UsageError(f"unknown deck elements {unknown}; known: {list(cover.group.names)}")
    h = frozenset(index[nm] for nm in names) | {cover.group.identity}
    if not cover.group.is_subgroup(h):
        raise UsageError(f"{{{', '.join(names)}}} is not a subgroup")
    return h


def _word(p):
    return " ".join(id_to_str(e) for e in p.cycle)


def _point_json(p):
    return {"cycle": [id_to_str(e) for e in p.cycle], "phase": p.phase}


# -- commands ----------------------------------------------------------------------


def _graph_summary(g):
    eg = essentialize(g)
    dec = scc_decompose(eg) if not eg.is_empty() else None
    return {
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "essential": is_essential(g),
        "essential_vertices": len(eg.vertices),
        "essential_edges": len(eg.edges),
        "components": 0 if dec is None else len(dec.components),
        "cross_edges": 0 if dec is None else len(dec.cross_edges),
        "irreducible": dec is not None and len(dec.components) == 1,
    }


def cmd_check_irreducible(args):
    src = load_source(args.source)
    if src.graph is not None:
        return src, {"graphs": [dict(role="graph", **_graph_summary(src.graph))]}
    return src, {"graphs": [dict(role=role, **_graph_summary(x.graph)) for role, x in src.shifts]}


def cmd_certify_unramified(args):
    src = load_source(args.source)
    cert = _need_code(src).certificate()
    return src, {
        "unramified": True,
        "degree": cert.degree,
        "right_radius": cert.right_radius,
        "left_radius": cert.left_radius,
        "separation_radius": cert.separation_radius,
        "period_bound": cert.period_bound,
        "pair_vertices": cert.pair_vertices,
        "orbits_checked": len(cert.evidence),
    }


def _group_json(grp):
    return {
        "order": grp.order,
        "names": list(grp.names),
        "table": [[grp.names[x] for x in row] for row in grp.mul],
        "abelian": grp.is_abelian(),
        "cyclic": grp.is_cyclic(),
    }


def cmd_deck_group(args):
    from .galois import deck_group

    src = load_source(args.source)
    code = _need_code(src)
    dg = deck_group(code)
    res = {
        "degree": code.certificate().degree,
        "base_point": _point_json(dg.base_point),
        "fiber": [_point_json(y) for y in dg.fiber],
        "elements": [
            {"name": el.name, "memory": el.code.memory, "anticipation": el.code.anticipation, "fiber_action": list(row)}
            for el, row in zip(dg.elements, dg.action)
        ],
    }
    res.update(_group_json(dg.table))
    res["galois"] = dg.order == res["degree"]
    return src, res


def cmd_certify_galois(args):
    src = load_source(args.source)
    cover = _galois(src)
    res = {"galois": True, "degree": cover.degree}
    res.update(_group_json(cover.group))
    return src, res


def cmd_galois_lattice(args):
    from .correspondence import verify_fundamental_theorem

    src = load_source(args.source)
    cover = _galois(src)
    mids = src.fixture.intermediates if src.fixture is not None else ()
    rep = verify_fundamental_theorem(cover, mids, check_order=not args.skip_order)
    rep["group"] = _group_json(cover.group)
    return src, rep


def cmd_quotient(args):
    from .correspondence import quotient_cover

    src = load_source(args.source)
    cover = _galois(src)
    h = _subgroup(cover, args.subgroup)
    q = quotient_cover(cover, h)
    res = {
        "subgroup": [cover.group.names[x] for x in sorted(h)],
        "order": len(h),
        "index": cover.group.order // len(h),
        "mid": {"vertices": len(q.mid.graph.vertices), "edges": len(q.mid.graph.edges)},
        "deg_alpha": q.alpha.certificate().degree,
        "deg_beta": q.beta.certificate().degree,
        "alpha_window": [q.alpha.memory, q.alpha.anticipation],
    }
    if args.bundle:
        out = Path(args.bundle)
        write_json(out / "mid.json", graph_to_json(q.mid.graph))
        write_json(out / "alpha.json", code_to_json(q.alpha))
        write_json(out / "beta.json", code_to_json(q.beta))
    return src, res


def cmd_normality(args):
    from .correspondence import normality_check

    src = load_source(args.source)
    cover = _galois(src)
    h = _subgroup(cover, args.subgroup)
    r = normality_check(cover, h)
    res = {
        "subgroup": [cover.group.names[x] for x in sorted(h)],
        "normal": r.is_normal,
        "beta_degree": r.beta_degree,
        "beta_deck_order": r.beta_deck_order,
        "beta_galois": r.beta_deck_order == r.beta_degree,
    }
    if r.is_normal:
        quot, _ = cover.group.quotient(h)
        res["quotient_group"] = _group_json(r.quotient.group)
        res["isomorphism_to_cosets"] = {
            r.quotient.group.names[g]: quot.names[r.isomorphism[g]] for g in range(r.quotient.group.order)
        }
    return src, res


def cmd_sigma1_tower(args):
    from .tower import sigma1_tower

    if args.max_d < 1:
        raise UsageError("--max-d must be positive")
    rep = sigma1_tower(args.max_d)
    return Source(f"sigma1-tower:{args.max_d}", _sha(str(args.max_d).encode())), rep


def _find_orbit(base, text):
    cycle = tuple(t for t in text.replace(",", " ").split() if t)
    if not cycle:
        raise UsageError("--orbit needs a nonempty cycle word")
    if not base.is_word(cycle) or base.graph.dst(cycle[-1]) != base.graph.src(cycle[0]):
        raise WordNotInDomainError(f"{' '.join(cycle)} is not a closed path of the base")
    pt = PeriodicPoint.make(cycle, 0)
    for o in periodic_orbits(base, pt.period):
        if pt in o:
            return o
    raise WordNotInDomainError(f"no orbit through {' '.join(cycle)}")


def cmd_frobenius(args):
    from .cohomology import frobenius

    src = load_source(args.source, args.p)
    chi = _character(src, args.p)
    o = _find_orbit(chi.base, args.orbit)
    return src, {"p": chi.p, "orbit": _word(o.rep), "length": o.length, "value": int(frobenius(chi, o, args.check))}


def cmd_ev(args):
    from .cohomology import ev

    src = load_source(args.source, args.p)
    chi = _character(src, args.p)
    orbits = periodic_orbits(chi.base, args.m)
    vec = ev(chi, args.m, args.check)
    return src, {
        "p": chi.p,
        "m": args.m,
        "orbits": [_word(o.rep) for o in orbits],
        "vector": [int(v) for v in vec],
    }


def cmd_character_for_vector(args):
    from .cohomology import character_for_vector, ev, separation_radius

    src = load_source(args.source)
    if src.graph is not None:
        from .shifts import EdgeShift

        base = EdgeShift(src.graph)
    else:
        base = src.shifts[-1][1]
    v = _parse_ints(args.vector, "--vector")
    try:
        chi = character_for_vector(base, args.m, v, args.p)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    res = {
        "p": args.p,
        "m": args.m,
        "orbits": [_word(o.rep) for o in periodic_orbits(base, args.m)],
        "vector": [t % args.p for t in v],
        "ev": [int(t) for t in ev(chi, args.m)],
        "cocycle_radius": separation_radius(base, args.m),
        "zero": chi.is_zero,
    }
    if not chi.is_zero:
        res["cover"] = {"vertices": len(chi.cover.total.graph.vertices), "edges": len(chi.cover.total.graph.edges)}
    if args.bundle:
        write_json(args.bundle, character_bundle(chi))
    return src, res


def _perm_automorphism(n, text):
    from .fixtures import full_shift, symbol_perm_automorphism

    if not 1 <= n <= 12:
        raise UsageError("--n must lie in 1..12")
    mapping = _parse_perm(text, n)
    x = full_shift(symbols=[str(i) for i in range(1, n + 1)], name=f"Σ{n}")
    return x, symbol_perm_automorphism(n, mapping, start=1, shift=x)


def cmd_rep_matrix(args):
    from .cohomology import (
        det_mod_p,
        is_prime,
        orbit_permutation,
        quotient_rep_matrix,
        quotient_rep_matrix_from_characters,
        residue_of_sign,
        trace_mod_p,
    )

    if not is_prime(args.p):
        raise UsageError(f"--p {args.p} is not prime")
    x, f = _perm_automorphism(args.n, args.perm)
    mat = quotient_rep_matrix(f, args.m, args.p)
    op = orbit_permutation(f, args.m)
    res = {
        "n": args.n,
        "m": args.m,
        "p": args.p,
        "perm": args.perm,
        "orbits": [_word(o.rep) for o in periodic_orbits(x, args.m)],
        "orbit_permutation": list(op.perm),
        "matrix": mat.tolist(),
        "trace": trace_mod_p(mat, args.p),
        "det": det_mod_p(mat, args.p),
        "os_sign": op.parity,
        "sign_residue": residue_of_sign(op.parity, args.p),
    }
    if args.via_characters:
        other = quotient_rep_matrix_from_characters(f, args.m, args.p)
        res["characters_agree"] = other.tolist() == res["matrix"]
    label = f"rep-matrix:{args.n}:{args.m}:{args.p}:{args.perm}"
    return Source(label, _sha(label.encode())), res


def cmd_os_sign(args):
    from .cohomology import orbit_permutation

    x, f = _perm_automorphism(args.n, args.perm)
    op = orbit_permutation(f, args.m)
    label = f"os-sign:{args.n}:{args.m}:{args.perm}"
    return Source(label, _sha(label.encode())), {
        "n": args.n,
        "m": args.m,
        "perm": args.perm,
        "orbits": len(op.perm),
        "os_sign": op.parity,
    }


def cmd_build_example(args):
    from .fixtures import build

    try:
        fx = build(args.name)
    except (KeyError, ValueError) as exc:
        raise LoadError(exc.args[0] if exc.args else str(exc)) from exc
    if not args.out:
        raise UsageError("build-example needs --out <directory>")
    out = Path(args.out)
    files = []

    def put(name, obj):
        write_json(out / name, obj)
        files.append(name)

    put("base.json", graph_to_json(fx.base.graph))
    if fx.code is not None:
        put("total.json", graph_to_json(fx.total.graph))
        put("map.json", code_to_json(fx.code, "total.json", "base.json"))
        refs = {"total": "total.json", "base": "base.json", "map": "map.json"}
        put("cover.json", cover_bundle(fx.code, fx.cover.deck if fx.cover else None, refs))
    for i, mid in enumerate(fx.intermediates):
        put(
            f"intermediate_{i}.json",
            {"label": mid.label, "mid": graph_to_json(mid.mid.graph), "alpha": code_to_json(mid.alpha, "total", "mid"),
             "beta": code_to_json(mid.beta, "mid", "base")},
        )
    for key, aut in sorted(fx.automorphisms.items()):
        put(f"automorphism_{key}.json", {
            "forward": code_to_json(aut.forward, "base.json", "base.json"),
            "inverse": code_to_json(aut.inverse, "base.json", "base.json"),
        })
    label = f"build-example:{args.name}"
    return Source(label, _sha(label.encode())), {"name": args.name, "files": sorted(files)}


# -- rendering ---------------------------------------------------------------------


def _md_value(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list) and all(not isinstance(t, (dict, list)) for t in v):
        return ", ".join(str(_md_value(t)) for t in v) if v else "(none)"
    return str(v)


def _md_matrix(rows):
    k = len(rows[0]) if rows else 0
    lines = ["| " + " | ".join(f"c{j}" for j in range(k)) + " |", "|" + "---|" * k]
    lines += ["| " + " | ".join(str(t) for t in r) + " |" for r in rows]
    return lines


def _md_block(key, v, depth):
    pad = "  " * depth
    if isinstance(v, dict):
        out = [f"{pad}- {key}:"]
        for k in v:
            out += _md_block(k, v[k], depth + 1)
        return out
    if isinstance(v, list) and v and all(isinstance(t, list) for t in v):
        return [f"{pad}- {key}:", ""] + _md_matrix(v) + [""]
    if isinstance(v, list) and any(isinstance(t, dict) for t in v):
        out = [f"{pad}- {key}:"]
        for i, t in enumerate(v):
            out += _md_block(str(i), t, depth + 1)
        return out
    return [f"{pad}- {key}: {_md_value(v)}"]


def render_markdown(report):
    lines = [f"# sftg {report['command']}", "", f"inputs digest: `{report['inputs_digest']}`", ""]
    if "error" in report:
        err = report["error"]
        return "\n".join(lines + [f"**error** ({err['type']}): {err['message']}", ""])
    result = dict(report["result"])
    lattice = result.pop("lattice_markdown", None)
    for k in result:
        lines += _md_block(k, result[k], 0)
    if lattice:
        lines += ["", "## Subgroup lattice", "", lattice]
    return "\n".join(lines) + "\n"


def render(report, fmt):
    return dumps(report) if fmt == "json" else render_markdown(report)


# -- argument parsing --------------------------------------------------------------


COMMANDS = {
    "check-irreducible": (cmd_check_irreducible, "Report SCC structure and irreducibility of the source graphs."),
    "certify-unramified": (cmd_certify_unramified, "Certify that the factor map is unramified and report its degree."),
    "deck-group": (cmd_deck_group, "Compute the deck group and its action on the base fiber."),
    "certify-galois": (cmd_certify_galois, "Certify that the factor map is Galois."),
    "galois-lattice": (cmd_galois_lattice, "Verify the Galois correspondence and print the subgroup lattice."),
    "quotient": (cmd_quotient, "Build the intermediate factor Y/H for a subgroup H."),
    "normality": (cmd_normality, "Compare normality of H with the Galois property of Y/H -> X."),
    "sigma1-tower": (cmd_sigma1_tower, "Check the tower of cycle covers of the one-point shift."),
    "frobenius": (cmd_frobenius, "Frobenius value of a character at a periodic orbit."),
    "ev": (cmd_ev, "Frobenius vector over all orbits of a given length."),
    "character-for-vector": (cmd_character_for_vector, "Construct a character with a prescribed Frobenius vector."),
    "rep-matrix": (cmd_rep_matrix, "Quotient representation matrix of a symbol permutation."),
    "os-sign": (cmd_os_sign, "Sign of the permutation a symbol permutation induces on orbits."),
    "build-example": (cmd_build_example, "Write the bundle files of a built-in example."),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "md"], default="json", help="report format")
    common.add_argument("--budget", type=int, default=None, help="search budget (overrides SFTG_BUDGET)")
    common.add_argument("--out", default=None, help="write the report (build-example: the bundle directory) here")

    parser = argparse.ArgumentParser(prog="sftg", description="Galois theory for irreducible shifts of finite type.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    ps = {}
    for name, (_, help_text) in COMMANDS.items():
        ps[name] = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    for name in ("check-irreducible", "certify-unramified", "deck-group", "certify-galois", "galois-lattice",
                 "quotient", "normality", "frobenius", "ev", "character-for-vector"):
        ps[name].add_argument("source", help="bundle/graph JSON file or fixture name (e.g. modn_cover:6)")
    ps["galois-lattice"].add_argument("--skip-order", action="store_true", help="skip the pairwise order check")
    for name in ("quotient", "normality"):
        ps[name].add_argument("--subgroup", required=True, help="deck element names, e.g. 'g0,g3'")
    ps["quotient"].add_argument("--bundle", help="directory for mid/alpha/beta JSON files")
    ps["sigma1-tower"].add_argument("--max-d", type=int, required=True)
    ps["frobenius"].add_argument("--orbit", required=True, help="cycle word, e.g. '0 1'")
    ps["frobenius"].add_argument("--p", type=int, default=None)
    ps["frobenius"].add_argument("--check", action="store_true", help="try every representative and lift")
    ps["ev"].add_argument("--m", type=int, required=True)
    ps["ev"].add_argument("--p", type=int, default=None)
    ps["ev"].add_argument("--check", action="store_true", help="try every representative and lift")
    ps["character-for-vector"].add_argument("--m", type=int, required=True)
    ps["character-for-vector"].add_argument("--p", type=int, required=True)
    ps["character-for-vector"].add_argument("--vector", required=True, help="e.g. '1,0,2'")
    ps["character-for-vector"].add_argument("--bundle", help="write the character bundle to this file")
    for name in ("rep-matrix", "os-sign"):
        ps[name].add_argument("--n", type=int, default=8, help="number of symbols 1..n (default 8)")
        ps[name].add_argument("--m", type=int, required=True)
        ps[name].add_argument("--perm", required=True, help="cycle notation, e.g. '(1,2)(3,4)'")
    ps["rep-matrix"].add_argument("--p", type=int, required=True)
    ps["rep-matrix"].add_argument("--via-characters", action="store_true",
                                  help="also compute the matrix by transporting basis characters")
    ps["build-example"].add_argument("name", help="fixture name, e.g. klein_cover or modn_cover:6")
    return parser


def _args_digest(args, src):
    skip = {"format", "out", "budget", "bundle", "func"}
    opts = {k: v for k, v in sorted(vars(args).items()) if k not in skip and k != "source"}
    payload = json.dumps({"command": args.command, "options": opts, "source": src.digest}, sort_keys=True)
    return _sha(payload.encode())


@dataclass
class Outcome:
    report: dict
    code: int
    text: str
    out: str = None


def run(argv=None):
    """Run the CLI without touching stdout; returns an :class:`Outcome`."""
    parser = build_parser()
    args = parser.parse_args(argv)
    func = COMMANDS[args.command][0]
    report = {"command": args.command}
    code = EXIT_OK
    try:
        if "SFTG_BUDGET" in os.environ:
            try:
                int(os.environ["SFTG_BUDGET"])
            except ValueError as exc:
                raise UsageError("SFTG_BUDGET must be an integer") from exc
        if args.budget is not None and args.budget < 1:
            raise UsageError("--budget must be positive")
        if args.budget is not None:
            with budget_scope(args.budget):
                src, result = func(args)
        else:
            src, result = func(args)
        report["inputs_digest"] = _args_digest(args, src)
        report["result"] = result
    except LoadError as exc:
        code = EXIT_LOAD
        report.update(inputs_digest=None, error={"type": type(exc).__name__, "message": str(exc)})
    except (DomainError, BudgetExceededError, SftgError) as exc:
        code = EXIT_DOMAIN
        report.update(inputs_digest=None, error={"type": type(exc).__name__, "message": str(exc)})
    out = args.out if args.command != "build-example" else None
    return Outcome(report, code, render(report, args.format), out)


def main(argv=None):
    res = run(argv)
    if res.out and res.code == EXIT_OK:
        Path(res.out).parent.mkdir(parents=True, exist_ok=True)
        Path(res.out).write_text(res.text, encoding="utf-8")
    else:
        stream = sys.stdout if res.code == EXIT_OK else sys.stderr
        stream.write(res.text)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
