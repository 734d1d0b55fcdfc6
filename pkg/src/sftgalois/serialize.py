"""JSON formats for graphs, codes, points, cocycles, covers and characters.

Ids are written as strings (tuple ids as ``"(a,b)"``); loading always yields
string ids.  Code files may reference graph files by path relative to the
code file, or embed graphs inline.
"""

import json
from pathlib import Path

from .codes import BlockCode
from .errors import InvalidCodeError, LoadError
from .graph import DirectedMultigraph
from .ids import id_key, id_to_str, word_key
from .shifts import EdgeShift, PeriodicPoint


def dumps(obj):
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _names(ids, what):
    out = {}
    for x in ids:
        s = id_to_str(x)
        if s in out and out[s] != x:
            raise LoadError(f"two {what} ids serialize to the same string {s!r}")
        out[s] = x
    return {x: s for s, x in out.items()}


def graph_to_json(g):
    vn = _names(g.vertices, "vertex")
    en = _names(g.edge_ids, "edge")
    return {
        "vertices": [vn[v] for v in g.vertices],
        "edges": [{"id": en[e.id], "src": vn[e.src], "dst": vn[e.dst]} for e in g.edges],
    }


def graph_from_json(obj):
    if not isinstance(obj, dict) or "vertices" not in obj or "edges" not in obj:
        raise LoadError("graph JSON needs 'vertices' and 'edges'")
    verts = obj["vertices"]
    if not all(isinstance(v, str) for v in verts):
        raise LoadError("vertex ids must be strings")
    if len(set(verts)) != len(verts):
        raise LoadError("duplicate vertex id")
    edges = []
    seen = set()
    for e in obj["edges"]:
        try:
            eid, src, dst = e["id"], e["src"], e["dst"]
        except (KeyError, TypeError) as exc:
            raise LoadError(f"malformed edge record {e!r}") from exc
        if not all(isinstance(t, str) for t in (eid, src, dst)):
            raise LoadError("edge ids and endpoints must be strings")
        if eid in seen:
            raise LoadError(f"duplicate edge id {eid!r}")
        seen.add(eid)
        edges.append((eid, src, dst))
    try:
        return DirectedMultigraph(verts, edges)
    except ValueError as exc:
        raise LoadError(str(exc)) from exc


def shift_from_json(obj, name=None):
    from .errors import DegenerateInputError

    try:
        return EdgeShift(graph_from_json(obj), name=name)
    except DegenerateInputError as exc:
        raise LoadError(str(exc)) from exc


def point_to_json(p):
    return {"cycle": [id_to_str(e) for e in p.cycle], "phase": p.phase}


def point_from_json(obj, shift=None):
    try:
        cycle = [str(e) for e in obj["cycle"]]
        phase = int(obj.get("phase", 0))
    except (KeyError, TypeError, ValueError) as exc:
        raise LoadError(f"malformed point {obj!r}") from exc
    if not cycle:
        raise LoadError("empty cycle")
    if shift is not None:
        if not shift.contains(PeriodicPoint(tuple(cycle), 0)):
            raise LoadError(f"{cycle} is not a closed path of the shift")
    return PeriodicPoint.make(cycle, phase)


def code_to_json(c, domain=None, codomain=None):
    """Serialize a code; ``domain``/``codomain`` are file references, else graphs are inlined."""
    en_dom = _names(c.domain.alphabet, "edge")
    en_cod = _names(c.codomain.alphabet, "edge")
    rule = [
        {"word": [en_dom[e] for e in w], "out": en_cod[out]}
        for w, out in sorted(c.rule.items(), key=lambda kv: word_key(kv[0]))
    ]
    return {
        "memory": c.memory,
        "anticipation": c.anticipation,
        "domain": domain if domain is not None else graph_to_json(c.domain.graph),
        "codomain": codomain if codomain is not None else graph_to_json(c.codomain.graph),
        "rule": rule,
    }


def _resolve_shift(ref, base_dir, named):
    if isinstance(ref, dict):
        return shift_from_json(ref)
    if isinstance(ref, str):
        if ref in named:
            return named[ref]
        path = Path(base_dir) / ref
        shift = shift_from_json(read_json(path))
        named[ref] = shift
        return shift
    raise LoadError(f"cannot resolve graph reference {ref!r}")


def code_from_json(obj, base_dir=".", named=None):
    named = {} if named is None else named
    try:
        m, a = int(obj["memory"]), int(obj["anticipation"])
        dom = _resolve_shift(obj["domain"], base_dir, named)
        cod = _resolve_shift(obj["codomain"], base_dir, named)
        rule = {}
        for r in obj["rule"]:
            w = tuple(str(e) for e in r["word"])
            if w in rule:
                raise LoadError(f"duplicate rule word {list(w)}")
            rule[w] = str(r["out"])
    except (KeyError, TypeError, ValueError) as exc:
        raise LoadError(f"malformed code JSON: {exc}") from exc
    try:
        return BlockCode(dom, cod, m, a, rule)
    except InvalidCodeError as exc:
        raise LoadError(str(exc)) from exc


def cocycle_to_json(f):
    rows = [
        {"word": [id_to_str(e) for e in w], "value": int(v) % f.p}
        for w, v in sorted(f.table.items(), key=lambda kv: word_key(kv[0]))
    ]
    return {"p": f.p, "radius": f.radius, "table": rows}


def cocycle_from_json(obj, shift):
    from .cohomology import Cocycle

    try:
        p, n = int(obj["p"]), int(obj["radius"])
        table = {tuple(str(e) for e in r["word"]): int(r["value"]) % p for r in obj["table"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise LoadError(f"malformed cocycle JSON: {exc}") from exc
    words = set(shift.iter_words(2 * n + 1))
    missing = words - set(table)
    if missing:
        raise LoadError(f"cocycle table misses {len(missing)} word(s)")
    return Cocycle(n, {w: table[w] for w in words}, p)


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise LoadError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise LoadError(f"{path} is not valid JSON: {exc}") from exc


def write_json(path, obj):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


# -- bundles -----------------------------------------------------------------------


def cover_bundle(code, deck=None, refs=None):
    """Cover bundle: total and base graphs, the map, and the designated base point."""
    from .shifts import smallest_orbit

    refs = refs or {}
    out = {
        "total": refs.get("total", graph_to_json(code.domain.graph)),
        "base": refs.get("base", graph_to_json(code.codomain.graph)),
        "map": refs.get("map", code_to_json(code, "total", "base")),
        "base_point": point_to_json(smallest_orbit(code.codomain).rep),
    }
    if deck is not None:
        out["deck"] = {
            "names": list(deck.table.names),
            "mul": [list(r) for r in deck.table.mul],
        }
    return out


def load_cover_bundle(obj, base_dir="."):
    """Returns the code ``ϖ`` of a cover bundle, checking any precomputed deck table."""
    named = {}
    try:
        named["total"] = _resolve_shift(obj["total"], base_dir, named)
        named["base"] = _resolve_shift(obj["base"], base_dir, named)
        m = obj["map"]
    except KeyError as exc:
        raise LoadError(f"cover bundle lacks {exc}") from exc
    if isinstance(m, str):
        m = read_json(Path(base_dir) / m)
    code = code_from_json(m, base_dir, named)
    if "base_point" in obj:
        point_from_json(obj["base_point"], code.codomain)
    return code


def check_deck_table(obj, cover):
    deck = obj.get("deck")
    if deck is None:
        return
    if [list(r) for r in cover.group.mul] != deck.get("mul"):
        raise LoadError("precomputed deck table disagrees with the computed deck group")


def character_bundle(chi, refs=None):
    if chi.is_zero:
        return {"p": chi.p, "zero": True, "base": graph_to_json(chi.base.graph)}
    out = cover_bundle(chi.cover.code, chi.cover.deck, refs)
    out["p"] = chi.p
    out["labeling"] = {chi.cover.group.names[g]: v for g, v in enumerate(chi.labeling)}
    return out


def load_character_bundle(obj, base_dir="."):
    from .cohomology import Character, _validate_labeling
    from .galois import certify_galois

    try:
        p = int(obj["p"])
    except (KeyError, TypeError, ValueError) as exc:
        raise LoadError("character bundle needs a prime 'p'") from exc
    if obj.get("zero"):
        return Character.zero(shift_from_json(obj["base"]), p)
    code = load_cover_bundle(obj, base_dir)
    cover = certify_galois(code)
    check_deck_table(obj, cover)
    lab = obj.get("labeling", {})
    names = cover.group.names
    if set(lab) != set(names):
        raise LoadError("labeling must name every deck element")
    labeling = tuple(int(lab[n]) % p for n in names)
    try:
        _validate_labeling(cover, labeling, p)
    except Exception as exc:
        raise LoadError(f"invalid labeling: {exc}") from exc
    return Character(p, code.codomain, cover, labeling)


def sort_ids(ids):
    return sorted(ids, key=id_key)
