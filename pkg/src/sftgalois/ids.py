"""Identifiers for vertices and edges.

Ids are strings, ints, or (nested) tuples of ids.  Constructions such as
higher block presentations and fiber products produce tuple ids, which keeps
the provenance of every symbol readable without side tables.
"""

from functools import lru_cache


@lru_cache(maxsize=None)
def id_key(x):
    """Total-order sort key over mixed ids (ints < strings < tuples)."""
    if isinstance(x, tuple):
        return (2, tuple(id_key(t) for t in x))
    if isinstance(x, bool):
        raise TypeError("bool is not a valid id")
    if isinstance(x, int):
        return (0, x, "")
    if isinstance(x, str):
        return (1, 0, x)
    raise TypeError(f"unsupported id type {type(x).__name__}: {x!r}")


def sorted_ids(ids):
    return sorted(ids, key=id_key)


def word_key(word):
    return tuple(id_key(e) for e in word)


def id_to_str(x):
    """Flatten an id to the string form used in JSON files."""
    if isinstance(x, tuple):
        return "(" + ",".join(id_to_str(t) for t in x) + ")"
    return str(x)
