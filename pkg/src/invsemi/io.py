"""Canonical JSON codecs.  Parse errors carry a JSON pointer to the culprit."""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from . import bicyclic
from .brandt import ZERO, BrandtElement, BrandtSemigroup
from .errors import InvSemiError, ParseError
from .finite import PartialInjection
from .groups import FiniteGroupTable
from .monogenic import MonogenicPresentation


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_arg(text: str):
    """Inline JSON when the argument looks like JSON, else a file path."""
    s = text.strip()
    if s[:1] in "[{" or s[:1].isdigit() or s[:1] == '"':
        try:
            return json.loads(s)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid inline JSON: {e.msg} (char {e.pos})") from None
    try:
        raw = Path(text).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {text!r}: {e.strerror}") from None
    try:
        return json.loads(raw)
    except json.JSONDecodeError as e:
        raise ParseError(f"{text}: invalid JSON at line {e.lineno} col {e.colno}: {e.msg}") from None


def write_atomic(path: str, text: str) -> None:
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _expect(obj, kind, path):
    if not isinstance(obj, kind) or isinstance(obj, bool) and kind is not bool:
        name = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise ParseError(f"expected {name}, got {type(obj).__name__}", path)
    return obj


def _int(obj, path, minimum=None):
    _expect(obj, int, path)
    if minimum is not None and obj < minimum:
        raise ParseError(f"expected integer >= {minimum}, got {obj}", path)
    return obj


def _field(obj, key, path):
    _expect(obj, dict, path)
    if key not in obj:
        raise ParseError(f"missing key {key!r}", path)
    return obj[key]


# ------------------------------------------------------------ partial injections


def pi_to_json(a: PartialInjection) -> dict:
    return {"degree": a.degree, "graph": [list(p) for p in a.graph]}


def pi_from_json(obj, path="") -> PartialInjection:
    degree = _int(_field(obj, "degree", path), f"{path}/degree", 1)
    graph = _expect(_field(obj, "graph", path), list, f"{path}/graph")
    pairs = []
    for n, pair in enumerate(graph):
        p = f"{path}/graph/{n}"
        _expect(pair, list, p)
        if len(pair) != 2:
            raise ParseError("pair must have two entries", p)
        pairs.append((_int(pair[0], f"{p}/0", 0), _int(pair[1], f"{p}/1", 0)))
    try:
        return PartialInjection(degree, pairs)
    except InvSemiError as e:
        raise ParseError(str(e), f"{path}/graph") from None


def semigroup_to_json(gens) -> dict:
    gens = sorted(gens)
    return {"degree": gens[0].degree, "generators": [pi_to_json(g) for g in gens]}


def semigroup_from_json(obj, path="") -> list[PartialInjection]:
    degree = _int(_field(obj, "degree", path), f"{path}/degree", 1)
    gens = _expect(_field(obj, "generators", path), list, f"{path}/generators")
    if not gens:
        raise ParseError("generator list is empty", f"{path}/generators")
    out = [pi_from_json(g, f"{path}/generators/{n}") for n, g in enumerate(gens)]
    for n, g in enumerate(out):
        if g.degree != degree:
            raise ParseError(f"degree {g.degree} differs from semigroup degree {degree}",
                             f"{path}/generators/{n}/degree")
    return out


def element_list_from_json(obj, path="") -> list[PartialInjection]:
    """A bare list of elements or a ``{"generators": [...]}`` document."""
    if isinstance(obj, dict):
        return semigroup_from_json(obj, path)
    items = _expect(obj, list, path)
    if not items:
        raise ParseError("element list is empty", path)
    return [pi_from_json(g, f"{path}/{n}") for n, g in enumerate(items)]


# ------------------------------------------------------------------ Brandt


def brandt_to_json(B: BrandtSemigroup) -> dict:
    return {"group": {"order": B.group.order, "mult": [list(r) for r in B.group.mult]},
            "index": B.index_size}


def brandt_from_json(obj, path="") -> BrandtSemigroup:
    group = _field(obj, "group", path)
    order = _int(_field(group, "order", f"{path}/group"), f"{path}/group/order", 1)
    mult = _expect(_field(group, "mult", f"{path}/group"), list, f"{path}/group/mult")
    if len(mult) != order:
        raise ParseError(f"table has {len(mult)} rows, expected {order}", f"{path}/group/mult")
    for r, row in enumerate(mult):
        p = f"{path}/group/mult/{r}"
        _expect(row, list, p)
        if len(row) != order:
            raise ParseError(f"row has {len(row)} entries, expected {order}", p)
        for c, v in enumerate(row):
            _int(v, f"{p}/{c}", 0)
    try:
        table = FiniteGroupTable(tuple(tuple(r) for r in mult))
    except InvSemiError as e:
        raise ParseError(str(e), f"{path}/group/mult") from None
    index = _int(_field(obj, "index", path), f"{path}/index", 1)
    return BrandtSemigroup(table, index)


def brandt_element_to_json(a: BrandtElement) -> dict:
    return {"zero": True} if a.is_zero else {"i": a.i, "g": a.g, "j": a.j}


def brandt_element_from_json(obj, B: BrandtSemigroup | None = None, path="") -> BrandtElement:
    _expect(obj, dict, path)
    if obj.get("zero") is True:
        return ZERO
    a = BrandtElement(*(_int(_field(obj, key, path), f"{path}/{key}", 0) for key in "igj"))
    if B is not None:
        try:
            B.check(a)
        except InvSemiError as e:
            raise ParseError(str(e), path) from None
    return a


def brandt_elements_from_json(obj, B=None, path="") -> list[BrandtElement]:
    items = _expect(obj, list, path)
    return [brandt_element_from_json(x, B, f"{path}/{n}") for n, x in enumerate(items)]


# ----------------------------------------------------------------- bicyclic


def bicyclic_to_json(p) -> list:
    return [p[0], p[1]]


def bicyclic_from_json(obj, path="") -> bicyclic.BicyclicElement:
    _expect(obj, list, path)
    if len(obj) != 2:
        raise ParseError("bicyclic element must be [a, b]", path)
    return bicyclic.BicyclicElement(_int(obj[0], f"{path}/0", 0), _int(obj[1], f"{path}/1", 0))


def bicyclic_gens_from_json(obj, path=""):
    """``[[a,b],...]`` or ``{"gens": [[a,b],...], "bound": N}``; returns (gens, bound|None)."""
    bound = None
    if isinstance(obj, dict):
        if "bound" in obj:
            bound = _int(obj["bound"], f"{path}/bound", 1)
        gens_obj, gpath = _field(obj, "gens", path), f"{path}/gens"
    else:
        gens_obj, gpath = obj, path
    _expect(gens_obj, list, gpath)
    if not gens_obj:
        raise ParseError("generator list is empty", gpath)
    return [bicyclic_from_json(g, f"{gpath}/{n}") for n, g in enumerate(gens_obj)], bound


def bicyclic_gens_to_json(gens, bound=None) -> dict:
    out = {"gens": [bicyclic_to_json(p) for p in sorted(gens)]}
    if bound is not None:
        out["bound"] = bound
    return out


# ---------------------------------------------------------------- monogenic


def presentation_to_json(p: MonogenicPresentation) -> dict:
    out = {"variant": p.variant}
    if p.variant != "free":
        out["k"] = p.k
    if p.variant == "finite":
        out["l"] = p.l
    return out


def presentation_from_json(obj, path="") -> MonogenicPresentation:
    variant = _expect(_field(obj, "variant", path), str, f"{path}/variant")
    k = _int(obj.get("k", 1), f"{path}/k", 1)
    l = _int(obj.get("l", 1), f"{path}/l", 1)
    try:
        return MonogenicPresentation(variant, k, l)
    except InvSemiError as e:
        raise ParseError(str(e), f"{path}/variant") from None


def words_from_json(obj, path="") -> list[str]:
    if isinstance(obj, str):
        obj = [obj]
    items = _expect(obj, list, path)
    if not items:
        raise ParseError("word list is empty", path)
    out = []
    for n, w in enumerate(items):
        _expect(w, str, f"{path}/{n}")
        if not w or set(w) - {"x", "X"}:
            raise ParseError("word must be a nonempty string over x and X", f"{path}/{n}")
        out.append(w)
    return out
