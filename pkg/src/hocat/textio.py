"""Line-oriented interchange formats.

Every file starts with a header line naming its kind (``simplicial-set``,
``category``, ``functor``, ``bisimplicial-set``, ``simplicial-category``,
``quiver``).  Blank lines and lines starting with ``#`` are ignored.  Names are
tokens: a bare word (letters, digits, ``_ ' + - .``), an integer, or a JSON
string/array for anything else.  Arrays decode to tuples, so nested tuple
names survive a round trip.  A simplex is a name optionally followed by
``*`` and its degeneracy word, e.g. ``v0*1,0``.  The full grammar is in
README.md.
"""

from __future__ import annotations

import json
import re
from typing import Any, Iterator

from ._order import label_key
from .fincat import FinCategory, Functor
from .simpset import SimplexRef, TruncatedSimplicialSet

_BARE = re.compile(r"[A-Za-z_'][A-Za-z0-9_'+\-.]*\Z")
_INT = re.compile(r"-?\d+\Z")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _tuplify(v):
    if isinstance(v, list):
        return tuple(_tuplify(x) for x in v)
    return v


def _listify(v):
    if isinstance(v, tuple):
        return [_listify(x) for x in v]
    return v


def encode_name(x: Any) -> str:
    if isinstance(x, bool):
        raise TypeError("booleans are not valid names")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, str) and _BARE.match(x):
        return x
    if isinstance(x, (str, tuple)):
        return json.dumps(_listify(x), separators=(",", ":"), ensure_ascii=False)
    raise TypeError(f"cannot encode name {x!r}")


def encode_simplex(s: SimplexRef) -> str:
    out = encode_name(s.base)
    if s.word:
        out += "*" + ",".join(str(j) for j in s.word)
    return out


_decoder = json.JSONDecoder()


def tokenize(text: str, lineno: int | None = None) -> list:
    """Split a line into tokens; JSON tokens may contain spaces."""
    out, pos, n = [], 0, len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] in '"[':
            try:
                val, end = _decoder.raw_decode(text, pos)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad JSON token at column {pos + 1}: {exc.msg}", lineno) from None
            tok = ("json", _tuplify(val))
            pos = end
        else:
            end = pos
            while end < n and not text[end].isspace() and text[end] != "*":
                end += 1
            word = text[pos:end]
            tok = ("int", int(word)) if _INT.match(word) else ("bare", word)
            pos = end
        if pos < n and text[pos] == "*":
            end = pos + 1
            while end < n and not text[end].isspace():
                end += 1
            spec = text[pos + 1:end]
            try:
                word = tuple(int(j) for j in spec.split(",")) if spec else ()
            except ValueError:
                raise ParseError(f"bad degeneracy word {spec!r}", lineno) from None
            out.append(SimplexRef(tok[1], word))
            pos = end
        else:
            out.append(tok[1])
    return out


def lines(text: str) -> Iterator[tuple[int, list]]:
    for k, raw in enumerate(text.splitlines(), start=1):
        body = raw.strip()
        if not body or body.startswith("#"):
            continue
        yield k, tokenize(body, k)


def header(text: str) -> str:
    for _, toks in lines(text):
        return str(toks[0])
    raise ParseError("empty input")


def _expect_header(it, kind):
    try:
        k, toks = next(it)
    except StopIteration:
        raise ParseError("empty input") from None
    if toks[:1] != [kind]:
        raise ParseError(f"expected header {kind!r}", k)
    return k


# -- simplicial sets -------------------------------------------------------

def format_simplicial_set(X: TruncatedSimplicialSet) -> str:
    out = ["simplicial-set", f"dim_cap {X.dim_cap}"]
    out += simplicial_set_body(X)
    return "\n".join(out) + "\n"


def simplicial_set_body(X: TruncatedSimplicialSet) -> list[str]:
    out = []
    for n in range(X.dim_cap + 1):
        for x in X.cells[n]:
            line = f"cell {n} {encode_name(x)}"
            if n:
                line += " : " + " ".join(encode_simplex(f) for f in X.faces[x])
            out.append(line)
    return out


def _ref(tok) -> SimplexRef:
    return tok if isinstance(tok, SimplexRef) else SimplexRef(tok, ())


def parse_simplicial_set_lines(items, dim_cap: int) -> TruncatedSimplicialSet:
    cells: dict[int, list] = {}
    faces: dict = {}
    for k, toks in items:
        if len(toks) < 3 or toks[0] != "cell" or not isinstance(toks[1], int):
            raise ParseError("expected 'cell <dim> <name> [: faces...]'", k)
        n, name = toks[1], toks[2]
        cells.setdefault(n, []).append(name)
        if n:
            if len(toks) < 4 or toks[3] != ":":
                raise ParseError("missing ':' before face list", k)
            faces[name] = [_ref(t) for t in toks[4:]]
    try:
        return TruncatedSimplicialSet(dim_cap, cells, faces)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_simplicial_set(text: str) -> TruncatedSimplicialSet:
    it = lines(text)
    _expect_header(it, "simplicial-set")
    try:
        k, toks = next(it)
    except StopIteration:
        raise ParseError("missing dim_cap line") from None
    if toks[:1] != ["dim_cap"] or len(toks) != 2 or not isinstance(toks[1], int):
        raise ParseError("expected 'dim_cap <n>'", k)
    return parse_simplicial_set_lines(it, toks[1])


# -- categories ------------------------------------------------------------

def format_category(C: FinCategory) -> str:
    return "\n".join(["category"] + category_body(C)) + "\n"


def category_body(C: FinCategory) -> list[str]:
    out = []
    if C.name:
        out.append(f"name {encode_name(C.name)}")
    out.append("objects " + " ".join(encode_name(x) for x in C.objects))
    idents = set(C.identity.values())
    for x, i in C.identity.items():
        out.append(f"identity {encode_name(x)} {encode_name(i)}")
    for m, (s, t) in C.morphisms.items():
        if m not in idents:
            out.append(f"morphism {encode_name(m)} {encode_name(s)} {encode_name(t)}")
    for (g, f), h in sorted(C.compose.items(), key=lambda kv: label_key(kv[0])):
        if g in idents or f in idents:
            continue
        out.append(f"compose {encode_name(g)} {encode_name(f)} {encode_name(h)}")
    return out


def parse_category_lines(items) -> FinCategory:
    name, objects, mors, ident, comp = "", [], {}, {}, {}
    where: dict = {}  # declaration line of each object and morphism
    for k, toks in items:
        key = toks[0] if toks else None
        if key == "name" and len(toks) == 2:
            name = str(toks[1])
        elif key in ("objects", "object") and (key == "objects" or len(toks) == 2):
            objects += toks[1:]
            where.update({("o", x): k for x in toks[1:]})
        elif key == "identity" and len(toks) == 3:
            x, i = toks[1], toks[2]
            ident[x] = i
            mors[i] = (x, x)
            where[("m", i)] = k
        elif key == "morphism" and len(toks) == 4:
            if toks[1] in mors:
                raise ParseError(f"morphism {toks[1]!r} declared twice", k)
            mors[toks[1]] = (toks[2], toks[3])
            where[("m", toks[1])] = k
        elif key == "compose" and len(toks) == 4:
            comp[(toks[1], toks[2])] = toks[3]
        else:
            raise ParseError(f"unrecognized category line starting {key!r}", k)
    for x in objects:
        if x not in ident:
            raise ParseError(f"object {x!r} has no identity line", where.get(("o", x)))
    for m, (s, t) in mors.items():
        if s not in objects or t not in objects:
            raise ParseError(f"morphism {m!r} has an endpoint outside the objects", where.get(("m", m)))
        comp.setdefault((m, ident[s]), m)
        comp.setdefault((ident[t], m), m)
    try:
        return FinCategory(objects, mors, ident, comp, name=name)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_category(text: str) -> FinCategory:
    it = lines(text)
    _expect_header(it, "category")
    return parse_category_lines(it)


# -- functors --------------------------------------------------------------

def _blocks(it, names):
    """Split ``begin <name>`` ... ``end`` blocks from the remaining lines."""
    blocks, rest = {}, []
    current = None
    for k, toks in it:
        if toks[:1] == ["begin"] and len(toks) == 2:
            if current is not None:
                raise ParseError("nested begin", k)
            if toks[1] not in names:
                raise ParseError(f"unexpected block {toks[1]!r}", k)
            current, blocks[toks[1]] = toks[1], []
        elif toks == ["end"]:
            if current is None:
                raise ParseError("end without begin", k)
            current = None
        elif current is not None:
            blocks[current].append((k, toks))
        else:
            rest.append((k, toks))
    if current is not None:
        raise ParseError(f"block {current!r} is not closed")
    return blocks, rest


def format_functor(F: Functor) -> str:
    out = ["functor", "begin source", "category"] + category_body(F.source) + ["end"]
    out += ["begin target", "category"] + category_body(F.target) + ["end"]
    for x, y in F.on_objects.items():
        out.append(f"object {encode_name(x)} {encode_name(y)}")
    for f, g in F.on_morphisms.items():
        out.append(f"morphism {encode_name(f)} {encode_name(g)}")
    return "\n".join(out) + "\n"


def _category_block(block, what):
    if not block or block[0][1] != ["category"]:
        raise ParseError(f"{what} block must start with 'category'", block[0][0] if block else None)
    return parse_category_lines(block[1:])


def parse_functor(text: str) -> Functor:
    it = lines(text)
    _expect_header(it, "functor")
    blocks, rest = _blocks(it, {"source", "target"})
    for side in ("source", "target"):
        if side not in blocks:
            raise ParseError(f"missing {side} block")
    C, D = _category_block(blocks["source"], "source"), _category_block(blocks["target"], "target")
    on_obj, on_mor = {}, {}
    for k, toks in rest:
        if toks[:1] == ["object"] and len(toks) == 3:
            on_obj[toks[1]] = toks[2]
        elif toks[:1] == ["morphism"] and len(toks) == 3:
            on_mor[toks[1]] = toks[2]
        else:
            raise ParseError("expected 'object a b' or 'morphism f g'", k)
    for x in C.objects:
        if x in on_obj and C.identity[x] not in on_mor and on_obj[x] in D.identity:
            on_mor[C.identity[x]] = D.identity[on_obj[x]]
    return Functor(C, D, on_obj, on_mor)


# -- bisimplicial sets -----------------------------------------------------

def format_bisimplicial(W) -> str:
    out = ["bisimplicial-set", f"caps {W.caps[0]} {W.caps[1]}"]
    for (n, m) in sorted(W.levels):
        out.append(f"level {n} {m} " + " ".join(encode_name(x) for x in W.levels[(n, m)]))
    for (op, i, n, m), tab in sorted(W.table.items(), key=lambda kv: label_key(kv[0])):
        for x, y in tab.items():
            out.append(f"{op} {i} {n} {m} {encode_name(x)} {encode_name(y)}")
    return "\n".join(out) + "\n"


def parse_bisimplicial(text: str):
    from .sspace import OPS, TruncatedBisimplicialSet

    it = lines(text)
    _expect_header(it, "bisimplicial-set")
    try:
        k, toks = next(it)
    except StopIteration:
        raise ParseError("missing caps line") from None
    if toks[:1] != ["caps"] or len(toks) != 3 or not all(isinstance(t, int) for t in toks[1:]):
        raise ParseError("expected 'caps <N> <M>'", k)
    caps = (toks[1], toks[2])
    levels, table = {}, {}
    for k, toks in it:
        if toks[:1] == ["level"] and len(toks) >= 3:
            levels[(toks[1], toks[2])] = list(toks[3:])
        elif toks[:1] and toks[0] in OPS and len(toks) == 6:
            op, i, n, m, x, y = toks
            table.setdefault((op, i, n, m), {})[x] = y
        else:
            raise ParseError("expected a level line or an operator line", k)
    try:
        return TruncatedBisimplicialSet(caps, levels, table)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


# -- simplicial categories -------------------------------------------------

def format_simplicial_category(C) -> str:
    out = ["simplicial-category"]
    if C.name:
        out.append(f"name {encode_name(C.name)}")
    out.append(f"dim_cap {C.cap}")
    out.append("objects " + " ".join(encode_name(x) for x in C.objects))
    for a, i in C.identity.items():
        out.append(f"identity {encode_name(a)} {encode_name(i)}")
    for (a, b), X in C.maps.items():
        out.append(f"begin map {encode_name(a)} {encode_name(b)}")
        out += simplicial_set_body(X)
        out.append("end")
    for (a, b, c), per in C.compose.items():
        for m, tab in per.items():
            for (g, f), h in tab.items():
                out.append(f"compose {encode_name(a)} {encode_name(b)} {encode_name(c)} "
                           f"{encode_simplex(g)} {encode_simplex(f)} {encode_simplex(h)}")
    return "\n".join(out) + "\n"


def parse_simplicial_category(text: str):
    from .enriched import FinSimplicialCategory

    it = lines(text)
    _expect_header(it, "simplicial-category")
    name, cap, objects, ident, maps, compose = "", None, [], {}, {}, {}
    current, body = None, []
    for k, toks in it:
        if current is not None:
            if toks == ["end"]:
                if cap is None:
                    raise ParseError("dim_cap must precede map blocks", k)
                maps[current] = parse_simplicial_set_lines(body, cap)
                current, body = None, []
            else:
                body.append((k, toks))
            continue
        key = toks[0]
        if key == "name" and len(toks) == 2:
            name = str(toks[1])
        elif key == "dim_cap" and len(toks) == 2 and isinstance(toks[1], int):
            cap = toks[1]
        elif key == "objects":
            objects += toks[1:]
        elif key == "identity" and len(toks) == 3:
            ident[toks[1]] = toks[2]
        elif key == "begin" and len(toks) == 4 and toks[1] == "map":
            current = (toks[2], toks[3])
        elif key == "compose" and len(toks) == 7:
            a, b, c, g, f, h = toks[1:]
            g, f, h = _ref(g), _ref(f), _ref(h)
            if (b, c) not in maps:
                raise ParseError(f"compose line before Map({b!r},{c!r})", k)
            m = maps[(b, c)].dimension(g)
            compose.setdefault((a, b, c), {}).setdefault(m, {})[(g, f)] = h
        else:
            raise ParseError(f"unrecognized simplicial-category line starting {key!r}", k)
    if current is not None:
        raise ParseError(f"map block {current!r} is not closed")
    for a in objects:
        for b in objects:
            if (a, b) not in maps:
                raise ParseError(f"missing Map({a!r},{b!r})")
            for c in objects:
                for m in range((cap or 0) + 1):
                    compose.setdefault((a, b, c), {}).setdefault(m, {})
    try:
        return FinSimplicialCategory(objects, maps, ident, compose, name=name)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


# -- quivers ---------------------------------------------------------------

def format_quiver(Q, q: int | None = None, reps: dict | None = None) -> str:
    out = ["quiver", "vertices " + " ".join(encode_name(v) for v in Q.vertices)]
    for name, s, t in Q.arrows:
        out.append(f"arrow {encode_name(name)} {encode_name(s)} {encode_name(t)}")
    if q is not None:
        out.append(f"q {q}")
    for rname, R in (reps or {}).items():
        out.append(f"rep {encode_name(rname)} " + " ".join(map(str, R.dims)))
        for (aname, _, _), M in zip(Q.arrows, R.mats):
            if M.entries:
                out.append(f"matrix {encode_name(rname)} {encode_name(aname)} "
                           + " ".join(map(str, M.entries)))
    return "\n".join(out) + "\n"


def parse_quiver(text: str):
    """Returns (quiver, q or None, {rep name: Rep})."""
    from .finite_field import Mat
    from .hall import Rep, quiver

    it = lines(text)
    _expect_header(it, "quiver")
    verts, arrows, q = [], [], None
    rep_dims, rep_mats, order = {}, {}, []
    for k, toks in it:
        key = toks[0]
        if key == "vertices":
            verts += toks[1:]
        elif key == "arrow" and len(toks) == 4:
            arrows.append((toks[1], toks[2], toks[3]))
        elif key == "q" and len(toks) == 2 and isinstance(toks[1], int):
            q = toks[1]
        elif key == "rep" and len(toks) >= 2 and all(isinstance(t, int) for t in toks[2:]):
            rep_dims[toks[1]] = (tuple(toks[2:]), k)
            order.append(toks[1])
        elif key == "matrix" and len(toks) >= 3 and all(isinstance(t, int) for t in toks[3:]):
            rep_mats.setdefault(toks[1], {})[toks[2]] = (tuple(toks[3:]), k)
        else:
            raise ParseError(f"unrecognized quiver line starting {key!r}", k)
    try:
        Q = quiver(verts, arrows)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    reps = {}
    if rep_dims and q is None:
        raise ParseError("representations need a 'q' line")
    idx = {v: i for i, v in enumerate(Q.vertices)}
    for rname in order:
        dims, k = rep_dims[rname]
        if len(dims) != len(Q.vertices):
            raise ParseError(f"rep {rname!r} needs one dimension per vertex", k)
        mats = []
        for aname, s, t in Q.arrows:
            rows, cols = dims[idx[t]], dims[idx[s]]
            entries, mk = rep_mats.get(rname, {}).get(aname, ((0,) * (rows * cols), k))
            if len(entries) != rows * cols:
                raise ParseError(f"matrix {aname!r} of {rname!r} needs {rows * cols} entries", mk)
            mats.append(Mat(rows, cols, entries))
        try:
            reps[rname] = Rep(Q, q, dims, tuple(mats))
        except ValueError as exc:
            raise ParseError(str(exc), k) from None
    return Q, q, reps
