"""Objects and hom-sets of Joyal's category Theta_n.

An object of level n >= 1 is ``[m](c_1, ..., c_m)`` with each ``c_i`` of
level n - 1; level 0 has the single object ``*``.  A morphism
``[m](c) -> [p](d)`` is a monotone ``delta : [m] -> [p]`` together with
blocks ``f_ij : c_i -> d_j`` for exactly the pairs with
``delta(i-1) < j <= delta(i)``.  Theta_n is infinite, so only hom-sets
between given objects are enumerated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Iterator


class ThetaError(ValueError):
    pass


@dataclass(frozen=True)
class ThetaObject:
    level: int
    m: int = 0
    children: tuple = ()

    def __post_init__(self):
        if self.level < 0:
            raise ThetaError("level must be >= 0")
        if self.level == 0:
            if self.m or self.children:
                raise ThetaError("the level-0 object has no structure")
            return
        if len(self.children) != self.m:
            raise ThetaError(f"[{self.m}] needs {self.m} labels, got {len(self.children)}")
        for c in self.children:
            if not isinstance(c, ThetaObject) or c.level != self.level - 1:
                raise ThetaError("labels must be objects of the level below")

    def __str__(self):
        return format_theta(self)


POINT = ThetaObject(0)


def theta(m: int, *children: ThetaObject, level: int | None = None) -> ThetaObject:
    """``[m](c_1, ..., c_m)``; the level of ``[0]`` must be given explicitly."""
    if children:
        return ThetaObject(children[0].level + 1, m, tuple(children))
    if m:
        raise ThetaError("use theta(m, *labels) for m > 0")
    if level is None:
        raise ThetaError("[0] needs an explicit level")
    return ThetaObject(level, 0, ())


def simplex(m: int) -> ThetaObject:
    """[m] in Theta_1 = Delta."""
    return ThetaObject(1, m, (POINT,) * m)


@dataclass(frozen=True)
class ThetaMorphism:
    source: ThetaObject
    target: ThetaObject
    delta: tuple = ()
    blocks: tuple = ()  # sorted ((i, j), ThetaMorphism) pairs

    def block(self, i: int, j: int) -> "ThetaMorphism":
        return dict(self.blocks)[(i, j)]

    def block_indices(self) -> tuple:
        return tuple(ij for ij, _ in self.blocks)


def required_blocks(delta: tuple) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, len(delta)) for j in range(delta[i - 1] + 1, delta[i] + 1)]


def monotone_maps(m: int, p: int) -> Iterator[tuple]:
    for combo in combinations_with_replacement(range(p + 1), m + 1):
        yield combo


def make_morphism(source: ThetaObject, target: ThetaObject, delta, blocks: dict) -> ThetaMorphism:
    """Validate the index pattern and endpoints of ``(delta, {f_ij})``."""
    if source.level != target.level:
        raise ThetaError("level mismatch")
    if source.level == 0:
        return ThetaMorphism(source, target)
    delta = tuple(delta)
    if len(delta) != source.m + 1 or any(not 0 <= v <= target.m for v in delta):
        raise ThetaError("delta has the wrong shape")
    if any(a > b for a, b in zip(delta, delta[1:])):
        raise ThetaError("delta is not order preserving")
    need = required_blocks(delta)
    if sorted(blocks) != need:
        raise ThetaError(f"blocks {sorted(blocks)} do not match the pattern {need}")
    for (i, j), f in blocks.items():
        if f.source != source.children[i - 1] or f.target != target.children[j - 1]:
            raise ThetaError(f"block f_{i}{j} has the wrong endpoints")
    return ThetaMorphism(source, target, delta, tuple(sorted(blocks.items())))


def theta_hom(a: ThetaObject, b: ThetaObject) -> list[ThetaMorphism]:
    """Every morphism a -> b."""
    if a.level != b.level:
        raise ThetaError("level mismatch")
    if a.level == 0:
        return [ThetaMorphism(a, b)]
    out = []
    for delta in monotone_maps(a.m, b.m):
        need = required_blocks(delta)
        options = [theta_hom(a.children[i - 1], b.children[j - 1]) for i, j in need]
        for choice in product(*options):
            out.append(ThetaMorphism(a, b, delta, tuple(zip(need, choice))))
    return out


def theta_identity(a: ThetaObject) -> ThetaMorphism:
    if a.level == 0:
        return ThetaMorphism(a, a)
    blocks = {(i, i): theta_identity(a.children[i - 1]) for i in range(1, a.m + 1)}
    return make_morphism(a, a, tuple(range(a.m + 1)), blocks)


def theta_compose(g: ThetaMorphism, f: ThetaMorphism) -> ThetaMorphism:
    """g . f: compose the deltas and paste blocks h_ik = g_jk . f_ij.

    For each k with (g.f)(i-1) < k <= (g.f)(i) there is exactly one j with
    delta_f(i-1) < j <= delta_f(i) and delta_g(j-1) < k <= delta_g(j).
    """
    if f.target != g.source:
        raise ThetaError("endpoints do not match")
    if f.source.level == 0:
        return ThetaMorphism(f.source, g.target)
    df, dg = f.delta, g.delta
    fb, gb = dict(f.blocks), dict(g.blocks)
    delta = tuple(dg[v] for v in df)
    blocks = {}
    for i, k in required_blocks(delta):
        js = [j for j in range(df[i - 1] + 1, df[i] + 1) if dg[j - 1] < k <= dg[j]]
        if len(js) != 1:
            raise ThetaError("block pasting is ambiguous")
        j = js[0]
        blocks[(i, k)] = theta_compose(gb[(j, k)], fb[(i, j)])
    return ThetaMorphism(f.source, g.target, delta, tuple(sorted(blocks.items())))


def theta_objects(level: int, max_size: int) -> list[ThetaObject]:
    """All objects of the given level whose total size is at most ``max_size``.

    Size counts every bracket ``[m]`` as m (the number of arrows at all
    levels), so the list is finite.
    """
    if level == 0:
        return [POINT]
    out = []
    below = {}

    def lower(budget):
        if budget not in below:
            below[budget] = [o for o in theta_objects(level - 1, budget)]
        return below[budget]

    for m in range(0, max_size + 1):
        rest = max_size - m
        if m == 0:
            out.append(ThetaObject(level, 0, ()))
            continue
        pool = lower(rest)
        for kids in product(pool, repeat=m):
            if sum(size(k) for k in kids) <= rest:
                out.append(ThetaObject(level, m, kids))
    return out


def size(a: ThetaObject) -> int:
    return a.m + sum(size(c) for c in a.children)


# -- text form -----------------------------------------------------------

def format_theta(a: ThetaObject) -> str:
    if a.level == 0:
        return "·"
    if a.m == 0:
        return "[0]"
    return f"[{a.m}](" + ",".join(format_theta(c) for c in a.children) + ")"


_TOKEN = re.compile(r"\s*(\[\d+\]|[(),]|·|\*)")


def parse_theta(text: str, level: int | None = None) -> ThetaObject:
    """Parse nested bracket terms such as ``[2]([1](·),[0])``.

    ``·`` (or ``*``) is the level-0 object.  A bare ``[0]`` takes its level
    from its siblings or from ``level``.
    """
    toks, pos = [], 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ThetaError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        toks.append(mt.group(1))
        pos = mt.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def tree(i):
        t = toks[i]
        if t in ("·", "*"):
            return ("pt",), i + 1
        if not t.startswith("["):
            raise ThetaError(f"unexpected token {t!r}")
        m = int(t[1:-1])
        kids = []
        i += 1
        if i < len(toks) and toks[i] == "(":
            i += 1
            while True:
                k, i = tree(i)
                kids.append(k)
                if toks[i] == ",":
                    i += 1
                    continue
                if toks[i] == ")":
                    i += 1
                    break
                raise ThetaError("expected ',' or ')'")
        return ("br", m, kids), i

    try:
        node, end = tree(0)
    except IndexError:
        raise ThetaError("unterminated term") from None
    if end != len(toks):
        raise ThetaError("trailing input")

    def depth(nd):
        if nd[0] == "pt":
            return 0
        return 1 + max((depth(k) for k in nd[2]), default=0)

    def build(nd, lev):
        if nd[0] == "pt":
            if lev != 0:
                raise ThetaError("· only occurs at level 0")
            return POINT
        _, m, kids = nd
        if lev < 1:
            raise ThetaError("bracket below level 1")
        if m and not kids and lev == 1:
            kids = [("pt",)] * m
        if len(kids) != m:
            raise ThetaError(f"[{m}] needs {m} labels")
        return ThetaObject(lev, m, tuple(build(k, lev - 1) for k in kids))

    return build(node, depth(node) if level is None else level)
