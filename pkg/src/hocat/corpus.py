"""A deterministic corpus of small finite categories.

Every entry has at most 4 objects and 12 morphisms: all posets on up to 4
elements (up to isomorphism), all monoids of order 2 and 3, small groups,
small groupoids and a few hand-made shapes.
"""

from __future__ import annotations

from itertools import permutations, product

from .fincat import (FinCategory, codiscrete, cyclic_group, discrete_category, from_generators_poset,
                     monoid, opposite, verify_category, walking_arrow, walking_iso)

MAX_OBJECTS = 4
MAX_MORPHISMS = 12


def posets(n: int) -> list[frozenset]:
    """Strict order relations on range(n), one per isomorphism class."""
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    seen, out = set(), []
    for bits in product((0, 1), repeat=len(pairs)):
        rel = {p for p, bit in zip(pairs, bits) if bit}
        if any((b, a) in rel for a, b in rel):
            continue
        if any((a, d) not in rel for a, b in rel for c, d in rel if b == c and a != d):
            continue
        canon = min(tuple(sorted((perm[a], perm[b]) for a, b in rel)) for perm in permutations(range(n)))
        if canon not in seen:
            seen.add(canon)
            out.append(frozenset(canon))
    return sorted(out, key=lambda r: (len(r), sorted(r)))


def poset_category(n: int, rel: frozenset, name: str = "") -> FinCategory:
    C = from_generators_poset(range(n), lambda a, b: a == b or (a, b) in rel)
    C.name = name
    return C


def monoids(order: int) -> list[FinCategory]:
    """All monoid tables on {0, ..., order-1} with unit 0, up to isomorphism."""
    others = list(range(1, order))
    seen, out = set(), []
    cells = [(a, b) for a in others for b in others]
    for values in product(range(order), repeat=len(cells)):
        t = dict(zip(cells, values))

        def mul(a, b):
            if a == 0:
                return b
            if b == 0:
                return a
            return t[(a, b)]

        elems = range(order)
        if any(mul(mul(a, b), c) != mul(a, mul(b, c)) for a in elems for b in elems for c in elems):
            continue
        canon = None
        for perm in permutations(others):
            p = {0: 0, **dict(zip(others, perm))}
            key = tuple(sorted(((p[a], p[b]), p[mul(a, b)]) for a, b in cells))
            canon = key if canon is None or key < canon else canon
        if canon in seen:
            continue
        seen.add(canon)
        name = f"M{order}." + "".join(str(mul(a, b)) for a, b in cells)
        out.append(monoid(range(order), mul, 0, name=name))
    return out


def klein_group() -> FinCategory:
    return monoid(range(4), lambda a, b: a ^ b, 0, name="Z2xZ2")


def parallel_arrows() -> FinCategory:
    mors = {"id_x": ("x", "x"), "id_y": ("y", "y"), "f": ("x", "y"), "g": ("x", "y")}
    comp = {("id_x", "id_x"): "id_x", ("id_y", "id_y"): "id_y"}
    for m in ("f", "g"):
        comp[(m, "id_x")] = m
        comp[("id_y", m)] = m
    return FinCategory(["x", "y"], mors, {"x": "id_x", "y": "id_y"}, comp, name="parallel")


def split_idempotent() -> FinCategory:
    """x --i--> y --r--> x with r . i = id_x, so e = i . r is idempotent on y."""
    mors = {"id_x": ("x", "x"), "id_y": ("y", "y"), "i": ("x", "y"), "r": ("y", "x"), "e": ("y", "y")}
    ident = {"x": "id_x", "y": "id_y"}
    comp = {("r", "i"): "id_x", ("i", "r"): "e", ("e", "e"): "e", ("e", "i"): "i", ("r", "e"): "r"}
    for m, (s, t) in mors.items():
        comp[(m, ident[s])] = m
        comp[(ident[t], m)] = m
    return FinCategory(["x", "y"], mors, ident, comp, name="split-idempotent")


def disjoint_sum(*cats: FinCategory, name: str = "") -> FinCategory:
    objs, mors, ident, comp = [], {}, {}, {}
    for k, C in enumerate(cats):
        objs += [(k, x) for x in C.objects]
        mors.update({(k, m): ((k, s), (k, t)) for m, (s, t) in C.morphisms.items()})
        ident.update({(k, x): (k, i) for x, i in C.identity.items()})
        comp.update({((k, g), (k, f)): (k, h) for (g, f), h in C.compose.items()})
    return FinCategory(objs, mors, ident, comp, name=name)


def product_category(A: FinCategory, B: FinCategory, name: str = "") -> FinCategory:
    objs = [(a, b) for a in A.objects for b in B.objects]
    mors = {(f, g): ((A.source(f), B.source(g)), (A.target(f), B.target(g)))
            for f in A.morphisms for g in B.morphisms}
    ident = {(a, b): (A.identity[a], B.identity[b]) for a, b in objs}
    comp = {((f2, g2), (f1, g1)): (A.comp(f2, f1), B.comp(g2, g1))
            for f2, f1 in A.composable_pairs() for g2, g1 in B.composable_pairs()}
    return FinCategory(objs, mors, ident, comp, name=name)


def corpus() -> list[FinCategory]:
    """The corpus in a fixed order; every entry passes verify_category."""
    cats = []
    for n in range(1, 5):
        for k, rel in enumerate(posets(n)):
            cats.append(poset_category(n, rel, name=f"poset{n}.{k}"))
    cats += monoids(2) + monoids(3)
    cats += [cyclic_group(n, name=f"Z{n}") for n in (2, 3, 4)] + [klein_group()]
    D = walking_iso()
    discrete = []
    for k in (2, 3, 4):
        P = discrete_category("abcd"[:k])
        P.name = f"discrete{k}"
        discrete.append(P)
    cats += discrete
    cats += [
        walking_arrow(), D, codiscrete(["a", "b", "c"], name="codiscrete3"),
        parallel_arrows(), split_idempotent(), opposite(split_idempotent()),
        disjoint_sum(D, cyclic_group(2), name="D+Z2"),
        disjoint_sum(walking_arrow(), walking_iso(), name="E+D"),
        product_category(D, cyclic_group(2), name="DxZ2"),
        disjoint_sum(cyclic_group(2), cyclic_group(2), name="Z2+Z2"),
        disjoint_sum(walking_arrow(), walking_arrow(), name="E+E"),
        product_category(walking_arrow(), cyclic_group(2), name="ExZ2"),
    ]
    for C in cats:
        if len(C.objects) > MAX_OBJECTS or len(C.morphisms) > MAX_MORPHISMS:
            raise ValueError(f"corpus entry {C.name} is too large")
    return cats


def validate_corpus(cats: list[FinCategory]) -> list[str]:
    return [f"{C.name}: {p}" for C in cats for p in verify_category(C)]
