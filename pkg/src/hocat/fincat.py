"""Finite categories given by an explicit composition table."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Hashable, Iterable, Mapping

from ._order import label_key, sorted_labels
from .simpset import SimplexRef, TruncatedSimplicialSet


class CategoryError(ValueError):
    pass


class FinCategory:
    """Objects, morphisms with endpoints, identities and a composition table.

    ``compose[(g, f)]`` is ``g . f`` and is defined when ``target(f) ==
    source(g)``.  The constructor checks endpoints only; use
    :func:`verify_category` for the category axioms.
    """

    def __init__(self, objects: Iterable[Hashable],
                 morphisms: Mapping[Hashable, tuple[Hashable, Hashable]],
                 identity: Mapping[Hashable, Hashable],
                 compose: Mapping[tuple[Hashable, Hashable], Hashable],
                 name: str = ""):
        self.name = name
        self.objects = tuple(sorted_labels(set(objects)))
        self.morphisms = {m: tuple(morphisms[m]) for m in sorted_labels(morphisms)}
        self.identity = {x: identity[x] for x in self.objects if x in identity}
        self.compose = dict(compose)
        obs = set(self.objects)
        for m, (s, t) in self.morphisms.items():
            if s not in obs or t not in obs:
                raise CategoryError(f"morphism {m!r} has an endpoint outside the objects")
        self._hom: dict = {}
        for m, (s, t) in self.morphisms.items():
            self._hom.setdefault((s, t), []).append(m)
        self._out: dict = {}
        for m, (s, t) in self.morphisms.items():
            self._out.setdefault(s, []).append(m)

    def source(self, f):
        return self.morphisms[f][0]

    def target(self, f):
        return self.morphisms[f][1]

    def hom(self, x, y) -> list:
        return self._hom.get((x, y), [])

    def out_of(self, x) -> list:
        return self._out.get(x, [])

    def comp(self, g, f):
        """g . f"""
        try:
            return self.compose[(g, f)]
        except KeyError:
            raise CategoryError(f"composite of {g!r} after {f!r} undefined") from None

    def is_identity(self, f) -> bool:
        return self.identity.get(self.source(f)) == f

    def composable_pairs(self):
        for f in self.morphisms:
            for g in self.out_of(self.target(f)):
                yield g, f

    def non_identity(self) -> list:
        return [f for f in self.morphisms if not self.is_identity(f)]

    def inverse(self, f):
        cache = self.__dict__.setdefault("_inverse", {})
        if f in cache:
            return cache[f]
        s, t = self.morphisms[f]
        out = None
        for g in self.hom(t, s):
            if (self.compose.get((g, f)) == self.identity.get(s)
                    and self.compose.get((f, g)) == self.identity.get(t)):
                out = g
                break
        cache[f] = out
        return out

    def is_iso(self, f) -> bool:
        return self.inverse(f) is not None

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FinCategory{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (self.objects == other.objects and self.morphisms == other.morphisms
                and self.identity == other.identity and self.compose == other.compose)

    __hash__ = object.__hash__


def verify_category(C: FinCategory) -> list[str]:
    """Every violated axiom as a readable line; empty iff C is a category."""
    out = []
    for x in C.objects:
        i = C.identity.get(x)
        if i is None:
            out.append(f"no identity for {x!r}")
        elif C.morphisms.get(i) != (x, x):
            out.append(f"identity {i!r} of {x!r} has wrong endpoints")
    if out:
        return out
    for g, f in C.composable_pairs():
        h = C.compose.get((g, f))
        if h is None:
            out.append(f"missing composite {g!r} . {f!r}")
        elif h not in C.morphisms or C.morphisms[h] != (C.source(f), C.target(g)):
            out.append(f"composite {g!r} . {f!r} = {h!r} has wrong endpoints")
    for (g, f) in C.compose:
        if g not in C.morphisms or f not in C.morphisms or C.target(f) != C.source(g):
            out.append(f"table entry for non-composable pair ({g!r}, {f!r})")
    if out:
        return out
    for f in C.morphisms:
        s, t = C.morphisms[f]
        if C.comp(C.identity[t], f) != f:
            out.append(f"left identity law fails at {f!r}")
        if C.comp(f, C.identity[s]) != f:
            out.append(f"right identity law fails at {f!r}")
    for g, f in C.composable_pairs():
        gf = C.comp(g, f)
        for h in C.out_of(C.target(g)):
            if C.comp(h, gf) != C.comp(C.comp(h, g), f):
                out.append(f"associativity fails at triple ({h!r}, {g!r}, {f!r})")
    return out


# -- builders ----------------------------------------------------------------

def from_generators_poset(elements: Iterable[Hashable], leq) -> FinCategory:
    """Poset category; morphism ``(a, b)`` exists iff ``leq(a, b)``."""
    elements = list(elements)
    mors = {(a, b): (a, b) for a in elements for b in elements if leq(a, b)}
    comp = {((b, c), (a, b)): (a, c) for (a, b) in mors for (b2, c) in mors if b2 == b}
    return FinCategory(elements, mors, {a: (a, a) for a in elements}, comp)


def monoid(elements: Iterable[Hashable], mult, unit, obj="*", name="") -> FinCategory:
    """One-object category; ``mult(g, f)`` is the composite g . f."""
    elements = list(elements)
    mors = {m: (obj, obj) for m in elements}
    comp = {(g, f): mult(g, f) for g in elements for f in elements}
    return FinCategory([obj], mors, {obj: unit}, comp, name=name)


def cyclic_group(n: int, name="") -> FinCategory:
    return monoid(range(n), lambda a, b: (a + b) % n, 0, name=name or f"Z/{n}")


def discrete_category(objects: Iterable[Hashable]) -> FinCategory:
    objects = list(objects)
    return FinCategory(objects, {("id", x): (x, x) for x in objects},
                       {x: ("id", x) for x in objects},
                       {(("id", x), ("id", x)): ("id", x) for x in objects})


def codiscrete(objects: Iterable[Hashable], name="") -> FinCategory:
    """The contractible groupoid: exactly one morphism between any two objects."""
    objects = list(objects)
    mors = {(a, b): (a, b) for a in objects for b in objects}
    comp = {((b, c), (a, b)): (a, c) for a in objects for b in objects for c in objects}
    return FinCategory(objects, mors, {a: (a, a) for a in objects}, comp, name=name)


def terminal_category() -> FinCategory:
    """C: one object, only the identity."""
    return FinCategory(["x"], {"id_x": ("x", "x")}, {"x": "id_x"},
                       {("id_x", "id_x"): "id_x"}, name="C")


def walking_arrow() -> FinCategory:
    """E: objects x, y and one non-identity morphism f : x -> y."""
    mors = {"id_x": ("x", "x"), "id_y": ("y", "y"), "f": ("x", "y")}
    comp = {("id_x", "id_x"): "id_x", ("id_y", "id_y"): "id_y",
            ("f", "id_x"): "f", ("id_y", "f"): "f"}
    return FinCategory(["x", "y"], mors, {"x": "id_x", "y": "id_y"}, comp, name="E")


def walking_iso() -> FinCategory:
    """D: objects x, y and an isomorphism f : x -> y with inverse g."""
    mors = {"id_x": ("x", "x"), "id_y": ("y", "y"), "f": ("x", "y"), "g": ("y", "x")}
    comp = {("id_x", "id_x"): "id_x", ("id_y", "id_y"): "id_y",
            ("f", "id_x"): "f", ("id_y", "f"): "f", ("g", "id_y"): "g", ("id_x", "g"): "g",
            ("g", "f"): "id_x", ("f", "g"): "id_y"}
    return FinCategory(["x", "y"], mors, {"x": "id_x", "y": "id_y"}, comp, name="D")


def full_subcategory(C: FinCategory, objects: Iterable[Hashable]) -> FinCategory:
    obs = set(objects)
    mors = {m: st for m, st in C.morphisms.items() if st[0] in obs and st[1] in obs}
    return subcategory(C, obs, mors)


def subcategory(C: FinCategory, objects, morphisms) -> FinCategory:
    mset = set(morphisms)
    comp = {(g, f): h for (g, f), h in C.compose.items() if g in mset and f in mset}
    for (g, f), h in comp.items():
        if h not in mset:
            raise CategoryError(f"subcategory not closed: {g!r} . {f!r} = {h!r}")
    return FinCategory(objects, {m: C.morphisms[m] for m in mset},
                       {x: C.identity[x] for x in objects}, comp)


def opposite(C: FinCategory) -> FinCategory:
    mors = {m: (t, s) for m, (s, t) in C.morphisms.items()}
    comp = {(f, g): h for (g, f), h in C.compose.items()}
    return FinCategory(C.objects, mors, C.identity, comp, name=C.name + "^op" if C.name else "")


# -- functors ----------------------------------------------------------------

@dataclass
class Functor:
    source: FinCategory
    target: FinCategory
    on_objects: dict = field(default_factory=dict)
    on_morphisms: dict = field(default_factory=dict)

    def __call__(self, f):
        return self.on_morphisms[f]


def verify_functor(F: Functor) -> list[str]:
    C, D = F.source, F.target
    out = []
    for x in C.objects:
        if F.on_objects.get(x) not in D.objects:
            out.append(f"object {x!r} has no valid image")
    for f, (s, t) in C.morphisms.items():
        img = F.on_morphisms.get(f)
        if img not in D.morphisms:
            out.append(f"morphism {f!r} has no valid image")
        elif D.morphisms[img] != (F.on_objects.get(s), F.on_objects.get(t)):
            out.append(f"image of {f!r} has wrong endpoints")
    if out:
        return out
    for x in C.objects:
        if F(C.identity[x]) != D.identity[F.on_objects[x]]:
            out.append(f"identity of {x!r} not preserved")
    for g, f in C.composable_pairs():
        if F(C.comp(g, f)) != D.comp(F(g), F(f)):
            out.append(f"composite {g!r} . {f!r} not preserved")
    return out


def identity_functor(C: FinCategory) -> Functor:
    return Functor(C, C, {x: x for x in C.objects}, {f: f for f in C.morphisms})


def inclusion(sub: FinCategory, C: FinCategory) -> Functor:
    return Functor(sub, C, {x: x for x in sub.objects}, {f: f for f in sub.morphisms})


def compose_functors(G: Functor, F: Functor) -> Functor:
    return Functor(F.source, G.target,
                   {x: G.on_objects[F.on_objects[x]] for x in F.source.objects},
                   {f: G(F(f)) for f in F.source.morphisms})


def is_full(F: Functor) -> bool:
    C, D = F.source, F.target
    for x in C.objects:
        for y in C.objects:
            images = {F(f) for f in C.hom(x, y)}
            if len(images) != len(D.hom(F.on_objects[x], F.on_objects[y])):
                return False
    return True


def is_faithful(F: Functor) -> bool:
    C = F.source
    for x in C.objects:
        for y in C.objects:
            hom = C.hom(x, y)
            if len({F(f) for f in hom}) != len(hom):
                return False
    return True


def is_essentially_surjective(F: Functor) -> bool:
    D = F.target
    hit = set(F.on_objects.values())
    for d in D.objects:
        if d in hit:
            continue
        if not any(D.is_iso(g) for c in hit for g in D.hom(c, d)):
            return False
    return True


def check_equivalence(F: Functor) -> bool:
    """Fully faithful and essentially surjective."""
    problems = verify_functor(F)
    if problems:
        raise CategoryError("ill-formed functor: " + problems[0])
    return is_full(F) and is_faithful(F) and is_essentially_surjective(F)


# -- groupoids -----------------------------------------------------------

def is_groupoid(C: FinCategory) -> bool:
    return all(C.is_iso(f) for f in C.morphisms)


def maximal_subgroupoid(C: FinCategory) -> FinCategory:
    isos = [f for f in C.morphisms if C.is_iso(f)]
    sub = subcategory(C, C.objects, isos)
    sub.name = f"iso({C.name})" if C.name else ""
    return sub


def isomorphism_classes(C: FinCategory) -> list[frozenset]:
    classes: list[set] = []
    for x in C.objects:
        for cls in classes:
            y = next(iter(cls))
            if any(C.is_iso(f) for f in C.hom(y, x)):
                cls.add(x)
                break
        else:
            classes.append({x})
    return sorted((frozenset(c) for c in classes), key=lambda c: label_key(min(c, key=label_key)))


# -- nerve ---------------------------------------------------------------

def _chain_normal_form(C: FinCategory, chain: tuple) -> SimplexRef:
    """Drop identities from a chain of morphisms, recording their positions."""
    keep = tuple(f for f in chain if not C.is_identity(f))
    word = tuple(p for p in range(len(chain) - 1, -1, -1) if C.is_identity(chain[p]))
    if keep:
        return SimplexRef(keep, word)
    return SimplexRef(C.source(chain[0]), word)


def chain_faces(C: FinCategory, chain: tuple) -> list[tuple]:
    """Faces of a composable chain (f_1, ..., f_n), f_1 applied first."""
    n = len(chain)
    if n == 1:
        (f,) = chain
        return [(C.target(f),), (C.source(f),)]
    out = [chain[1:]]
    for i in range(1, n):
        out.append(chain[:i - 1] + (C.comp(chain[i], chain[i - 1]),) + chain[i + 1:])
    out.append(chain[:-1])
    return out


def composable_chains(C: FinCategory, n: int, allow_identities=True) -> list[tuple]:
    mors = [f for f in C.morphisms if allow_identities or not C.is_identity(f)]
    if n == 0:
        return []
    chains = [(f,) for f in mors]
    for _ in range(n - 1):
        chains = [ch + (g,) for ch in chains for g in C.out_of(C.target(ch[-1]))
                  if allow_identities or not C.is_identity(g)]
    return chains


def nerve(C: FinCategory, dim_cap: int) -> TruncatedSimplicialSet:
    """Vertices are objects; nondegenerate n-simplices are identity-free chains.

    A chain ``(f_1, ..., f_n)`` is the simplex ``x_0 -> x_1 -> ... -> x_n``
    with ``f_i : x_{i-1} -> x_i``.
    """
    if dim_cap < 0:
        raise CategoryError("dim_cap must be >= 0")
    cells = {0: list(C.objects)}
    faces = {}
    for n in range(1, dim_cap + 1):
        cells[n] = composable_chains(C, n, allow_identities=False)
        for ch in cells[n]:
            fs = []
            for face in chain_faces(C, ch):
                if n == 1:
                    fs.append(SimplexRef(face[0]))
                else:
                    fs.append(_chain_normal_form(C, face))
            faces[ch] = fs
    return TruncatedSimplicialSet(dim_cap, cells, faces)


def nerve_simplex(C: FinCategory, chain: tuple) -> SimplexRef:
    """Normal form of an arbitrary chain (identities allowed) in nerve(C)."""
    return _chain_normal_form(C, chain)


# -- functor categories C^[n] ---------------------------------------------

def arrow_category(C: FinCategory, n: int) -> FinCategory:
    """C^[n]: objects are ``(x_0, f_1, ..., f_n)``; morphisms are ladders.

    A morphism is named ``(source, target, (a_0, ..., a_n))`` with
    ``a_i : x_i -> y_i`` and ``a_i . f_i = g_i . a_{i-1}``.
    """
    if n < 0:
        raise CategoryError("n must be >= 0")
    if n == 0:
        objs = [(x,) for x in C.objects]
    else:
        objs = [(C.source(ch[0]),) + ch for ch in composable_chains(C, n)]

    def verts(ob):
        xs = [ob[0]]
        for f in ob[1:]:
            xs.append(C.target(f))
        return xs

    mors, ident = {}, {}
    for a in objs:
        va = verts(a)
        for b in objs:
            vb = verts(b)
            choices = [C.hom(va[i], vb[i]) for i in range(n + 1)]
            for comps in product(*choices):
                if all(C.comp(comps[i], a[i]) == C.comp(b[i], comps[i - 1]) for i in range(1, n + 1)):
                    mors[(a, b, comps)] = (a, b)
        ident[a] = (a, a, tuple(C.identity[v] for v in va))
    comp = {}
    for (a, b, u) in mors:
        for (b2, c, v) in mors:
            if b2 == b:
                comp[((b, c, v), (a, b, u))] = (a, c, tuple(C.comp(v[i], u[i]) for i in range(n + 1)))
    return FinCategory(objs, mors, ident, comp, name=f"{C.name}^[{n}]" if C.name else "")


# -- Ore condition -------------------------------------------------------

@dataclass(frozen=True)
class MorphismClass:
    """A class S of morphisms of ``ambient`` containing every identity."""
    ambient: FinCategory
    members: frozenset

    def __post_init__(self):
        bad = [m for m in self.members if m not in self.ambient.morphisms]
        if bad:
            raise CategoryError(f"{bad[0]!r} is not a morphism of the ambient category")

    def __contains__(self, f):
        return f in self.members


def morphism_class(C: FinCategory, members: Iterable[Hashable]) -> MorphismClass:
    return MorphismClass(C, frozenset(members) | frozenset(C.identity.values()))


def isomorphisms(C: FinCategory) -> MorphismClass:
    return morphism_class(C, [f for f in C.morphisms if C.is_iso(f)])


@dataclass(frozen=True)
class OreResult:
    holds: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


def ore_check(C: FinCategory, S: MorphismClass, dual: bool = False) -> OreResult:
    """Square completion: every span (s : a -> b in S, f : a -> c) admits
    t : c -> d in S and g : b -> d with t . f = g . s.

    With ``dual=True`` the check runs on the opposite category (cospans).
    """
    if dual:
        Cop = opposite(C)
        return ore_check(Cop, MorphismClass(Cop, S.members))
    for s in sorted_labels(S.members):
        a, b = C.morphisms[s]
        for f in C.out_of(a):
            c = C.target(f)
            ok = any(C.comp(t, f) == C.comp(g, s)
                     for t in C.out_of(c) if t in S
                     for g in C.hom(b, C.target(t)))
            if not ok:
                return OreResult(False, (s, f))
    return OreResult(True)
