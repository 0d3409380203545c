"""Finite simplicial categories, cube categories and the coherent nerve.

A :class:`FinSimplicialCategory` stores every mapping space as a truncated
simplicial set with a shared cap and composition as one table per
simplicial level, keyed on normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Hashable, Iterable

from ._order import label_key, sorted_labels
from .fincat import FinCategory, Functor, MorphismClass, check_equivalence, nerve, nerve_simplex
from .simpset import (SimplexRef, SimplicialMap, TruncatedSimplicialSet, from_simplicial_data,
                      homology, pi0, ref, word_from_surjection)
from .verdicts import ResourceLimit, Verdict


class EnrichmentError(ValueError):
    pass


class FinSimplicialCategory:
    """Objects, mapping spaces ``maps[(a, b)]`` and levelwise composition.

    ``compose[(a, b, c)][m]`` sends ``(g, f)`` with g an m-simplex of
    Map(b, c) and f one of Map(a, b) to an m-simplex of Map(a, c).
    ``identity[a]`` is a vertex name of Map(a, a).
    """

    def __init__(self, objects: Iterable[Hashable], maps: dict, identity: dict, compose: dict,
                 name: str = ""):
        self.name = name
        self.objects = tuple(sorted_labels(set(objects)))
        caps = {X.dim_cap for X in maps.values()}
        if len(caps) > 1:
            raise EnrichmentError(f"mapping spaces have different caps {sorted(caps)}")
        self.cap = caps.pop() if caps else 0
        self.maps = {(a, b): maps[(a, b)] for a in self.objects for b in self.objects}
        self.identity = dict(identity)
        self.compose = compose

    def map(self, a, b) -> TruncatedSimplicialSet:
        return self.maps[(a, b)]

    def comp(self, a, b, c, g, f) -> SimplexRef:
        m = self.maps[(b, c)].dimension(ref(g))
        return self.compose[(a, b, c)][m][(ref(g), ref(f))]

    def identity_at(self, a, m: int) -> SimplexRef:
        return self.maps[(a, a)].iterated_degeneracy(SimplexRef(self.identity[a]), m)

    def __repr__(self):
        return f"<FinSimplicialCategory {len(self.objects)} objects, cap {self.cap}>"


def tabulate_composition(objects, maps: dict, identity: dict, comp, name="") -> FinSimplicialCategory:
    """Build the composition tables from ``comp(a, b, c, g, f)`` on simplices."""
    objects = sorted_labels(set(objects))
    caps = {X.dim_cap for X in maps.values()}
    cap = max(caps) if caps else 0
    table = {}
    for a, b, c in product(objects, repeat=3):
        per = {}
        for m in range(cap + 1):
            per[m] = {(g, f): comp(a, b, c, g, f)
                      for g in maps[(b, c)].n_simplices(m) for f in maps[(a, b)].n_simplices(m)}
        table[(a, b, c)] = per
    return FinSimplicialCategory(objects, maps, identity, table, name)


def verify_simplicial_category(C: FinSimplicialCategory) -> list[str]:
    """Associativity, units and compatibility with faces and degeneracies."""
    out = []
    obs = C.objects
    for a in obs:
        if C.identity.get(a) not in C.map(a, a).cells[0]:
            out.append(f"identity of {a!r} is not a vertex of Map({a!r},{a!r})")
    if out:
        return out
    for m in range(C.cap + 1):
        for a, b in product(obs, repeat=2):
            for f in C.map(a, b).n_simplices(m):
                if C.comp(a, a, b, f, C.identity_at(a, m)) != f or C.comp(a, b, b, C.identity_at(b, m), f) != f:
                    out.append(f"unit law fails for {f!r} in Map({a!r},{b!r}) level {m}")
        for a, b, c in product(obs, repeat=3):
            X, Y, Z = C.map(a, b), C.map(b, c), C.map(a, c)
            for (g, f), h in C.compose[(a, b, c)][m].items():
                if Z.dimension(h) != m:
                    out.append(f"composite of {g!r}, {f!r} has the wrong dimension")
                    continue
                for i in range(m + 1 if m else 0):
                    if Z.face(h, i) != C.comp(a, b, c, Y.face(g, i), X.face(f, i)):
                        out.append(f"d_{i} does not commute with composition at {g!r}, {f!r}")
                if m < C.cap:
                    for j in range(m + 1):
                        if Z.degeneracy(h, j) != C.comp(a, b, c, Y.degeneracy(g, j), X.degeneracy(f, j)):
                            out.append(f"s_{j} does not commute with composition at {g!r}, {f!r}")
        for a, b, c, d in product(obs, repeat=4):
            for f in C.map(a, b).n_simplices(m):
                for g in C.map(b, c).n_simplices(m):
                    gf = C.comp(a, b, c, g, f)
                    for h in C.map(c, d).n_simplices(m):
                        if C.comp(a, c, d, h, gf) != C.comp(a, b, d, C.comp(b, c, d, h, g), f):
                            out.append(f"associativity fails at {h!r}, {g!r}, {f!r}")
    return out


def discrete_enrichment(C: FinCategory, cap: int = 0) -> FinSimplicialCategory:
    """Each hom-set as a discrete simplicial set."""
    maps = {}
    for a, b in product(C.objects, repeat=2):
        maps[(a, b)] = TruncatedSimplicialSet(cap, {0: C.hom(a, b)})

    def comp(a, b, c, g, f):
        return SimplexRef(C.comp(g.base, f.base), g.word)

    return tabulate_composition(C.objects, maps, dict(C.identity), comp, name=C.name)


def pi0_category(C: FinSimplicialCategory) -> FinCategory:
    """Hom-sets are components of the mapping spaces.

    Morphisms are named ``(a, b, v)`` with v the least vertex of the
    component.  Raises :class:`EnrichmentError` when composition of
    vertices is not constant on components.
    """
    rep, mors = {}, {}
    for (a, b), X in C.maps.items():
        for comp in pi0(X):
            r = min(comp, key=label_key)
            mors[(a, b, r)] = (a, b)
            for v in comp:
                rep[(a, b, v)] = (a, b, r)
    table = {}
    for a, b, c in product(C.objects, repeat=3):
        for f in C.map(a, b).cells[0]:
            for g in C.map(b, c).cells[0]:
                h = C.comp(a, b, c, SimplexRef(g), SimplexRef(f)).base
                key = (rep[(b, c, g)], rep[(a, b, f)])
                val = rep[(a, c, h)]
                if table.setdefault(key, val) != val:
                    raise EnrichmentError(f"composition is not constant on components at {key!r}")
    ident = {a: rep[(a, a, C.identity[a])] for a in C.objects}
    return FinCategory(C.objects, mors, ident, table, name=f"pi0({C.name})" if C.name else "")


# -- simplicial functors ---------------------------------------------------

@dataclass
class SimplicialFunctor:
    source: FinSimplicialCategory
    target: FinSimplicialCategory
    on_objects: dict
    on_maps: dict  # (a, b) -> {nondegenerate cell: SimplexRef}

    def map_component(self, a, b) -> SimplicialMap:
        fa, fb = self.on_objects[a], self.on_objects[b]
        return SimplicialMap(self.source.map(a, b), self.target.map(fa, fb), self.on_maps[(a, b)])


def verify_simplicial_functor(F: SimplicialFunctor) -> list[str]:
    C, D = F.source, F.target
    out = []
    if C.cap != D.cap:
        return ["caps differ"]
    comps = {}
    for a, b in product(C.objects, repeat=2):
        phi = F.map_component(a, b)
        bad = phi.violations()
        if bad:
            out.append(f"Map({a!r},{b!r}): {bad[0]}")
        comps[(a, b)] = phi
    if out:
        return out
    for a in C.objects:
        fa = F.on_objects[a]
        if comps[(a, a)](SimplexRef(C.identity[a])) != SimplexRef(D.identity[fa]):
            out.append(f"identity of {a!r} is not preserved")
    for m in range(C.cap + 1):
        for a, b, c in product(C.objects, repeat=3):
            fa, fb, fc = (F.on_objects[v] for v in (a, b, c))
            for (g, f), h in C.compose[(a, b, c)][m].items():
                if comps[(a, c)](h) != D.comp(fa, fb, fc, comps[(b, c)](g), comps[(a, b)](f)):
                    out.append(f"composition is not preserved at {g!r}, {f!r}")
                    break
    return out


def identity_simplicial_functor(C: FinSimplicialCategory) -> SimplicialFunctor:
    on_maps = {k: {x: SimplexRef(x) for x in X.dim_of} for k, X in C.maps.items()}
    return SimplicialFunctor(C, C, {a: a for a in C.objects}, on_maps)


@dataclass
class EnrichedDKReport:
    verdict: Verdict
    reason: str = ""


def dk_check_enriched(F: SimplicialFunctor) -> EnrichedDKReport:
    """Mapping-space battery plus an equivalence test on components.

    Equivalent needs a levelwise bijection on every mapping space;
    NotEquivalent follows from a pi0 or homology mismatch or from pi0 F
    not being an equivalence; otherwise Unknown.
    """
    bad = verify_simplicial_functor(F)
    if bad:
        raise EnrichmentError("ill-formed simplicial functor: " + bad[0])
    C, D = F.source, F.target
    up = max(C.cap - 1, 0)
    undecided = ""
    for a, b in product(C.objects, repeat=2):
        phi = F.map_component(a, b)
        if phi.is_levelwise_bijection():
            continue
        if not phi.pi0_bijective():
            return EnrichedDKReport(Verdict.NOT_EQUIVALENT, f"pi0 of Map({a!r},{b!r}) is not preserved")
        if homology(phi.source, up) != homology(phi.target, up):
            return EnrichedDKReport(Verdict.NOT_EQUIVALENT, f"homology of Map({a!r},{b!r}) differs")
        undecided = undecided or f"Map({a!r},{b!r}): invariants agree without a bijection"
    P, Q = pi0_category(C), pi0_category(D)
    qrep = {}
    for (a, b, r) in Q.morphisms:
        for comp in pi0(D.map(a, b)):
            if r in comp:
                for v in comp:
                    qrep[(a, b, v)] = (a, b, r)
    on_mor = {}
    for (a, b, r) in P.morphisms:
        fa, fb = F.on_objects[a], F.on_objects[b]
        on_mor[(a, b, r)] = qrep[(fa, fb, F.map_component(a, b)(SimplexRef(r)).base)]
    G = Functor(P, Q, dict(F.on_objects), on_mor)
    if not check_equivalence(G):
        return EnrichedDKReport(Verdict.NOT_EQUIVALENT, "pi0 F is not an equivalence of categories")
    if undecided:
        return EnrichedDKReport(Verdict.UNKNOWN, undecided)
    return EnrichedDKReport(Verdict.EQUIVALENT, "levelwise bijections; pi0 F an equivalence")


# -- cube categories ---------------------------------------------------------

@dataclass(frozen=True)
class CubePoset:
    """Subsets U with {i, j} <= U <= {i, ..., j}, ordered by inclusion."""
    i: int
    j: int

    def elements(self) -> list[tuple]:
        inner = list(range(self.i + 1, self.j))
        out = []
        for r in range(len(inner) + 1):
            for extra in combinations(inner, r):
                out.append(tuple(sorted({self.i, self.j, *extra})))
        return sorted(out, key=lambda u: (len(u), u))


def chain_nerve(elements: list, leq, cap: int) -> TruncatedSimplicialSet:
    """Nerve of a finite poset with cells named by their vertex chains."""
    cells = {0: [(e,) for e in elements]}
    faces = {}
    for n in range(1, cap + 1):
        cells[n] = [c + (e,) for c in cells[n - 1] for e in elements if e != c[-1] and leq(c[-1], e)]
        for c in cells[n]:
            faces[c] = [SimplexRef(c[:i] + c[i + 1:]) for i in range(n + 1)]
    return TruncatedSimplicialSet(cap, cells, faces)


def chain_to_simplex(chain: tuple) -> SimplexRef:
    """A weakly increasing vertex chain as a normal form in a chain nerve."""
    distinct = [chain[0]]
    sigma = [0]
    for v in chain[1:]:
        if v != distinct[-1]:
            distinct.append(v)
        sigma.append(len(distinct) - 1)
    return SimplexRef(tuple(distinct), word_from_surjection(sigma))


def simplex_to_chain(X: TruncatedSimplicialSet, s: SimplexRef) -> tuple:
    return tuple(v[0] for v in X.vertices(s))


def _subset(u, v):
    return set(u) <= set(v)


def cdelta(n: int, cap: int | None = None) -> FinSimplicialCategory:
    """The simplicial category with objects 0..n and cube mapping spaces.

    Map(i, j) is the nerve of :class:`CubePoset` (i, j) for i <= j and empty
    otherwise; composition is union of subsets.
    """
    if n < 0:
        raise EnrichmentError("n must be >= 0")
    cap = max(n - 1, 0) if cap is None else cap
    maps = {}
    for i, j in product(range(n + 1), repeat=2):
        if i <= j:
            maps[(i, j)] = chain_nerve(CubePoset(i, j).elements(), _subset, cap)
        else:
            maps[(i, j)] = TruncatedSimplicialSet(cap, {})
    identity = {i: ((i,),) for i in range(n + 1)}

    def comp(a, b, c, g, f):
        gc = simplex_to_chain(maps[(b, c)], g)
        fc = simplex_to_chain(maps[(a, b)], f)
        return chain_to_simplex(tuple(tuple(sorted(set(u) | set(v))) for u, v in zip(gc, fc)))

    return tabulate_composition(range(n + 1), maps, identity, comp, name=f"C[{n}]")


# -- coherent nerve -----------------------------------------------------------

MAX_COHERENT_DIM = 3


class _FunctorSearch:
    """Simplicial functors cdelta(n) -> C, stored by their free cells.

    A cell of Map(i, j) whose lowest subset is exactly {i, j} is free; any
    other cell is a composite through a vertex k of that subset, so its
    image is forced by composition in C.
    """

    def __init__(self, C: FinSimplicialCategory):
        self.C = C
        self.cubes: dict = {}

    def cube(self, n):
        if n not in self.cubes:
            self.cubes[n] = cdelta(n, self.C.cap)
        return self.cubes[n]

    def image(self, objs: tuple, free: dict, a: int, b: int, chain: tuple) -> SimplexRef:
        C = self.C
        m = len(chain) - 1
        xa, xb = objs[a], objs[b]
        if a == b:
            return C.identity_at(xa, m)
        low = set(chain[0]) - {a, b}
        if low:
            k = min(low)
            left = tuple(tuple(v for v in u if v <= k) for u in chain)
            right = tuple(tuple(v for v in u if v >= k) for u in chain)
            f = self.image(objs, free, a, k, left)
            g = self.image(objs, free, k, b, right)
            return C.comp(xa, objs[k], xb, g, f)
        s = chain_to_simplex(chain)
        img = free[(a, b, s.base)]
        X = C.map(xa, xb)
        for j in reversed(s.word):
            img = X.degeneracy(img, j)
        return img

    def free_cells(self, n):
        """Free nondegenerate cells (a, b, chain) in order of dimension."""
        cube = self.cube(n)
        out = []
        for a, b in product(range(n + 1), repeat=2):
            if a >= b:
                continue
            X = cube.map(a, b)
            for m in range(X.dim_cap + 1):
                for cell in X.cells[m]:
                    if set(cell[0]) == {a, b}:
                        out.append((a, b, cell))
        out.sort(key=lambda t: (len(t[2]), t[1] - t[0], t[0], label_key(t[2])))
        return out

    def functors(self, n: int) -> list[tuple]:
        C = self.C
        cells = self.free_cells(n)
        results = []
        for objs in product(C.objects, repeat=n + 1):
            free: dict = {}

            def extend(idx):
                if idx == len(cells):
                    results.append((objs, tuple(sorted(free.items(), key=lambda kv: label_key(kv[0])))))
                    return
                a, b, cell = cells[idx]
                m = len(cell) - 1
                X = C.map(objs[a], objs[b])
                if m > X.dim_cap:
                    raise ResourceLimit("mapping space cap below cube dimension", cap="dim")
                want = [self.image(objs, free, a, b, cell[:i] + cell[i + 1:]) for i in range(m + 1)] if m else None
                for z in X.n_simplices(m):
                    if want is not None and any(X.face(z, i) != want[i] for i in range(m + 1)):
                        continue
                    free[(a, b, cell)] = z
                    extend(idx + 1)
                    del free[(a, b, cell)]

            extend(0)
        return results

    def precompose(self, functor, n: int, theta: tuple) -> tuple:
        """G . C(theta) for monotone theta : [k] -> [n]."""
        objs, free_items = functor
        free = dict(free_items)
        k = len(theta) - 1
        new_objs = tuple(objs[t] for t in theta)
        new_free = {}
        for (a, b, cell) in self.free_cells(k):
            chain = tuple(tuple(sorted({theta[v] for v in u})) for u in cell)
            new_free[(a, b, cell)] = self.image(objs, free, theta[a], theta[b], chain)
        return (new_objs, tuple(sorted(new_free.items(), key=lambda kv: label_key(kv[0]))))


def coherent_nerve(C: FinSimplicialCategory, d: int) -> TruncatedSimplicialSet:
    """n-simplices are simplicial functors cdelta(n) -> C, for n <= d <= 3.

    Faces and degeneracies are precomposition with the cube functors of the
    coface and codegeneracy maps.
    """
    if d > MAX_COHERENT_DIM:
        raise ResourceLimit(f"coherent nerve enumeration is limited to d <= {MAX_COHERENT_DIM}", cap="dim")
    if d < 0:
        raise EnrichmentError("d must be >= 0")
    if C.cap < max(d - 1, 0):
        raise EnrichmentError(f"mapping spaces need cap >= {d - 1}")
    search = _FunctorSearch(C)
    levels = {n: search.functors(n) for n in range(d + 1)}

    def face(n, i, x):
        return search.precompose(x, n, tuple(t for t in range(n + 1) if t != i))

    def degeneracy(n, j, x):
        return search.precompose(x, n, tuple(t if t <= j else t - 1 for t in range(n + 2)))

    X, _ = from_simplicial_data(d, levels, face, degeneracy)
    return X


def relabel_to_nerve(X: TruncatedSimplicialSet, C: FinCategory) -> TruncatedSimplicialSet:
    """Rename the cells of the coherent nerve of a discrete enrichment of C
    to the identity-free chains used by :func:`nerve`."""
    def name(cell):
        objs, free = cell
        if len(objs) == 1:
            return objs[0]
        fd = dict(free)
        return tuple(fd[(i - 1, i, ((i - 1, i),))].base for i in range(1, len(objs)))

    cells = {n: [name(c) for c in X.cells[n]] for n in range(X.dim_cap + 1)}
    faces = {name(c): [SimplexRef(name(f.base), f.word) for f in X.faces[c]]
             for n in range(1, X.dim_cap + 1) for c in X.cells[n]}
    return TruncatedSimplicialSet(X.dim_cap, cells, faces)


# -- example simplicial categories ------------------------------------------

def nerve_chain(C: FinCategory, X: TruncatedSimplicialSet, s: SimplexRef) -> tuple:
    """The full chain of morphisms (identities included) of a nerve simplex."""
    n = X.dimension(s)
    out = []
    for t in range(1, n + 1):
        e = X.apply(s, (t - 1, t))
        out.append(C.identity[e.base] if e.word else e.base[0])
    return tuple(out)


def group_enrichment(G: FinCategory, cap: int = 2) -> FinSimplicialCategory:
    """One object whose mapping space is nerve(G) for an abelian group G,
    composed by multiplying chains entrywise."""
    (obj,) = G.objects
    N = nerve(G, cap)
    for g, f in G.composable_pairs():
        if G.comp(g, f) != G.comp(f, g):
            raise EnrichmentError("entrywise multiplication needs an abelian group")

    def comp(a, b, c, g, f):
        m = N.dimension(g)
        if m == 0:
            return SimplexRef(obj)
        gc, fc = nerve_chain(G, N, g), nerve_chain(G, N, f)
        return nerve_simplex(G, tuple(G.comp(x, y) for x, y in zip(gc, fc)))

    return tabulate_composition(["*"], {("*", "*"): N}, {"*": obj}, comp, name="B" + (G.name or "G"))


def interval_enrichment(X: TruncatedSimplicialSet, base: Hashable = "pt") -> FinSimplicialCategory:
    """Objects a, b with Map(a, b) = X and only identities otherwise."""
    pt = TruncatedSimplicialSet(X.dim_cap, {0: [base]})
    none = TruncatedSimplicialSet(X.dim_cap, {})
    maps = {("a", "a"): pt, ("b", "b"): pt, ("a", "b"): X, ("b", "a"): none}

    def comp(a, b, c, g, f):
        if a == b:
            return g
        return f

    return tabulate_composition(["a", "b"], maps, {"a": base, "b": base}, comp, name="I")


# -- hammock localization ----------------------------------------------------

def hammock_mapping_space(C: FinCategory, S: MorphismClass, a, b) -> TruncatedSimplicialSet:
    """Three-stage zig-zags ``a <-s- u -f-> v <-s'- b`` and two-row hammocks.

    An edge from the top row (s1, f1, s1') to the bottom row (s2, f2, s2')
    is a pair alpha : u1 -> u2, beta : v1 -> v2 in S with s2 . alpha = s1,
    beta . f1 = f2 . alpha and beta . s1' = s2'.  Face d_1 is the top row
    and d_0 the bottom row; the pair of identities is the degenerate edge.
    """
    verts = []
    for s in sorted_labels(S.members):
        if C.target(s) != a:
            continue
        u = C.source(s)
        for f in C.out_of(u):
            v = C.target(f)
            for s2 in C.hom(b, v):
                if s2 in S:
                    verts.append((s, f, s2))
    edges, faces = [], {}
    for top in verts:
        for bot in verts:
            s1, f1, t1 = top
            s2, f2, t2 = bot
            for alpha in C.hom(C.source(s1), C.source(s2)):
                if alpha not in S or C.comp(s2, alpha) != s1:
                    continue
                for beta in C.hom(C.target(f1), C.target(f2)):
                    if beta not in S:
                        continue
                    if C.comp(beta, f1) != C.comp(f2, alpha) or C.comp(beta, t1) != t2:
                        continue
                    if C.is_identity(alpha) and C.is_identity(beta):
                        continue
                    e = ("hammock", top, bot, alpha, beta)
                    edges.append(e)
                    faces[e] = [SimplexRef(bot), SimplexRef(top)]
    return TruncatedSimplicialSet(1, {0: verts, 1: edges}, faces)
