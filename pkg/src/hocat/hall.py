"""Hall algebras over finite fields.

The classical part works with representations of a quiver over GF(q):
isomorphism classes come from an exhaustive orbit computation and Hall
numbers from counting short exact sequences.  The derived part works with
bounded graded GF(q)-vector spaces, where every complex is formal and
hom-sets in the homotopy category are counted in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from typing import Hashable, Iterable

from ._order import sorted_labels
from .finite_field import (GF, Mat, all_matrices, count_rank, field, general_linear, gl_order,
                           identity, inverse, mat_mul, rank, zero)
from .verdicts import ResourceLimit

DEFAULT_BUDGET = 2_000_000


class HallError(ValueError):
    pass


# -- quivers and representations -------------------------------------------

@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # ((name, source, target), ...)

    def __post_init__(self):
        vs = set(self.vertices)
        for name, s, t in self.arrows:
            if s not in vs or t not in vs:
                raise HallError(f"arrow {name!r} has an endpoint outside the vertices")


def quiver(vertices: Iterable[Hashable], arrows: Iterable[tuple]) -> Quiver:
    return Quiver(tuple(vertices), tuple(sorted_labels(tuple(a) for a in arrows)))


def linear_quiver(n: int) -> Quiver:
    """A_n oriented 1 -> 2 -> ... -> n."""
    return quiver(range(1, n + 1), [(f"a{i}", i, i + 1) for i in range(1, n)])


@dataclass(frozen=True)
class Rep:
    """Dimension vector and one matrix per arrow, shaped dims[t] x dims[s]."""
    quiver: Quiver
    q: int
    dims: tuple
    mats: tuple  # aligned with quiver.arrows

    def __post_init__(self):
        idx = {v: i for i, v in enumerate(self.quiver.vertices)}
        if len(self.dims) != len(self.quiver.vertices) or any(d < 0 for d in self.dims):
            raise HallError("dimension vector does not match the quiver")
        if len(self.mats) != len(self.quiver.arrows):
            raise HallError("one matrix per arrow is required")
        for (name, s, t), M in zip(self.quiver.arrows, self.mats):
            if (M.rows, M.cols) != (self.dims[idx[t]], self.dims[idx[s]]):
                raise HallError(f"matrix for {name!r} has the wrong shape")
            if any(not 0 <= v < self.q for v in M.entries):
                raise HallError(f"matrix for {name!r} has entries outside GF({self.q})")

    @property
    def total(self) -> int:
        return sum(self.dims)


def zero_rep(Q: Quiver, q: int, dims: tuple | None = None) -> Rep:
    dims = dims or (0,) * len(Q.vertices)
    idx = {v: i for i, v in enumerate(Q.vertices)}
    return Rep(Q, q, tuple(dims), tuple(zero(dims[idx[t]], dims[idx[s]]) for _, s, t in Q.arrows))


def _endpoints(Q: Quiver):
    idx = {v: i for i, v in enumerate(Q.vertices)}
    return [(idx[s], idx[t]) for _, s, t in Q.arrows]


def direct_sum(X: Rep, Y: Rep) -> Rep:
    if X.quiver != Y.quiver or X.q != Y.q:
        raise HallError("direct sum needs the same quiver and field")
    mats = []
    for M, N in zip(X.mats, Y.mats):
        rows = [M.row(i) + (0,) * N.cols for i in range(M.rows)]
        rows += [(0,) * M.cols + N.row(i) for i in range(N.rows)]
        mats.append(Mat(M.rows + N.rows, M.cols + N.cols, tuple(v for r in rows for v in r)))
    return Rep(X.quiver, X.q, tuple(a + b for a, b in zip(X.dims, Y.dims)), tuple(mats))


def homomorphisms(X: Rep, Y: Rep) -> list[tuple]:
    """All families (phi_v : X_v -> Y_v) with Y_a phi_s = phi_t X_a."""
    if X.quiver != Y.quiver or X.q != Y.q:
        raise HallError("field or quiver mismatch")
    F = field(X.q)
    ends = _endpoints(X.quiver)
    spaces = [list(all_matrices(F, Y.dims[v], X.dims[v])) for v in range(len(X.dims))]
    out = []
    for phi in product(*spaces):
        if all(mat_mul(F, Y.mats[a], phi[s]) == mat_mul(F, phi[t], X.mats[a])
               for a, (s, t) in enumerate(ends)):
            out.append(phi)
    return out


def compose_maps(F: GF, psi: tuple, phi: tuple) -> tuple:
    return tuple(mat_mul(F, b, a) for a, b in zip(phi, psi))


# -- isomorphism classes --------------------------------------------------

@dataclass
class IsoClass:
    rep: Rep
    aut_order: int
    index: int

    @property
    def dims(self) -> tuple:
        return self.rep.dims


@dataclass
class IsoClassTable:
    quiver: Quiver
    q: int
    classes: dict = dc_field(default_factory=dict)  # dims -> [IsoClass]
    lookup: dict = dc_field(default_factory=dict)   # (dims, mats) -> IsoClass

    def of(self, X: Rep) -> IsoClass:
        try:
            return self.lookup[(X.dims, X.mats)]
        except KeyError:
            raise HallError(f"dimension vector {X.dims} is not covered by the table") from None

    def all_classes(self) -> list[IsoClass]:
        return [c for d in sorted(self.classes) for c in self.classes[d]]

    def label(self, c: IsoClass) -> str:
        dims = ",".join(map(str, c.dims))
        if len(self.classes[c.dims]) == 1:
            return f"[{dims}]"
        return f"[{dims}]#{c.index}"

    def zero_class(self) -> IsoClass:
        return self.classes[(0,) * len(self.quiver.vertices)][0]


def enumerate_reps(Q: Quiver, q: int, dims: tuple, budget: int = DEFAULT_BUDGET,
                   table: IsoClassTable | None = None) -> IsoClassTable:
    """Orbits of arrow-matrix tuples under the product of GL(dims[v]).

    Tuples are visited in lexicographic order, so the first member met of
    each orbit is its lexicographically least element and serves as the
    representative.  Automorphism orders follow from orbit sizes.
    """
    F = field(q)
    dims = tuple(dims)
    ends = _endpoints(Q)
    shapes = [(dims[t], dims[s]) for s, t in ends]
    n_tuples = q ** sum(r * c for r, c in shapes)
    if n_tuples > budget or any(q ** (d * d) > budget for d in dims):
        raise ResourceLimit(f"dimension vector {dims} exceeds the enumeration budget {budget}", cap="budget")
    groups = [general_linear(q, d) for d in dims]
    group_size = 1
    for d in dims:
        group_size *= gl_order(q, d)
    table = table or IsoClassTable(Q, q)
    seen = set()
    found = []
    inverses = [{g: inverse(F, g) for g in grp} for grp in groups]
    for mats in product(*(all_matrices(F, r, c) for r, c in shapes)):
        if mats in seen:
            continue
        orbit = set()
        for g in product(*groups):
            orbit.add(tuple(mat_mul(F, mat_mul(F, g[t], M), inverses[s][g[s]])
                            for M, (s, t) in zip(mats, ends)))
        seen |= orbit
        cls = IsoClass(Rep(Q, q, dims, mats), group_size // len(orbit), len(found))
        found.append(cls)
        for m in orbit:
            table.lookup[(dims, m)] = cls
    table.classes[dims] = found
    return table


def dimension_vectors(bound: tuple) -> list[tuple]:
    return list(product(*(range(b + 1) for b in bound)))


def class_table(Q: Quiver, q: int, bound: tuple, budget: int = DEFAULT_BUDGET) -> IsoClassTable:
    """Classes for every dimension vector below ``bound`` (vertexwise)."""
    table = IsoClassTable(Q, q)
    if len(bound) != len(Q.vertices):
        raise HallError("bound must give one entry per vertex")
    for dims in dimension_vectors(bound):
        enumerate_reps(Q, q, dims, budget, table)
    return table


def automorphism_count(X: Rep) -> int:
    F = field(X.q)
    return sum(1 for phi in homomorphisms(X, X) if all(rank(F, m) == m.rows for m in phi))


# -- Hall numbers ----------------------------------------------------------

def _injective(F, phi):
    return all(rank(F, m) == m.cols for m in phi)


def _surjective(F, phi):
    return all(rank(F, m) == m.rows for m in phi)


def exact_sequence_count(X: Rep, Z: Rep, Y: Rep) -> int:
    """Pairs (i : X -> Z mono, p : Z -> Y epi) with p . i = 0.

    With dim Z = dim X + dim Y these are exactly the short exact sequences.
    """
    F = field(Z.q)
    monos = [i for i in homomorphisms(X, Z) if _injective(F, i)]
    epis = [p for p in homomorphisms(Z, Y) if _surjective(F, p)]
    count = 0
    for p in epis:
        for i in monos:
            if all(not any(m.entries) for m in compose_maps(F, p, i)):
                count += 1
    return count


def hall_number(X: Rep, Y: Rep, Z: Rep, aut: dict | None = None) -> Fraction:
    """g^Z_{X,Y}: short exact sequences 0 -> X -> Z -> Y -> 0 over |Aut X||Aut Y|."""
    if len({X.q, Y.q, Z.q}) != 1:
        raise HallError("field mismatch")
    if X.quiver != Y.quiver or Y.quiver != Z.quiver:
        raise HallError("quiver mismatch")
    if Z.dims != tuple(a + b for a, b in zip(X.dims, Y.dims)):
        return Fraction(0)
    aut = aut or {}
    ax = aut.get(X) or automorphism_count(X)
    ay = aut.get(Y) or automorphism_count(Y)
    return Fraction(exact_sequence_count(X, Z, Y), ax * ay)


@dataclass
class HallProduct:
    """A formal combination of classes with exact rational coefficients."""
    terms: dict = dc_field(default_factory=dict)  # class key -> Fraction

    def nonzero(self) -> dict:
        return {k: v for k, v in self.terms.items() if v}

    def __eq__(self, other):
        return isinstance(other, HallProduct) and self.nonzero() == other.nonzero()


def _coverage(table: IsoClassTable, dims: tuple):
    if dims not in table.classes:
        raise HallError(f"table does not cover dimension vector {dims}")
    return table.classes[dims]


class HallAlgebra:
    """Structure constants over a class table, memoized."""

    def __init__(self, table: IsoClassTable):
        self.table = table
        self._g: dict = {}

    def g(self, X: IsoClass, Y: IsoClass, Z: IsoClass) -> Fraction:
        key = (X.dims, X.index, Y.dims, Y.index, Z.dims, Z.index)
        if key not in self._g:
            self._g[key] = Fraction(exact_sequence_count(X.rep, Z.rep, Y.rep), X.aut_order * Y.aut_order)
        return self._g[key]

    def product(self, X: IsoClass, Y: IsoClass) -> HallProduct:
        dims = tuple(a + b for a, b in zip(X.dims, Y.dims))
        out = HallProduct()
        for Z in _coverage(self.table, dims):
            c = self.g(X, Y, Z)
            if c:
                out.terms[(Z.dims, Z.index)] = c
        return out

    def multiply(self, a: HallProduct, b: HallProduct) -> HallProduct:
        out = HallProduct()
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                X, Y = self.cls(ka), self.cls(kb)
                for kz, cz in self.product(X, Y).terms.items():
                    out.terms[kz] = out.terms.get(kz, Fraction(0)) + ca * cb * cz
        return out

    def cls(self, key) -> IsoClass:
        dims, idx = key
        return _coverage(self.table, dims)[idx]

    def basis(self, c: IsoClass) -> HallProduct:
        return HallProduct({(c.dims, c.index): Fraction(1)})

    def format(self, p: HallProduct) -> str:
        parts = []
        for key in sorted(p.nonzero()):
            c = p.terms[key]
            label = self.table.label(self.cls(key))
            parts.append(label if c == 1 else f"{c}·{label}")
        return " + ".join(parts) if parts else "0"


def hall_product(X: Rep, Y: Rep, table: IsoClassTable) -> HallProduct:
    A = HallAlgebra(table)
    return A.product(table.of(X), table.of(Y))


@dataclass
class AssociativityReport:
    checked: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def hall_associativity(table: IsoClassTable, bound: tuple) -> AssociativityReport:
    """Compare ([X][Y])[Z] and [X]([Y][Z]) for every triple with
    dim X + dim Y + dim Z <= bound."""
    A = HallAlgebra(table)
    classes = table.all_classes()
    failures, checked = [], 0
    for X, Y, Z in product(classes, repeat=3):
        total = tuple(a + b + c for a, b, c in zip(X.dims, Y.dims, Z.dims))
        if any(t > b for t, b in zip(total, bound)):
            continue
        checked += 1
        left = A.multiply(A.product(X, Y), A.basis(Z))
        right = A.multiply(A.basis(X), A.product(Y, Z))
        if left != right:
            failures.append((X, Y, Z, left, right))
    return AssociativityReport(checked, failures)


def is_indecomposable(X: Rep) -> bool:
    """No idempotent endomorphism other than 0 and 1."""
    if X.total == 0:
        return False
    F = field(X.q)
    for phi in homomorphisms(X, X):
        if compose_maps(F, phi, phi) != phi:
            continue
        if all(not any(m.entries) for m in phi):
            continue
        if all(m == identity(m.rows) for m in phi):
            continue
        return False
    return True


def indecomposable_classes(table: IsoClassTable) -> list[IsoClass]:
    return [c for c in table.all_classes() if is_indecomposable(c.rep)]


# -- derived Hall numbers for graded vector spaces ------------------------

@dataclass(frozen=True)
class GradedVect:
    """A bounded Z-graded GF(q)-vector space, stored as (degree, dim) pairs."""
    q: int
    dims: tuple  # sorted ((degree, dim), ...) with dim > 0

    def dim(self, k: int) -> int:
        return dict(self.dims).get(k, 0)

    @property
    def support(self) -> list[int]:
        return [k for k, _ in self.dims]

    @property
    def total(self) -> int:
        return sum(d for _, d in self.dims)

    def __str__(self):
        if not self.dims:
            return "0"
        return "+".join(f"{d}@{k}" for k, d in self.dims)


def graded(q: int, dims: dict | Iterable[tuple]) -> GradedVect:
    items = dict(dims)
    if any(d < 0 for d in items.values()):
        raise HallError("dimensions must be nonnegative")
    return GradedVect(q, tuple(sorted((k, d) for k, d in items.items() if d)))


def _same_field(*xs: GradedVect):
    if len({x.q for x in xs}) != 1:
        raise HallError("field mismatch")


def shift(x: GradedVect, i: int) -> GradedVect:
    """x[i] with x[i]_k = x_{k+i}."""
    return graded(x.q, {k - i: d for k, d in x.dims})


def hom_count(x: GradedVect, z: GradedVect) -> int:
    """Degree-preserving linear maps x -> z."""
    _same_field(x, z)
    return x.q ** sum(d * z.dim(k) for k, d in x.dims)


def aut_order_graded(x: GradedVect) -> int:
    out = 1
    for _, d in x.dims:
        out *= gl_order(x.q, d)
    return out


def cone_dims(x: GradedVect, z: GradedVect, ranks: dict) -> dict:
    """Dimensions of coker(f) + ker(f)[1] for f with the given ranks."""
    out = {}
    for k in set(z.support) | {k - 1 for k in x.support}:
        v = z.dim(k) - ranks.get(k, 0) + x.dim(k + 1) - ranks.get(k + 1, 0)
        if v:
            out[k] = v
    return out


def hom_count_with_cone(x: GradedVect, z: GradedVect, y: GradedVect) -> int:
    """Maps f : x -> z whose cone is isomorphic to y, by rank profile."""
    _same_field(x, z, y)
    q = x.q
    degrees = sorted(set(x.support) & set(z.support))
    want = dict(y.dims)
    total = 0
    for ranks in product(*(range(min(x.dim(k), z.dim(k)) + 1) for k in degrees)):
        r = dict(zip(degrees, ranks))
        if cone_dims(x, z, r) != want:
            continue
        n = 1
        for k in degrees:
            n *= count_rank(q, z.dim(k), x.dim(k), r[k])
        total += n
    return total


def derived_hall_number(x: GradedVect, y: GradedVect, z: GradedVect) -> Fraction:
    """|[x,z]_y| prod_{i>0} |[x,z[-i]]|^{(-1)^i} over |Aut x| prod_{i>0} |[x,x[-i]]|^{(-1)^i}."""
    _same_field(x, y, z)
    num = Fraction(hom_count_with_cone(x, z, y))
    den = Fraction(aut_order_graded(x))
    span = _span(x, y, z)
    for i in range(1, span + 1):
        sign = 1 if i % 2 == 0 else -1
        num *= Fraction(hom_count(x, shift(z, -i))) ** sign
        den *= Fraction(hom_count(x, shift(x, -i))) ** sign
    return num / den


def _span(*xs: GradedVect) -> int:
    """Shifts beyond this width have disjoint supports and contribute 1."""
    degs = [k for x in xs for k in x.support]
    return (max(degs) - min(degs) + 1) if degs else 0


def graded_classes(q: int, window: Iterable[int], bound: int) -> list[GradedVect]:
    """All graded spaces supported in ``window`` with total dimension <= bound."""
    window = sorted(set(window))
    out = []
    for dims in product(range(bound + 1), repeat=len(window)):
        if sum(dims) <= bound:
            out.append(graded(q, dict(zip(window, dims))))
    return sorted(out, key=lambda g: (g.total, g.dims))


def _product_support(x: GradedVect, y: GradedVect) -> list[int]:
    return sorted(set(x.support) | set(y.support) | {k - 1 for k in x.support})


def derived_hall_product(x: GradedVect, y: GradedVect, window: Iterable[int] = (),
                         bound: int | None = None) -> HallProduct:
    """[x]·[y] = sum over z of g^z_{x,y} [z]; keys are GradedVect values.

    A map x -> z with cone y forces z into degrees of y, of x and one below
    x, with total dimension at most dim x + dim y.  The window only widens
    the candidate degrees; ``bound`` rejects inputs that are too large.
    """
    _same_field(x, y)
    if bound is not None and x.total + y.total > bound:
        raise ResourceLimit(f"total dimension {x.total + y.total} exceeds the bound", cap="bound")
    out = HallProduct()
    degrees = sorted(set(_product_support(x, y)) | set(window))
    for z in graded_classes(x.q, degrees, x.total + y.total):
        c = derived_hall_number(x, y, z)
        if c:
            out.terms[z] = c
    return out


def derived_multiply(a: HallProduct, b: HallProduct) -> HallProduct:
    out = HallProduct()
    for x, cx in a.terms.items():
        for y, cy in b.terms.items():
            for z, cz in derived_hall_product(x, y).terms.items():
                out.terms[z] = out.terms.get(z, Fraction(0)) + cx * cy * cz
    return out


def derived_associativity(q: int, window: Iterable[int], bound: int) -> AssociativityReport:
    """Compare ([x][y])[w] and [x]([y][w]) over classes in the window whose
    total dimensions sum to at most ``bound``."""
    classes = graded_classes(q, window, bound)
    failures, checked = [], 0
    for x, y, w in product(classes, repeat=3):
        if x.total + y.total + w.total > bound:
            continue
        checked += 1
        one = lambda v: HallProduct({v: Fraction(1)})  # noqa: E731
        left = derived_multiply(derived_hall_product(x, y), one(w))
        right = derived_multiply(one(x), derived_hall_product(y, w))
        if left != right:
            failures.append((x, y, w, left, right))
    return AssociativityReport(checked, failures)


def format_graded_product(p: HallProduct) -> str:
    parts = []
    for z in sorted(p.nonzero(), key=lambda g: (g.total, g.dims)):
        c = p.terms[z]
        parts.append(f"[{z}]" if c == 1 else f"{c}·[{z}]")
    return " + ".join(parts) if parts else "0"
