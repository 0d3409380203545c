"""Finite simplicial sets truncated at a dimension cap.

Only nondegenerate simplices are stored.  A general simplex is a
:class:`SimplexRef` ``(base, word)`` in Eilenberg-Zilber normal form: the
word ``(j1, ..., jk)`` is strictly decreasing and stands for
``s_j1 s_j2 ... s_jk base``.

Internally a degeneracy word is handled as the order-preserving surjection
``[n] -> [m]`` it induces; the word is exactly the set of positions ``j``
with ``sigma(j) == sigma(j + 1)``, listed in decreasing order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Any, Callable, Hashable, Iterable, Mapping, NamedTuple, Sequence

from ._order import label_key, sorted_labels


class SimplicialSetError(ValueError):
    pass


class SimplexRef(NamedTuple):
    base: Hashable
    word: tuple[int, ...] = ()

    @property
    def degenerate(self) -> bool:
        return bool(self.word)


def ref(x) -> SimplexRef:
    if isinstance(x, SimplexRef):
        return x
    return SimplexRef(x, ())


def surjection_from_word(n: int, word: Sequence[int]) -> tuple[int, ...]:
    """The surjection ``[n] -> [n - len(word)]`` of a degeneracy word."""
    repeats = set(word)
    out, v = [0], 0
    for t in range(1, n + 1):
        if t - 1 not in repeats:
            v += 1
        out.append(v)
    return tuple(out)


def word_from_surjection(sigma: Sequence[int]) -> tuple[int, ...]:
    return tuple(j for j in range(len(sigma) - 2, -1, -1) if sigma[j] == sigma[j + 1])


def coface(n: int, i: int) -> tuple[int, ...]:
    """delta_i : [n-1] -> [n], skipping i."""
    return tuple(t if t < i else t + 1 for t in range(n))


def codegeneracy(n: int, j: int) -> tuple[int, ...]:
    """sigma_j : [n+1] -> [n], hitting j twice."""
    return tuple(t if t <= j else t - 1 for t in range(n + 2))


class TruncatedSimplicialSet:
    """Nondegenerate cells per dimension plus their normalized faces.

    ``faces[x]`` lists ``d_0 x, ..., d_n x`` as :class:`SimplexRef` values.
    Cell names must be unique across dimensions.  Instances are treated as
    immutable; face computations are memoized per instance.
    """

    def __init__(self, dim_cap: int, cells: Mapping[int, Iterable[Hashable]],
                 faces: Mapping[Hashable, Sequence[Any]] | None = None):
        if dim_cap < 0:
            raise SimplicialSetError("dim_cap must be >= 0")
        faces = faces or {}
        self.dim_cap = dim_cap
        self.cells: dict[int, tuple] = {}
        self.dim_of: dict[Hashable, int] = {}
        for n in range(dim_cap + 1):
            names = sorted_labels(set(cells.get(n, ())))
            for x in names:
                if x in self.dim_of:
                    raise SimplicialSetError(f"cell name {x!r} used in dimensions {self.dim_of[x]} and {n}")
                self.dim_of[x] = n
            self.cells[n] = tuple(names)
        extra = [n for n in cells if n > dim_cap and cells[n]]
        if extra:
            raise SimplicialSetError(f"cells in dimension {max(extra)} exceed dim_cap {dim_cap}")
        self.faces: dict[Hashable, tuple[SimplexRef, ...]] = {}
        for x, n in self.dim_of.items():
            if n == 0:
                if faces.get(x):
                    raise SimplicialSetError(f"vertex {x!r} cannot have faces")
                continue
            fs = faces.get(x)
            if fs is None or len(fs) != n + 1:
                raise SimplicialSetError(f"cell {x!r} of dimension {n} needs {n + 1} faces")
            fs = tuple(ref(f) for f in fs)
            for f in fs:
                if f.base not in self.dim_of:
                    raise SimplicialSetError(f"face {f.base!r} of {x!r} is not a cell")
                if self.dimension(f) != n - 1:
                    raise SimplicialSetError(f"face {f!r} of {x!r} has the wrong dimension")
                if list(f.word) != sorted(set(f.word), reverse=True) or (f.word and f.word[0] >= n - 1):
                    raise SimplicialSetError(f"face {f!r} of {x!r} is not in normal form")
            self.faces[x] = fs
        self._face_cache: dict = {}

    # -- basic structure -------------------------------------------------

    def dimension(self, s: SimplexRef) -> int:
        return self.dim_of[s.base] + len(s.word)

    def nondegenerate(self, n: int) -> tuple:
        return self.cells.get(n, ())

    def counts(self) -> tuple[int, ...]:
        return tuple(len(self.cells[n]) for n in range(self.dim_cap + 1))

    def top_dimension(self) -> int:
        dims = [n for n, c in self.cells.items() if c]
        return max(dims) if dims else -1

    def is_empty(self) -> bool:
        return not self.dim_of

    def __eq__(self, other):
        if not isinstance(other, TruncatedSimplicialSet):
            return NotImplemented
        return (self.dim_cap == other.dim_cap and self.cells == other.cells
                and self.faces == other.faces)

    def __hash__(self):
        return hash((self.dim_cap, tuple(self.counts())))

    def __repr__(self):
        return f"TruncatedSimplicialSet(dim_cap={self.dim_cap}, counts={self.counts()})"

    # -- simplicial operators ---------------------------------------------

    def apply(self, s: SimplexRef, theta: Sequence[int]) -> SimplexRef:
        """Pull ``s`` back along a monotone map ``theta : [k] -> [dim s]``."""
        s = ref(s)
        n = self.dimension(s)
        m = self.dim_of[s.base]
        sigma = surjection_from_word(n, s.word)
        composite = [sigma[t] for t in theta]
        image = sorted(set(composite))
        tau = [image.index(v) for v in composite]
        cur = SimplexRef(s.base, ())
        image_set = set(image)
        for j in range(m, -1, -1):
            if j not in image_set:
                cur = self.face(cur, j)
        # cur = mu^* base, now apply tau^* on top of cur's own degeneracies
        inner = surjection_from_word(len(image) - 1, cur.word)
        total = tuple(inner[t] for t in tau)
        return SimplexRef(cur.base, word_from_surjection(total))

    def face(self, s: SimplexRef, i: int) -> SimplexRef:
        s = ref(s)
        key = (s, i)
        hit = self._face_cache.get(key)
        if hit is not None:
            return hit
        n = self.dimension(s)
        if n == 0 or not 0 <= i <= n:
            raise SimplicialSetError(f"face d_{i} undefined on a {n}-simplex")
        if not s.word:
            out = self.faces[s.base][i]
        else:
            out = self.apply(s, coface(n, i))
        self._face_cache[key] = out
        return out

    def degeneracy(self, s: SimplexRef, j: int) -> SimplexRef:
        s = ref(s)
        n = self.dimension(s)
        if not 0 <= j <= n:
            raise SimplicialSetError(f"degeneracy s_{j} undefined on a {n}-simplex")
        return self.apply(s, codegeneracy(n, j))

    def iterated_degeneracy(self, s: SimplexRef, times: int) -> SimplexRef:
        s = ref(s)
        for _ in range(times):
            s = self.degeneracy(s, 0)
        return s

    def vertices(self, s: SimplexRef) -> tuple:
        """The ordered vertices of a simplex (as cell names)."""
        s = ref(s)
        n = self.dimension(s)
        return tuple(self.apply(s, (t,)).base for t in range(n + 1))

    def n_simplices(self, n: int) -> list[SimplexRef]:
        """All n-simplices, degenerate ones included, in normal form."""
        if n > self.dim_cap or n < 0:
            raise SimplicialSetError(f"dimension {n} outside 0..{self.dim_cap}")
        out = []
        for m in range(n + 1):
            words = [tuple(sorted(c, reverse=True)) for c in combinations(range(n), n - m)]
            for x in self.cells[m]:
                for w in words:
                    out.append(SimplexRef(x, w))
        return out

    def n_simplex_count(self, n: int) -> int:
        return sum(len(self.cells[m]) * comb(n, n - m) for m in range(n + 1))


def n_simplices(X: TruncatedSimplicialSet, n: int) -> list[SimplexRef]:
    return X.n_simplices(n)


# -- constructors ---------------------------------------------------------

EMPTY_CAP = 0


def empty(dim_cap: int = 0) -> TruncatedSimplicialSet:
    return TruncatedSimplicialSet(dim_cap, {})


def _subset_complex(n: int, keep: Callable[[tuple], bool], dim_cap: int) -> TruncatedSimplicialSet:
    cells, faces = {}, {}
    for m in range(0, min(n, dim_cap) + 1):
        cells[m] = []
        for sub in combinations(range(n + 1), m + 1):
            if not keep(sub):
                continue
            name = sub[0] if m == 0 else sub
            cells[m].append(name)
            if m:
                fs = []
                for i in range(m + 1):
                    f = sub[:i] + sub[i + 1:]
                    fs.append(SimplexRef(f[0] if m == 1 else f))
                faces[name] = fs
    return TruncatedSimplicialSet(dim_cap, cells, faces)


def standard_simplex(n: int, dim_cap: int | None = None) -> TruncatedSimplicialSet:
    """Delta[n]: vertices 0..n, nondegenerate m-simplices are (m+1)-subsets."""
    if n < 0:
        raise SimplicialSetError("n must be >= 0")
    dim_cap = n if dim_cap is None else dim_cap
    if dim_cap < n:
        raise SimplicialSetError(f"dim_cap {dim_cap} is below n = {n}")
    return _subset_complex(n, lambda sub: True, dim_cap)


def boundary(n: int, dim_cap: int | None = None) -> TruncatedSimplicialSet:
    """The boundary of Delta[n]; ``boundary(0)`` is the empty simplicial set."""
    if n < 0:
        raise SimplicialSetError("n must be >= 0")
    dim_cap = n if dim_cap is None else dim_cap
    if n == 0:
        return empty(dim_cap)
    return _subset_complex(n, lambda sub: len(sub) < n + 1, dim_cap)


def horn(n: int, k: int, dim_cap: int | None = None) -> TruncatedSimplicialSet:
    """V[n,k]: the boundary of Delta[n] without its k-th face."""
    if n < 1:
        raise SimplicialSetError("horns need n >= 1")
    if not 0 <= k <= n:
        raise SimplicialSetError(f"k = {k} outside 0..{n}")
    dim_cap = n if dim_cap is None else dim_cap
    missing = tuple(t for t in range(n + 1) if t != k)
    return _subset_complex(n, lambda sub: len(sub) < n + 1 and sub != missing, dim_cap)


def disjoint_union(*parts: TruncatedSimplicialSet) -> TruncatedSimplicialSet:
    """Disjoint union; cells are renamed to ``(index, name)``."""
    cap = min(p.dim_cap for p in parts) if parts else 0
    cells: dict[int, list] = {}
    faces = {}
    for idx, p in enumerate(parts):
        for n in range(cap + 1):
            for x in p.cells[n]:
                cells.setdefault(n, []).append((idx, x))
                if n:
                    faces[(idx, x)] = [SimplexRef((idx, f.base), f.word) for f in p.faces[x]]
    return TruncatedSimplicialSet(cap, cells, faces)


def truncate(X: TruncatedSimplicialSet, dim_cap: int) -> TruncatedSimplicialSet:
    if dim_cap > X.dim_cap:
        raise SimplicialSetError("truncate cannot raise the cap")
    cells = {n: X.cells[n] for n in range(dim_cap + 1)}
    faces = {x: X.faces[x] for n in range(1, dim_cap + 1) for x in X.cells[n]}
    return TruncatedSimplicialSet(dim_cap, cells, faces)


def discrete(points: Iterable[Hashable], dim_cap: int = 0) -> TruncatedSimplicialSet:
    return TruncatedSimplicialSet(dim_cap, {0: list(points)})


def from_simplicial_data(dim_cap: int, levels: Mapping[int, Iterable[Hashable]],
                         face: Callable[[int, int, Hashable], Hashable],
                         degeneracy: Callable[[int, int, Hashable], Hashable]) -> tuple[TruncatedSimplicialSet, dict]:
    """Build a truncated simplicial set from all of its simplices.

    ``levels[n]`` holds every n-simplex (degenerate ones included);
    ``face(n, i, x)`` and ``degeneracy(n, j, x)`` act on an n-simplex.
    Returns the simplicial set, whose cells are the nondegenerate elements,
    and the map sending every element to its normal form.
    """
    normal: dict[tuple[int, Hashable], SimplexRef] = {}
    cells: dict[int, list] = {n: [] for n in range(dim_cap + 1)}
    for n in range(dim_cap + 1):
        for x in levels.get(n, ()):
            if n == 0:
                normal[(0, x)] = SimplexRef(x, ())
                cells[0].append(x)
                continue
            word = tuple(j for j in range(n - 1, -1, -1)
                         if degeneracy(n - 1, j, face(n, j, x)) == x)
            if not word:
                normal[(n, x)] = SimplexRef(x, ())
                cells[n].append(x)
                continue
            base, dim = x, n
            for j in word:
                base = face(dim, j, base)
                dim -= 1
            normal[(n, x)] = SimplexRef(normal[(dim, base)].base, word)
    faces = {}
    for n in range(1, dim_cap + 1):
        for x in cells[n]:
            faces[x] = [normal[(n - 1, face(n, i, x))] for i in range(n + 1)]
    X = TruncatedSimplicialSet(dim_cap, cells, faces)
    return X, {key: val for key, val in normal.items()}


# -- verification --------------------------------------------------------

@dataclass(frozen=True)
class IdentityViolation:
    simplex: Hashable
    i: int
    j: int
    lhs: SimplexRef | None
    rhs: SimplexRef | None

    def __str__(self):
        return f"d_{self.i} d_{self.j} {self.simplex!r} = {self.lhs!r} but d_{self.j - 1} d_{self.i} = {self.rhs!r}"


def verify_identities(X: TruncatedSimplicialSet) -> list[IdentityViolation]:
    """Every violated instance of ``d_i d_j = d_{j-1} d_i`` (i < j).

    Degenerate simplices satisfy the mixed identities by construction of
    the normal forms, so the check runs over nondegenerate cells.
    """
    out = []
    for n in range(2, X.dim_cap + 1):
        for x in X.cells[n]:
            s = SimplexRef(x)
            for j in range(1, n + 1):
                for i in range(j):
                    try:
                        lhs = X.face(X.face(s, j), i)
                        rhs = X.face(X.face(s, i), j - 1)
                    except (KeyError, SimplicialSetError):
                        out.append(IdentityViolation(x, i, j, None, None))
                        continue
                    if lhs != rhs:
                        out.append(IdentityViolation(x, i, j, lhs, rhs))
    return out


# -- maps ----------------------------------------------------------------

@dataclass
class SimplicialMap:
    source: TruncatedSimplicialSet
    target: TruncatedSimplicialSet
    assignment: dict = field(default_factory=dict)

    def __call__(self, s) -> SimplexRef:
        s = ref(s)
        img = ref(self.assignment[s.base])
        for j in reversed(s.word):
            img = self.target.degeneracy(img, j)
        return img

    def violations(self) -> list[str]:
        out = []
        X, Y = self.source, self.target
        cap = min(X.dim_cap, Y.dim_cap)
        for n in range(cap + 1):
            for x in X.cells[n]:
                if x not in self.assignment:
                    out.append(f"no image for {x!r}")
                    continue
                img = ref(self.assignment[x])
                if img.base not in Y.dim_of or Y.dimension(img) != n:
                    out.append(f"image of {x!r} has wrong dimension")
                    continue
                for i in range(n + 1 if n else 0):
                    if self(X.faces[x][i]) != Y.face(img, i):
                        out.append(f"d_{i} does not commute at {x!r}")
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def is_isomorphism(self) -> bool:
        """Bijective on nondegenerate cells in each dimension and a map."""
        X, Y = self.source, self.target
        if X.dim_cap != Y.dim_cap or not self.is_valid():
            return False
        for n in range(X.dim_cap + 1):
            imgs = [ref(self.assignment[x]) for x in X.cells[n]]
            if any(i.word for i in imgs):
                return False
            if sorted_labels(i.base for i in imgs) != list(Y.cells[n]):
                return False
        return True

    def is_levelwise_bijection(self) -> bool:
        X, Y = self.source, self.target
        cap = min(X.dim_cap, Y.dim_cap)
        if not self.is_valid():
            return False
        for n in range(cap + 1):
            imgs = {self(s) for s in X.n_simplices(n)}
            if len(imgs) != X.n_simplex_count(n) or len(imgs) != Y.n_simplex_count(n):
                return False
        return True

    def pi0_map(self) -> dict:
        """Component index of X -> component index of Y."""
        cx, cy = pi0(self.source), pi0(self.target)
        where = {v: k for k, comp in enumerate(cy) for v in comp}
        return {k: where[self(SimplexRef(min(comp, key=label_key))).base] for k, comp in enumerate(cx)}

    def pi0_bijective(self) -> bool:
        m = self.pi0_map()
        return len(set(m.values())) == len(m) == len(pi0(self.target))


# -- components and homology --------------------------------------------

def pi0(X: TruncatedSimplicialSet) -> list[frozenset]:
    """Connected components of the vertices, in deterministic order."""
    parent = {v: v for v in X.cells[0]}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    if X.dim_cap >= 1:
        for e in X.cells[1]:
            a, b = (find(f.base) for f in X.faces[e])
            if a != b:
                parent[a] = b
    groups: dict = {}
    for v in X.cells[0]:
        groups.setdefault(find(v), []).append(v)
    comps = [frozenset(g) for g in groups.values()]
    return sorted(comps, key=lambda c: label_key(min(c, key=label_key)))


@dataclass(frozen=True)
class HomologyReport:
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    validity_bound: int

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * b for n, b in enumerate(self.betti))

    def reduced_trivial(self) -> bool:
        return (self.betti[:1] == (1,) and all(b == 0 for b in self.betti[1:])
                and all(not t for t in self.torsion))


def boundary_matrix(X: TruncatedSimplicialSet, n: int) -> list[list[int]]:
    """Normalized boundary C_n -> C_{n-1}: rows are (n-1)-cells, columns n-cells."""
    rows = {x: r for r, x in enumerate(X.cells[n - 1])}
    mat = [[0] * len(X.cells[n]) for _ in rows]
    for c, x in enumerate(X.cells[n]):
        for i, f in enumerate(X.faces[x]):
            if not f.word:
                mat[rows[f.base]][c] += -1 if i % 2 else 1
    return mat


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix, each dividing the next."""
    a = [list(row) for row in matrix]
    if not a or not a[0]:
        return []
    rows, cols = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(rows, cols):
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < best):
                    best, pivot = abs(a[i][j]), (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        dirty = True
            if not dirty:
                # pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            cands = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
            _, i, j = min(cands)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def homology(X: TruncatedSimplicialSet, up_to: int | None = None) -> HomologyReport:
    """Integral homology of the normalized chain complex in degrees <= up_to."""
    bound = X.dim_cap - 1
    if up_to is None:
        up_to = bound
    if up_to > bound or up_to < 0:
        raise SimplicialSetError(f"homology up to degree {up_to} exceeds validity bound {bound}")
    factors = {n: smith_diagonal(boundary_matrix(X, n)) for n in range(1, up_to + 2)}
    betti, torsion = [], []
    for n in range(up_to + 1):
        rank_out = len(factors.get(n, []))
        rank_in = len(factors[n + 1])
        betti.append(len(X.cells[n]) - rank_out - rank_in)
        torsion.append(tuple(d for d in factors[n + 1] if d > 1))
    return HomologyReport(tuple(betti), tuple(torsion), bound)


def euler_characteristic(X: TruncatedSimplicialSet) -> int:
    return sum((-1) ** n * len(X.cells[n]) for n in range(X.dim_cap + 1))
