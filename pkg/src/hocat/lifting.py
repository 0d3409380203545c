"""Horn filling: Kan complexes, quasi-categories and nerve recognition.

All verdicts are claims up to a dimension ``d``.  At ``d = 3`` unique
inner 2-fillers give the composition and unique inner 3-fillers give
associativity, which is enough to reconstruct a category from a nerve.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fincat import FinCategory, nerve, verify_category
from .simpset import SimplexRef, SimplicialMap, SimplicialSetError, TruncatedSimplicialSet, truncate


class LiftingError(ValueError):
    pass


@dataclass(frozen=True)
class HornProblem:
    """A map V[n,k] -> X given by its n faces (every face except the k-th)."""
    n: int
    k: int
    faces: tuple

    def face(self, i: int) -> SimplexRef:
        if i == self.k:
            raise LiftingError("the k-th face is missing from a horn")
        return self.faces[i if i < self.k else i - 1]

    @property
    def inner(self) -> bool:
        return 0 < self.k < self.n

    def label(self) -> str:
        return f"V[{self.n},{self.k}]"


class _FaceIndex:
    """n-simplices of X keyed by (i, d_i z) and by full horn face tuples."""

    def __init__(self, X: TruncatedSimplicialSet):
        self.X = X
        self._by_face: dict = {}
        self._fillers: dict = {}

    def by_face(self, n, i):
        key = (n, i)
        if key not in self._by_face:
            idx: dict = {}
            for z in self.X.n_simplices(n):
                idx.setdefault(self.X.face(z, i), []).append(z)
            self._by_face[key] = idx
        return self._by_face[key]

    def fillers(self, n, k):
        key = (n, k)
        if key not in self._fillers:
            idx: dict = {}
            for z in self.X.n_simplices(n):
                faces = tuple(self.X.face(z, i) for i in range(n + 1) if i != k)
                idx.setdefault(faces, []).append(z)
            self._fillers[key] = idx
        return self._fillers[key]


def _check_range(X, n, k):
    if not 1 <= n <= X.dim_cap:
        raise LiftingError(f"n = {n} outside 1..{X.dim_cap}")
    if not 0 <= k <= n:
        raise LiftingError(f"k = {k} outside 0..{n}")


def enumerate_horns(X: TruncatedSimplicialSet, n: int, k: int, _index: _FaceIndex | None = None) -> list[HornProblem]:
    """Every compatible face tuple: d_i x_j = d_{j-1} x_i for i < j, both != k."""
    _check_range(X, n, k)
    index = _index or _FaceIndex(X)
    positions = [i for i in range(n + 1) if i != k]
    candidates = X.n_simplices(n - 1)
    out = []

    def extend(chosen: list):
        j = positions[len(chosen)]
        if n - 1 == 0 or not chosen:
            pool = candidates
        else:
            # constrain through the earliest chosen face: d_{i0} x_j = d_{j-1} x_{i0}
            i0 = positions[0]
            pool = index.by_face(n - 1, i0).get(X.face(chosen[0], j - 1), [])
        for x in pool:
            ok = True
            if n - 1 > 0:
                for pos, i in enumerate(positions[:len(chosen)]):
                    if X.face(x, i) != X.face(chosen[pos], j - 1):
                        ok = False
                        break
            if not ok:
                continue
            chosen.append(x)
            if len(chosen) == n:
                out.append(HornProblem(n, k, tuple(chosen)))
            else:
                extend(chosen)
            chosen.pop()

    extend([])
    return out


def fillers(X: TruncatedSimplicialSet, p: HornProblem, _index: _FaceIndex | None = None) -> list[SimplexRef]:
    """All n-simplices z (degenerate ones included) with d_i z = p.face(i), i != k."""
    index = _index or _FaceIndex(X)
    return list(index.fillers(p.n, p.k).get(tuple(p.faces), []))


@dataclass(frozen=True)
class HornStats:
    total: int
    unfilled: int
    multifilled: int
    unfilled_witness: HornProblem | None = None
    multifilled_witness: HornProblem | None = None


@dataclass
class LiftReport:
    """Horn statistics per (n, k) and the verdicts they imply, up to ``d``.

    Verdicts whose horns were not examined are ``None``.
    """
    d: int
    stats: dict = field(default_factory=dict)
    inner_only: bool = False

    def _all(self, pred, inner=None):
        rows = [s for (n, k), s in self.stats.items() if inner is None or (0 < k < n) == inner]
        return all(pred(s) for s in rows)

    @property
    def kan(self) -> bool | None:
        return None if self.inner_only else self._all(lambda s: s.unfilled == 0)

    @property
    def quasicategory(self) -> bool:
        return self._all(lambda s: s.unfilled == 0, inner=True)

    @property
    def unique_inner(self) -> bool:
        return self._all(lambda s: s.multifilled == 0, inner=True)

    @property
    def nerve_of_category(self) -> bool:
        return self.quasicategory and self.unique_inner

    @property
    def nerve_of_groupoid(self) -> bool | None:
        if self.inner_only:
            return None
        return self._all(lambda s: s.unfilled == 0 and s.multifilled == 0)

    def first_unfilled(self, inner: bool | None = None) -> HornProblem | None:
        for (n, k), s in self.stats.items():
            if s.unfilled_witness is not None and (inner is None or (0 < k < n) == inner):
                return s.unfilled_witness
        return None

    def lines(self) -> list[str]:
        return [f"{n} {k} {s.total} {s.unfilled} {s.multifilled}" for (n, k), s in self.stats.items()]


def lift_report(X: TruncatedSimplicialSet, d: int, inner_only: bool = False) -> LiftReport:
    if not 2 <= d <= X.dim_cap:
        raise LiftingError(f"d = {d} outside 2..{X.dim_cap}")
    index = _FaceIndex(X)
    report = LiftReport(d, inner_only=inner_only)
    for n in range(2, d + 1):
        for k in range(n + 1):
            if inner_only and not 0 < k < n:
                continue
            total = unfilled = multi = 0
            uw = mw = None
            for p in enumerate_horns(X, n, k, index):
                total += 1
                c = len(fillers(X, p, index))
                if c == 0:
                    unfilled += 1
                    uw = uw or p
                elif c > 1:
                    multi += 1
                    mw = mw or p
            report.stats[(n, k)] = HornStats(total, unfilled, multi, uw, mw)
    return report


def is_kan(X: TruncatedSimplicialSet, d: int) -> LiftReport:
    return lift_report(X, d)


def is_quasicategory(X: TruncatedSimplicialSet, d: int) -> LiftReport:
    return lift_report(X, d, inner_only=True)


def is_nerve_of_groupoid(X: TruncatedSimplicialSet, d: int) -> bool:
    return bool(lift_report(X, d).nerve_of_groupoid)


def is_nerve_of_category(X: TruncatedSimplicialSet, d: int) -> bool:
    return lift_report(X, d, inner_only=True).nerve_of_category


# -- reconstruction --------------------------------------------------------

def reconstruct_category(X: TruncatedSimplicialSet) -> FinCategory:
    """Category read off vertices, edges and unique inner 2-fillers.

    Morphisms are the 1-simplices in normal form; the identity of ``v`` is
    the degenerate edge ``s_0 v``.  Requires ``dim_cap >= 2`` and unique
    V[2,1] fillers.
    """
    if X.dim_cap < 2:
        raise LiftingError("reconstruction needs dim_cap >= 2")
    edges = X.n_simplices(1)
    mors = {e: (X.face(e, 1).base, X.face(e, 0).base) for e in edges}
    ident = {v: SimplexRef(v, (0,)) for v in X.cells[0]}
    index = _FaceIndex(X)
    table = index.fillers(2, 1)
    comp = {}
    for f in edges:
        for g in edges:
            if mors[f][1] != mors[g][0]:
                continue
            fill = table.get((g, f), [])
            if len(fill) != 1:
                raise LiftingError(f"composite of {g!r} after {f!r} has {len(fill)} fillers")
            comp[(g, f)] = X.face(fill[0], 1)
    return FinCategory(X.cells[0], mors, ident, comp)


def spine(X: TruncatedSimplicialSet, s: SimplexRef) -> tuple:
    """The edges (i-1, i) of a simplex, as 1-simplices in normal form."""
    n = X.dimension(s)
    return tuple(X.apply(s, (i - 1, i)) for i in range(1, n + 1))


def nerve_comparison(X: TruncatedSimplicialSet, C: FinCategory, d: int) -> SimplicialMap:
    """X -> nerve(C, d) sending a simplex to its spine, for C reconstructed from X."""
    N = nerve(C, d)
    assignment = {}
    for n in range(d + 1):
        for x in X.cells[n]:
            if n == 0:
                assignment[x] = SimplexRef(x)
            else:
                chain = spine(X, SimplexRef(x))
                keep = tuple(e for e in chain if not C.is_identity(e))
                word = tuple(p for p in range(n - 1, -1, -1) if C.is_identity(chain[p]))
                assignment[x] = SimplexRef(keep, word) if keep else SimplexRef(C.source(chain[0]), word)
    return SimplicialMap(X if X.dim_cap == d else truncate(X, d), N, assignment)


def reconstruction_round_trip(X: TruncatedSimplicialSet, d: int = 3) -> tuple[FinCategory, bool]:
    """Reconstruct C from X and test that nerve(C) is isomorphic to X up to d."""
    C = reconstruct_category(X)
    if verify_category(C):
        return C, False
    try:
        phi = nerve_comparison(X, C, d)
    except (KeyError, SimplicialSetError):
        return C, False
    return C, phi.is_isomorphism()
