"""Arithmetic and small-matrix linear algebra over GF(q).

Elements are the integers 0..q-1.  For q = p^k an element encodes the
coefficients of a polynomial in base p, reduced modulo the first monic
polynomial of degree k that yields a field.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import NamedTuple


class FieldError(ValueError):
    pass


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, k


class GF:
    """The finite field with q elements, by lookup tables."""

    def __init__(self, q: int):
        self.q = q
        self.p, self.k = _prime_power(q)
        els = range(q)
        self.add = [[self._poly_add(a, b) for b in els] for a in els]
        self.mul = self._build_mul()
        self.neg = [next(b for b in els if self.add[a][b] == 0) for a in els]
        self.inv = [None] + [next(b for b in els if self.mul[a][b] == 1) for a in range(1, q)]

    def _digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _number(self, digits):
        return sum(d * self.p ** i for i, d in enumerate(digits))

    def _poly_add(self, a, b):
        return self._number([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _build_mul(self):
        p, k, q = self.p, self.k, self.q
        if k == 1:
            return [[(a * b) % p for b in range(q)] for a in range(q)]
        for tail in product(range(p), repeat=k):
            modulus = list(tail) + [1]  # monic, low degree first
            table = [[self._poly_mul(a, b, modulus) for b in range(q)] for a in range(q)]
            if all(any(table[a][b] == 1 for b in range(q)) for a in range(1, q)):
                return table
        raise FieldError(f"no irreducible polynomial found for q = {q}")

    def _poly_mul(self, a, b, modulus):
        p, k = self.p, self.k
        x, y = self._digits(a), self._digits(b)
        prod = [0] * (2 * k - 1)
        for i, u in enumerate(x):
            for j, v in enumerate(y):
                prod[i + j] = (prod[i + j] + u * v) % p
        for d in range(len(prod) - 1, k - 1, -1):
            c = prod[d]
            if c:
                for t in range(k + 1):
                    prod[d - k + t] = (prod[d - k + t] - c * modulus[t]) % p
        return self._number(prod[:k])

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, GF) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)


# -- matrices ------------------------------------------------------------

class Mat(NamedTuple):
    """A rows x cols matrix with entries stored row-major."""
    rows: int
    cols: int
    entries: tuple

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def __repr__(self):
        body = ";".join(" ".join(map(str, self.row(i))) for i in range(self.rows))
        return f"Mat{self.rows}x{self.cols}[{body}]"


def mat(rows: list[list[int]] | tuple, cols: int | None = None) -> Mat:
    rows = [tuple(r) for r in rows]
    c = len(rows[0]) if rows else (cols or 0)
    return Mat(len(rows), c, tuple(v for r in rows for v in r))


def zero(rows: int, cols: int) -> Mat:
    return Mat(rows, cols, (0,) * (rows * cols))


def identity(n: int) -> Mat:
    return Mat(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))


def mat_mul(F: GF, A: Mat, B: Mat) -> Mat:
    if A.cols != B.rows:
        raise FieldError(f"shapes {A.rows}x{A.cols} and {B.rows}x{B.cols} do not compose")
    add, mul = F.add, F.mul
    out = []
    for i in range(A.rows):
        row = A.row(i)
        for j in range(B.cols):
            acc = 0
            for t in range(A.cols):
                acc = add[acc][mul[row[t]][B.entries[t * B.cols + j]]]
            out.append(acc)
    return Mat(A.rows, B.cols, tuple(out))


def _reduce(F: GF, rows: list[list[int]], ncols: int) -> int:
    """Row reduce in place; returns the rank."""
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = F.inv[rows[r][c]]
        rows[r] = [F.mul[inv][v] for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = F.neg[rows[i][c]]
                rows[i] = [F.add[v][F.mul[f][w]] for v, w in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def rank(F: GF, A: Mat) -> int:
    return _reduce(F, [list(A.row(i)) for i in range(A.rows)], A.cols)


def all_matrices(F: GF, rows: int, cols: int):
    """Every rows x cols matrix, in lexicographic order of entries."""
    for entries in product(range(F.q), repeat=rows * cols):
        yield Mat(rows, cols, entries)


@lru_cache(maxsize=None)
def general_linear(q: int, n: int) -> tuple:
    F = field(q)
    return tuple(A for A in all_matrices(F, n, n) if rank(F, A) == n)


def inverse(F: GF, A: Mat) -> Mat:
    n = A.rows
    I = identity(n)
    rows = [list(A.row(i)) + list(I.row(i)) for i in range(n)]
    if _reduce(F, rows, n) < n:
        raise FieldError("matrix is singular")
    return Mat(n, n, tuple(v for r in rows for v in r[n:]))


def gl_order(q: int, n: int) -> int:
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


def count_rank(q: int, rows: int, cols: int, r: int) -> int:
    """Number of rows x cols matrices of rank r over GF(q)."""
    if r < 0 or r > min(rows, cols):
        return 0
    num = 1
    for i in range(r):
        num *= (q ** rows - q ** i) * (q ** cols - q ** i)
    return num // gl_order(q, r)
