"""Deterministic ordering for heterogeneous hashable labels.

Cell names, morphism names and bisimplicial elements are arbitrary nested
tuples of strings and ints.  Python refuses to compare ``"a"`` with ``1``
and string hashing is salted per process, so everything user-visible is
sorted with :func:`label_key`.
"""

from __future__ import annotations

from typing import Any, Iterable


def label_key(x: Any):
    if x is None:
        return (0,)
    if isinstance(x, bool):
        return (1, int(x))
    if isinstance(x, int):
        return (1, x)
    if isinstance(x, str):
        return (2, x)
    if isinstance(x, tuple):
        return (3, len(x), tuple(label_key(y) for y in x))
    if isinstance(x, frozenset):
        return (4, tuple(sorted(label_key(y) for y in x)))
    return (5, type(x).__name__, repr(x))


def sorted_labels(xs: Iterable[Any]) -> list:
    return sorted(xs, key=label_key)
