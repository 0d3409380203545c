from itertools import product

import pytest

from hocat.fincat import codiscrete, cyclic_group, from_generators_poset, nerve, verify_category, walking_arrow
from hocat.lifting import (HornProblem, LiftingError, enumerate_horns, fillers, is_kan, is_nerve_of_category,
                           is_nerve_of_groupoid, is_quasicategory, lift_report, reconstruct_category,
                           reconstruction_round_trip)
from hocat.simpset import SimplexRef, boundary, horn, standard_simplex


def brute_horns(X, n, k):
    """All tuples of (n-1)-simplices satisfying the simplicial identities off k."""
    pos = [i for i in range(n + 1) if i != k]
    pool = X.n_simplices(n - 1)
    out = []
    for faces in product(pool, repeat=n):
        x = dict(zip(pos, faces))
        if n == 1 or all(X.face(x[j], i) == X.face(x[i], j - 1) for i in pos for j in pos if i < j):
            out.append(faces)
    return out


def brute_fillers(X, p):
    return [z for z in X.n_simplices(p.n)
            if all(X.face(z, i) == p.face(i) for i in range(p.n + 1) if i != p.k)]


@pytest.mark.parametrize("make", [lambda: nerve(walking_arrow(), 3), lambda: boundary(2, dim_cap=3),
                                  lambda: horn(2, 0, dim_cap=3), lambda: nerve(codiscrete("xy"), 3),
                                  lambda: standard_simplex(2, dim_cap=3)])
def test_horn_enumeration_matches_brute_force(make):
    X = make()
    for n in (2, 3):
        for k in range(n + 1):
            found = enumerate_horns(X, n, k)
            assert sorted(map(repr, (p.faces for p in found))) == sorted(map(repr, brute_horns(X, n, k)))
            for p in found:
                assert sorted(map(repr, fillers(X, p))) == sorted(map(repr, brute_fillers(X, p)))


def test_horn_counts_examples():
    assert len(enumerate_horns(nerve(walking_arrow(), 3), 2, 1)) == 4
    pt = standard_simplex(0, dim_cap=2)
    problems = enumerate_horns(pt, 2, 0)
    assert len(problems) == 1 and len(fillers(pt, problems[0])) == 1


def test_boundary_has_an_unfillable_inner_horn():
    X = boundary(2, dim_cap=2)
    p = HornProblem(2, 1, (SimplexRef((1, 2)), SimplexRef((0, 1))))
    assert p in enumerate_horns(X, 2, 1)
    assert fillers(X, p) == []
    assert not is_quasicategory(X, 2).quasicategory


def test_horn_problem_label_and_missing_face():
    p = HornProblem(3, 1, ("a", "b", "c"))
    assert p.label() == "V[3,1]" and p.inner
    assert p.face(0) == "a" and p.face(2) == "b"
    with pytest.raises(LiftingError):
        p.face(1)


def test_range_errors():
    X = standard_simplex(1)
    with pytest.raises(LiftingError):
        enumerate_horns(X, 2, 0)
    with pytest.raises(LiftingError):
        enumerate_horns(X, 1, 2)
    with pytest.raises(LiftingError):
        lift_report(X, 2)


def test_verdicts_on_examples():
    E = nerve(walking_arrow(), 3)
    assert is_quasicategory(E, 3).nerve_of_category
    rep = is_kan(E, 3)
    assert not rep.kan and rep.first_unfilled().label() == "V[2,0]"
    assert is_nerve_of_category(E, 3) and not is_nerve_of_groupoid(E, 3)
    D = nerve(codiscrete("xy"), 3)
    assert is_kan(D, 3).kan and is_nerve_of_groupoid(D, 3)
    Z3 = nerve(cyclic_group(3), 3)
    assert is_nerve_of_groupoid(Z3, 3)
    assert is_quasicategory(E, 3).kan is None


def test_boundary_is_not_kan_but_horn_lines_are_reported():
    rep = is_kan(boundary(2, dim_cap=3), 3)
    assert not rep.kan
    for line in rep.lines():
        n, k, total, unfilled, multi = map(int, line.split())
        assert 0 <= unfilled <= total and 0 <= multi <= total


def test_standard_simplex_is_inner_kan_with_unique_fillers():
    X = standard_simplex(3)
    rep = is_quasicategory(X, 3)
    assert rep.quasicategory and rep.unique_inner


@pytest.mark.parametrize("C", [walking_arrow(), codiscrete("xyz"), cyclic_group(2),
                               from_generators_poset(range(3), lambda a, b: a <= b)])
def test_reconstruction_round_trip(C):
    X = nerve(C, 3)
    R, ok = reconstruction_round_trip(X)
    assert ok and verify_category(R) == []
    assert len(R.objects) == len(C.objects) and len(R.morphisms) == len(C.morphisms)


def test_reconstruction_rejects_non_nerves():
    with pytest.raises(LiftingError):
        reconstruct_category(boundary(2, dim_cap=2))
    with pytest.raises(LiftingError):
        reconstruct_category(standard_simplex(1))
