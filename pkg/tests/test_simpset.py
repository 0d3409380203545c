from itertools import combinations, product
from math import comb

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from hocat.fincat import nerve, walking_arrow, walking_iso
from hocat.simpset import (SimplexRef, SimplicialMap, SimplicialSetError, TruncatedSimplicialSet, boundary,
                           disjoint_union, euler_characteristic, homology, horn, n_simplices, pi0,
                           smith_diagonal, standard_simplex, surjection_from_word, truncate,
                           verify_identities, word_from_surjection)


def monotone(n, m):
    """Order-preserving maps [n] -> [m], by brute force."""
    return [f for f in product(range(m + 1), repeat=n + 1) if all(a <= b for a, b in zip(f, f[1:]))]


def surjections(n, m):
    return [f for f in monotone(n, m) if set(f) == set(range(m + 1))]


def test_standard_simplex_small():
    assert standard_simplex(0).counts() == (1,)
    assert standard_simplex(2).counts() == (3, 3, 1)


@pytest.mark.parametrize("n", range(6))
def test_standard_simplex_binomial_counts(n):
    X = standard_simplex(n)
    subsets = {m: len(list(combinations(range(n + 1), m + 1))) for m in range(n + 1)}
    assert X.counts() == tuple(subsets[m] for m in range(n + 1))
    assert all(X.counts()[m] == comb(n + 1, m + 1) for m in range(n + 1))


def test_boundary_and_horns():
    assert boundary(1).counts() == (2, 0)
    assert boundary(2).counts() == (3, 3, 0)
    assert boundary(0).is_empty()
    assert horn(1, 0).counts() == (1, 0)
    assert set(horn(2, 0).cells[1]) == {(0, 1), (0, 2)}
    assert set(horn(2, 1).cells[1]) == {(0, 1), (1, 2)}
    with pytest.raises(SimplicialSetError):
        horn(2, 3)


def test_n_simplices_examples():
    assert len(n_simplices(standard_simplex(0, dim_cap=2), 2)) == 1
    assert len(n_simplices(standard_simplex(1), 1)) == 3
    cells = n_simplices(boundary(2), 2)
    assert all(s.degenerate for s in cells)
    # 3 edges * 2 surjections [2]->[1] plus 3 vertices * 1 surjection [2]->[0]
    assert len(cells) == 3 * len(surjections(2, 1)) + 3 * len(surjections(2, 0)) == 9
    with pytest.raises(SimplicialSetError):
        n_simplices(boundary(2), 3)


@pytest.mark.parametrize("m,n", [(m, n) for m in range(4) for n in range(4)])
def test_n_simplices_count_monotone_maps(m, n):
    X = standard_simplex(m, dim_cap=max(m, n))
    assert len(n_simplices(X, n)) == len(monotone(n, m))


def test_normal_form_words():
    for n in range(5):
        for m in range(n + 1):
            for sigma in surjections(n, m):
                w = word_from_surjection(sigma)
                assert list(w) == sorted(set(w), reverse=True)
                assert surjection_from_word(n, w) == tuple(sigma)


@given(st.integers(0, 3), st.data())
@settings(max_examples=60, deadline=None)
def test_apply_is_functorial(m, data):
    X = standard_simplex(m, dim_cap=4)
    n = data.draw(st.integers(0, 4))
    k = data.draw(st.integers(0, 4))
    s = data.draw(st.sampled_from(n_simplices(X, n)))
    f = data.draw(st.sampled_from(monotone(k, n)))
    g = data.draw(st.sampled_from(monotone(min(k, 3), k)))
    # on Delta[m] a simplex is its vertex sequence, which gives an oracle
    verts = X.vertices(s)
    assert X.vertices(X.apply(s, f)) == tuple(verts[i] for i in f)
    assert X.apply(X.apply(s, f), g) == X.apply(s, tuple(f[i] for i in g))


def test_verify_identities_clean_and_broken():
    assert verify_identities(standard_simplex(3)) == []
    assert verify_identities(nerve(walking_iso(), 3)) == []
    bad = TruncatedSimplicialSet(2, {0: "abcdef", 1: ["ab", "cd", "ef"], 2: ["t"]},
                                 {"ab": ["b", "a"], "cd": ["d", "c"], "ef": ["f", "e"], "t": ["ab", "cd", "ef"]})
    report = verify_identities(bad)
    assert report and {(v.i, v.j) for v in report} <= {(0, 1), (0, 2), (1, 2)}
    assert "d_" in str(report[0])


def test_pi0_examples():
    pt = standard_simplex(0, dim_cap=1)
    assert len(pi0(disjoint_union(pt, pt))) == 2
    assert len(pi0(boundary(2))) == 1


def test_homology_examples():
    assert homology(standard_simplex(5), 3).betti == (1, 0, 0, 0)
    assert homology(boundary(3, dim_cap=3), 2).betti == (1, 0, 1)
    rep = homology(nerve(walking_iso(), 5), 3)
    assert rep.betti == (1, 0, 0, 0) and not any(rep.torsion)
    assert rep.validity_bound == 4
    with pytest.raises(SimplicialSetError):
        homology(boundary(2), 2)


def test_homology_of_nerve_of_z2_has_torsion():
    from hocat.fincat import cyclic_group
    rep = homology(nerve(cyclic_group(2), 4), 3)
    # H_1(RP^inf) = Z/2, H_2 = 0, H_3 = Z/2
    assert rep.betti == (1, 0, 0, 0)
    assert rep.torsion[1] == (2,) and rep.torsion[2] == () and rep.torsion[3] == (2,)


@pytest.mark.parametrize("X", [standard_simplex(3), boundary(3, dim_cap=4), boundary(2, dim_cap=3),
                               nerve(walking_arrow(), 3), horn(3, 1, dim_cap=4)])
def test_euler_characteristic_and_pi0(X):
    rep = homology(X)
    assert rep.betti[0] == len(pi0(X))
    if X.top_dimension() < X.dim_cap:
        assert euler_characteristic(X) == rep.euler_characteristic()


def _sympy_invariants(rows):
    M = sympy.Matrix(rows)
    D = smith_normal_form(M, domain=sympy.ZZ)
    return sorted(abs(D[i, i]) for i in range(min(D.shape)) if D[i, i] != 0)


@given(st.integers(1, 4), st.integers(1, 4), st.data())
@settings(max_examples=80, deadline=None)
def test_smith_diagonal_matches_sympy(r, c, data):
    rows = [[data.draw(st.integers(-6, 6)) for _ in range(c)] for _ in range(r)]
    diag = smith_diagonal(rows)
    assert sorted(diag) == _sympy_invariants(rows)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))


def test_simplicial_map_checks():
    X = standard_simplex(1)
    Y = standard_simplex(0, dim_cap=1)
    collapse = SimplicialMap(X, Y, {0: SimplexRef(0), 1: SimplexRef(0), (0, 1): SimplexRef(0, (0,))})
    assert collapse.is_valid() and collapse.pi0_bijective()
    assert not collapse.is_levelwise_bijection()
    broken = SimplicialMap(X, Y, {0: SimplexRef(0), 1: SimplexRef(0), (0, 1): SimplexRef(0)})
    assert not broken.is_valid()


def test_truncate_and_faces():
    X = truncate(standard_simplex(3), 1)
    assert X.counts() == (4, 6)
    Y = standard_simplex(2)
    t = SimplexRef((0, 1, 2))
    assert Y.face(t, 1) == SimplexRef((0, 2))
    assert Y.degeneracy(SimplexRef((0, 2)), 1) == SimplexRef((0, 2), (1,))
