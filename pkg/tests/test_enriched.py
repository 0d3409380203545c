from itertools import combinations, permutations, product

import pytest

from hocat.corpus import split_idempotent
from hocat.fincat import cyclic_group, isomorphisms, monoid, morphism_class, nerve, walking_arrow, walking_iso
from hocat.enriched import (CubePoset, EnrichmentError, SimplicialFunctor, cdelta, coherent_nerve,
                            discrete_enrichment, dk_check_enriched, group_enrichment, hammock_mapping_space,
                            identity_simplicial_functor, interval_enrichment, pi0_category, relabel_to_nerve,
                            verify_simplicial_category, verify_simplicial_functor)
from hocat.lifting import is_kan, is_quasicategory
from hocat.simpset import SimplexRef, boundary, pi0, standard_simplex
from hocat.verdicts import ResourceLimit, Verdict


def brute_cube(i, j):
    """Subsets of {i..j} containing both ends, by filtering all subsets."""
    span = range(i, j + 1)
    return [u for r in range(len(span) + 1) for u in _subsets(span, r) if i in u and j in u]


def _subsets(xs, r):
    return [tuple(c) for c in combinations(xs, r)]


@pytest.mark.parametrize("n", range(5))
def test_cube_mapping_spaces(n):
    K = cdelta(n)
    for i, j in product(range(n + 1), repeat=2):
        X = K.map(i, j)
        if i > j:
            assert X.is_empty()
        elif i == j:
            assert X.counts()[0] == 1
        else:
            assert sorted(CubePoset(i, j).elements()) == sorted(brute_cube(i, j))
            assert X.counts()[0] == 2 ** (j - i - 1)


def test_cube_category_is_well_formed():
    assert verify_simplicial_category(cdelta(3)) == []
    assert cdelta(3).cap == 2
    # Map(0, 3) is the nerve of a square's face poset: a 2-cube, so 4 vertices and 2 triangles
    X = cdelta(3).map(0, 3)
    assert X.counts()[0] == 4 and len(X.cells[2]) == 2
    with pytest.raises(EnrichmentError):
        cdelta(-1)


def test_discrete_enrichment_and_pi0():
    for C in (walking_arrow(), walking_iso(), split_idempotent()):
        S = discrete_enrichment(C, 1)
        assert verify_simplicial_category(S) == []
        P = pi0_category(S)
        for a, b in product(C.objects, repeat=2):
            assert len(P.hom(a, b)) == len(C.hom(a, b))


def test_pi0_of_interval_is_walking_arrow():
    P = pi0_category(interval_enrichment(standard_simplex(1)))
    assert len(P.hom("a", "b")) == 1 and len(P.hom("b", "a")) == 0
    P2 = pi0_category(interval_enrichment(boundary(1)))
    assert len(P2.hom("a", "b")) == 2


def test_group_enrichment_needs_abelian_group():
    perms = list(permutations(range(3)))
    S3 = monoid(perms, lambda g, f: tuple(g[f[i]] for i in range(3)), (0, 1, 2))
    with pytest.raises(EnrichmentError):
        group_enrichment(S3)


def test_example_mapping_spaces_are_kan():
    for S in (group_enrichment(cyclic_group(2)), interval_enrichment(nerve(walking_iso(), 2))):
        assert verify_simplicial_category(S) == []
        for X in S.maps.values():
            if X.cells[0]:
                assert is_kan(X, 2).kan


def coherent_two_simplices(C):
    """Tuples (o0, o1, o2, v01, v12, v02, e02) with e02 an edge v02 -> v12 . v01."""
    count = 0
    for o0, o1, o2 in product(C.objects, repeat=3):
        A, B, X = C.map(o0, o1), C.map(o1, o2), C.map(o0, o2)
        for v01, v12 in product(A.cells[0], B.cells[0]):
            h = C.comp(o0, o1, o2, SimplexRef(v12), SimplexRef(v01))
            for e in X.n_simplices(1):
                if X.face(e, 0) == h:
                    count += 1
    return count


@pytest.mark.parametrize("make", [lambda: interval_enrichment(standard_simplex(1)),
                                  lambda: interval_enrichment(boundary(1)),
                                  lambda: group_enrichment(cyclic_group(2), cap=1)])
def test_coherent_nerve_two_simplices_against_oracle(make):
    C = make()
    N = coherent_nerve(C, 2)
    assert len(N.n_simplices(2)) == coherent_two_simplices(C)
    assert N.counts()[0] == len(C.objects)


def test_coherent_nerve_of_discrete_enrichment_is_the_nerve():
    for C in (walking_arrow(), walking_iso(), split_idempotent()):
        X = coherent_nerve(discrete_enrichment(C, 2), 3)
        assert relabel_to_nerve(X, C) == nerve(C, 3)


def test_coherent_nerve_of_kan_enrichment_is_a_quasicategory():
    X = coherent_nerve(interval_enrichment(nerve(walking_iso(), 2)), 3)
    assert is_quasicategory(X, 3).quasicategory


def test_coherent_nerve_limits():
    S = discrete_enrichment(walking_arrow(), 3)
    with pytest.raises(ResourceLimit):
        coherent_nerve(S, 4)
    with pytest.raises(EnrichmentError):
        coherent_nerve(discrete_enrichment(walking_arrow(), 0), 3)


def _interval_functor(X, Y, assignment):
    src, tgt = interval_enrichment(X), interval_enrichment(Y)
    pt = {"pt": SimplexRef("pt")}
    return SimplicialFunctor(src, tgt, {"a": "a", "b": "b"},
                             {("a", "a"): pt, ("b", "b"): pt, ("a", "b"): assignment, ("b", "a"): {}})


def test_enriched_dk_examples():
    S = interval_enrichment(standard_simplex(1))
    assert dk_check_enriched(identity_simplicial_functor(S)).verdict == Verdict.EQUIVALENT
    # collapsing the interval: same pi0 and homology but no bijection
    collapse = _interval_functor(standard_simplex(1), standard_simplex(0, dim_cap=1),
                                 {0: SimplexRef(0), 1: SimplexRef(0), (0, 1): SimplexRef(0, (0,))})
    assert verify_simplicial_functor(collapse) == []
    assert dk_check_enriched(collapse).verdict == Verdict.UNKNOWN
    # two points into an interval: pi0 is not preserved
    incl = _interval_functor(boundary(1), standard_simplex(1), {0: SimplexRef(0), 1: SimplexRef(1)})
    assert dk_check_enriched(incl).verdict == Verdict.NOT_EQUIVALENT


def test_enriched_dk_rejects_ill_formed():
    bad = _interval_functor(standard_simplex(1), standard_simplex(0, dim_cap=1),
                            {0: SimplexRef(0), 1: SimplexRef(0), (0, 1): SimplexRef(0)})
    with pytest.raises(EnrichmentError):
        dk_check_enriched(bad)


def test_hammock_with_identities_recovers_hom_sets():
    for C in (walking_arrow(), split_idempotent()):
        S = morphism_class(C, [])
        for a, b in product(C.objects, repeat=2):
            assert len(pi0(hammock_mapping_space(C, S, a, b))) == len(C.hom(a, b))


def test_hammock_inverting_the_walking_arrow():
    E = walking_arrow()
    S = morphism_class(E, ["f"])
    for a, b in product(E.objects, repeat=2):
        H = hammock_mapping_space(E, S, a, b)
        assert len(pi0(H)) == 1
    D = walking_iso()
    assert len(pi0(hammock_mapping_space(D, isomorphisms(D), "x", "y"))) == 1
