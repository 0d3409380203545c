from itertools import product

import pytest

from hocat.corpus import parallel_arrows, split_idempotent
from hocat.fincat import (CategoryError, codiscrete, cyclic_group, from_generators_poset, isomorphisms, monoid,
                          morphism_class, walking_arrow, walking_iso)
from hocat.localization import (contractions, gz_localize_hom, is_three_stage, representative, zigzag_representable,
                                zigzag_words)
from hocat.verdicts import ResourceLimit, Unknown


def test_inverting_the_walking_arrow():
    E = walking_arrow()
    S = morphism_class(E, ["f"])
    for x, y in product(E.objects, repeat=2):
        r = gz_localize_hom(E, S, x, y, 6)
        assert not isinstance(r, Unknown) and len(r) == 1
    back = gz_localize_hom(E, S, "y", "x", 6)
    assert representative(back.classes[0]) == (("b", "f"),)


@pytest.mark.parametrize("C", [walking_arrow(), walking_iso(), cyclic_group(3), split_idempotent(),
                               from_generators_poset("abc", lambda s, t: s <= t)])
def test_inverting_identities_gives_back_the_hom_sets(C):
    S = morphism_class(C, [])
    for x, y in product(C.objects, repeat=2):
        r = gz_localize_hom(C, S, x, y, 4)
        assert len(r) == len(C.hom(x, y))


@pytest.mark.parametrize("C", [walking_iso(), cyclic_group(2), codiscrete("abc")])
def test_inverting_isomorphisms_changes_nothing(C):
    S = isomorphisms(C)
    for x, y in product(C.objects, repeat=2):
        assert len(gz_localize_hom(C, S, x, y, 4)) == len(C.hom(x, y))


def test_inverting_everything_in_a_contractible_category():
    # a category whose nerve is contractible localizes to the codiscrete groupoid
    for C in (walking_iso(), from_generators_poset("abc", lambda s, t: s <= t)):
        S = morphism_class(C, C.morphisms)
        for x, y in product(C.objects, repeat=2):
            assert len(gz_localize_hom(C, S, x, y, 5)) == 1


def test_inverting_an_idempotent_kills_it():
    M = monoid([0, 1], lambda a, b: a * b, 1)
    r = gz_localize_hom(M, morphism_class(M, [0]), "*", "*", 5)
    assert len(r) == 1


def test_infinite_hom_sets_are_unknown():
    P = parallel_arrows()
    r = gz_localize_hom(P, morphism_class(P, P.morphisms), "x", "x", 4)
    assert isinstance(r, Unknown) and not r
    assert "cap" in r.reason


def test_word_enumeration_and_budget():
    E = walking_arrow()
    S = morphism_class(E, ["f"])
    words = zigzag_words(E, S, "x", "x", 4)
    assert words[0] == () and all(len(w) % 2 == 0 for w in words)
    assert len(words) == 3  # (), f f^-1, f f^-1 f f^-1
    with pytest.raises(ResourceLimit):
        zigzag_words(P := parallel_arrows(), morphism_class(P, P.morphisms), "x", "y", 12, budget=50)


def test_word_cap_must_be_positive():
    E = walking_arrow()
    with pytest.raises(CategoryError):
        gz_localize_hom(E, morphism_class(E, ["f"]), "x", "y", 0)


def test_contractions_cancel_and_compose():
    E = walking_arrow()
    S = morphism_class(E, ["f"])
    assert () in contractions(E, (("f", "f"), ("b", "f")), S)
    assert () in contractions(E, (("b", "f"), ("f", "f")), S)
    D = walking_iso()
    assert (("f", "g"),) in contractions(D, (("b", "f"),), isomorphisms(D))


def test_three_stage_shapes():
    assert is_three_stage(()) and is_three_stage((("b", 1), ("f", 2), ("b", 3)))
    assert not is_three_stage((("f", 1), ("b", 2), ("f", 3)))
    E = walking_arrow()
    r = gz_localize_hom(E, morphism_class(E, ["f"]), "y", "y", 4)
    assert zigzag_representable(r)
