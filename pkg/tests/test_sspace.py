import pytest

from hocat.fincat import (Functor, arrow_category, composable_chains, cyclic_group, full_subcategory, inclusion,
                          maximal_subgroupoid, nerve, walking_arrow, walking_iso)
from hocat.simpset import pi0, standard_simplex
from hocat.sspace import (BisimplicialError, SegalVerdict, classifying_arrow, classifying_diagram,
                          classifying_map, classifying_object, completeness_check, constant, discretize, dk_check,
                          fiber_power, heq, identity_map, is_segal_precategory, mapping_space, point, segal_check,
                          tabulate, verify_bisimplicial)
from hocat.verdicts import Completeness, Verdict


def doubled_top():
    """The point, except that W[2, 0] has two elements over the same spine."""
    levels = {(0, 0): ["p"], (1, 0): ["e"], (2, 0): ["a", "b"]}
    ops = {"hface": lambda i, n, m, x: "p" if n == 1 else "e",
           "hdeg": lambda j, n, m, x: "e" if n == 0 else "a"}
    return tabulate((2, 0), levels, ops)


def test_doubled_level_fails_segal():
    W = doubled_top()
    assert verify_bisimplicial(W) == []
    rep = segal_check(W)
    assert rep.at(2) == SegalVerdict.FAIL and not rep.passed
    assert "share a spine" in rep.lines()[0]


def test_point_and_constant_diagrams():
    assert segal_check(point()).passed
    W = constant(nerve(walking_iso(), 2), 2)
    assert verify_bisimplicial(W) == []
    assert segal_check(W).at(2) == SegalVerdict.BIJECTION
    assert completeness_check(point()).verdict == Completeness.COMPLETE
    # the columns are nerve(D), which is not discrete, while Ho has one object
    comp = completeness_check(W)
    assert comp.verdict == Completeness.INCOMPLETE and comp.method == "battery"


def test_segal_needs_horizontal_room():
    with pytest.raises(BisimplicialError):
        segal_check(constant(standard_simplex(1), 1))


@pytest.mark.parametrize("C", [walking_arrow(), walking_iso(), cyclic_group(2)])
def test_classifying_levels_against_arrow_categories(C):
    W = classifying_diagram(C, (2, 1))
    assert verify_bisimplicial(W) == []
    for n in range(3):
        G = maximal_subgroupoid(arrow_category(C, n))
        assert len(W.levels[(n, 0)]) == len(G.objects)
        assert len(W.levels[(n, 1)]) == len(G.morphisms)


def test_classifying_diagram_of_walking_arrow():
    W = classifying_diagram(walking_arrow(), (3, 1))
    assert segal_check(W).passed
    assert len(pi0(W.column(0)[0])) == 2 and len(pi0(W.column(1)[0])) == 3
    assert completeness_check(W).verdict == Completeness.COMPLETE
    ms = mapping_space(W, classifying_object("x"), classifying_object("y"))
    assert ms.carrier.counts()[0] == 1
    assert len(heq(W)) == 2
    assert len(fiber_power(W, 2, 0)) == len(composable_chains(walking_arrow(), 2))


def test_precategory_and_discretization():
    E, D = walking_arrow(), walking_iso()
    assert is_segal_precategory(classifying_diagram(E, (2, 1)))
    WD = classifying_diagram(D, (2, 1))
    assert not is_segal_precategory(WD)
    R = discretize(WD)
    assert is_segal_precategory(R) and len(R.levels[(0, 0)]) == 2
    assert discretize(R) == R
    assert verify_bisimplicial(R) == []


def test_dk_examples():
    E, D = walking_arrow(), walking_iso()
    C = full_subcategory(D, ["x"])
    assert dk_check(classifying_map(inclusion(C, D))).verdict == Verdict.EQUIVALENT
    to_D = Functor(E, D, {"x": "x", "y": "y"}, {"id_x": "id_x", "id_y": "id_y", "f": "f"})
    assert dk_check(classifying_map(to_D)).verdict == Verdict.NOT_EQUIVALENT
    W = classifying_diagram(E)
    assert dk_check(identity_map(W)).verdict == Verdict.EQUIVALENT


def test_classifying_map_is_natural():
    D = walking_iso()
    C = full_subcategory(D, ["x"])
    assert classifying_map(inclusion(C, D)).violations() == []
    assert classifying_arrow(D, "f") in classifying_diagram(D).levels[(1, 0)]


def test_dk_rejects_non_maps():
    W = classifying_diagram(walking_arrow())
    f = identity_map(W)
    f.images[(0, 0)] = {}
    with pytest.raises(BisimplicialError):
        dk_check(f)
