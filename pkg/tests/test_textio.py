from pathlib import Path

import pytest

from hocat.corpus import corpus
from hocat.enriched import cdelta, group_enrichment, interval_enrichment
from hocat.fincat import Functor, cyclic_group, full_subcategory, nerve, verify_functor, walking_arrow, walking_iso
from hocat.finite_field import mat
from hocat.hall import Rep, linear_quiver, quiver
from hocat.simpset import SimplexRef, boundary, standard_simplex
from hocat.sspace import classifying_diagram
from hocat.textio import (ParseError, encode_name, encode_simplex, format_bisimplicial, format_category,
                          format_functor, format_quiver, format_simplicial_category, format_simplicial_set, header,
                          parse_bisimplicial, parse_category, parse_functor, parse_quiver,
                          parse_simplicial_category, parse_simplicial_set, tokenize)

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def test_names_and_tokens():
    assert encode_name("x") == "x" and encode_name(3) == "3"
    assert encode_name(("f", "g")) == '["f","g"]'
    assert encode_name("two words") == '"two words"'
    assert tokenize('cell 1 ["f","g"] : y*0 x') == ["cell", 1, ("f", "g"), ":", SimplexRef("y", (0,)), "x"]
    assert encode_simplex(SimplexRef(("f",), (1, 0))) == '["f"]*1,0'
    with pytest.raises(TypeError):
        encode_name(True)


@pytest.mark.parametrize("X", [standard_simplex(2), boundary(3, dim_cap=3), nerve(walking_iso(), 3)])
def test_simplicial_set_round_trip(X):
    text = format_simplicial_set(X)
    Y = parse_simplicial_set(text)
    assert Y.cells == X.cells and Y.faces == X.faces
    assert format_simplicial_set(Y) == text


def test_category_round_trip_over_corpus():
    for C in corpus():
        D = parse_category(format_category(C))
        assert D == C


def test_functor_round_trip():
    D = walking_iso()
    C = full_subcategory(D, ["x"])
    F = Functor(walking_arrow(), D, {"x": "x", "y": "y"}, {"id_x": "id_x", "id_y": "id_y", "f": "f"})
    G = parse_functor(format_functor(F))
    assert verify_functor(G) == [] and G.on_morphisms == F.on_morphisms
    H = parse_functor((SAMPLES / "C-into-D.functor").read_text())
    assert verify_functor(H) == [] and len(H.source.objects) == 1
    assert C.objects == H.source.objects


def test_bisimplicial_round_trip():
    W = classifying_diagram(walking_arrow(), (2, 1))
    assert parse_bisimplicial(format_bisimplicial(W)) == W


@pytest.mark.parametrize("S", [interval_enrichment(nerve(walking_iso(), 2)), group_enrichment(cyclic_group(2)),
                               cdelta(2)])
def test_simplicial_category_round_trip(S):
    T = parse_simplicial_category(format_simplicial_category(S))
    assert T.objects == S.objects and T.identity == S.identity
    for key in S.maps:
        assert T.maps[key].cells == S.maps[key].cells
    assert format_simplicial_category(T) == format_simplicial_category(S)


def test_quiver_round_trip():
    Q = linear_quiver(2)
    reps = {"P": Rep(Q, 2, (1, 1), (mat([[1]]),)), "S1": Rep(Q, 2, (1, 0), (mat([], cols=1),))}
    Q2, q, back = parse_quiver(format_quiver(Q, 2, reps))
    assert Q2 == Q and q == 2 and back == reps
    kron = quiver(["a", "b"], [("x", "a", "b"), ("y", "a", "b")])
    assert parse_quiver(format_quiver(kron))[0] == kron


def test_samples_parse():
    for path in SAMPLES.iterdir():
        assert header(path.read_text()) in ("category", "functor", "quiver", "simplicial-set",
                                            "simplicial-category", "bisimplicial-set")


@pytest.mark.parametrize("parse,text,line", [
    (parse_category, "category\nobjects x\nidentity x id_x\nmorphsm f x x\n", 4),
    (parse_category, "category\nobjects x\nidentity x id_x\nmorphism f x z\n", 4),
    (parse_category, "category\nobjects x y\nidentity x id_x\n", 2),
    (parse_category, "nerve\n", 1),
    (parse_simplicial_set, "simplicial-set\ndim_cap 1\ncell 1 e 0 1\n", 3),
    (parse_simplicial_set, "simplicial-set\ndim_cap x\n", 2),
    (parse_quiver, "quiver\nvertices 1 2\narrow a 1 2\nq 2\nrep R 1 1\nmatrix R a 1 1\n", 6),
    (parse_quiver, "quiver\nvertices 1\nq 2\nrep R 1 1\n", 4),
    (parse_functor, "functor\nbegin source\ncategory\nobjects x\nidentity x i\nend\nbegin target\n", None),
    (parse_category, 'category\nobjects ["x"\n', 2),
])
def test_parse_errors_carry_locations(parse, text, line):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == line
    if line is not None:
        assert str(info.value).startswith(f"line {line}:")
