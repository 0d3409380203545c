import io
import os
import re
import subprocess
import sys
from pathlib import Path

import pytest

from hocat import cli, enriched, fincat, hall, lifting, localization, simpset, sspace, theta

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(SAMPLES)
    try:
        code = cli.run(list(argv), out, err)
    finally:
        os.chdir(cwd)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("argv,expected", [
    (["check-kan", "nerve-of-D.cat", "--dim", "3"], "KAN: pass (d=3)"),
    (["check-quasicat", "nerve-of-E.cat", "--dim", "3"], "QUASI: pass; UNIQUE-INNER: pass; KAN: fail (V[2,0] witness)"),
    (["hall-product", "a1.quiver", "--q", "2", "--dims", "1", "1"], "[1]·[1] = 3·[2]"),
])
def test_documented_outputs(argv, expected):
    code, out, _ = run(*argv)
    assert code == 0
    assert out.splitlines()[0] == expected


def test_negative_verdicts_exit_zero():
    code, out, _ = run("dk-check", "E-into-D.functor")
    assert code == 0 and "NotEquivalent" in out
    code, out, _ = run("dk-check", "C-into-D.functor")
    assert code == 0 and "Equivalent" in out


def test_input_errors_exit_one(tmp_path):
    assert run("nerve", "missing.cat")[0] == 1
    bad = tmp_path / "bad.cat"
    bad.write_text("category\nobjects x\nidentity x id_x\nmorphism f x nowhere\n")
    code, _, err = run("nerve", str(bad))
    assert code == 1 and "line 4" in err
    bad.write_text("category\nobjects x\nbogus 1\n")
    code, _, err = run("nerve", str(bad))
    assert code == 1 and "line 3" in err
    assert run("nerve", "nerve-of-E.cat", "--dim", "-1")[0] == 1
    assert run("no-such-command")[0] == 1
    assert run("theta-hom", "[2](", "[1]")[0] == 1


def test_caps_exit_two():
    code, _, err = run("coherent-nerve", "interval-D.scat", "--dim", "4")
    assert code == 2 and "cap" in err


def test_localize_and_hammock_agree_on_walking_arrow():
    code, out, _ = run("localize", "nerve-of-E.cat", "--weak", "f", "y", "x")
    assert code == 0 and out.startswith("hom(y,x) = 1")
    code, out, _ = run("hammock", "nerve-of-E.cat", "--weak", "f", "y", "x", "--format", "machine")
    assert code == 0 and "pi0=1" in out


RECORD = re.compile(r'record=[a-z0-9-]+( [a-z0-9_]+=("(?:[^"\\]|\\.)*"|\S+))*')


def test_machine_records_grammar():
    out = ""
    for argv in (["nerve", "nerve-of-E.cat", "--dim", "2"], ["homology", "boundary2.sset"],
                 ["check-quasicat", "nerve-of-E.cat"], ["derived-hall", "--q", "2"]):
        code, text, _ = run(*argv, "--format", "machine")
        assert code == 0
        out += text
    for line in out.splitlines():
        assert RECORD.fullmatch(line), line


# every subcommand and the library operation it exposes
PRIMARY = {
    "nerve": (fincat, "nerve", ["nerve", "nerve-of-E.cat"]),
    "check-kan": (lifting, "is_kan", ["check-kan", "nerve-of-D.cat"]),
    "check-quasicat": (lifting, "lift_report", ["check-quasicat", "nerve-of-E.cat"]),
    "classify-nerve": (lifting, "reconstruction_round_trip", ["classify-nerve", "nerve-of-D.cat"]),
    "classifying-diagram": (sspace, "classifying_diagram", ["classifying-diagram", "nerve-of-E.cat"]),
    "segal-check": (sspace, "segal_check", ["segal-check", "nerve-of-D.cat"]),
    "complete-check": (sspace, "completeness_check", ["complete-check", "nerve-of-E.cat"]),
    "dk-check": (sspace, "dk_check", ["dk-check", "C-into-D.functor"]),
    "discretize": (sspace, "discretize", ["discretize", "nerve-of-D.cat"]),
    "homology": (simpset, "homology", ["homology", "boundary2.sset"]),
    "coherent-nerve": (enriched, "coherent_nerve", ["coherent-nerve", "interval-D.scat"]),
    "localize": (localization, "gz_localize_hom", ["localize", "nerve-of-E.cat", "--weak", "f"]),
    "hammock": (enriched, "hammock_mapping_space", ["hammock", "nerve-of-E.cat", "--weak", "f"]),
    "ore-check": (fincat, "ore_check", ["ore-check", "nerve-of-E.cat"]),
    "theta-hom": (theta, "theta_hom", ["theta-hom", "[1]", "[2]"]),
    "hall-product": (hall, "HallAlgebra", ["hall-product", "a1.quiver", "--q", "2", "--dims", "1", "1"]),
    "hall-assoc": (hall, "hall_associativity", ["hall-assoc", "a2.quiver", "--bound", "1,1"]),
    "derived-hall": (hall, "derived_hall_product", ["derived-hall", "1@0", "1@0", "--q", "2"]),
}


def test_subcommand_coverage():
    assert set(cli.COMMANDS) == set(PRIMARY)
    ops = [(mod.__name__, name) for mod, name, _ in PRIMARY.values()]
    assert len(set(ops)) == len(ops)


@pytest.mark.parametrize("command", sorted(PRIMARY))
def test_subcommand_reaches_its_operation(command, monkeypatch):
    mod, name, argv = PRIMARY[command]
    calls = []
    original = getattr(mod, name)

    def spy(*a, **k):
        calls.append(1)
        return original(*a, **k)

    monkeypatch.setattr(mod, name, spy)
    code, _, err = run(*argv)
    assert code == 0, err
    assert calls


def test_machine_output_is_deterministic_across_hash_seeds():
    argv = ["classifying-diagram", "nerve-of-D.cat", "--dim", "2", "--format", "machine"]
    outs = set()
    for seed in ("0", "1", "4242"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        proc = subprocess.run([sys.executable, "-m", "hocat", *argv], cwd=SAMPLES, env=env,
                              capture_output=True, check=True)
        outs.add(proc.stdout)
    assert len(outs) == 1
