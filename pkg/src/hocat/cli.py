"""Command-line front end.

Each subcommand reads interchange files (see :mod:`hocat.textio`), runs one
library operation and prints either a short human report or machine records.
A machine record is one line ``record=<kind> key=value ...`` whose values are
encoded like names in the text formats.

Exit codes: 0 when a verdict was computed (negative verdicts included), 1 for
usage or input errors, 2 when a cap or budget bound the computation or the
answer is Unknown.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Callable

from . import enriched, fincat, hall, lifting, localization, simpset, sspace, textio, theta
from .verdicts import Completeness, ResourceLimit, Unknown, Verdict

EXIT_OK, EXIT_INPUT, EXIT_CAP = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class Report:
    text: list = field(default_factory=list)
    records: list = field(default_factory=list)  # (kind, {key: value})
    code: int = EXIT_OK

    def add(self, kind: str, **values):
        self.records.append((kind, values))


def _value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return textio.encode_name(tuple(v))
    if isinstance(v, int):
        return str(v)
    return textio.encode_name(str(v))


def render_machine(report: Report) -> str:
    out = []
    for kind, values in report.records:
        out.append(" ".join([f"record={kind}"] + [f"{k}={_value(v)}" for k, v in values.items()]))
    return "\n".join(out) + "\n" if out else ""


# -- input helpers ---------------------------------------------------------

def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load(path: str, allowed: tuple):
    text = _read(path)
    try:
        kind = textio.header(text)
        if kind not in allowed:
            raise InputError(f"{path}: expected one of {', '.join(allowed)}, found {kind!r}")
        parser = {
            "category": textio.parse_category,
            "functor": textio.parse_functor,
            "simplicial-set": textio.parse_simplicial_set,
            "bisimplicial-set": textio.parse_bisimplicial,
            "simplicial-category": textio.parse_simplicial_category,
            "quiver": textio.parse_quiver,
        }[kind]
        return kind, parser(text)
    except textio.ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _category(path: str) -> fincat.FinCategory:
    _, C = _load(path, ("category",))
    problems = fincat.verify_category(C)
    if problems:
        raise InputError(f"{path}: not a category: {problems[0]}")
    return C


def _simplicial_set(path: str, dim: int) -> simpset.TruncatedSimplicialSet:
    """A simplicial-set file as is, or the nerve of a category file up to dim."""
    kind, obj = _load(path, ("simplicial-set", "category"))
    if kind == "category":
        problems = fincat.verify_category(obj)
        if problems:
            raise InputError(f"{path}: not a category: {problems[0]}")
        return fincat.nerve(obj, dim)
    bad = simpset.verify_identities(obj)
    if bad:
        raise InputError(f"{path}: simplicial identity fails: {bad[0]}")
    return obj


def _bisimplicial(path: str, args) -> sspace.TruncatedBisimplicialSet:
    kind, obj = _load(path, ("bisimplicial-set", "category"))
    if kind == "category":
        problems = fincat.verify_category(obj)
        if problems:
            raise InputError(f"{path}: not a category: {problems[0]}")
        return sspace.classifying_diagram(obj, (args.dim or 3, args.vdim))
    bad = sspace.verify_bisimplicial(obj)
    if bad:
        raise InputError(f"{path}: not bisimplicial: {bad[0]}")
    return obj


def _token(C: fincat.FinCategory, text: str, what: str):
    toks = textio.tokenize(text)
    if len(toks) != 1:
        raise InputError(f"cannot read {what} {text!r}")
    return toks[0]


def _weak_class(C: fincat.FinCategory, spec: str) -> fincat.MorphismClass:
    if spec == "identities":
        return fincat.morphism_class(C, [])
    if spec == "isos":
        return fincat.isomorphisms(C)
    if spec == "all":
        return fincat.morphism_class(C, C.morphisms)
    raw = spec if ('"' in spec or "[" in spec) else spec.replace(",", " ")
    try:
        names = textio.tokenize(raw)
    except textio.ParseError as exc:
        raise InputError(f"--weak: {exc}") from None
    missing = [m for m in names if m not in C.morphisms]
    if missing:
        raise InputError(f"--weak: {missing[0]!r} is not a morphism")
    return fincat.morphism_class(C, names)


def _object(C, text):
    x = _token(C, text, "object")
    if x not in C.objects:
        raise InputError(f"{text!r} is not an object")
    return x


def _pairs(C, args):
    if args.source is not None and args.target is not None:
        return [(_object(C, args.source), _object(C, args.target))]
    if args.source is not None or args.target is not None:
        raise InputError("give both source and target objects or neither")
    return [(x, y) for x in C.objects for y in C.objects]


def _emit_simplicial_set(report: Report, X, kind: str):
    report.text.append(textio.format_simplicial_set(X).rstrip("\n"))
    report.add(kind, dim_cap=X.dim_cap, counts=X.counts())
    for line in textio.simplicial_set_body(X):
        report.add("cell", line=line)


def _emit_bisimplicial(report: Report, W, kind: str):
    report.text.append(textio.format_bisimplicial(W).rstrip("\n"))
    report.add(kind, caps=W.caps)
    for (n, m), k in sorted(W.counts().items()):
        report.add("level", n=n, m=m, count=k)


# -- subcommands -----------------------------------------------------------

def cmd_nerve(args) -> Report:
    C = _category(args.input)
    X = fincat.nerve(C, args.dim or 3)
    r = Report()
    _emit_simplicial_set(r, X, "nerve")
    return r


def _horn_records(r: Report, rep: lifting.LiftReport):
    for (n, k), s in rep.stats.items():
        r.add("horns", n=n, k=k, total=s.total, unfilled=s.unfilled, multifilled=s.multifilled)


def _witness(p) -> str:
    return f"{p.label()} witness" if p is not None else "witness"


def cmd_check_kan(args) -> Report:
    d = args.dim or 3
    X = _simplicial_set(args.input, d)
    rep = lifting.is_kan(X, d)
    r = Report()
    _horn_records(r, rep)
    if rep.kan:
        r.text.append(f"KAN: pass (d={d})")
    else:
        r.text.append(f"KAN: fail ({_witness(rep.first_unfilled())})")
    r.add("verdict", check="kan", d=d, result=bool(rep.kan))
    return r


def cmd_check_quasicat(args) -> Report:
    d = args.dim or 3
    X = _simplicial_set(args.input, d)
    rep = lifting.lift_report(X, d)
    r = Report()
    _horn_records(r, rep)
    parts = []
    quasi = rep.quasicategory
    parts.append("QUASI: pass" if quasi else f"QUASI: fail ({_witness(rep.first_unfilled(inner=True))})")
    if rep.unique_inner:
        parts.append("UNIQUE-INNER: pass")
    else:
        multi = next(s.multifilled_witness for (n, k), s in rep.stats.items()
                     if 0 < k < n and s.multifilled_witness is not None)
        parts.append(f"UNIQUE-INNER: fail ({_witness(multi)})")
    parts.append("KAN: pass" if rep.kan else f"KAN: fail ({_witness(rep.first_unfilled())})")
    r.text.append("; ".join(parts))
    r.add("verdict", check="quasicategory", d=d, quasi=quasi, unique_inner=rep.unique_inner,
          kan=bool(rep.kan))
    return r


def cmd_classify_nerve(args) -> Report:
    d = args.dim or 3
    X = _simplicial_set(args.input, d)
    if X.dim_cap < d:
        raise InputError(f"--dim {d} exceeds the input dim_cap {X.dim_cap}")
    is_cat = lifting.is_nerve_of_category(X, d)
    is_grp = lifting.is_nerve_of_groupoid(X, d)
    r = Report()
    r.add("verdict", check="nerve", d=d, category=is_cat, groupoid=is_grp)
    line = f"NERVE-OF-CATEGORY: {'yes' if is_cat else 'no'}; NERVE-OF-GROUPOID: {'yes' if is_grp else 'no'}"
    if is_cat:
        C, ok = lifting.reconstruction_round_trip(X, d)
        line += f"; ROUND-TRIP: {'pass' if ok else 'fail'}"
        r.add("reconstruction", objects=len(C.objects), morphisms=len(C.morphisms), round_trip=ok)
        r.text.append(line)
        r.text.append(textio.format_category(C).rstrip("\n"))
    else:
        r.text.append(line)
    return r


def cmd_classifying_diagram(args) -> Report:
    C = _category(args.input)
    W = sspace.classifying_diagram(C, (args.dim or 3, args.vdim))
    r = Report()
    _emit_bisimplicial(r, W, "classifying-diagram")
    return r


def cmd_segal_check(args) -> Report:
    W = _bisimplicial(args.input, args)
    rep = sspace.segal_check(W)
    r = Report()
    r.text.append(f"SEGAL: {'pass' if rep.passed else 'fail'}")
    r.text += rep.lines()
    for k, v in sorted(rep.verdicts.items()):
        r.add("segal", k=k, verdict=v.value, witness=str(rep.witness.get(k, "")))
    r.add("verdict", check="segal", result=rep.passed)
    return r


def cmd_complete_check(args) -> Report:
    W = _bisimplicial(args.input, args)
    rep = sspace.completeness_check(W)
    r = Report()
    r.text.append(f"COMPLETE: {rep.verdict.value} ({rep.method})")
    if rep.witness:
        r.text.append(f"witness: {rep.witness}")
    r.add("verdict", check="complete", result=rep.verdict.value, method=rep.method, witness=rep.witness)
    if rep.verdict == Completeness.UNKNOWN:
        r.code = EXIT_CAP
    return r


def cmd_dk_check(args) -> Report:
    _, F = _load(args.input, ("functor",))
    problems = fincat.verify_functor(F)
    problems += [f"source: {p}" for p in fincat.verify_category(F.source)]
    problems += [f"target: {p}" for p in fincat.verify_category(F.target)]
    if problems:
        raise InputError(f"{args.input}: {problems[0]}")
    caps = (args.dim or 3, args.vdim)
    rep = sspace.dk_check(sspace.classifying_map(F, caps))
    equiv = fincat.check_equivalence(F)
    r = Report()
    r.text.append(f"DK: {rep.verdict.value} ({rep.reason}); CATEGORY-EQUIVALENCE: {'yes' if equiv else 'no'}")
    r.add("verdict", check="dk", result=rep.verdict.value, reason=rep.reason, category_equivalence=equiv)
    if rep.verdict == Verdict.UNKNOWN:
        r.code = EXIT_CAP
    return r


def cmd_discretize(args) -> Report:
    W = _bisimplicial(args.input, args)
    R = sspace.discretize(W)
    r = Report()
    pre = sspace.is_segal_precategory(R)
    _emit_bisimplicial(r, R, "discretization")
    r.add("verdict", check="segal-precategory", result=pre)
    return r


def cmd_homology(args) -> Report:
    d = args.dim or 3
    X = _simplicial_set(args.input, d)
    up = min(d, X.dim_cap) - 1 if args.dim is None else min(d, X.dim_cap - 1)
    rep = simpset.homology(X, max(up, 0))
    r = Report()
    comps = len(simpset.pi0(X))
    r.text.append(f"pi0: {comps}")
    for n, b in enumerate(rep.betti):
        tors = rep.torsion[n] if n < len(rep.torsion) else ()
        group = " + ".join(([f"Z^{b}" if b > 1 else "Z"] if b else []) + [f"Z/{t}" for t in tors]) or "0"
        r.text.append(f"H{n} = {group}")
        r.add("homology", degree=n, betti=b, torsion=tuple(tors))
    r.text.append(f"valid through degree {rep.validity_bound}")
    r.add("summary", pi0=comps, valid_through=rep.validity_bound, reduced_trivial=rep.reduced_trivial())
    return r


def cmd_coherent_nerve(args) -> Report:
    _, C = _load(args.input, ("simplicial-category",))
    problems = enriched.verify_simplicial_category(C)
    if problems:
        raise InputError(f"{args.input}: {problems[0]}")
    X = enriched.coherent_nerve(C, args.dim or 2)
    r = Report()
    _emit_simplicial_set(r, X, "coherent-nerve")
    return r


def cmd_localize(args) -> Report:
    C = _category(args.input)
    S = _weak_class(C, args.weak)
    r = Report()
    for x, y in _pairs(C, args):
        res = localization.gz_localize_hom(C, S, x, y, args.word_cap)
        if isinstance(res, Unknown):
            r.text.append(f"hom({textio.encode_name(x)},{textio.encode_name(y)}): Unknown ({res.reason})")
            r.add("hom", source=x, target=y, size="unknown", reason=res.reason)
            r.code = EXIT_CAP
            continue
        reps = [" ".join(f"{k}:{textio.encode_name(m)}" for k, m in w) or "id" for w in res.representatives()]
        r.text.append(f"hom({textio.encode_name(x)},{textio.encode_name(y)}) = {len(res)}: " + " | ".join(reps))
        r.add("hom", source=x, target=y, size=len(res), word_cap=args.word_cap)
    return r


def cmd_hammock(args) -> Report:
    C = _category(args.input)
    S = _weak_class(C, args.weak)
    r = Report()
    for x, y in _pairs(C, args):
        X = enriched.hammock_mapping_space(C, S, x, y)
        comps = len(simpset.pi0(X))
        r.text.append(f"hammock({textio.encode_name(x)},{textio.encode_name(y)}): pi0 = {comps}; "
                      f"cells {' '.join(map(str, X.counts()))}")
        r.add("hammock", source=x, target=y, pi0=comps, counts=X.counts())
    return r


def cmd_ore_check(args) -> Report:
    C = _category(args.input)
    S = _weak_class(C, args.weak)
    res = fincat.ore_check(C, S, dual=args.dual)
    r = Report()
    side = "right" if args.dual else "left"
    if res.holds:
        r.text.append(f"ORE ({side}): pass")
    else:
        s, f = res.witness
        r.text.append(f"ORE ({side}): fail (span {textio.encode_name(s)}, {textio.encode_name(f)})")
    r.add("verdict", check="ore", side=side, result=res.holds,
          witness=res.witness if res.witness else ())
    return r


def cmd_theta_hom(args) -> Report:
    try:
        a, b = theta.parse_theta(args.theta_source), theta.parse_theta(args.theta_target)
        maps = theta.theta_hom(a, b)
    except theta.ThetaError as exc:
        raise InputError(str(exc)) from None
    r = Report()
    r.text.append(f"|Theta({theta.format_theta(a)}, {theta.format_theta(b)})| = {len(maps)}")
    r.add("theta-hom", source=theta.format_theta(a), target=theta.format_theta(b), count=len(maps))
    return r


def _quiver(args):
    _, (Q, q_file, reps) = _load(args.input, ("quiver",))
    q = args.q or q_file
    if q is None:
        raise InputError("no field size: give --q or a 'q' line")
    try:
        hall.field(q)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if q_file is not None and q != q_file and reps:
        raise InputError(f"--q {q} conflicts with q {q_file} in the file")
    return Q, q, reps


def _dimvec(Q, text: str) -> tuple[tuple, int | None]:
    body, _, idx = text.partition("#")
    try:
        dims = tuple(int(v) for v in body.split(","))
        k = int(idx) if idx else None
    except ValueError:
        raise InputError(f"cannot read dimension vector {text!r}") from None
    if len(dims) != len(Q.vertices) or any(v < 0 for v in dims):
        raise InputError(f"dimension vector {text!r} does not fit the quiver")
    return dims, k


def _bound(Q, text: str | None, default: tuple) -> tuple:
    if text is None:
        return default
    try:
        b = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise InputError(f"cannot read --bound {text!r}") from None
    if len(b) == 1 and len(Q.vertices) > 1:
        b = b * len(Q.vertices)
    if len(b) != len(Q.vertices):
        raise InputError("--bound needs one entry per vertex")
    return b


def cmd_hall_product(args) -> Report:
    Q, q, reps = _quiver(args)
    r = Report()
    if args.dims:
        if len(args.dims) != 2:
            raise InputError("--dims takes exactly two classes")
        picked = []
        for tok in args.dims:
            if tok in reps:
                picked.append(reps[tok])
            else:
                picked.append(_dimvec(Q, tok))
        dims = [p.dims if isinstance(p, hall.Rep) else p[0] for p in picked]
        total = tuple(a + b for a, b in zip(*dims))
        table = hall.IsoClassTable(Q, q)
        for dv in {dims[0], dims[1], total}:
            hall.enumerate_reps(Q, q, dv, args.budget, table)
        A = hall.HallAlgebra(table)
        classes = []
        for p in picked:
            if isinstance(p, hall.Rep):
                classes.append(table.of(p))
            else:
                found = table.classes[p[0]]
                if p[1] is None and len(found) > 1:
                    raise InputError(f"dimension vector {p[0]} has {len(found)} classes; pick one with #k")
                k = p[1] or 0
                if k >= len(found):
                    raise InputError(f"class #{k} does not exist for {p[0]}")
                classes.append(found[k])
        X, Y = classes
        prod = A.product(X, Y)
        r.text.append(f"{table.label(X)}·{table.label(Y)} = {A.format(prod)}")
        _product_records(r, table, A, X, Y, prod)
        return r
    bound = _bound(Q, args.bound, (2,) * len(Q.vertices))
    table = hall.class_table(Q, q, bound, args.budget)
    A = hall.HallAlgebra(table)
    classes = table.all_classes()
    for X in classes:
        for Y in classes:
            total = tuple(a + b for a, b in zip(X.dims, Y.dims))
            if any(t > b for t, b in zip(total, bound)):
                continue
            prod = A.product(X, Y)
            r.text.append(f"{table.label(X)} × {table.label(Y)} → {A.format(prod)}")
            _product_records(r, table, A, X, Y, prod)
    return r


def _product_records(r, table, A, X, Y, prod):
    for key, c in sorted(prod.nonzero().items()):
        r.add("hall", x=table.label(X), y=table.label(Y), z=table.label(A.cls(key)),
              coefficient=str(c))


def cmd_hall_assoc(args) -> Report:
    Q, q, _ = _quiver(args)
    bound = _bound(Q, args.bound, (2,) * len(Q.vertices))
    table = hall.class_table(Q, q, bound, args.budget)
    rep = hall.hall_associativity(table, bound)
    r = Report()
    r.text.append(f"ASSOCIATIVE: {'pass' if rep.ok else 'fail'} ({rep.checked} triples, "
                  f"{len(rep.failures)} failures)")
    for X, Y, Z, left, right in rep.failures:
        r.text.append(f"  ({table.label(X)}{table.label(Y)}){table.label(Z)} = {hall.HallAlgebra(table).format(left)}"
                      f" but {table.label(X)}({table.label(Y)}{table.label(Z)}) = "
                      f"{hall.HallAlgebra(table).format(right)}")
    r.add("verdict", check="hall-associativity", q=q, bound=bound, triples=rep.checked,
          failures=len(rep.failures))
    return r


def _graded(q: int, text: str) -> hall.GradedVect:
    """``d@k+d@k`` terms, or ``0`` for the zero object."""
    if text.strip() == "0":
        return hall.graded(q, {})
    dims = {}
    try:
        for term in text.split("+"):
            d, _, k = term.partition("@")
            dims[int(k)] = dims.get(int(k), 0) + int(d)
    except ValueError:
        raise InputError(f"cannot read graded space {text!r}; use terms like 1@0+2@1") from None
    return hall.graded(q, dims)


def cmd_derived_hall(args) -> Report:
    q = args.q or 2
    try:
        hall.field(q)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    try:
        window = [int(v) for v in (args.window or "0").split(",")]
    except ValueError:
        raise InputError(f"cannot read --window {args.window!r}") from None
    bound = int(args.bound) if args.bound else 2
    r = Report()
    if args.classes:
        if len(args.classes) != 2:
            raise InputError("derived-hall takes two graded spaces or none")
        x, y = (_graded(q, t) for t in args.classes)
        prod = hall.derived_hall_product(x, y, window)
        r.text.append(f"[{x}]·[{y}] = {hall.format_graded_product(prod)}")
        for z, c in sorted(prod.nonzero().items(), key=lambda kv: (kv[0].total, kv[0].dims)):
            r.add("derived-hall", x=str(x), y=str(y), z=str(z), coefficient=str(c))
        return r
    rep = hall.derived_associativity(q, window, bound)
    r.text.append(f"ASSOCIATIVE: {'pass' if rep.ok else 'fail'} ({rep.checked} triples, "
                  f"{len(rep.failures)} failures)")
    r.add("verdict", check="derived-associativity", q=q, window=tuple(window), bound=bound,
          triples=rep.checked, failures=len(rep.failures))
    return r


COMMANDS: dict[str, tuple[Callable, str]] = {
    "nerve": (cmd_nerve, "nerve of a category up to --dim"),
    "check-kan": (cmd_check_kan, "horn filling for all horns up to --dim"),
    "check-quasicat": (cmd_check_quasicat, "inner horn filling, uniqueness and Kan status"),
    "classify-nerve": (cmd_classify_nerve, "decide nerve-of-category and reconstruct"),
    "classifying-diagram": (cmd_classifying_diagram, "classifying diagram of a category"),
    "segal-check": (cmd_segal_check, "Segal maps of a bisimplicial set"),
    "complete-check": (cmd_complete_check, "completeness of a Segal space"),
    "dk-check": (cmd_dk_check, "Dwyer-Kan test for the classifying map of a functor"),
    "discretize": (cmd_discretize, "discretize a bisimplicial set"),
    "homology": (cmd_homology, "integral homology of a simplicial set or nerve"),
    "coherent-nerve": (cmd_coherent_nerve, "coherent nerve of a simplicial category"),
    "localize": (cmd_localize, "zig-zag localization hom-sets"),
    "hammock": (cmd_hammock, "hammock mapping spaces"),
    "ore-check": (cmd_ore_check, "Ore square-completion condition"),
    "theta-hom": (cmd_theta_hom, "morphism count between two Theta objects"),
    "hall-product": (cmd_hall_product, "Hall products of quiver representations"),
    "hall-assoc": (cmd_hall_assoc, "Hall algebra associativity up to --bound"),
    "derived-hall": (cmd_derived_hall, "derived Hall products of graded vector spaces"),
}


def _positive(v: str) -> int:
    try:
        n = int(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{v!r} is not an integer") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"{v!r} is negative")
    return n


class _Parser(argparse.ArgumentParser):
    """Usage errors raise instead of exiting, so they map to exit code 1."""

    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def _configure(s: argparse.ArgumentParser, name: str):
    s.add_argument("--format", choices=("text", "machine"), default="text")
    if name == "theta-hom":
        s.add_argument("theta_source")
        s.add_argument("theta_target")
        return
    if name == "derived-hall":
        s.add_argument("classes", nargs="*", help="two graded spaces such as 1@0 and 1@0+1@1")
        s.add_argument("--q", type=_positive)
        s.add_argument("--window", help="comma-separated degrees (default 0)")
        s.add_argument("--bound", help="total dimension bound (default 2)")
        return
    s.add_argument("input")
    if name in ("nerve", "check-kan", "check-quasicat", "classify-nerve", "homology", "coherent-nerve",
                "classifying-diagram", "segal-check", "complete-check", "dk-check", "discretize"):
        s.add_argument("--dim", type=_positive)
    if name in ("classifying-diagram", "segal-check", "complete-check", "dk-check", "discretize"):
        s.add_argument("--vdim", type=_positive, default=1, help="vertical cap (default 1)")
    if name in ("localize", "hammock", "ore-check"):
        s.add_argument("--weak", default="isos",
                       help="weak equivalences: identities, isos, all, or morphism names")
    if name in ("localize", "hammock"):
        s.add_argument("source", nargs="?")
        s.add_argument("target", nargs="?")
    if name == "localize":
        s.add_argument("--word-cap", type=_positive, default=4)
    if name == "ore-check":
        s.add_argument("--dual", action="store_true")
    if name in ("hall-product", "hall-assoc"):
        s.add_argument("--q", type=_positive)
        s.add_argument("--bound", help="vertexwise dimension bound, e.g. 2,2")
        s.add_argument("--budget", type=_positive, default=hall.DEFAULT_BUDGET)
    if name == "hall-product":
        s.add_argument("--dims", nargs="+", help="two classes: dimension vectors like 1,0 (#k picks a class) "
                                                 "or representation names from the file")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hocat", description="Finite higher-category computations.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        _configure(sub.add_parser(name, help=help_text), name)
    return p


def parse_args(argv: list[str]) -> argparse.Namespace:
    """Options and positionals may be interleaved after the subcommand."""
    if argv and argv[0] in COMMANDS:
        s = _Parser(prog=f"hocat {argv[0]}", description=COMMANDS[argv[0]][1])
        _configure(s, argv[0])
        args = s.parse_intermixed_args(argv[1:])
        args.command = argv[0]
        return args
    return build_parser().parse_args(argv)


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = parse_args(sys.argv[1:] if argv is None else list(argv))
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    handler = COMMANDS[args.command][0]
    try:
        report = handler(args)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except ResourceLimit as exc:
        err.write(f"cap hit: {exc}" + (f" (cap: {exc.cap})" if exc.cap else "") + "\n")
        return EXIT_CAP
    except (ValueError, KeyError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    if args.format == "machine":
        out.write(render_machine(report))
    else:
        out.write("\n".join(report.text) + "\n" if report.text else "")
    return report.code


def main() -> None:
    sys.exit(run())
