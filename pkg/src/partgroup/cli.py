"""Command-line driver.

Exit codes: 0 success, 1 violations (or a negative answer), 2 usage/parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import _kernel
from .colimits import coequalizer, coproduct, finite_colimit, set_coequalizer
from .core import PartialGroupError, validate_axioms
from .fileio import (RelationSet, load_diagram, load_morphism, load_pgroup,
                     load_relations, load_sets, serialize_pgroup, serialize_relations, write_text)
from .free import PointedSet, free_pointed, free_sets, universal_map_pointed
from .groups import klein
from .limits import equalizer, finite_limit, product
from .morphism import check_morphism, find_isomorphism
from .quotient import (add_relations, classify_subset, generated_partial_subgroup,
                       present_as_quotient_of_free, quotient)


class Report:
    def __init__(self, command: str, inputs: list[str]):
        self.command = command
        self.inputs = inputs
        self.result: dict = {}
        self.violations: list[str] = []
        self.truncated = False

    def as_dict(self) -> dict:
        return {"command": self.command, "inputs": self.inputs, "result": self.result,
                "violations": self.violations, "truncated": self.truncated}


def _summary(pg) -> dict:
    out = {"size": pg.size, "elements": list(pg.names), "unit": pg.names[pg.unit]}
    if pg.is_explicit:
        out["horizon"] = pg.domain.horizon
        out["domain_words"] = len(pg.domain.table)
    else:
        out["oracle"] = pg.domain.kind
    return out


def _emit(args, rep: Report, pg=None, text: str | None = None):
    if args.out:
        if text is None and pg is not None:
            text = serialize_pgroup(pg)
        if text is not None:
            write_text(args.out, text)
            rep.result["written"] = args.out


# -- commands ------------------------------------------------------------------

def cmd_validate(args, rep):
    """Check the four axioms on a .pg file."""
    pg = load_pgroup(args.pgroup)
    mode = args.mode or ("exhaustive" if pg.is_explicit else "sampled")
    report = validate_axioms(pg, mode, args.max_word_len)
    rep.result = {**_summary(pg), "mode": mode, "checked_len": report.checked_len}
    rep.violations = [str(v) for v in report.violations]


def cmd_product(args, rep):
    """Product of partial groups."""
    pg, _ = product([load_pgroup(p) for p in args.pgroups])
    rep.result = _summary(pg)
    _emit(args, rep, pg)


def cmd_coproduct(args, rep):
    """Coproduct (free union along the unit)."""
    pg, _ = coproduct([load_pgroup(p) for p in args.pgroups])
    rep.result = _summary(pg)
    _emit(args, rep, pg)


def cmd_equalize(args, rep):
    """Equalizer of two parallel morphisms."""
    f, g = load_morphism(args.f), load_morphism(args.g)
    sub, _ = equalizer(f, g)
    rep.result = _summary(sub.group)
    _emit(args, rep, sub.group)


def _names_of_classes(pg, cong):
    return [[pg.names[x] for x in c] for c in cong.classes()]


def cmd_coequalize(args, rep):
    """Coequalizer of two parallel morphisms."""
    f, g = load_morphism(args.f), load_morphism(args.g)
    q = coequalizer(f, g)
    rep.result = {**_summary(q.group), "classes": _names_of_classes(f.target, q.congruence),
                  "set_classes": set_coequalizer(f, g).num_classes, "merges": len(q.congruence.log)}
    _emit(args, rep, q.group)


def _subgroup(pg, path):
    rel = load_relations(path, pg)
    return classify_subset(pg, rel.subset())


def cmd_quotient(args, rep):
    """Quotient by the subgroup listed in a .rel file."""
    pg = load_pgroup(args.pgroup)
    h = _subgroup(pg, args.subgroup)
    if not h.impartial:
        rep.violations.append(f"subset {h.names} is not an impartial subgroup: {h.reason}")
        return
    q, _ = quotient(pg, h)
    rep.result = _summary(q)
    _emit(args, rep, q)


def cmd_limit(args, rep):
    """Limit of a finite diagram."""
    lim, _ = finite_limit(load_diagram(args.diagram))
    rep.result = _summary(lim)
    _emit(args, rep, lim)


def cmd_colimit(args, rep):
    """Colimit of a finite diagram."""
    col, _ = finite_colimit(load_diagram(args.diagram))
    rep.result = _summary(col)
    _emit(args, rep, col)


def cmd_free_pointed(args, rep):
    """Free partial group on a pointed set."""
    fr = free_pointed(PointedSet(tuple(args.names)), args.max_word_len)
    rep.result = _summary(fr.group)
    _emit(args, rep, fr.group)


def cmd_free_sets(args, rep):
    """Bounded free partial group on a .sets object."""
    X = load_sets(args.sets)
    fr = free_sets(X, args.max_word_len, args.max_elements)
    rep.truncated = not fr.complete
    rep.result = {**_summary(fr.group), "status": fr.status,
                  "embedding": {k: fr.group.names[v] for k, v in fr.embedding.items()}}
    _emit(args, rep, fr.group)


def cmd_check_morphism(args, rep):
    """Check that a .morph file is a morphism."""
    m = load_morphism(args.morphism)
    report = check_morphism(m, args.max_word_len)
    rep.result = {"map": m.describe(), "checked_len": report.checked_len}
    rep.violations = [str(v) for v in report.violations]


def cmd_iso(args, rep):
    """Search for an isomorphism between two .pg files."""
    a, b = load_pgroup(args.a), load_pgroup(args.b)
    f = find_isomorphism(a, b)
    rep.result = {"isomorphic": f is not None, "map": f.describe() if f else None}
    if f is None:
        rep.violations.append("no isomorphism found")


def cmd_classify(args, rep):
    """Impartial, partial and normal flags for a subset."""
    pg = load_pgroup(args.pgroup)
    h = _subgroup(pg, args.subset)
    rep.result = {"subset": h.names, "impartial": h.impartial, "partial": h.partial,
                  "normal": h.normal}
    if h.reason:
        rep.result["reason"] = h.reason


def cmd_generate_sub(args, rep):
    """Partial subgroup generated by a subset."""
    pg = load_pgroup(args.pgroup)
    gens = load_relations(args.generators, pg).subset()
    h = generated_partial_subgroup(pg, gens)
    rep.result = {"subset": h.names, "normal": h.normal}
    _emit(args, rep, text=serialize_relations(RelationSet(elements=list(h.subset)), pg))


def _presentation(rep, r):
    rep.truncated = not r.free.complete
    rep.result = {"verdict": r.verdict, **r.details}
    if r.isomorphism is not None:
        rep.result["isomorphism"] = r.isomorphism.describe()
    if r.verdict == "inconclusive":
        rep.violations.append("presentation could not be verified within the bounds")


def cmd_present_free(args, rep):
    """Present a partial group as a quotient of a free one."""
    pg = load_pgroup(args.pgroup)
    r = present_as_quotient_of_free(pg, args.max_word_len, args.max_elements)
    _presentation(rep, r)
    if args.out and r.quotient is not None:
        _emit(args, rep, r.quotient)


def cmd_add_relations(args, rep):
    """Quotient of the free object by extra relations."""
    pg = load_pgroup(args.pgroup)
    S = load_relations(args.relations, pg).words
    r = add_relations(pg, S, args.max_word_len, args.max_elements)
    _presentation(rep, r)
    if args.out and r.quotient is not None:
        _emit(args, rep, r.quotient)


def paper_demo() -> dict:
    """Coequalizer of two maps from the free pointed partial group on {1,a,b} to the Klein group."""
    K = klein()
    F = free_pointed(PointedSet(("1", "a", "b")))
    f = universal_map_pointed(F, K, {"a": "x", "b": "y"})
    g = universal_map_pointed(F, K, {"a": "xy", "b": "x"})
    sets = set_coequalizer(f, g)
    a, b = F.embedding["a"], F.embedding["b"]
    w1 = (f.map[a], f.map[b])
    w2 = (f.map[a], g.map[b])
    p1, p2 = K.product(w1), K.product(w2)
    part = coequalizer(f, g)
    return {
        "set_classes": sets.num_classes,
        "set_partition": [[K.names[x] for x in c] for c in sets.classes()],
        "words": {K.show(w1): K.names[p1], K.show(w2): K.names[p2]},
        "products_separated": not sets.related(p1, p2),
        "part_coequalizer_size": part.group.size,
        "merges": len(part.congruence.log),
    }


def cmd_paper_demo(args, rep):
    """Rerun the Klein-group coequalizer example."""
    rep.result = paper_demo()
    if rep.result["set_classes"] != 2 or rep.result["part_coequalizer_size"] != 1:
        rep.violations.append("demo did not reproduce the expected sizes")


COMMANDS = {
    "validate": (cmd_validate, ["pgroup"]),
    "product": (cmd_product, ["pgroups+"]),
    "coproduct": (cmd_coproduct, ["pgroups+"]),
    "equalize": (cmd_equalize, ["f", "g"]),
    "coequalize": (cmd_coequalize, ["f", "g"]),
    "quotient": (cmd_quotient, ["pgroup", "subgroup"]),
    "limit": (cmd_limit, ["diagram"]),
    "colimit": (cmd_colimit, ["diagram"]),
    "free-pointed": (cmd_free_pointed, ["names+"]),
    "free-sets": (cmd_free_sets, ["sets"]),
    "check-morphism": (cmd_check_morphism, ["morphism"]),
    "iso": (cmd_iso, ["a", "b"]),
    "classify": (cmd_classify, ["pgroup", "subset"]),
    "generate-sub": (cmd_generate_sub, ["pgroup", "generators"]),
    "present-free": (cmd_present_free, ["pgroup"]),
    "add-relations": (cmd_add_relations, ["pgroup", "relations"]),
    "paper-demo": (cmd_paper_demo, []),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the resulting structure here")
    common.add_argument("--max-word-len", type=int, default=8)
    common.add_argument("--max-elements", type=int, default=512)
    common.add_argument("--mode", choices=["exhaustive", "sampled"])
    common.add_argument("--json", action="store_true", help="machine-readable report")
    parser = argparse.ArgumentParser(prog="partgroup", description="Finite partial groups.")
    parser.add_argument("--version", action="version", version=f"partgroup (kernel: {_kernel.BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (fn, params) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=(fn.__doc__ or "").strip() or None)
        for param in params:
            if param.endswith("+"):
                p.add_argument(param[:-1], nargs="+")
            else:
                p.add_argument(param)
        p.set_defaults(func=fn)
    return parser


def _print_human(rep: Report, out):
    status = "ok" if not rep.violations else f"{len(rep.violations)} violation(s)"
    print(f"{rep.command}: {status}", file=out)
    for k, v in rep.result.items():
        print(f"  {k}: {v}", file=out)
    if rep.truncated:
        print("  truncated: True", file=out)
    for v in rep.violations:
        print(f"  violation: {v}", file=out)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    inputs = []
    for param in COMMANDS[args.command][1]:
        v = getattr(args, param.rstrip("+"))
        inputs += v if isinstance(v, list) else [v]
    rep = Report(args.command, inputs)
    try:
        args.func(args, rep)
    except (PartialGroupError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(rep.as_dict(), indent=2, sort_keys=True))
    else:
        _print_human(rep, sys.stdout)
    return 1 if rep.violations else 0


if __name__ == "__main__":
    sys.exit(main())
