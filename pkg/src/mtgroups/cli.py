"""Command-line interface: ``mtgroups <command> ...``.

Exit status: 0 success, 1 usage or parse error, 2 computational bound
exceeded, 3 theorem violation (a counterexample was found).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .errors import BoundExceeded, HypothesisNotSatisfied, MtGroupsError, TheoremViolation
from .perm_core import PermGroup, Permutation, parse_permutation

EXIT_OK, EXIT_USAGE, EXIT_BOUND, EXIT_VIOLATION = 0, 1, 2, 3


class GroupFileError(MtGroupsError):
    pass


@dataclass
class GroupFile:
    degree: int
    generators: list[Permutation]
    subgroups: dict[str, list[Permutation]] = field(default_factory=dict)

    def group(self) -> PermGroup:
        return PermGroup(self.generators, self.degree)

    def subgroup(self, G: PermGroup, name: str):
        from .structure import subgroup

        if name not in self.subgroups:
            raise GroupFileError(f"no subgroup named {name!r}")
        return subgroup(G, self.subgroups[name])


def parse_group_file(text: str) -> GroupFile:
    """Parse the text group format.

    ::

        degree 4
        gen (1 2 3 4)
        subgroup A
        gen (1 3)(2 4)
        end

    Blank lines and ``#`` comments are ignored.
    """
    degree = None
    gens: list[Permutation] = []
    subs: dict[str, list[Permutation]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if word == "degree":
                if degree is not None:
                    raise GroupFileError("degree given twice")
                degree = int(rest)
                if degree < 1:
                    raise GroupFileError("degree must be positive")
            elif word == "gen":
                if degree is None:
                    raise GroupFileError("gen before degree")
                p = parse_permutation(rest, degree)
                (subs[current] if current is not None else gens).append(p)
            elif word == "subgroup":
                if current is not None:
                    raise GroupFileError("nested subgroup block")
                if not rest or rest in subs:
                    raise GroupFileError(f"bad or repeated subgroup name {rest!r}")
                current = rest
                subs[current] = []
            elif word == "end":
                if current is None:
                    raise GroupFileError("end without subgroup")
                current = None
            else:
                raise GroupFileError(f"unknown directive {word!r}")
        except ValueError as exc:
            raise GroupFileError(f"line {lineno}: {exc}") from None
        except GroupFileError as exc:
            raise GroupFileError(f"line {lineno}: {exc}") from None
    if current is not None:
        raise GroupFileError("unterminated subgroup block")
    if degree is None:
        raise GroupFileError("missing degree line")
    return GroupFile(degree, gens, subs)


def load_group_file(path: str) -> tuple[GroupFile, PermGroup]:
    try:
        with open(path, encoding="utf-8") as fh:
            gf = parse_group_file(fh.read())
    except OSError as exc:
        raise GroupFileError(str(exc)) from None
    G = gf.group()
    for name, sgens in gf.subgroups.items():
        for g in sgens:
            if g not in G:
                raise GroupFileError(f"subgroup {name}: generator {g} not in the group")
    return gf, G


# -- output -------------------------------------------------------------------

class Out:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout

    def record(self, obj: dict, text: str | None = None) -> None:
        if self.as_json:
            print(json.dumps(obj, sort_keys=True), file=self.stream)
        elif text is not None:
            print(text, file=self.stream)

    def text(self, line: str) -> None:
        if not self.as_json:
            print(line, file=self.stream)


def _gens(H) -> list[str]:
    return [str(g) for g in H.generators]


def _yes(b: bool) -> str:
    return "yes" if b else "no"


# -- commands ---------------------------------------------------------------------

def cmd_mt_check(args, out: Out) -> int:
    from .mintrans import is_minimally_transitive, is_mt_stabilizer
    from .structure import core_of_subgroup

    gf, G = load_group_file(args.file)
    if args.stabilizer is None:
        v = is_minimally_transitive(G)
        obj = {"command": "mt-check", "degree": G.degree, "order": G.order,
               "minimally_transitive": v.holds, "method": v.method,
               "witness": _gens(v.witness) if v.witness is not None else None}
        text = f"minimally transitive: {_yes(v.holds)}"
        if v.witness is not None:
            text += f"\ntransitive proper subgroup of order {v.witness.order}: {' '.join(obj['witness'])}"
        out.record(obj, text)
        return EXIT_OK
    A = gf.subgroup(G, args.stabilizer)
    v = is_mt_stabilizer(G, A, args.method)
    K = core_of_subgroup(G, A)
    obj = {"command": "mt-check", "stabilizer": args.stabilizer, "group_order": G.order,
           "stabilizer_order": A.order, "degree": G.order // A.order, "core_order": K.order,
           "mt_stabilizer": v.holds, "method": v.method,
           "witness": _gens(v.witness) if v.witness is not None else None}
    text = (f"mt-stabilizer: {_yes(v.holds)}\n"
            f"index {obj['degree']}, core order {K.order}")
    if v.witness is not None:
        text += f"\nwitness H of order {v.witness.order} (AH = G, HK != G): {' '.join(obj['witness'])}"
    out.record(obj, text)
    return EXIT_OK


def cmd_analyze(args, out: Out) -> int:
    from .structure import (
        all_subgroups,
        fitting_subgroup,
        frattini_subgroup,
        group_predicates,
        maximal_subgroups,
        normal_subgroups,
        sylow_subgroup,
    )

    _, G = load_group_file(args.file)
    pred = group_predicates(G)
    F, Phi = fitting_subgroup(G), frattini_subgroup(G)
    sylows = {str(p): sylow_subgroup(G, p) for p in pred.prime_set}
    obj = {
        "command": "analyze",
        "degree": G.degree,
        "order": G.order,
        "transitive": G.is_transitive(),
        "orbits": [[x + 1 for x in b] for b in G.orbits().blocks],
        "predicates": pred.as_dict(),
        "subgroups": len(all_subgroups(G)),
        "normal_subgroups": len(normal_subgroups(G)),
        "maximal_subgroups": len(maximal_subgroups(G)),
        "fitting": {"order": F.order, "generators": _gens(F)},
        "frattini": {"order": Phi.order, "generators": _gens(Phi)},
        "sylow": {p: {"order": S.order, "generators": _gens(S)} for p, S in sylows.items()},
    }
    lines = [
        f"degree {G.degree}, order {G.order}, transitive: {_yes(obj['transitive'])}",
        "abelian: {is_abelian}  elementary abelian: {is_elementary_abelian}  nilpotent: {is_nilpotent}  "
        "solvable: {is_solvable}  simple: {is_simple}".format(**{k: _yes(v) for k, v in pred.as_dict().items() if k.startswith("is_")}),
        f"primes: {pred.prime_set}",
        f"subgroups: {obj['subgroups']} (normal {obj['normal_subgroups']}, maximal {obj['maximal_subgroups']})",
        f"Fitting subgroup: order {F.order}  {' '.join(_gens(F))}",
        f"Frattini subgroup: order {Phi.order}  {' '.join(_gens(Phi))}",
    ]
    for p, S in sylows.items():
        lines.append(f"Sylow {p}-subgroup: order {S.order}  {' '.join(_gens(S))}")
    out.record(obj, "\n".join(lines))
    return EXIT_OK


def _pick_normal(G, A):
    from .structure import core_of_subgroup, normal_subgroups

    K = core_of_subgroup(G, A)
    for H in normal_subgroups(G):
        if K < H and not H.is_whole():
            return H
    raise HypothesisNotSatisfied("no normal subgroup strictly between the core and G")


def cmd_reduce(args, out: Out) -> int:
    from . import mintrans as mt

    gf, G = load_group_file(args.file)
    A = gf.subgroup(G, args.stabilizer)
    mode = args.mode
    if mode == "piq":
        trace = mt.reduce_piq_pipeline(G, A)
        obj = {"command": "reduce", "mode": mode, **trace.as_dict(), "ok": trace.ok}
        lines = [f"{'rule':24s} {'input':>18s} {'N':>6s} {'output':>18s}  branch"]
        for s in trace.steps:
            fmt = lambda d: f"{d['group_order']}/{d['stabilizer_order']} deg {d['degree']}"
            lines.append(f"{s.rule:24s} {fmt(s.input):>18s} {str(s.normal_subgroup_used or '-'):>6s} "
                         f"{fmt(s.output):>18s}  {s.branch or ''}")
        lines.append(f"terminal: {trace.terminal}")
        if trace.classification is not None:
            c = trace.classification
            lines.append(f"classification: {c.case} (p={c.p}, q={c.q}, exponent={c.exponent})")
        for f in trace.failed_checks:
            lines.append(f"FAILED: {f}")
        ok = trace.ok
    elif mode == "normal":
        H = gf.subgroup(G, args.normal) if args.normal else _pick_normal(G, A)
        red = mt.reduce_by_normal(G, A, H)
        obj = {"command": "reduce", "mode": mode, "normal_order": H.order,
               "B": {"order": red.B.order, "generators": _gens(red.B)},
               "degree": red.orbit_action.degree, "mt_ok": red.mt_ok,
               "strictly_larger_ok": red.strictly_larger_ok,
               "block_stabilizer_ok": red.block_stabilizer_ok,
               "equivalent_ok": red.equivalent_ok, "blocks_mt_ok": red.blocks_mt_ok,
               "relabeling": str(red.relabeling.beta) if red.relabeling else None, "ok": red.ok}
        lines = [f"B = AH of order {red.B.order}: {' '.join(obj['B']['generators'])}",
                 f"action on G:B of degree {obj['degree']}",
                 f"B mt-stabilizer: {_yes(red.mt_ok)}; B != A: {_yes(red.strictly_larger_ok)}",
                 f"orbit action equivalent to G:B: {_yes(red.equivalent_ok)}"
                 + (f" via {obj['relabeling']}" if red.relabeling else ""),
                 f"orbit action minimally transitive: {_yes(red.blocks_mt_ok)}"]
        ok = red.ok
    elif mode == "split":
        rep = mt.fitting_split(G, A)
        obj = {"command": "reduce", "mode": mode, "pi_star": list(rep.pi_star.primes),
               "fitting_order": rep.fitting.order, "Q": {"order": rep.Q.order, "generators": _gens(rep.Q)},
               "normal_sylows": [{"prime": p, "order": P.order} for p, P in rep.normal_sylows],
               "conjugates_checked": rep.conjugates_checked,
               "components": [{"prime": c.prime, "subgroup_order": c.subgroup.order,
                               "stabilizer_order": c.stabilizer.order, "mt_ok": c.mt_ok,
                               "corefree_ok": c.corefree_ok} for c in rep.components],
               "ok": rep.ok}
        lines = [f"pi* = {rep.pi_star}, |F| = {rep.fitting.order}, |Q| = {rep.Q.order}, "
                 f"conjugates of Q checked: {rep.conjugates_checked}"]
        for c in rep.components:
            lines.append(f"p = {c.prime}: |Q*P| = {c.subgroup.order}, |A_Q x A_P| = {c.stabilizer.order}, "
                         f"mt: {_yes(c.mt_ok)}, core-free: {_yes(c.corefree_ok)}")
        ok = rep.ok
    else:
        rep = mt.squarefree_analyze(G, A)
        obj = {"command": "reduce", "mode": mode, "fitting_order": rep.fitting.order,
               "coprime_ok": rep.coprime_ok, "sylows_elem_abelian": rep.sylows_elem_abelian,
               "nilpotent_case": rep.nilpotent_case, "pi_star": list(rep.pi_star.primes),
               "n_star": rep.n_star, "Q_order": rep.hall_Q.order, "C_order": rep.C.order,
               "index_ok": rep.index_ok, "actions_equivalent_ok": rep.actions_equivalent_ok, "ok": rep.ok}
        lines = [f"|F| = {rep.fitting.order}, coprime to |G:F|: {_yes(rep.coprime_ok)}",
                 f"Sylow subgroups of F elementary abelian: {_yes(rep.sylows_elem_abelian)}",
                 f"nilpotent case (cyclic, A = 1): {_yes(rep.nilpotent_case)}",
                 f"pi* = {rep.pi_star}, n* = {rep.n_star}, |Q| = {rep.hall_Q.order}, |C| = {rep.C.order}",
                 f"|Q:C| = n*: {_yes(rep.index_ok)}",
                 f"Q on Q:C equivalent to G on G:AF: {_yes(rep.actions_equivalent_ok)}"]
        ok = rep.ok
    out.record(obj, "\n".join(lines))
    if not ok:
        _dump_violation(mt.counterexample(G, A=A), f"reduce --mode {mode}")
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_classify_pq(args, out: Out) -> int:
    from .mintrans import classify_degree_pq, counterexample

    _, G = load_group_file(args.file)
    c = classify_degree_pq(G)
    obj = {"command": "classify-pq", "order": G.order, "degree": G.degree, **c.as_dict()}
    text = f"case: {c.case}\np = {c.p}, q = {c.q}, exponent = {c.exponent}"
    if c.diagnostic:
        text += f"\n{c.diagnostic}"
    out.record(obj, text)
    if not c.ok:
        _dump_violation(counterexample(G), "classify-pq")
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_census(args, out: Out) -> int:
    from .census import mt_census

    entries = mt_census(args.degree, args.max_order, args.method)
    out.text(f"degree {args.degree}: {len(entries)} minimally transitive group(s) up to relabeling")
    for e in entries:
        sk = f"  {e.sk_classification['case']}" if e.sk_classification else ""
        out.record(e.as_dict(),
                   f"order {e.order:5d}  solvable {_yes(e.solvable):3s}  nilpotent {_yes(e.nilpotent):3s}  "
                   f"regular {_yes(e.regular):3s}  gens {' '.join(str(g) for g in e.generators)}{sk}")
    return EXIT_OK


def cmd_verify(args, out: Out) -> int:
    from .census import VerifyBounds, verify_theorems

    report = verify_theorems(bounds=VerifyBounds(args.max_order, args.max_degree, args.jobs))
    out.text(f"{len(report.groups)} catalog groups of order <= {args.max_order}")
    out.text(f"{'suite':24s} {'tested':>8s} {'inapplicable':>13s} {'violations':>11s}")
    for row in report.rows():
        out.record(row, f"{row['suite']:24s} {row['instances_tested']:8d} {row['inapplicable']:13d} "
                        f"{row['violations']:11d}")
    out.record({"summary": {"groups": len(report.groups), "violations": report.total_violations}},
               f"total violations: {report.total_violations}")
    if not report.ok:
        for name, counts in report.suites.items():
            for ce in counts.counterexamples:
                _dump_violation(ce, name)
        return EXIT_VIOLATION
    return EXIT_OK


def _dump_violation(ce: dict, where: str) -> None:
    print(f"THEOREM VIOLATION in {where}: " + json.dumps(ce, sort_keys=True), file=sys.stderr)


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    # --json is accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="one JSON object per result line")

    parser = argparse.ArgumentParser(prog="mtgroups", description="Minimally transitive permutation groups.")
    parser.add_argument("--json", action="store_true", help="one JSON object per result line")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mt-check", parents=[common], help="test minimal transitivity or an mt-stabilizer")
    p.add_argument("file")
    p.add_argument("--stabilizer", metavar="NAME")
    p.add_argument("--method", default="maximal", choices=["maximal", "definitional", "product", "all"])
    p.set_defaults(func=cmd_mt_check)

    p = sub.add_parser("analyze", parents=[common], help="predicates and Fitting/Frattini/Sylow summary")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("reduce", parents=[common], help="reduction and splitting reports")
    p.add_argument("file")
    p.add_argument("--stabilizer", metavar="NAME", required=True)
    p.add_argument("--mode", default="piq", choices=["normal", "piq", "split", "squarefree"])
    p.add_argument("--normal", metavar="NAME", help="normal subgroup for --mode normal")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("classify-pq", parents=[common], help="classify a minimally transitive group of degree pq")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify_pq)

    p = sub.add_parser("census", parents=[common], help="minimally transitive groups of a given degree")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--method", default="search", choices=["search", "lattice"])
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", parents=[common], help="run the theorem suites over the catalog")
    p.add_argument("--max-order", type=int, default=200)
    p.add_argument("--max-degree", type=int, default=7)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    out = Out(args.json)
    try:
        return args.func(args, out)
    except BoundExceeded as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except TheoremViolation as exc:
        _dump_violation(exc.counterexample, exc.suite)
        return EXIT_VIOLATION
    except HypothesisNotSatisfied as exc:
        print(f"hypothesis not satisfied: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MtGroupsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
