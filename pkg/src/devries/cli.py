"""Command-line surface.

Exit status 0 means verified/valid, 1 means refuted/invalid with a
witness printed, 2 means an input error or precondition violation.
Reports are deterministic: canonical element and point order, sorted
key output in structured mode.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formats
from .duality import (
    check_devries_morphism,
    check_dv_map,
    dual_morphism,
    dual_point_map,
    dual_space,
    star_compose,
    verify_hat_basics,
    verify_representation,
    verify_space_roundtrip,
)
from .errors import InputError, PreconditionError, VerificationError
from .frames import (
    FiniteFrame,
    booleanization,
    check_frame,
    frame_dual_space,
    round_ideal_frame,
    upper_vietoris_space,
    verify_choice_free_product,
    verify_frame_algebra_equivalence,
)
from .logic import (
    AlgebraicModel,
    TopologicalModel,
    countermodel_search,
    eval_algebraic,
    eval_topological,
    is_valid_on_algebra,
    is_valid_on_space,
    parse as parse_formula,
    semantics_agreement,
)
from .spaces import is_dv_space, is_uv_space
from .subordination import check_axioms, classify
from .verdicts import Report


class _Failure(Exception):
    """Carries a refutation report to the exit-code logic."""


def _emit(pairs: list[tuple[str, str]], fmt: str) -> None:
    if fmt == "structured":
        pairs = sorted(pairs)
    for key, value in pairs:
        print(f"{key}: {value}")


def _report_pairs(report: Report, prefix: str = "") -> list[tuple[str, str]]:
    out = []
    for c in report.checks:
        value = "pass" if c.ok else "fail"
        if c.detail:
            value += f" [{c.detail}]"
        out.append((prefix + c.name, value))
    return out


def _cmd_check_algebra(args) -> int:
    alg = formats.load_algebra(args.file)
    report = check_axioms(alg)
    pairs = [
        ("atoms", str(alg.base.atom_count)),
        ("elements", str(alg.base.size)),
    ]
    for c in report.checks:
        value = "pass" if c.ok else "fail"
        if c.witness is not None:
            tokens = " ".join(alg.base.element_token(e) for e in c.witness)
            value += f" [witness: {tokens}]"
        pairs.append((c.name, value))
    zd = report.zero_dimensional
    pairs.append(("zero-dimensional", "true" if zd.ok else "false"))
    pairs.append(("class", classify(alg)))
    _emit(pairs, args.format)
    return 0 if report.all_pass else 1


def _cmd_dualize(args) -> int:
    alg = formats.load_algebra(args.file)
    sys.stdout.write(formats.dump_space(dual_space(alg)))
    return 0


def _cmd_check_space(args) -> int:
    space = formats.load_space(args.file, generate=args.generate)
    pairs = [
        ("points", str(space.point_count)),
        ("opens", str(len(space.opens))),
    ]
    pairs += _report_pairs(space.separation_report())
    dv = is_dv_space(space)
    uv = is_uv_space(space)
    pairs.append(("dv-space", "true" if dv.ok else "false"))
    if not dv.ok:
        failing = next(c for c in dv.checks if not c.ok)
        detail = failing.name + (f": {failing.detail}" if failing.detail else "")
        pairs.append(("dv-failure", detail))
    pairs.append(("uv-space", "true" if uv.ok else "false"))
    _emit(pairs, args.format)
    return 0 if dv.ok else 1


def _cmd_roundtrip(args) -> int:
    kind = formats.sniff_kind(args.file)
    pairs: list[tuple[str, str]] = []
    ok = True
    if kind == "algebra":
        alg = formats.load_algebra(args.file)
        rep = verify_representation(alg)
        basics = verify_hat_basics(alg)
        pairs += _report_pairs(rep)
        pairs += _report_pairs(basics)
        space = dual_space(alg)
        dv = is_dv_space(space)
        pairs.append(("dual-space-is-dv", "pass" if dv.ok else "fail"))
        back = verify_space_roundtrip(space)
        pairs += _report_pairs(back, prefix="dual-space-")
        ok = rep.ok and basics.ok and dv.ok and back.ok
    elif kind == "space":
        space = formats.load_space(args.file)
        dv = is_dv_space(space)
        pairs += _report_pairs(dv)
        if not dv.ok:
            _emit(pairs, args.format)
            return 1
        back = verify_space_roundtrip(space)
        pairs += _report_pairs(back, prefix="roundtrip-")
        ok = back.ok
    else:
        raise InputError("roundtrip expects an algebra or space file")
    _emit(pairs, args.format)
    return 0 if ok else 1


def _load_any_map(path: str):
    p = formats.resolve_path(path)
    lines = formats._meaningful_lines(p.read_text())
    src_ref, _ = formats._expect_header(lines, "source", "map")
    if src_ref.startswith("dual:"):
        return "space", formats.load_point_map(path)
    kind = formats.sniff_kind(src_ref, relative_to=p.parent)
    if kind == "algebra":
        return "algebra", formats.load_morphism(path)
    if kind == "space":
        return "space", formats.load_point_map(path)
    raise InputError(f"cannot tell what {path} maps between")


def _cmd_morphism(args) -> int:
    if args.action == "check":
        kind, mapping = _load_any_map(args.files[0])
        report = (
            check_devries_morphism(mapping)
            if kind == "algebra"
            else check_dv_map(mapping)
        )
        _emit(_report_pairs(report), args.format)
        return 0 if report.ok else 1
    if args.action == "star":
        if len(args.files) != 2:
            raise InputError("morphism star needs two morphism files")
        first = formats.load_morphism(args.files[0])
        second = formats.load_morphism(args.files[1])
        composed = star_compose(second, first)
        src_ref, _ = formats.morphism_refs(args.files[0])
        _, tgt_ref = formats.morphism_refs(args.files[1])
        sys.stdout.write(formats.dump_morphism(composed, src_ref, tgt_ref))
        return 0
    if args.action == "dualize":
        kind, mapping = _load_any_map(args.files[0])
        src_ref, tgt_ref = formats.morphism_refs(args.files[0])
        if kind == "algebra":
            point_map = dual_point_map(mapping)
            sys.stdout.write(
                formats.dump_point_map(point_map, f"dual:{tgt_ref}", f"dual:{src_ref}")
            )
        else:
            morphism = dual_morphism(mapping)
            sys.stdout.write(
                formats.dump_morphism(
                    morphism, f"regular-opens-of:{tgt_ref}", f"regular-opens-of:{src_ref}"
                )
            )
        return 0
    raise InputError(f"unknown morphism action {args.action!r}")


def _cmd_frame(args) -> int:
    if args.action == "check":
        names, rows, bottom, top = formats.parse_frame_poset(
            formats.resolve_path(args.file).read_text()
        )
        frame, problem = FiniteFrame.try_build(names, rows)
        if frame is None:
            _emit([("is-frame", f"fail [{problem}]")], args.format)
            return 1
        report = check_frame(frame)
        _emit(_report_pairs(report), args.format)
        return 0 if report.ok else 1
    if args.action == "booleanize":
        frame = formats.load_frame(args.file)
        alg, _ = booleanization(frame)
        sys.stdout.write(formats.dump_algebra(alg))
        return 0
    if args.action == "ideals":
        alg = formats.load_algebra(args.file)
        sys.stdout.write(formats.dump_frame(round_ideal_frame(alg)))
        return 0
    if args.action == "xi":
        frame = formats.load_frame(args.file)
        sys.stdout.write(formats.dump_space(frame_dual_space(frame)))
        return 0
    if args.action == "uv":
        frame = formats.load_frame(args.file)
        sys.stdout.write(formats.dump_space(upper_vietoris_space(frame)))
        return 0
    if args.action == "gur":
        kind = formats.sniff_kind(args.file)
        if kind == "frame":
            report = verify_frame_algebra_equivalence(
                frame=formats.load_frame(args.file)
            )
        elif kind == "algebra":
            report = verify_frame_algebra_equivalence(
                alg=formats.load_algebra(args.file)
            )
        else:
            raise InputError("gur expects a frame or algebra file")
        _emit(_report_pairs(report), args.format)
        return 0 if report.ok else 1
    raise InputError(f"unknown frame action {args.action!r}")


def _cmd_product(args) -> int:
    spaces = [formats.load_space(f) for f in args.files]
    result, report = verify_choice_free_product(spaces)
    dv = is_dv_space(result)
    pairs = [("points", str(result.point_count))]
    pairs += _report_pairs(report)
    pairs.append(("dv-space", "pass" if dv.ok else "fail"))
    _emit(pairs, args.format)
    return 0 if report.ok and dv.ok else 1


def _cmd_s2ic(args) -> int:
    if args.action == "check":
        phi = parse_formula(args.formula)
        if (args.space is None) == (args.algebra is None):
            raise InputError("s2ic check needs exactly one of --space or --algebra")
        if args.space is not None:
            space = formats.load_space(args.space)
            if args.valuation:
                valuation = formats.load_valuation(args.valuation, space=space)
                value = eval_topological(TopologicalModel.of(space, valuation), phi)
                full = value == space.full
                _emit(
                    [("value", space.subset_token(value)),
                     ("holds", "true" if full else "false")],
                    args.format,
                )
                return 0 if full else 1
            result = is_valid_on_space(space, phi)
            pairs = [("valid", "true" if result.valid else "false")]
            if not result.valid:
                for name, v in result.countervaluation:
                    pairs.append((f"countervaluation.{name}", space.subset_token(v)))
            _emit(pairs, args.format)
            return 0 if result.valid else 1
        alg = formats.load_algebra(args.algebra)
        if args.valuation:
            valuation = formats.load_valuation(args.valuation, algebra=alg)
            value = eval_algebraic(AlgebraicModel.of(alg, valuation), phi)
            top = value == alg.base.top
            _emit(
                [("value", alg.base.element_token(value)),
                 ("holds", "true" if top else "false")],
                args.format,
            )
            return 0 if top else 1
        result = is_valid_on_algebra(alg, phi)
        pairs = [("valid", "true" if result.valid else "false")]
        if not result.valid:
            for name, v in result.countervaluation:
                pairs.append((f"countervaluation.{name}", alg.base.element_token(v)))
        _emit(pairs, args.format)
        return 0 if result.valid else 1
    if args.action == "countermodel":
        phi = parse_formula(args.formula)
        result = countermodel_search(
            phi, args.max_atoms, args.klass, jobs=args.jobs
        )
        if not result.found:
            _emit([("countermodel", "none"),
                   ("exhausted-at-atoms", str(args.max_atoms))], args.format)
            return 0
        alg = result.algebra
        print(f"countermodel: {alg.base.atom_count} atoms")
        sys.stdout.write(formats.dump_algebra(alg))
        for name, v in result.valuation:
            print(f"val: {name} {alg.base.element_token(v)}")
        print(f"value: {alg.base.element_token(result.value)}")
        return 1
    if args.action == "agree":
        phi = parse_formula(args.formula)
        alg = formats.load_algebra(args.algebra)
        result = semantics_agreement(alg, phi)
        pairs = [("agreement", "true" if result.agree else "false")]
        if not result.agree:
            for name, v in result.valuation:
                pairs.append((f"valuation.{name}", alg.base.element_token(v)))
        _emit(pairs, args.format)
        return 0 if result.agree else 1
    raise InputError(f"unknown s2ic action {args.action!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="devries",
        description="Finite workbench for subordination algebras, their "
        "filter-space duals, frames and the strict-implication logic.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "structured"), default="text",
        help="report style: human order or sorted key:value lines",
    )
    common.add_argument(
        "--jobs", type=int, default=1,
        help="worker count for the searches that support partitioning",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-algebra", parents=[common],
                       help="axioms and classification of an algebra file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_check_algebra)

    p = sub.add_parser("dualize", parents=[common],
                       help="emit the dual filter space of an algebra file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_dualize)

    p = sub.add_parser("check-space", parents=[common],
                       help="separation report and space recognition")
    p.add_argument("file")
    p.add_argument("--generate", action="store_true",
                   help="treat the open lines as a subbasis")
    p.set_defaults(func=_cmd_check_space)

    p = sub.add_parser("roundtrip", parents=[common],
                       help="representation and double-dual verification")
    p.add_argument("file")
    p.set_defaults(func=_cmd_roundtrip)

    p = sub.add_parser("morphism", parents=[common],
                       help="check, compose or dualize morphism files")
    p.add_argument("action", choices=("check", "star", "dualize"))
    p.add_argument("files", nargs="+")
    p.set_defaults(func=_cmd_morphism)

    p = sub.add_parser("frame", parents=[common],
                       help="frame checks and constructions")
    p.add_argument("action",
                   choices=("check", "booleanize", "ideals", "xi", "uv", "gur"))
    p.add_argument("file")
    p.set_defaults(func=_cmd_frame)

    p = sub.add_parser("product", parents=[common],
                       help="choice-free product of discrete space files")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=_cmd_product)

    p = sub.add_parser("s2ic", parents=[common],
                       help="formula validity, countermodels and agreement")
    p.add_argument("action", choices=("check", "countermodel", "agree"))
    p.add_argument("formula")
    p.add_argument("--space")
    p.add_argument("--algebra")
    p.add_argument("--valuation")
    p.add_argument("--max-atoms", type=int, default=2)
    p.add_argument("--class", dest="klass",
                   choices=("contact", "compingent"), default="contact")
    p.set_defaults(func=_cmd_s2ic)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"precondition violation: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
