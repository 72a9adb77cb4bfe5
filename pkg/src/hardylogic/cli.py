"""Command-line entry point.

Subcommands:
    hardy find       search for a configuration meeting the four constraints
    hardy verify     check a configuration file against the constraints
    model build      turn a configuration into a possibility model file
    eval             evaluate a formula at a world or globally
    check-theorem    both conclusion lines on a model, with witness
    proof audit      full line-by-line audit, text or JSON
    sr-table         the sixteen-row truth table behind the dependence claim

Exit code 0 means every check the command performs passed; bad inputs
(missing files, schema or formula errors) exit 2 with a message on the
error stream.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import proof, quantum, semantics, worlds
from .formula import ParseError, parse

USAGE_ERROR = 2


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="hardylogic",
        description="possible-worlds workbench for two-region counterfactual reasoning",
    )
    sub = top.add_subparsers(dest="command", required=True)

    hardy = sub.add_parser("hardy", help="configuration search and verification")
    hardy_sub = hardy.add_subparsers(dest="hardy_command", required=True)
    find = hardy_sub.add_parser("find", help="search for a passing configuration")
    find.add_argument("--seed", type=int, default=0, help="search seed (default 0)")
    find.add_argument("--grid", type=int, default=96, help="grid resolution (default 96)")
    find.add_argument("--out", metavar="CFG.json", help="write the configuration here")
    verify = hardy_sub.add_parser("verify", help="verify a configuration file")
    verify.add_argument("config", metavar="CFG.json")
    verify.add_argument("--tol", type=float, default=1e-9, help="zero-cell tolerance (default 1e-9)")

    model = sub.add_parser("model", help="model construction")
    model_sub = model.add_subparsers(dest="model_command", required=True)
    build = model_sub.add_parser("build", help="build a possibility model from a configuration")
    build.add_argument("config", metavar="CFG.json")
    build.add_argument("--epsilon", type=float, default=worlds.DEFAULT_EPSILON,
                       help="possibility threshold (default 1e-12)")
    build.add_argument("--out", metavar="MODEL.json", help="write the model here")

    ev = sub.add_parser("eval", help="evaluate a formula on a model")
    ev.add_argument("model", metavar="MODEL.json")
    ev.add_argument("formula", help="formula text, e.g. 'L2 => (R2 & R2+ -> (R1 []-> R1 & R1-))'")
    ev.add_argument("--at", metavar="W", help="world literal 'L1,R2,-,+'; omit for global evaluation")
    ev.add_argument("--quantifier", choices=("every", "some"), default="every",
                    help="counterfactual quantifier (default every)")

    thm = sub.add_parser("check-theorem", help="check both conclusion lines on a model")
    thm.add_argument("model", metavar="MODEL.json")

    pr = sub.add_parser("proof", help="derivation auditing")
    pr_sub = pr.add_subparsers(dest="proof_command", required=True)
    aud = pr_sub.add_parser("audit", help="audit the built-in derivation against a model")
    aud.add_argument("model", metavar="MODEL.json")
    aud.add_argument("--json", action="store_true", help="emit the report as JSON")

    sub.add_parser("sr-table", help="print the sixteen-row truth table")
    return top


def _cmd_hardy_find(args) -> int:
    params = quantum.SearchParams(seed=args.seed, grid=args.grid)
    cfg = quantum.find_hardy(params)
    report = quantum.verify_hardy(cfg)
    print(f"theta    = {cfg.theta!r}")
    for setting in ("L1", "L2", "R1", "R2"):
        print(f"angle {setting} = {cfg.angle(setting)!r}")
    print(report.summary())
    if args.out:
        quantum.save_config(cfg, args.out)
        print(f"configuration written to {args.out}")
    return 0 if report.passed else 1


def _cmd_hardy_verify(args) -> int:
    cfg = quantum.load_config(args.config)
    report = quantum.verify_hardy(cfg, tol=args.tol)
    print(report.summary())
    print(f"overall: {'pass' if report.passed else 'FAIL'}")
    return 0 if report.passed else 1


def _cmd_model_build(args) -> int:
    cfg = quantum.load_config(args.config)
    table = quantum.export_table(cfg)
    model = worlds.build_model(table, epsilon=args.epsilon)
    print(f"possible worlds: {len(model.possible)} of 16 at epsilon={args.epsilon:g}")
    for w in model.excluded_in_order():
        print(f"excluded: {w}")
    if args.out:
        worlds.save_model(model, args.out)
        print(f"model written to {args.out}")
    return 0


def _cmd_eval(args) -> int:
    model = worlds.load_model(args.model)
    f = parse(args.formula)
    opts = semantics.CfOptions(quantifier=args.quantifier)
    if args.at:
        world = worlds.parse_world(args.at)
        value = semantics.eval_at(model, world, f, opts)
        print("true" if value else "false")
        return 0 if value else 1
    result = semantics.holds_globally(model, f, opts)
    print("true" if result.holds else "false")
    if not result.holds:
        print(f"witness: {result.witness}")
    return 0 if result.holds else 1


def _cmd_check_theorem(args) -> int:
    model = worlds.load_model(args.model)
    report = semantics.check_theorem(model)
    print(report.render())
    return 0 if report.confirmed else 1


def _cmd_proof_audit(args) -> int:
    model = worlds.load_model(args.model)
    report = proof.audit(model)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.render())
    ok = (
        report.final.rules_all_valid
        and report.final.line5_true
        and report.final.line6_refuted
    )
    return 0 if ok else 1


def _cmd_sr_table(args) -> int:
    rows = proof.sr_truth_table()
    fmt = {True: "t", False: "f"}
    print("RA  RA+  RC  RC-  |  SR")
    false_rows = 0
    for row in rows:
        if not row.sr:
            false_rows += 1
        print(
            f"{fmt[row.ra]:<3} {fmt[row.ra_plus]:<4} {fmt[row.rc]:<3} "
            f"{fmt[row.rc_minus]:<4} |  {fmt[row.sr]}"
        )
    print(f"false rows: {false_rows} of {len(rows)}")
    expected_false = [r for r in rows if r.ra and r.ra_plus and r.rc and not r.rc_minus]
    ok = false_rows == 1 and expected_false and not expected_false[0].sr
    return 0 if ok else 1


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        ("hardy", "find"): _cmd_hardy_find,
        ("hardy", "verify"): _cmd_hardy_verify,
        ("model", "build"): _cmd_model_build,
        ("eval", None): _cmd_eval,
        ("check-theorem", None): _cmd_check_theorem,
        ("proof", "audit"): _cmd_proof_audit,
        ("sr-table", None): _cmd_sr_table,
    }
    key = (
        args.command,
        getattr(args, f"{args.command}_command", None) if args.command in ("hardy", "model", "proof") else None,
    )
    handler = handlers[key]
    try:
        return handler(args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (quantum.SearchError, worlds.TableError, worlds.DegenerateModelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
