"""Command line front end.

Exit codes: 0 for a true/satisfiable verdict, 1 for false/unsatisfiable,
2 for any error, 3 for a formula outside the supported fragments.
"""

import argparse
import json
import sys

from . import __version__
from .aba import miyano_hayashi
from .aba import to_dot as automaton_to_dot
from .build import build_aba
from .checker import model_check
from .config import Config, load_config
from .errors import HypermcError, UnsupportedFragmentError
from .kts import parse_kts
from .lasso import parse_lasso_file
from .marked import build_marked_nfa
from .marked import to_dot as marked_to_dot
from .omega import compile_spec, parse_omega_spec
from .oracle import eval_formula
from .sat import satisfiable
from .syntax import criticality, format_formula, parse_formula, parse_program, to_nnf


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config) if args.config else Config()
        return args.func(args, config)
    except UnsupportedFragmentError as exc:
        print("unsupported: %s" % exc, file=sys.stderr)
        return 3
    except (HypermcError, OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="hypermc",
        description="model checking, satisfiability and property "
                    "compilation for a dynamic logic of trace tuples")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(required=True, metavar="command")

    p = sub.add_parser("check", help="model check a closed formula")
    p.add_argument("formula")
    p.add_argument("kts")
    p.add_argument("--system-format", choices=("kts", "kripke", "lts"),
                   default="kts")
    p.add_argument("--transitions", choices=("succinct", "enumerate"),
                   default="succinct")
    _common(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("sat", help="decide satisfiability over trace sets")
    p.add_argument("formula")
    p.add_argument("--aps", nargs="*", default=())
    p.add_argument("--programs", nargs="*", default=())
    p.add_argument("--transitions", choices=("succinct", "enumerate"),
                   default="succinct")
    _common(p)
    p.set_defaults(func=_cmd_sat)

    p = sub.add_parser("compile-omega",
                       help="compile a lasso property file to a formula")
    p.add_argument("spec")
    _common(p)
    p.set_defaults(func=_cmd_compile_omega)

    p = sub.add_parser("criticality",
                       help="print the complementation depth of a formula")
    p.add_argument("formula")
    _common(p)
    p.set_defaults(func=_cmd_criticality)

    p = sub.add_parser("dot", help="emit an automaton in dot format")
    p.add_argument("--stage", choices=("marked-nfa", "aba", "nba"),
                   required=True)
    p.add_argument("--formula", help="formula file (stages aba and nba)")
    p.add_argument("--program", help="program text (stage marked-nfa)")
    p.add_argument("--arity", type=int, default=1,
                   help="paths in scope of --program")
    p.add_argument("--kts", help="system file (stages aba and nba)")
    p.add_argument("--system-format", choices=("kts", "kripke", "lts"),
                   default="kts")
    _common(p)
    p.set_defaults(func=_cmd_dot)

    p = sub.add_parser("eval-lasso",
                       help="evaluate a formula on an explicit lasso "
                            "assignment")
    p.add_argument("formula")
    p.add_argument("lasso")
    p.add_argument("--kts", help="system for path quantifiers")
    p.add_argument("--system-format", choices=("kts", "kripke", "lts"),
                   default="kts")
    p.add_argument("--trace", action="store_true",
                   help="lasso entries carry proposition sets")
    p.add_argument("--pos", type=int, default=0)
    _common(p)
    p.set_defaults(func=_cmd_eval_lasso)

    return parser


def _common(p):
    p.add_argument("--config", help="key=value options file")
    p.add_argument("--json", action="store_true")


def _read(path):
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _cmd_check(args, config):
    formula = parse_formula(_read(args.formula))
    kts = parse_kts(_read(args.kts), mode=args.system_format)
    report = model_check(formula, kts, config=config, mode=args.transitions)
    if args.json:
        print(report.to_json())
    else:
        print("true" if report.verdict else "false")
        print("criticality %d" % report.criticality)
        for leaf in report.leaves:
            print("block %s: %s (%d states, %.3fs)"
                  % (leaf.formula, "holds" if leaf.holds else "fails",
                     leaf.states, leaf.seconds))
            if leaf.witness is not None:
                role = ("counterexample" if leaf.negated and not leaf.holds
                        else "witness")
                print("  %s %s" % (role, leaf.witness.strip()))
    return 0 if report.verdict else 1


def _cmd_sat(args, config):
    formula = parse_formula(_read(args.formula))
    result = satisfiable(formula, aps=args.aps, programs=args.programs,
                         config=config, mode=args.transitions)
    if args.json:
        print(result.to_json())
    else:
        print("satisfiable" if result.satisfiable else "unsatisfiable")
        print("fragment %s" % result.fragment)
        if result.transformed is not None:
            print("reduced to %s" % format_formula(result.transformed))
        if result.witness is not None:
            from .lasso import format_lasso_file
            print(format_lasso_file(result.witness, trace=True).rstrip())
    return 0 if result.satisfiable else 1


def _cmd_compile_omega(args, config):
    spec = parse_omega_spec(_read(args.spec))
    formula = compile_spec(spec)
    if args.json:
        print(json.dumps({
            "schema": "hypermc.omega/1",
            "formula": format_formula(formula),
            "paths": spec.arity,
            "aps": list(spec.aps),
            "programs": list(spec.programs),
        }, indent=2))
    else:
        print(format_formula(formula))
    return 0


def _cmd_criticality(args, config):
    formula = parse_formula(_read(args.formula))
    value = criticality(formula)
    if args.json:
        print(json.dumps({"schema": "hypermc.criticality/1",
                          "criticality": value}))
    else:
        print(value)
    return 0


def _cmd_dot(args, config):
    if args.stage == "marked-nfa":
        if not args.program:
            raise ValueError("stage marked-nfa needs --program")
        prog = parse_program(args.program, args.arity)
        print(marked_to_dot(build_marked_nfa(prog)), end="")
        return 0
    if not args.formula or not args.kts:
        raise ValueError("stages aba and nba need --formula and --kts")
    formula = to_nnf(parse_formula(_read(args.formula)))
    kts = parse_kts(_read(args.kts), mode=args.system_format)
    aut = build_aba(formula, nvars=0, kts=kts, config=config)
    if args.stage == "nba":
        aut = miyano_hayashi(aut)
    print(automaton_to_dot(aut), end="")
    return 0


def _cmd_eval_lasso(args, config):
    asg = parse_lasso_file(_read(args.lasso), trace=args.trace)
    formula = parse_formula(_read(args.formula), free_vars=asg.names)
    kts = (parse_kts(_read(args.kts), mode=args.system_format)
           if args.kts else None)
    verdict = eval_formula(asg, args.pos, formula, kts=kts, trace=args.trace,
                           quantifier_mode="bounded",
                           bound=config.oracle_lasso_bound)
    if args.json:
        print(json.dumps({"schema": "hypermc.eval/1", "verdict": verdict}))
    else:
        print("true" if verdict else "false")
    return 0 if verdict else 1
