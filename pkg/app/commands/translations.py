import argparse
from pathlib import Path
from typing import get_args

from app.core.exceptions import UsageError
from app.models.schemas import CommandResult, TranslationMode
from app.services.automaton_service import dump_automaton, load_automaton
from app.services.corpus_service import sweep
from app.services.lift_service import complement_pebble_dfa, lift_complement, lift_determinization
from app.services.transformer_service import get_transformer
from app.services.translation_service import classical_to_pebble, pebble_to_classical


def translate(args: argparse.Namespace) -> CommandResult:
    omit = args.omit or ()
    if omit and args.mode not in ("p2c", "c2p"):
        raise UsageError(f"--omit only applies to p2c and c2p, not {args.mode}")
    source = load_automaton(args.input)

    if args.mode == "p2c":
        result, report = pebble_to_classical(source, omit=omit)
    elif args.mode == "c2p":
        result, report = classical_to_pebble(source, omit=omit)
    elif args.mode == "det-lift":
        result, report = lift_determinization(source, get_transformer(args.plugin, "determinizer"))
    elif args.mode == "comp-lift":
        result, report = lift_complement(source, get_transformer(args.plugin, "complementer"))
    else:
        result, report = complement_pebble_dfa(source, get_transformer(args.plugin, "2dfa-complementer"))

    dump_automaton(result, args.output)
    payload = report.model_dump_json(indent=2)
    if args.report:
        Path(args.report).write_text(payload + "\n", encoding="utf-8")
    return CommandResult(output=payload)


def run_sweep(args: argparse.Namespace) -> CommandResult:
    report = sweep(seed=args.seed, count=args.count, max_states=args.max_states, max_len=args.max_len)
    return CommandResult(exit_code=0 if report.passed else 1, output=report.model_dump_json(indent=2))


def register(subparsers) -> None:
    parser = subparsers.add_parser("translate", help="Apply a translation or lift to an automaton file")
    parser.add_argument("mode", choices=get_args(TranslationMode))
    parser.add_argument("input")
    parser.add_argument("-o", "--output", required=True)
    parser.add_argument("--plugin", default="baseline", help="Transformer set for the lifts")
    parser.add_argument("--report", default=None, help="Also write the report JSON to this file")
    parser.add_argument("--omit", action="append", metavar="FAMILY", help="Drop a rule family (p2c/c2p only)")
    parser.set_defaults(handler=translate)

    parser = subparsers.add_parser("sweep", help="Check both translations on a seeded random corpus")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--count", type=int, default=20)
    parser.add_argument("--max-states", type=int, default=3)
    parser.add_argument("--max-len", type=int, default=5)
    parser.set_defaults(handler=run_sweep)
