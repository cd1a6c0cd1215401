import argparse
import json
from typing import List

from app.models.schemas import CommandResult
from app.services.automaton_service import load_automaton, stats
from app.services.encoding_service import encode
from app.services.simulation_service import Simulator, bounded_equiv


def parse_word(tokens: List[str]) -> tuple:
    """Space-separated symbol tokens, given as one argument or several; nothing is the empty word."""
    return tuple(" ".join(tokens).split())


def render_word(word) -> str:
    return " ".join(word)


def simulate(args: argparse.Namespace) -> CommandResult:
    simulator = Simulator(load_automaton(args.automaton))
    word = parse_word(args.input)
    if args.trace:
        result = simulator.trace(word, args.max_steps)
        return CommandResult(output=result.model_dump_json(indent=2))
    return CommandResult(output="accepted" if simulator.accepts(word) else "rejected")


def show_stats(args: argparse.Namespace) -> CommandResult:
    report = stats(load_automaton(args.automaton, validate=False))
    return CommandResult(output=report.model_dump_json(indent=2))


def encode_word(args: argparse.Namespace) -> CommandResult:
    return CommandResult(output=encode(parse_word(args.input)).render())


def equiv(args: argparse.Namespace) -> CommandResult:
    left = load_automaton(args.left)
    right = load_automaton(args.right)
    counterexample = bounded_equiv(
        left,
        right,
        args.max_len,
        right_transform=encode if args.encode_right else None,
        budget=args.budget,
    )
    verdict = {
        "equivalent": counterexample is None,
        "max_len": args.max_len,
        "counterexample": None if counterexample is None else list(counterexample),
    }
    return CommandResult(exit_code=0 if counterexample is None else 1, output=json.dumps(verdict, indent=2))


def register(subparsers) -> None:
    parser = subparsers.add_parser("simulate", help="Run an automaton on one input word")
    parser.add_argument("automaton", help="Automaton JSON file")
    parser.add_argument("input", nargs="*", help="Input symbols, space-separated")
    parser.add_argument("--trace", action="store_true", help="Print the run (or BFS layers) instead of a verdict")
    parser.add_argument("--max-steps", type=int, default=None)
    parser.set_defaults(handler=simulate)

    parser = subparsers.add_parser("stats", help="State count, kind, determinism and validation report")
    parser.add_argument("automaton")
    parser.set_defaults(handler=show_stats)

    parser = subparsers.add_parser("encode", help="Print the segment encoding of a word")
    parser.add_argument("input", nargs="*")
    parser.set_defaults(handler=encode_word)

    parser = subparsers.add_parser("equiv", help="Compare two automata on all words up to a length")
    parser.add_argument("left")
    parser.add_argument("right")
    parser.add_argument("--max-len", type=int, required=True)
    parser.add_argument("--encode-right", action="store_true", help="Feed the right automaton encode(w)")
    parser.add_argument("--budget", type=int, default=None, help="Maximum number of words to enumerate")
    parser.set_defaults(handler=equiv)
