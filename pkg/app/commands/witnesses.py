import argparse
import json

from app.models.schemas import CommandResult
from app.services.automaton_service import dump_automaton, load_automaton, serialize_automaton
from app.services.witness_service import pump_check, witness_pebble_dfa


def witness(args: argparse.Namespace) -> CommandResult:
    descriptor = witness_pebble_dfa(args.m)
    if args.output is None:
        return CommandResult(output=serialize_automaton(descriptor).rstrip("\n"))
    dump_automaton(descriptor, args.output)
    return CommandResult(output=f"wrote {len(descriptor.states)} states to {args.output}")


def pump(args: argparse.Namespace) -> CommandResult:
    holds = pump_check(load_automaton(args.automaton), args.length, cap=args.cap)
    verdict = {"length": args.length, "holds": holds}
    return CommandResult(exit_code=0 if holds else 1, output=json.dumps(verdict))


def register(subparsers) -> None:
    parser = subparsers.add_parser("witness", help="Build the unary witness pebble automaton")
    parser.add_argument("--m", type=int, required=True, help="Number of primes")
    parser.add_argument("-o", "--output", default=None)
    parser.set_defaults(handler=witness)

    parser = subparsers.add_parser("pump", help="Check the n -> n + n! pumping implication")
    parser.add_argument("--automaton", required=True)
    parser.add_argument("--length", type=int, required=True)
    parser.add_argument("--cap", type=int, default=None, help="Largest tape length to simulate")
    parser.set_defaults(handler=pump)
