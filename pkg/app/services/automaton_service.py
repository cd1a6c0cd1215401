from collections import Counter
from pathlib import Path
from typing import List, Union
import json
import logging

from pydantic import ValidationError

from app.core.exceptions import InvalidAutomatonError, ParseError
from app.models.alphabet import (
    ENDMARKERS,
    LEFT_END,
    RIGHT_END,
    is_encoded_alphabet,
    is_plain_alphabet,
    is_tape_symbol,
)
from app.models.schemas import AutomatonDescriptor, AutomatonStats, Transition, Violation

logger = logging.getLogger(__name__)


def _transition_order(t: Transition):
    return (t.source, t.read, t.pebble, t.target, t.move, t.carry)


def validate_automaton(descriptor: AutomatonDescriptor) -> List[Violation]:
    """
    Report every broken well-formedness rule. Violations are data: an empty
    list means the descriptor is valid.
    """
    violations: List[Violation] = []

    def flag(code: str, message: str, transition: Transition = None):
        violations.append(Violation(code=code, message=message, transition=transition))

    for token in sorted(descriptor.alphabet):
        if not is_tape_symbol(token) or token in ENDMARKERS:
            flag("invalid-symbol", f"alphabet token {token!r} is not a usable symbol")
    if not is_plain_alphabet(descriptor.alphabet) and not is_encoded_alphabet(descriptor.alphabet):
        flag(
            "malformed-encoded-alphabet",
            "stoppers or boxed symbols require the full encoded alphabet Σ ∪ {>, <} ∪ Σ*",
        )

    if descriptor.initial not in descriptor.states:
        flag("undeclared-state", f"initial state {descriptor.initial!r} is not declared")
    for state in sorted(descriptor.accepting - descriptor.states):
        flag("undeclared-state", f"accepting state {state!r} is not declared")

    readable = descriptor.alphabet | ENDMARKERS
    for t in sorted(descriptor.transitions, key=_transition_order):
        where = t.describe()
        for state in (t.source, t.target):
            if state not in descriptor.states:
                flag("undeclared-state", f"undeclared state {state!r} in {where}", t)
        if t.read not in readable:
            flag("undeclared-symbol", f"symbol {t.read!r} is not in the alphabet in {where}", t)
        if t.read == RIGHT_END and t.move == 1:
            flag("right-move-on-right-end", f"right move on right endmarker: {where}", t)
        if t.read == LEFT_END and t.move == -1:
            flag("left-move-on-left-end", f"left move on left endmarker: {where}", t)
        if not descriptor.is_pebble and t.pebble:
            flag("pebble-in-classical-machine", f"classical machine reads a pebble: {where}", t)
        if not descriptor.is_pebble and t.carry:
            flag("carry-in-classical-machine", f"classical machine moves a pebble: {where}", t)
        if t.carry and not t.pebble:
            flag("carry-without-pebble", f"pebble move without the pebble under the head: {where}", t)
        if t.carry and t.move == 0:
            flag("stationary-carry", f"stationary pebble move is not a move: {where}", t)

    if descriptor.declared_deterministic:
        for key, targets in sorted(descriptor.delta.items(), key=lambda kv: (kv[0].state, kv[0].read, kv[0].pebble_here)):
            if len(targets) > 1:
                flag(
                    "nondeterministic",
                    f"{descriptor.kind} has {len(targets)} moves for ({key.state}, {key.read}"
                    f"{'•' if key.pebble_here else ''})",
                )

    return violations


def require_valid(descriptor: AutomatonDescriptor) -> AutomatonDescriptor:
    violations = validate_automaton(descriptor)
    if violations:
        raise InvalidAutomatonError(violations)
    return descriptor


def is_deterministic(descriptor: AutomatonDescriptor) -> bool:
    images = Counter((t.source, t.read, t.pebble) for t in descriptor.transitions)
    return all(count <= 1 for count in images.values())


def parse_automaton(text: str, validate: bool = True) -> AutomatonDescriptor:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, locus=f"line {e.lineno}, column {e.colno}")
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object", locus="line 1")

    try:
        descriptor = AutomatonDescriptor.model_validate(data)
    except ValidationError as e:
        error = e.errors()[0]
        locus = ".".join(str(part) for part in error["loc"]) or "document"
        raise ParseError(error["msg"], locus=f"field {locus}")

    if validate:
        require_valid(descriptor)
    return descriptor


def serialize_automaton(descriptor: AutomatonDescriptor) -> str:
    payload = {
        "kind": descriptor.kind,
        "alphabet": sorted(descriptor.alphabet),
        "states": sorted(descriptor.states),
        "initial": descriptor.initial,
        "accepting": sorted(descriptor.accepting),
        "transitions": [
            t.model_dump(by_alias=True)
            for t in sorted(descriptor.transitions, key=_transition_order)
        ],
    }
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def load_automaton(path: Union[str, Path], validate: bool = True) -> AutomatonDescriptor:
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise ParseError(str(e), locus=str(path))
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"not valid UTF-8 ({e.reason})", locus=f"{path}, byte {e.start}")
    logger.info(f"Loaded automaton file {path}")
    return parse_automaton(text, validate=validate)


def dump_automaton(descriptor: AutomatonDescriptor, path: Union[str, Path]) -> None:
    Path(path).write_text(serialize_automaton(descriptor), encoding="utf-8")
    logger.info(f"Wrote {descriptor.kind} with {len(descriptor.states)} states to {path}")


def stats(descriptor: AutomatonDescriptor) -> AutomatonStats:
    violations = validate_automaton(descriptor)
    return AutomatonStats(
        kind=descriptor.kind,
        states=len(descriptor.states),
        accepting=len(descriptor.accepting),
        transitions=len(descriptor.transitions),
        alphabet_size=len(descriptor.alphabet),
        declared_deterministic=descriptor.declared_deterministic,
        deterministic=is_deterministic(descriptor),
        valid=not violations,
        violations=violations,
    )
