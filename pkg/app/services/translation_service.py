"""
The pebble/classical translations.

pebble_to_classical turns a pebble automaton M into a classical one running on
encode(w): segment p of the encoded word stands for the pebble sitting on cell p,
and a pebble move becomes a sweep to the neighbouring segment.

classical_to_pebble goes the other way for automata over an encoded alphabet:
the pebble position selects the segment, and leaving a segment through a
stopper relocates the pebble by one cell.

Both constructions create copy states lazily, only for states some rule
actually targets, and keep determinism.
"""
from collections import Counter
from typing import Collection, Dict, Iterable, List, Set, Tuple
import logging

from app.core.exceptions import ConstructionError, InputError
from app.models.alphabet import (
    LEFT_END,
    LEFT_STOPPER,
    RIGHT_END,
    RIGHT_STOPPER,
    boxed,
    encoded_alphabet,
    is_encoded_alphabet,
    plain_part,
    symbol_kind,
    unboxed,
)
from app.models.schemas import AutomatonDescriptor, Transition, TranslationReport
from app.services.automaton_service import is_deterministic, require_valid

logger = logging.getLogger(__name__)

PEBBLE_TO_CLASSICAL_FAMILIES = (
    "plain",
    "left-end",
    "right-end",
    "boxed",
    "pebbled-left-end",
    "pebbled-right-end",
    "carry-right",
    "carry-right-from-left-end",
    "carry-left",
    "carry-left-from-right-end",
)

CLASSICAL_TO_PEBBLE_FAMILIES = (
    "plain",
    "left-stopper",
    "right-stopper",
    "boxed",
    "left-end",
    "right-end",
    "cross-right",
    "cross-left",
)

# (source, read, pebble_here, target, move, carry)
Rule = Tuple[str, str, bool, str, int, bool]


class CopyNamer:
    """
    Allocates copy-state names q+suffix. A name already in use gets its base
    parenthesised, "(q)@-1", as often as needed.
    """

    def __init__(self, taken: Iterable[str]):
        self.taken: Set[str] = set(taken)
        self.names: Dict[Tuple[str, str], str] = {}

    def allocate(self, base: str, suffix: str) -> str:
        if (base, suffix) in self.names:
            return self.names[(base, suffix)]
        stem = base
        name = f"{stem}{suffix}"
        while name in self.taken:
            stem = f"({stem})"
            name = f"{stem}{suffix}"
        self.taken.add(name)
        self.names[(base, suffix)] = name
        return name


def _check_omit(omit: Collection[str], families: Tuple[str, ...]) -> frozenset:
    unknown = sorted(set(omit) - set(families))
    if unknown:
        raise InputError(f"Unknown rule families: {', '.join(unknown)}")
    return frozenset(omit)


def _assemble(
    kind: str,
    alphabet: Iterable[str],
    states: Iterable[str],
    source: AutomatonDescriptor,
    rules: List[Rule],
) -> AutomatonDescriptor:
    return AutomatonDescriptor(
        kind=kind,
        alphabet=frozenset(alphabet),
        states=frozenset(states),
        initial=source.initial,
        accepting=source.accepting,
        transitions=frozenset(
            Transition(source=s, read=r, pebble=p, target=t, move=d, carry=c)
            for s, r, p, t, d, c in rules
        ),
    )


def _check_determinism(source: AutomatonDescriptor, result: AutomatonDescriptor, construction: str) -> None:
    if is_deterministic(source) and not is_deterministic(result):
        logger.error(f"{construction} produced a nondeterministic machine from a deterministic one")
        raise ConstructionError(f"{construction} lost determinism")


def _p2c_family(t: Transition) -> str:
    if t.carry:
        if t.move == 1:
            return "carry-right-from-left-end" if t.read == LEFT_END else "carry-right"
        return "carry-left-from-right-end" if t.read == RIGHT_END else "carry-left"
    if t.read == LEFT_END:
        return "pebbled-left-end" if t.pebble else "left-end"
    if t.read == RIGHT_END:
        return "pebbled-right-end" if t.pebble else "right-end"
    return "boxed" if t.pebble else "plain"


def _p2c_read(t: Transition) -> str:
    if t.pebble:
        return t.read if t.read in (LEFT_END, RIGHT_END) else boxed(t.read)
    if t.read == LEFT_END:
        return LEFT_STOPPER
    if t.read == RIGHT_END:
        return RIGHT_STOPPER
    return t.read


def pebble_to_classical(
    M: AutomatonDescriptor, omit: Collection[str] = ()
) -> Tuple[AutomatonDescriptor, TranslationReport]:
    """
    Classical M′ with accepts(M′, encode(w)) = accepts(M, w), at most 3m states.
    omit drops whole rule families, which only makes sense for mutation tests.
    """
    require_valid(M)
    if not M.is_pebble:
        raise InputError(f"pebble_to_classical expects a pebble automaton, got {M.kind}")
    omitted = _check_omit(omit, PEBBLE_TO_CLASSICAL_FAMILIES)

    sigma = sorted(M.alphabet)
    audit: Counter = Counter()
    rules: List[Rule] = []
    # copy suffix -> targets needing that copy
    wanted: Dict[str, Set[str]] = {"@+1": set(), "@-1": set()}
    carries: List[Tuple[Transition, str]] = []

    for t in sorted(M.transitions, key=lambda t: (t.source, t.read, t.pebble, t.target, t.move, t.carry)):
        family = _p2c_family(t)
        if family in omitted:
            continue
        audit[family] += 1
        if t.carry:
            suffix = "@+1" if t.move == 1 else "@-1"
            wanted[suffix].add(t.target)
            carries.append((t, suffix))
        else:
            rules.append((t.source, _p2c_read(t), False, t.target, t.move, False))

    namer = CopyNamer(M.states)
    for suffix in ("@+1", "@-1"):
        for target in sorted(wanted[suffix]):
            namer.allocate(target, suffix)

    for t, suffix in carries:
        rules.append((t.source, _p2c_read(t), False, namer.allocate(t.target, suffix), t.move, False))

    boxed_symbols = [boxed(a) for a in sigma]
    sweep_over = sigma + [LEFT_STOPPER, RIGHT_STOPPER]
    for suffix, direction, stop_end in (("@+1", 1, RIGHT_END), ("@-1", -1, LEFT_END)):
        for target in sorted(wanted[suffix]):
            copy = namer.allocate(target, suffix)
            audit[f"copies{suffix}"] += 1
            rules.extend((copy, x, False, copy, direction, False) for x in sweep_over)
            rules.extend((copy, x, False, target, 0, False) for x in boxed_symbols + [stop_end])

    result = _assemble(
        "2dfa" if M.kind == "pebble-2dfa" else "2nfa",
        encoded_alphabet(M.alphabet),
        set(M.states) | set(namer.names.values()),
        M,
        rules,
    )
    _check_determinism(M, result, "pebble_to_classical")

    m = len(M.states)
    report = TranslationReport(
        construction="pebble_to_classical",
        input_states=m,
        output_states=len(result.states),
        bound=3 * m,
        determinism_in=is_deterministic(M),
        determinism_out=is_deterministic(result),
        rule_audit=dict(sorted(audit.items())),
    )
    logger.info(f"pebble_to_classical: {m} -> {report.output_states} states (bound {report.bound})")
    return result, report


def _c2p_family(t: Transition) -> str:
    kind = symbol_kind(t.read)
    if kind == "left-stopper":
        return "cross-left" if t.move == -1 else "left-stopper"
    if kind == "right-stopper":
        return "cross-right" if t.move == 1 else "right-stopper"
    return kind


def classical_to_pebble(
    N: AutomatonDescriptor, omit: Collection[str] = ()
) -> Tuple[AutomatonDescriptor, TranslationReport]:
    """
    Pebble N′ with accepts(N′, w) = accepts(N, encode(w)), at most 5n states.
    Moving right off the right stopper walks back to the pebble, advances it and
    returns to the left endmarker; moving left off the left stopper is the mirror.
    """
    require_valid(N)
    if N.is_pebble or not is_encoded_alphabet(N.alphabet):
        raise InputError("classical_to_pebble expects a classical automaton over an encoded alphabet")
    omitted = _check_omit(omit, CLASSICAL_TO_PEBBLE_FAMILIES)

    sigma = sorted(plain_part(N.alphabet))
    audit: Counter = Counter()
    rules: List[Rule] = []
    crossings: List[Tuple[Transition, str]] = []
    wanted: Dict[str, Set[str]] = {"@-1": set(), "@+1": set()}

    for t in sorted(N.transitions, key=lambda t: (t.source, t.read, t.target, t.move)):
        family = _c2p_family(t)
        if family in omitted:
            continue
        audit[family] += 1
        if family == "plain":
            rules.append((t.source, t.read, False, t.target, t.move, False))
        elif family == "left-stopper":
            rules.append((t.source, LEFT_END, False, t.target, t.move, False))
        elif family == "right-stopper":
            rules.append((t.source, RIGHT_END, False, t.target, t.move, False))
        elif family == "boxed":
            rules.append((t.source, unboxed(t.read), True, t.target, t.move, False))
        elif family == "left-end":
            rules.append((t.source, LEFT_END, True, t.target, t.move, False))
        elif family == "right-end":
            rules.append((t.source, RIGHT_END, True, t.target, t.move, False))
        else:
            suffix = "@-1" if family == "cross-right" else "@+1"
            wanted[suffix].add(t.target)
            crossings.append((t, suffix))

    namer = CopyNamer(N.states)
    for first, second in (("@-1", "@-2"), ("@+1", "@+2")):
        for target in sorted(wanted[first]):
            namer.allocate(target, first)
            namer.allocate(target, second)

    for t, suffix in crossings:
        if suffix == "@-1":
            rules.append((t.source, RIGHT_END, False, namer.allocate(t.target, "@-1"), -1, False))
        else:
            rules.append((t.source, LEFT_END, False, namer.allocate(t.target, "@+1"), 1, False))

    for target in sorted(wanted["@-1"]):
        seek = namer.allocate(target, "@-1")
        back = namer.allocate(target, "@-2")
        audit["copies@-1"] += 1
        audit["copies@-2"] += 1
        rules.extend((seek, a, False, seek, -1, False) for a in sigma)
        rules.extend((seek, x, True, back, 1, True) for x in sigma + [LEFT_END])
        rules.extend((back, x, True, back, -1, False) for x in sigma + [RIGHT_END])
        rules.extend((back, a, False, back, -1, False) for a in sigma)
        rules.append((back, LEFT_END, False, target, 0, False))

    for target in sorted(wanted["@+1"]):
        seek = namer.allocate(target, "@+1")
        back = namer.allocate(target, "@+2")
        audit["copies@+1"] += 1
        audit["copies@+2"] += 1
        rules.extend((seek, a, False, seek, 1, False) for a in sigma)
        rules.extend((seek, x, True, back, -1, True) for x in sigma + [RIGHT_END])
        rules.extend((back, x, True, back, 1, False) for x in sigma + [LEFT_END])
        rules.extend((back, a, False, back, 1, False) for a in sigma)
        rules.append((back, RIGHT_END, False, target, 0, False))

    result = _assemble(
        "pebble-2dfa" if N.kind == "2dfa" else "pebble-2nfa",
        sigma,
        set(N.states) | set(namer.names.values()),
        N,
        rules,
    )
    _check_determinism(N, result, "classical_to_pebble")

    n = len(N.states)
    report = TranslationReport(
        construction="classical_to_pebble",
        input_states=n,
        output_states=len(result.states),
        bound=5 * n,
        determinism_in=is_deterministic(N),
        determinism_out=is_deterministic(result),
        rule_audit=dict(sorted(audit.items())),
    )
    logger.info(f"classical_to_pebble: {n} -> {report.output_states} states (bound {report.bound})")
    return result, report
