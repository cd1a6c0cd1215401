from random import Random
from typing import Dict, Iterable, List, Optional, Sequence, Tuple
import logging

from app.core.config import get_settings
from app.models.alphabet import LEFT_END, RIGHT_END
from app.models.schemas import (
    DETERMINISTIC_KINDS,
    PEBBLE_KINDS,
    AutomatonDescriptor,
    SweepFailure,
    SweepReport,
    Transition,
)
from app.services.automaton_service import is_deterministic
from app.services.encoding_service import encode
from app.services.simulation_service import Simulator, bounded_equiv, enumerate_words
from app.services.translation_service import classical_to_pebble, pebble_to_classical
from app.services.witness_service import witness_pebble_dfa

logger = logging.getLogger(__name__)

ACCEPTING_PROBABILITY = 0.3
# redraws per corpus slot before settling for a machine with a trivial language
MAX_DRAWS = 50


def _allowed_moves(symbol: str, pebble_here: bool) -> List[Tuple[int, bool]]:
    directions = [
        d for d in (-1, 0, 1)
        if not (symbol == RIGHT_END and d == 1) and not (symbol == LEFT_END and d == -1)
    ]
    moves = [(d, False) for d in directions]
    if pebble_here:
        moves += [(d, True) for d in directions if d != 0]
    return moves


def random_automaton(
    rng: Random,
    kind: str,
    n_states: int,
    alphabet: Iterable[str],
    density: float = 0.5,
    max_targets: int = 2,
) -> AutomatonDescriptor:
    """
    A well-formed automaton of the given kind; every draw comes from rng.
    The initial state never accepts, and with two or more states at least one other state does.
    """
    states = [f"s{i}" for i in range(n_states)]
    symbols = sorted(alphabet) + [LEFT_END, RIGHT_END]
    pebble_flags = (False, True) if kind in PEBBLE_KINDS else (False,)
    deterministic = kind in DETERMINISTIC_KINDS

    transitions = []
    for state in states:
        for symbol in symbols:
            for here in pebble_flags:
                if rng.random() >= density:
                    continue
                moves = _allowed_moves(symbol, here)
                for _ in range(1 if deterministic else rng.randint(1, max_targets)):
                    direction, carry = rng.choice(moves)
                    transitions.append(
                        Transition(
                            source=state, read=symbol, pebble=here,
                            target=rng.choice(states), move=direction, carry=carry,
                        )
                    )

    accepting = {q for q in states[1:] if rng.random() < ACCEPTING_PROBABILITY}
    if not accepting and n_states > 1:
        accepting.add(rng.choice(states[1:]))

    return AutomatonDescriptor(
        kind=kind,
        alphabet=frozenset(alphabet),
        states=frozenset(states),
        initial=states[0],
        accepting=frozenset(accepting),
        transitions=frozenset(transitions),
    )


def is_nontrivial(descriptor: AutomatonDescriptor, max_len: Optional[int] = None) -> bool:
    """Some word up to max_len is accepted and some other is rejected."""
    if max_len is None:
        max_len = 6 if len(descriptor.alphabet) == 1 else 4
    simulator = Simulator(descriptor)
    verdicts = {simulator.accepts(word) for word in enumerate_words(sorted(descriptor.alphabet), max_len)}
    return len(verdicts) == 2


def random_corpus(
    seed: int,
    count: int,
    kinds: Sequence[str] = ("pebble-2nfa", "pebble-2dfa"),
    max_states: int = 4,
    alphabets: Sequence[Sequence[str]] = (("a",), ("a", "b")),
    density: float = 0.8,
) -> List[AutomatonDescriptor]:
    """
    count machines with a non-trivial language on short words. Each slot is
    redrawn up to MAX_DRAWS times; one-state machines never qualify.
    """
    rng = Random(seed)
    corpus = []
    trivial = 0
    for _ in range(count):
        kind = rng.choice(list(kinds))
        n_states = rng.randint(min(2, max_states), max_states)
        alphabet = rng.choice(list(alphabets))
        for _ in range(MAX_DRAWS):
            descriptor = random_automaton(rng, kind, n_states, alphabet, density)
            if is_nontrivial(descriptor):
                break
        else:
            trivial += 1
        corpus.append(descriptor)
    if trivial:
        logger.warning(f"Corpus seed={seed}: {trivial} of {count} machines have a trivial language")
    return corpus


def _machine(kind: str, alphabet: Iterable[str], accepting: Iterable[str], rules) -> AutomatonDescriptor:
    transitions = frozenset(
        Transition(source=s, read=r, pebble=h, target=t, move=d, carry=c) for s, r, h, t, d, c in rules
    )
    states = {t.source for t in transitions} | {t.target for t in transitions}
    return AutomatonDescriptor(
        kind=kind,
        alphabet=frozenset(alphabet),
        states=frozenset(states),
        initial=rules[0][0],
        accepting=frozenset(accepting),
        transitions=transitions,
    )


def fixture_corpus() -> Dict[str, AutomatonDescriptor]:
    """Small pebble machines that between them use every rule family of both translations."""
    return {
        "witness-1": witness_pebble_dfa(1),
        "witness-2": witness_pebble_dfa(2),
        # walks right leaving the pebble on the left endmarker
        "sweep-right": _machine("pebble-2dfa", ["a"], ["f"], [
            ("s", LEFT_END, True, "s", 1, False),
            ("s", "a", False, "s", 1, False),
            ("s", RIGHT_END, False, "f", 0, False),
        ]),
        # drags the pebble to the right endmarker and back
        "pebble-shuttle": _machine("pebble-2dfa", ["a"], ["f"], [
            ("s0", LEFT_END, True, "s0", 1, True),
            ("s0", "a", True, "s0", 1, True),
            ("s0", RIGHT_END, True, "s1", -1, True),
            ("s1", "a", True, "s2", -1, True),
            ("s1", LEFT_END, True, "f", 0, False),
            ("s2", LEFT_END, True, "f", 0, False),
            ("s2", "a", True, "f", 0, False),
        ]),
        "contains-a": _machine("pebble-2nfa", ["a", "b"], ["f"], [
            ("s", LEFT_END, True, "s", 1, False),
            ("s", "a", False, "s", 1, False),
            ("s", "a", False, "f", 0, False),
            ("s", "b", False, "s", 1, False),
        ]),
    }


def sweep(
    seed: Optional[int] = None,
    count: int = 20,
    max_states: int = 3,
    max_len: int = 5,
    alphabets: Sequence[Sequence[str]] = (("a",), ("a", "b")),
) -> SweepReport:
    """Check both translations on a seeded random corpus: equivalence, state bounds and determinism."""
    if seed is None:
        seed = get_settings().SEED
    failures: List[SweepFailure] = []

    for index, M in enumerate(random_corpus(seed, count, max_states=max_states, alphabets=alphabets)):
        classical, first = pebble_to_classical(M)
        back, second = classical_to_pebble(classical)

        if not first.bound_satisfied or not second.bound_satisfied:
            failures.append(SweepFailure(machine=index, check="state-bound", word=()))
        if is_deterministic(M) and not (first.determinism_out and second.determinism_out):
            failures.append(SweepFailure(machine=index, check="determinism", word=()))

        word = bounded_equiv(M, classical, max_len, right_transform=encode)
        if word is not None:
            failures.append(SweepFailure(machine=index, check="pebble_to_classical", word=word))
        word = bounded_equiv(M, back, max_len)
        if word is not None:
            failures.append(SweepFailure(machine=index, check="classical_to_pebble", word=word))

    report = SweepReport(seed=seed, machines=count, max_len=max_len, failures=failures)
    logger.info(f"Sweep seed={seed}: {count} machines, {len(failures)} failures")
    return report
