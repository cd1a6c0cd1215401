from collections import deque
from itertools import product
from typing import Callable, Dict, FrozenSet, Iterator, Optional, Sequence, Tuple
import logging

from app.core.config import get_settings
from app.core.exceptions import BudgetExceededError, InputError
from app.models.alphabet import LEFT_END, RIGHT_END
from app.models.schemas import (
    AnyConfiguration,
    AutomatonDescriptor,
    Configuration,
    PebbleConfiguration,
    Tape,
    TraceResult,
)
from app.services.automaton_service import is_deterministic, require_valid

logger = logging.getLogger(__name__)

# (state, head, pebble); pebble is None for classical machines
RawConfiguration = Tuple[str, int, Optional[int]]
Word = Tuple[str, ...]


class Simulator:
    """
    Exact acceptance over the finite configuration graph of one automaton.
    δ is compiled once into a lookup table keyed by (state, symbol, pebble_here).
    """

    def __init__(self, descriptor: AutomatonDescriptor):
        self.descriptor = require_valid(descriptor)
        self.pebble = descriptor.is_pebble
        self.deterministic = is_deterministic(descriptor)
        self.accepting = descriptor.accepting
        index: Dict[Tuple[str, str, bool], list] = {}
        for t in descriptor.transitions:
            index.setdefault((t.source, t.read, t.pebble), []).append((t.target, t.move, t.carry))
        self._index = {key: tuple(sorted(moves)) for key, moves in index.items()}

    def tape(self, word: Sequence[str]) -> Tuple[str, ...]:
        for position, symbol in enumerate(word):
            if symbol not in self.descriptor.alphabet:
                raise InputError(f"Symbol {symbol!r} at position {position} is not in the alphabet")
        return (LEFT_END, *word, RIGHT_END)

    def initial(self) -> RawConfiguration:
        return (self.descriptor.initial, 0, 0 if self.pebble else None)

    def successors(self, cells: Tuple[str, ...], config: RawConfiguration) -> Iterator[RawConfiguration]:
        state, head, pebble = config
        here = head == pebble
        for target, direction, carry in self._index.get((state, cells[head], here), ()):
            moved = head + direction
            yield (target, moved, moved if carry else pebble)

    def explore(self, word: Sequence[str]) -> Tuple[bool, int]:
        """Breadth-first closure from the initial configuration; returns (accepted, visited)."""
        cells = self.tape(word)
        start = self.initial()
        if start[0] in self.accepting:
            return True, 1
        seen = {start}
        queue = deque([start])
        while queue:
            config = queue.popleft()
            for succ in self.successors(cells, config):
                if succ in seen:
                    continue
                if succ[0] in self.accepting:
                    return True, len(seen) + 1
                seen.add(succ)
                queue.append(succ)
        return False, len(seen)

    def accepts(self, word: Sequence[str]) -> bool:
        return self.explore(word)[0]

    def step(self, tape: Tape, configuration: AnyConfiguration) -> FrozenSet[AnyConfiguration]:
        cells = self.tape(tape.word)
        return frozenset(self._as_model(c) for c in self.successors(cells, self._as_raw(configuration, len(cells))))

    def trace(self, word: Sequence[str], max_steps: Optional[int] = None) -> TraceResult:
        if max_steps is None:
            max_steps = get_settings().TRACE_MAX_STEPS
        if max_steps < 0:
            raise InputError("max_steps must be non-negative")
        cells = self.tape(word)
        start = self.initial()

        if self.deterministic:
            run = [start]
            seen = {start: 0}
            outcome, loop_start = "max-steps", None
            for _ in range(max_steps):
                following = next(self.successors(cells, run[-1]), None)
                if following is None:
                    outcome = "halted"
                    break
                if following in seen:
                    outcome, loop_start = "loop", seen[following]
                    break
                seen[following] = len(run)
                run.append(following)
            layers = [[c] for c in run]
        else:
            layers = [[start]]
            seen = {start}
            outcome, loop_start = "max-steps", None
            for _ in range(max_steps):
                fresh = []
                for config in layers[-1]:
                    for succ in self.successors(cells, config):
                        if succ not in seen:
                            seen.add(succ)
                            fresh.append(succ)
                if not fresh:
                    outcome = "exhausted"
                    break
                layers.append(sorted(fresh, key=_order))

        return TraceResult(
            deterministic=self.deterministic,
            layers=[[self._as_model(c) for c in layer] for layer in layers],
            outcome=outcome,
            loop_start=loop_start,
            accepted=any(c[0] in self.accepting for layer in layers for c in layer),
        )

    def _as_model(self, config: RawConfiguration) -> AnyConfiguration:
        state, head, pebble = config
        if pebble is None:
            return Configuration(state=state, head=head)
        return PebbleConfiguration(state=state, head=head, pebble=pebble)

    def _as_raw(self, configuration: AnyConfiguration, width: int) -> RawConfiguration:
        pebble = getattr(configuration, "pebble", None)
        if self.pebble and pebble is None:
            raise InputError("A pebble automaton needs a configuration with a pebble position")
        if not self.pebble and pebble is not None:
            raise InputError("A classical automaton has no pebble position")
        for position in (configuration.head, pebble):
            if position is not None and position >= width:
                raise InputError(f"Position {position} is outside 0..{width - 1}")
        return (configuration.state, configuration.head, pebble)


def _order(config: RawConfiguration):
    state, head, pebble = config
    return (state, head, -1 if pebble is None else pebble)


def step(descriptor: AutomatonDescriptor, tape: Tape, configuration: AnyConfiguration) -> FrozenSet[AnyConfiguration]:
    return Simulator(descriptor).step(tape, configuration)


def accepts(descriptor: AutomatonDescriptor, word: Sequence[str]) -> bool:
    return Simulator(descriptor).accepts(word)


def trace(descriptor: AutomatonDescriptor, word: Sequence[str], max_steps: Optional[int] = None) -> TraceResult:
    return Simulator(descriptor).trace(word, max_steps)


def enumerate_words(symbols: Sequence[str], max_len: int) -> Iterator[Word]:
    """Length-then-lexicographic order over the given symbol ordering."""
    for length in range(max_len + 1):
        yield from product(symbols, repeat=length)


def bounded_equiv(
    left: AutomatonDescriptor,
    right: AutomatonDescriptor,
    max_len: int,
    right_transform: Optional[Callable[[Word], Sequence[str]]] = None,
    symbols: Optional[Sequence[str]] = None,
    budget: Optional[int] = None,
) -> Optional[Word]:
    """
    Smallest word w (length first, then lexicographic) with |w| <= max_len on
    which left and right (after right_transform) disagree, or None.
    """
    if max_len < 0:
        raise InputError("max_len must be non-negative")
    symbols = tuple(symbols) if symbols is not None else tuple(sorted(left.alphabet))
    if budget is None:
        budget = get_settings().EQUIV_WORD_BUDGET
    total, layer = 0, 1
    for _ in range(max_len + 1):
        total += layer
        if total > budget:
            logger.error(f"Refusing to enumerate more than {budget} words up to length {max_len}")
            raise BudgetExceededError("word enumeration", total, budget)
        layer *= len(symbols)

    left_sim = Simulator(left)
    right_sim = Simulator(right)
    for word in enumerate_words(symbols, max_len):
        mapped = word if right_transform is None else right_transform(word)
        mapped = getattr(mapped, "tokens", mapped)
        if left_sim.accepts(word) != right_sim.accepts(mapped):
            logger.info(f"Counterexample of length {len(word)}: {' '.join(word) or 'ε'}")
            return word
    return None
