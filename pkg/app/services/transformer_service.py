"""
Two-way to one-way transformers used as the pluggable f of the lifts.

The shipped baseline is the classical table construction: after reading a
prefix, a one-way machine remembers
  - front: states in which the two-way machine first arrives past the prefix,
  - table: for each state p, the states in which a left excursion started by
    re-entering the prefix's last cell in p comes back out on the right,
  - exits: states p from which such an excursion can reach acceptance.
This is exponential in the number of states and serves correctness only.
"""
from collections import deque
from typing import Callable, Dict, FrozenSet, List, Literal, NamedTuple, Optional, Set, Tuple, Union
import logging

from pydantic import BaseModel, ConfigDict

from app.core.config import get_settings
from app.core.exceptions import BudgetExceededError, ConstructionError, InputError, UsageError
from app.models.alphabet import LEFT_END, RIGHT_END
from app.models.schemas import AutomatonDescriptor, Transition
from app.services.automaton_service import is_deterministic, require_valid

logger = logging.getLogger(__name__)

ACCEPTED = "accepted"
REJECTED = "rejected"
DEAD = "dead"

TransformerKind = Literal["determinizer", "complementer"]


class TwoWayTransformer(BaseModel):
    """A named map between classical automata together with its declared state bound f(n)."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    kind: TransformerKind
    transform: Callable[[AutomatonDescriptor], AutomatonDescriptor]
    state_bound: Callable[[int], int]

    def __call__(self, descriptor: AutomatonDescriptor) -> AutomatonDescriptor:
        return self.transform(descriptor)


class Summary(NamedTuple):
    front: FrozenSet[int]
    table: Tuple[FrozenSet[int], ...]
    exits: FrozenSet[int]


Verdict = Union[Summary, str]


class TableConstruction:
    """Builds the one-way deterministic machine for a classical 2NFA, state by state."""

    def __init__(self, descriptor: AutomatonDescriptor, cap: Optional[int] = None):
        require_valid(descriptor)
        if descriptor.is_pebble:
            raise InputError(f"Table construction expects a classical automaton, got {descriptor.kind}")
        self.descriptor = descriptor
        self.cap = cap if cap is not None else get_settings().TABLE_STATE_CAP
        self.names = sorted(descriptor.states)
        index = {name: i for i, name in enumerate(self.names)}
        self.accepting = frozenset(index[q] for q in descriptor.accepting)
        self.moves: Dict[Tuple[int, str], List[Tuple[int, int]]] = {}
        for t in descriptor.transitions:
            self.moves.setdefault((index[t.source], t.read), []).append((index[t.target], t.move))
        self.initial = index[descriptor.initial]

    def extend(self, summary: Summary, symbol: str) -> Verdict:
        """Summary of the prefix extended by one cell holding symbol, or a sentinel verdict."""
        table: List[FrozenSet[int]] = []
        exits: Set[int] = set()
        for p in range(len(self.names)):
            closure = {p}
            stack = [p]
            can_accept = False
            rightward: Set[int] = set()
            while stack:
                s = stack.pop()
                if s in self.accepting:
                    can_accept = True
                for target, direction in self.moves.get((s, symbol), ()):
                    if direction == 1:
                        rightward.add(target)
                        continue
                    if direction == 0:
                        returns = (target,)
                    else:
                        if target in summary.exits:
                            can_accept = True
                        returns = summary.table[target] if summary.table else ()
                    for r in returns:
                        if r not in closure:
                            closure.add(r)
                            stack.append(r)
            table.append(frozenset(rightward))
            if can_accept:
                exits.add(p)

        if summary.front & exits:
            return ACCEPTED
        if symbol == RIGHT_END:
            return REJECTED
        front = frozenset().union(*(table[r] for r in summary.front))
        if not front:
            return DEAD
        return Summary(front=front, table=tuple(table), exits=frozenset(exits))

    def build(self, complement: bool = False) -> AutomatonDescriptor:
        alphabet = sorted(self.descriptor.alphabet)
        start = Summary(front=frozenset({self.initial}), table=(), exits=frozenset())
        transitions: List[Transition] = []
        sentinels: Set[str] = set()
        states: Set[str] = set()

        if self.initial in self.accepting:
            sentinels.add(ACCEPTED)
            start_name = ACCEPTED
        else:
            start_name = "t0"
            ids: Dict[Summary, str] = {}
            queue: deque = deque()

            def name_of(verdict: Verdict) -> str:
                if isinstance(verdict, str):
                    sentinels.add(verdict)
                    return verdict
                if verdict not in ids:
                    if len(ids) + 1 + len(sentinels) >= self.cap:
                        logger.error(f"Table construction passed {self.cap} states")
                        raise BudgetExceededError("table state", len(ids) + 2 + len(sentinels), self.cap)
                    ids[verdict] = f"t{len(ids) + 1}"
                    queue.append(verdict)
                return ids[verdict]

            transitions.append(Transition(source=start_name, read=LEFT_END, target=name_of(self.extend(start, LEFT_END)), move=1))
            while queue:
                summary = queue.popleft()
                source = ids[summary]
                for symbol in alphabet:
                    transitions.append(Transition(source=source, read=symbol, target=name_of(self.extend(summary, symbol)), move=1))
                verdict = self.extend(summary, RIGHT_END)
                transitions.append(Transition(source=source, read=RIGHT_END, target=name_of(verdict), move=0))
            states = {start_name, *ids.values()}

        if ACCEPTED in sentinels:
            transitions.extend(
                Transition(source=ACCEPTED, read=symbol, target=ACCEPTED, move=1) for symbol in [LEFT_END, *alphabet]
            )
        if DEAD in sentinels:
            transitions.extend(Transition(source=DEAD, read=symbol, target=DEAD, move=1) for symbol in alphabet)
            transitions.append(Transition(source=DEAD, read=RIGHT_END, target=REJECTED, move=0))
            sentinels.add(REJECTED)

        states |= sentinels
        verdict_state = REJECTED if complement else ACCEPTED
        result = AutomatonDescriptor(
            kind="2dfa",
            alphabet=self.descriptor.alphabet,
            states=frozenset(states),
            initial=start_name,
            accepting=frozenset({verdict_state} & states),
            transitions=frozenset(transitions),
        )
        logger.info(f"Table construction: {len(self.names)} -> {len(result.states)} states")
        return result


def table_state_bound(n: int) -> int:
    """front, table and exits for n states, plus the start state and three sentinels."""
    return 2 ** (n * n + 2 * n) + 4


def shepherdson_to_one_way(descriptor: AutomatonDescriptor, cap: Optional[int] = None) -> AutomatonDescriptor:
    return TableConstruction(descriptor, cap).build()


def shepherdson_complement(descriptor: AutomatonDescriptor, cap: Optional[int] = None) -> AutomatonDescriptor:
    return TableConstruction(descriptor, cap).build(complement=True)


def complement_2dfa_baseline(descriptor: AutomatonDescriptor, cap: Optional[int] = None) -> AutomatonDescriptor:
    if not is_deterministic(descriptor):
        raise InputError("complement_2dfa_baseline expects a deterministic automaton")
    return shepherdson_complement(descriptor, cap)


def _identity(descriptor: AutomatonDescriptor) -> AutomatonDescriptor:
    if descriptor.is_pebble:
        raise ConstructionError("identity determinizer expects a classical automaton")
    if not is_deterministic(descriptor):
        raise ConstructionError("identity determinizer received a nondeterministic automaton")
    return descriptor.model_copy(update={"kind": "2dfa"})


identity_determinizer = TwoWayTransformer(
    name="identity", kind="determinizer", transform=_identity, state_bound=lambda n: n
)

shepherdson_determinizer = TwoWayTransformer(
    name="shepherdson", kind="determinizer", transform=shepherdson_to_one_way, state_bound=table_state_bound
)

shepherdson_complementer = TwoWayTransformer(
    name="shepherdson-complement", kind="complementer", transform=shepherdson_complement, state_bound=table_state_bound
)

baseline_2dfa_complementer = TwoWayTransformer(
    name="complement-2dfa-baseline", kind="complementer", transform=complement_2dfa_baseline, state_bound=table_state_bound
)

PLUGINS: Dict[str, Dict[str, TwoWayTransformer]] = {
    "baseline": {
        "determinizer": shepherdson_determinizer,
        "complementer": shepherdson_complementer,
        "2dfa-complementer": baseline_2dfa_complementer,
    },
    "identity": {
        "determinizer": identity_determinizer,
    },
}


def get_transformer(plugin: str, role: str) -> TwoWayTransformer:
    try:
        return PLUGINS[plugin][role]
    except KeyError:
        raise UsageError(f"Plugin {plugin!r} provides no {role}; available: {', '.join(sorted(PLUGINS))}")
