"""
The unary witness family {1^l : l < p_1·…·p_m} and the pumping check behind
its lower bound for classical machines.
"""
from math import prod
from typing import List, Optional
import logging

from app.core.config import get_settings
from app.core.exceptions import BudgetExceededError, InputError
from app.models.alphabet import LEFT_END, RIGHT_END
from app.models.schemas import AutomatonDescriptor, Transition, WitnessSpec
from app.services.simulation_service import Simulator

logger = logging.getLogger(__name__)

UNARY = "1"
INITIAL = "qI"
FINAL = "qF"


def primes(m: int) -> List[int]:
    if m < 1:
        raise InputError("m must be at least 1")
    found: List[int] = []
    candidate = 2
    while len(found) < m:
        if all(candidate % p for p in found if p * p <= candidate):
            found.append(candidate)
        candidate += 1
    return found


def witness_spec(m: int) -> WitnessSpec:
    ps = primes(m)
    return WitnessSpec(m=m, primes=ps, product=prod(ps), target_states=2 + sum(ps))


def witness_membership(length: int, m: int) -> bool:
    return length < prod(primes(m))


def _counter(p: int, j: int) -> str:
    return f"mod{p}:{j}"


def witness_pebble_dfa(m: int) -> AutomatonDescriptor:
    """
    Deterministic pebble automaton with 2 + p_1 + … + p_m states for the witness language.

    The pebble's distance x from the left endmarker is the current candidate.
    For each prime in turn the head walks between pebble and endmarker counting
    x modulo that prime, right to left for odd i and left to right for even i.
    A non-dividing prime sends control back to qI, which finds the pebble and
    advances it; x divisible by every prime halts without accepting. The pebble
    reaching the right endmarker means no multiple of the product fits, so qF.
    """
    ps = primes(m)
    rules = [
        (INITIAL, LEFT_END, True, _counter(ps[0], 0), 1, True),
        (INITIAL, UNARY, False, INITIAL, 1, False),
        (INITIAL, UNARY, True, _counter(ps[0], 0), 1, True),
        (_counter(ps[0], 0), RIGHT_END, True, FINAL, 0, False),
        (_counter(ps[0], 0), UNARY, True, _counter(ps[0], 1), -1, False),
    ]

    for i, p in enumerate(ps, start=1):
        last = i == m
        leftward = i % 2 == 1
        direction = -1 if leftward else 1
        for j in range(p):
            state = _counter(p, j)
            rules.append((state, UNARY, False, _counter(p, (j + 1) % p), direction, False))
            # arrival at the endmarker (odd i) or at the pebble (even i)
            arrival = (LEFT_END, False) if leftward else (UNARY, True)
            if j != 0:
                rules.append((state, *arrival, INITIAL, 1 if leftward else 0, False))
            elif not last:
                rules.append((state, *arrival, _counter(ps[i], 1), -direction, False))

    descriptor = AutomatonDescriptor(
        kind="pebble-2dfa",
        alphabet=frozenset({UNARY}),
        states=frozenset({INITIAL, FINAL} | {_counter(p, j) for p in ps for j in range(p)}),
        initial=INITIAL,
        accepting=frozenset({FINAL}),
        transitions=frozenset(
            Transition(source=s, read=r, pebble=h, target=t, move=d, carry=c) for s, r, h, t, d, c in rules
        ),
    )
    logger.info(f"Witness for m={m}: {len(descriptor.states)} states")
    return descriptor


def pump_check(A: AutomatonDescriptor, length: int, cap: Optional[int] = None) -> bool:
    """accepts(1^L) implies accepts(1^(L + L!)) for a classical automaton with at most L states."""
    if A.is_pebble:
        raise InputError(f"pump_check expects a classical automaton, got {A.kind}")
    if UNARY not in A.alphabet:
        raise InputError(f"pump_check needs {UNARY!r} in the alphabet")
    if length < len(A.states):
        raise InputError(f"Length {length} is below the state count {len(A.states)}")
    if cap is None:
        cap = get_settings().PUMP_TAPE_CAP
    # pumped = L + factor! after each step; stops once past the cap
    pumped = length + 1
    for factor in range(2, length + 1):
        if pumped > cap:
            break
        pumped = length + (pumped - length) * factor
    if pumped > cap:
        logger.error(f"Pumped input of at least {pumped} cells exceeds the cap {cap}")
        raise BudgetExceededError("pump tape", pumped, cap)

    simulator = Simulator(A)
    if not simulator.accepts((UNARY,) * length):
        return True
    return simulator.accepts((UNARY,) * pumped)
