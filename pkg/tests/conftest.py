from pathlib import Path

import pytest

from app.models.schemas import AutomatonDescriptor, Transition
from app.services.corpus_service import fixture_corpus

FIXTURES = Path(__file__).parent / "fixtures"


def machine(kind, alphabet, states, initial, accepting, rules):
    """Descriptor from (from, read, pebble, to, move, carry) tuples."""
    return AutomatonDescriptor(
        kind=kind,
        alphabet=frozenset(alphabet),
        states=frozenset(states),
        initial=initial,
        accepting=frozenset(accepting),
        transitions=frozenset(
            Transition(source=s, read=r, pebble=h, target=t, move=d, carry=c) for s, r, h, t, d, c in rules
        ),
    )


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def corpus():
    return fixture_corpus()


@pytest.fixture(scope="function")
def all_accepting_pebble():
    """One accepting state, no transitions"""
    return machine("pebble-2dfa", ["a"], ["q"], "q", ["q"], [])


@pytest.fixture(scope="function")
def unary_all_accepting():
    return machine("2dfa", ["1"], ["q"], "q", ["q"], [])


@pytest.fixture(scope="function")
def unary_rejecting():
    return machine("2nfa", ["1"], ["q"], "q", [], [("q", "|-", False, "q", 1, False), ("q", "1", False, "q", 1, False)])


@pytest.fixture(scope="function")
def even_length_2dfa():
    """Classical 2DFA over {a}: accepts words of even length, walking right then back to the left end."""
    return machine(
        "2dfa", ["a"], ["e", "o", "back", "yes"], "e", ["yes"],
        [
            ("e", "|-", False, "e", 1, False),
            ("e", "a", False, "o", 1, False),
            ("o", "a", False, "e", 1, False),
            ("e", "-|", False, "back", -1, False),
            ("back", "a", False, "back", -1, False),
            ("back", "|-", False, "yes", 0, False),
        ],
    )


@pytest.fixture(scope="function")
def sample_descriptor_data():
    return {
        "kind": "pebble-2dfa",
        "alphabet": ["a", "b"],
        "states": ["p", "q"],
        "initial": "p",
        "accepting": ["q"],
        "transitions": [
            {"from": "p", "read": "|-", "pebble": True, "to": "p", "move": 1, "carry": True},
            {"from": "p", "read": "a", "pebble": True, "to": "q", "move": 0, "carry": False},
        ],
    }


@pytest.fixture(scope="session")
def make_machine():
    return machine
