from pydantic import BaseModel, Field, ConfigDict, StrictBool, StrictStr, computed_field, field_validator
from typing import Dict, FrozenSet, List, Literal, Optional, Tuple, Union

from app.models.alphabet import LEFT_END, RIGHT_END

# Define valid values as type aliases
AutomatonKind = Literal["2nfa", "2dfa", "pebble-2nfa", "pebble-2dfa"]
Direction = Literal[-1, 0, 1]
TraceOutcome = Literal["halted", "loop", "max-steps", "exhausted"]
TranslationMode = Literal["p2c", "c2p", "det-lift", "comp-lift", "comp-pdfa"]

PEBBLE_KINDS = frozenset({"pebble-2nfa", "pebble-2dfa"})
DETERMINISTIC_KINDS = frozenset({"2dfa", "pebble-2dfa"})

class Move(BaseModel):
    """A head move d, or d• when carry is set (the pebble travels with the head)."""
    model_config = ConfigDict(frozen=True)

    direction: Direction
    carry: bool = False

class TransitionKey(BaseModel):
    model_config = ConfigDict(frozen=True)

    state: str
    read: str
    pebble_here: bool = False

class Transition(BaseModel):
    """One element of δ, in the shape of the automaton file format."""
    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    source: StrictStr = Field(..., alias="from", min_length=1)
    read: StrictStr = Field(..., min_length=1)
    pebble: StrictBool = False
    target: StrictStr = Field(..., alias="to", min_length=1)
    move: Direction
    carry: StrictBool = False

    @field_validator("move", mode="before")
    @classmethod
    def move_is_integer(cls, value):
        # JSON true/false and 1.0 would otherwise pass as moves
        if type(value) is not int:
            raise ValueError("move must be the integer -1, 0 or 1")
        return value

    @property
    def key(self) -> TransitionKey:
        return TransitionKey(state=self.source, read=self.read, pebble_here=self.pebble)

    @property
    def step(self) -> Move:
        return Move(direction=self.move, carry=self.carry)

    def describe(self) -> str:
        pebble = "•" if self.pebble else ""
        carry = "•" if self.carry else ""
        return f"δ({self.source}, {self.read}{pebble}) ∋ ({self.target}, {self.move:+d}{carry})"

class AutomatonDescriptor(BaseModel):
    """
    (Q, Σ, δ, q_I, F) for classical and one-pebble two-way automata.
    Only the shape is enforced here; semantic well-formedness is reported by
    automaton_service.validate_automaton.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: AutomatonKind
    alphabet: FrozenSet[str]
    states: FrozenSet[str] = Field(..., min_length=1)
    initial: str
    accepting: FrozenSet[str] = frozenset()
    transitions: FrozenSet[Transition] = frozenset()

    @property
    def is_pebble(self) -> bool:
        return self.kind in PEBBLE_KINDS

    @property
    def declared_deterministic(self) -> bool:
        return self.kind in DETERMINISTIC_KINDS

    @property
    def delta(self) -> Dict[TransitionKey, FrozenSet[Tuple[str, Move]]]:
        images: Dict[TransitionKey, set] = {}
        for t in self.transitions:
            images.setdefault(t.key, set()).add((t.target, t.step))
        return {key: frozenset(targets) for key, targets in images.items()}

class Violation(BaseModel):
    code: str
    message: str
    transition: Optional[Transition] = None

class AutomatonStats(BaseModel):
    kind: AutomatonKind
    states: int
    accepting: int
    transitions: int
    alphabet_size: int
    declared_deterministic: bool
    deterministic: bool
    valid: bool
    violations: List[Violation] = []

class Configuration(BaseModel):
    model_config = ConfigDict(frozen=True)

    state: str
    head: int = Field(..., ge=0)

class PebbleConfiguration(Configuration):
    pebble: int = Field(..., ge=0)

AnyConfiguration = Union[PebbleConfiguration, Configuration]

class TraceResult(BaseModel):
    """
    Deterministic machines: one configuration per layer (the run).
    Nondeterministic machines: the configurations first reached at each BFS depth.
    """
    deterministic: bool
    layers: List[List[AnyConfiguration]]
    outcome: TraceOutcome
    loop_start: Optional[int] = None
    accepted: bool

class EncodedWord(BaseModel):
    model_config = ConfigDict(frozen=True)

    tokens: Tuple[str, ...]
    segment_index: Tuple[int, ...]
    source_length: int = Field(..., ge=0)

    def __len__(self) -> int:
        return len(self.tokens)

    def render(self) -> str:
        return " ".join(self.tokens)

class TranslationReport(BaseModel):
    construction: str
    input_states: int
    output_states: int
    bound: int
    bound_conditional: bool = False
    determinism_in: bool
    determinism_out: bool
    rule_audit: Dict[str, int] = {}
    transformer: Optional[str] = None
    stages: List["TranslationReport"] = []

    @computed_field
    @property
    def bound_satisfied(self) -> bool:
        return self.output_states <= self.bound

TranslationReport.model_rebuild()

class WitnessSpec(BaseModel):
    m: int = Field(..., ge=1)
    primes: List[int]
    product: int
    target_states: int

class CommandResult(BaseModel):
    """exit codes: 0 success, 1 property violated, 2 usage/input error, 3 budget exceeded"""
    exit_code: int = 0
    output: str = ""

class Tape(BaseModel):
    """An input word framed by endmarkers; positions run 0..k+1."""
    model_config = ConfigDict(frozen=True)

    word: Tuple[str, ...]

    @property
    def cells(self) -> Tuple[str, ...]:
        return (LEFT_END,) + self.word + (RIGHT_END,)

    def __len__(self) -> int:
        return len(self.word) + 2

    def symbol_at(self, position: int) -> str:
        if not 0 <= position <= len(self.word) + 1:
            raise ValueError(f"Position {position} is outside 0..{len(self.word) + 1}")
        return self.cells[position]

class SweepFailure(BaseModel):
    machine: int
    check: str
    word: Tuple[str, ...]

class SweepReport(BaseModel):
    seed: int
    machines: int
    max_len: int
    failures: List[SweepFailure] = []

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.failures
