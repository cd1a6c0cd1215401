from typing import Any, List, Optional


class AutomatonError(Exception):
    """
    Base class for every failure the toolkit reports.
    exit_code is what the CLI returns when the error escapes a command.
    """

    exit_code: int = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class UsageError(AutomatonError):
    exit_code = 2


class InputError(AutomatonError):
    exit_code = 2


class ParseError(AutomatonError):
    exit_code = 2

    def __init__(self, detail: str, locus: Optional[str] = None):
        super().__init__(f"{locus}: {detail}" if locus else detail)
        self.locus = locus


class InvalidAutomatonError(AutomatonError):
    exit_code = 2

    def __init__(self, violations: List[Any]):
        messages = "; ".join(v.message for v in violations)
        super().__init__(f"Invalid automaton: {messages}")
        self.violations = violations


class ConstructionError(AutomatonError):
    exit_code = 1


class BudgetExceededError(AutomatonError):
    exit_code = 3

    def __init__(self, what: str, requested: int, limit: int):
        super().__init__(f"{what} budget exceeded: {requested} > {limit}")
        self.requested = requested
        self.limit = limit
