"""
Token conventions shared by automaton files, tapes and encoded words.

Plain symbols are arbitrary tokens; the reserved ones frame tapes (endmarkers)
or only occur inside encoded words (stoppers and boxed symbols).
"""
from typing import FrozenSet, Iterable, Literal

LEFT_END = "|-"
RIGHT_END = "-|"
LEFT_STOPPER = ">"
RIGHT_STOPPER = "<"
BOX_SUFFIX = "*"

ENDMARKERS = frozenset({LEFT_END, RIGHT_END})
STOPPERS = frozenset({LEFT_STOPPER, RIGHT_STOPPER})
RESERVED_TOKENS = ENDMARKERS | STOPPERS

SymbolKind = Literal["plain", "boxed", "left-stopper", "right-stopper", "left-end", "right-end"]


def is_plain_symbol(token: str) -> bool:
    return (
        isinstance(token, str)
        and token != ""
        and token.isprintable()
        and not any(ch.isspace() for ch in token)
        and token not in RESERVED_TOKENS
        and not token.endswith(BOX_SUFFIX)
    )


def boxed(symbol: str) -> str:
    return symbol + BOX_SUFFIX


def unboxed(token: str) -> str:
    return token[: -len(BOX_SUFFIX)]


def symbol_kind(token: str) -> SymbolKind:
    if token == LEFT_END:
        return "left-end"
    if token == RIGHT_END:
        return "right-end"
    if token == LEFT_STOPPER:
        return "left-stopper"
    if token == RIGHT_STOPPER:
        return "right-stopper"
    if token.endswith(BOX_SUFFIX) and is_plain_symbol(unboxed(token)):
        return "boxed"
    if is_plain_symbol(token):
        return "plain"
    raise ValueError(f"Not a tape symbol: {token!r}")


def is_tape_symbol(token: str) -> bool:
    try:
        symbol_kind(token)
    except ValueError:
        return False
    return True


def plain_part(alphabet: Iterable[str]) -> FrozenSet[str]:
    return frozenset(t for t in alphabet if is_plain_symbol(t))


def encoded_alphabet(base: Iterable[str]) -> FrozenSet[str]:
    """Σ ∪ {>, <} ∪ boxed(Σ) for a plain alphabet Σ."""
    base = frozenset(base)
    return base | STOPPERS | frozenset(boxed(a) for a in base)


def is_encoded_alphabet(alphabet: Iterable[str]) -> bool:
    alphabet = frozenset(alphabet)
    return STOPPERS <= alphabet and alphabet == encoded_alphabet(plain_part(alphabet))


def is_plain_alphabet(alphabet: Iterable[str]) -> bool:
    return all(is_plain_symbol(t) for t in alphabet)
