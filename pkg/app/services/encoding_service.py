from typing import List, Optional, Sequence, Tuple

from app.core.exceptions import InputError
from app.models.alphabet import LEFT_STOPPER, RIGHT_STOPPER, boxed, is_plain_symbol
from app.models.schemas import EncodedWord


def encoded_length(k: int) -> int:
    return k * k + 4 * k + 2


def encode(word: Sequence[str]) -> EncodedWord:
    """
    Replicate the word into k+2 segments. Segment p (1 <= p <= k) boxes its
    p-th letter; segment 0 ends with the right stopper and segment k+1 starts
    with the left stopper.
    """
    word = tuple(word)
    for position, symbol in enumerate(word):
        if not is_plain_symbol(symbol):
            raise InputError(f"Cannot encode reserved or boxed token {symbol!r} at position {position}")
    k = len(word)

    tokens: List[str] = []
    segments: List[int] = []

    def emit(segment: int, *symbols: str):
        tokens.extend(symbols)
        segments.extend([segment] * len(symbols))

    emit(0, *word, RIGHT_STOPPER)
    for p in range(1, k + 1):
        marked = word[: p - 1] + (boxed(word[p - 1]),) + word[p:]
        emit(p, LEFT_STOPPER, *marked, RIGHT_STOPPER)
    emit(k + 1, LEFT_STOPPER, *word)

    return EncodedWord(tokens=tuple(tokens), segment_index=tuple(segments), source_length=k)


def segment_of(encoded: EncodedWord, position: int) -> int:
    if not 0 <= position < len(encoded):
        raise InputError(f"Position {position} is outside the encoded word of {len(encoded)} tokens")
    return encoded.segment_index[position]


def decode(tokens: Sequence[str]) -> Optional[Tuple[str, ...]]:
    """The word w with encode(w).tokens == tokens, or None."""
    tokens = tuple(tokens)
    if RIGHT_STOPPER not in tokens:
        return None
    word = tokens[: tokens.index(RIGHT_STOPPER)]
    if not all(is_plain_symbol(symbol) for symbol in word):
        return None
    if encode(word).tokens != tokens:
        return None
    return word


def is_valid_image(tokens: Sequence[str]) -> bool:
    return decode(tokens) is not None
