import pytest
from hypothesis import given, strategies as st

from app.core.exceptions import InputError
from app.services.encoding_service import decode, encode, encoded_length, is_valid_image, segment_of

words = st.lists(st.sampled_from(["a", "b"]), max_size=6).map(tuple)


def test_encode_three_letters():
    """
    Test Case: Encoding of a b c
    - Reproduces the segment layout token for token
    - Length is k²+4k+2
    """
    encoded = encode(["a", "b", "c"])
    assert encoded.render() == "a b c < > a* b c < > a b* c < > a b c* < > a b c"
    assert len(encoded) == 23
    assert encoded.source_length == 3


def test_encode_empty_word():
    encoded = encode([])
    assert encoded.tokens == ("<", ">")
    assert encoded.segment_index == (0, 1)


@pytest.mark.parametrize("k", range(11))
def test_token_count(k):
    assert len(encode(["a"] * k)) == encoded_length(k) == k * k + 4 * k + 2


def test_length_five():
    assert len(encode(list("abcde"))) == 47


def test_segment_of():
    """
    Test Case: Segment ownership of stoppers
    - The right stopper closes its segment, the left stopper opens the next
    - Out-of-range positions are rejected
    """
    encoded = encode(["a", "b", "c"])
    assert segment_of(encoded, 0) == 0
    assert segment_of(encoded, 3) == 0
    assert segment_of(encoded, 4) == 1
    assert segment_of(encoded, 5) == 1
    assert encoded.tokens[5] == "a*"
    assert segment_of(encoded, len(encoded) - 1) == 4
    assert segment_of(encode([]), 1) == 1
    with pytest.raises(InputError):
        segment_of(encoded, len(encoded))


def test_encode_rejects_reserved_tokens():
    with pytest.raises(InputError):
        encode(["a", "<"])
    with pytest.raises(InputError):
        encode(["a*"])


def test_is_valid_image_rejects_tampering():
    """
    Test Case: Images that no word encodes to
    - Swapped boxed positions
    - Empty sequence
    - Truncated image
    """
    tokens = list(encode(["a", "b"]).tokens)
    assert is_valid_image(tokens)
    assert not is_valid_image([t.rstrip("*") for t in tokens])
    assert not is_valid_image(_swap_boxes(tokens))
    assert not is_valid_image([])
    assert not is_valid_image(tokens[:-1])


def _swap_boxes(tokens):
    """Move the box of segment 1 onto segment 2's position and vice versa."""
    result = list(tokens)
    first, second = [i for i, t in enumerate(tokens) if t.endswith("*")]
    # segment 1 is "> a* b <", segment 2 is "> a b* <"
    result[first], result[first + 1] = "a", "b*"
    result[second - 1], result[second] = "a*", "b"
    return result


@given(words)
def test_encoding_properties(word):
    """
    Test Case: Properties of every image
    - decode inverts encode
    - |w| + 2 segments, segment_of monotone nondecreasing
    - Segment p holds exactly one boxed token, at letter offset p
    """
    encoded = encode(word)
    assert is_valid_image(encoded.tokens)
    assert decode(encoded.tokens) == word

    index = encoded.segment_index
    assert sorted(set(index)) == list(range(len(word) + 2))
    assert list(index) == sorted(index)

    for p in range(len(word) + 2):
        segment = [t for t, s in zip(encoded.tokens, index) if s == p]
        boxes = [i for i, t in enumerate(segment) if t.endswith("*")]
        if 1 <= p <= len(word):
            # offset 0 is the left stopper
            assert boxes == [p]
        else:
            assert boxes == []


@given(words, words)
def test_encode_injective(left, right):
    if left != right:
        assert encode(left).tokens != encode(right).tokens
