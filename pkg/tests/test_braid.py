import random

import pytest

from laceground.braid import BraidWord, format_braid_word, is_alternating, to_braid_word


@pytest.mark.parametrize("i", [0, 1, 2])
def test_cross_and_twist_generators(i):
    assert to_braid_word("C", i).generators == ((2 * i + 1, +1),)
    assert to_braid_word("T", i).generators == ((2 * i, -1), (2 * i + 2, -1))


def test_half_twists():
    assert to_braid_word("L", 1).generators == ((2, -1),)
    assert to_braid_word("R", 1).generators == ((4, -1),)


def test_empty_word():
    word = to_braid_word("", 0)
    assert word.generators == ()
    assert is_alternating(word)


def test_ctpct_expansion():
    word = to_braid_word("CTpCT", 1)
    assert word.generators == (
        (3, 1), (2, -1), (4, -1), (3, 1), (2, -1), (4, -1))
    assert word.pins == (3,)
    assert format_braid_word(word) == "s3 s2^-1 s4^-1 [pin] s3 s2^-1 s4^-1"


def test_unknown_action():
    with pytest.raises(ValueError):
        to_braid_word("CX", 0)


def test_alternating_rejects_bad_word():
    assert not is_alternating(BraidWord(((1, -1),), ()))
    assert not is_alternating(BraidWord(((2, 1),), ()))


def test_random_sequences_always_alternate():
    rng = random.Random(20260811)
    alphabet = "CTLRp"
    for _ in range(2000):
        actions = "".join(rng.choice(alphabet) for _ in range(rng.randrange(0, 21)))
        i = rng.randrange(0, 6)
        word = to_braid_word(actions, i)
        assert is_alternating(word)
        # strand span stays within the four threads of the interaction
        for pos, _ in word.generators:
            assert 2 * i <= pos <= 2 * i + 3
