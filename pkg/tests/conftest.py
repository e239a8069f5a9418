import random

import pytest

from shufflecodec.ans import HEAD_MIN, Message, pad_word


def random_message(seed: int, tail_words: int = 0) -> Message:
    """A message with pseudo-random head content (and optional stack words).

    Useful for sampling tests and for simulating a message that already holds
    compressed data. The pad source stays enabled so decodes never underflow.
    """
    rng = random.Random(seed)
    head = HEAD_MIN | rng.getrandbits(48)
    tail = [rng.getrandbits(16) for _ in range(tail_words)]
    return Message(head, tail, pad_seed=seed)


@pytest.fixture
def rng():
    return random.Random(0xA5A5)


__all__ = ["random_message", "pad_word"]
