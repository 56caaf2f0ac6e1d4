import random

import pytest

from sl2attack import Letter, ModMatrix2


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def naive_eval(word, p):
    """Independent oracle: multiply letter matrices one by one.

    Run exponents are reduced mod p first so huge runs stay feasible; A and
    B have order p, so this does not change the product.
    """
    mats = {
        Letter.A: ModMatrix2(1, 1, 0, 1, p),
        Letter.B: ModMatrix2(1, 0, 1, 1, p),
        Letter.AI: ModMatrix2(1, p - 1, 0, 1, p),
        Letter.BI: ModMatrix2(1, 0, p - 1, 1, p),
    }
    out = ModMatrix2.identity(p)
    for letter, exp in word.runs:
        for _ in range(exp % p):
            out = out * mats[letter]
    return out


def small_primes(limit):
    sieve = bytearray([1]) * limit
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit, i)))
    return [i for i in range(limit) if sieve[i]]
