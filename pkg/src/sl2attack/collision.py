"""Collision attack: words for the identity and for the inverse generators.

The identity is lifted to an integer matrix (1+k1*p, k2*p; k3*p, 1+k4*p) of
determinant one by solving a Diophantine system: pick a small c and an
auxiliary prime p' ~ p, require (cp)^2 + 4c to be a square mod p', and read
k4 off the resulting quadratic.  The lift factors over {A, B} by the
Euclidean algorithm and reduces to the identity mod p.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .algebra import IntMatrix2, Letter, ModMatrix2, Word, evaluate_word, generator, transpose_reverse
from .errors import NonResidue, RetryExhausted
from .euclid import factor_nonneg
from .number_theory import legendre, mod_inv, next_prime, sqrt_mod


@dataclass(frozen=True, slots=True)
class CollisionLift:
    """Solution (k1, k2, k3, k4) of the identity lift for modulus p."""

    p: int
    c: int
    p_prime: int
    k1: int
    k2: int
    k3: int
    k4: int

    def matrix(self) -> IntMatrix2:
        p = self.p
        return IntMatrix2(1 + self.k1 * p, self.k2 * p, self.k3 * p, 1 + self.k4 * p)


def c_budget(p: int) -> int:
    """Retry budget for the c-search: 100 * (ln p)^2 candidates."""
    return math.ceil(100 * math.log(p) ** 2)


def length_cap(p: int) -> float:
    """Accepted words must not exceed 1000 * ln p letters."""
    return 1000 * math.log(p)


def _try_lift(p: int, c: int, p_prime: int) -> CollisionLift | None:
    """One (c, p') candidate; None when the discriminant is a non-residue
    or the would-be k1 = cp - k4 is negative."""
    disc = (c * p) ** 2 + 4 * c
    if legendre(disc, p_prime) != 1:
        return None
    x = sqrt_mod(disc, p_prime)
    k4 = (c * p + x) * mod_inv(2, p_prime) % p_prime
    k1 = c * p - k4
    if k1 < 0:
        return None
    k2, rem = divmod(c + k1 * k4, p_prime)
    assert rem == 0  # forced by the quadratic satisfied by k4
    lift = CollisionLift(p, c, p_prime, k1, k2, p_prime, k4)
    matrix = lift.matrix()
    assert matrix.det() == 1
    assert matrix.reduce(p).is_identity()
    return lift


def _search_lift(p: int, rng: random.Random, max_candidates: int) -> tuple[CollisionLift, int]:
    """Draw (c, p') candidates until one lifts; returns (lift, candidates used)."""
    c_max = max(1, math.ceil(math.log(p)))
    c: int | None = None
    for used in range(1, max_candidates + 1):
        if c is None:
            c = rng.randint(1, c_max)
        p_prime = next_prime(rng.randrange(p, 2 * p))
        if p_prime == p:
            c = None
            continue
        disc = (c * p) ** 2 + 4 * c
        if legendre(disc, p_prime) != 1:
            c = None  # non-residue: redraw both
            continue
        lift = _try_lift(p, c, p_prime)
        if lift is not None:
            return lift, used
        # k1 < 0: keep c, redraw p' only.
    raise RetryExhausted(f"no identity lift for p={p} within {max_candidates} candidates")


def identity_lift(p: int, rng: random.Random) -> CollisionLift:
    """A determinant-1, nonnegative lift of the identity matrix mod p."""
    lift, _ = _search_lift(p, rng, c_budget(p))
    return lift


def identity_word(p: int, rng: random.Random) -> Word:
    """A nonempty word over {A, B} evaluating to the identity in SL2(p).

    Re-randomizes on NotReducible or when the word exceeds 1000 * ln p
    letters; all retries share the c-search budget.
    """
    remaining = c_budget(p)
    cap = length_cap(p)
    while remaining > 0:
        lift, used = _search_lift(p, rng, remaining)
        remaining -= used
        word = factor_nonneg(lift.matrix())
        if word.length > cap:
            continue
        assert evaluate_word(word, p).is_identity()
        return word
    raise RetryExhausted(f"no identity word for p={p} within the c-search budget")


def inverse_generator_words(p: int, rng: random.Random) -> tuple[Word, Word]:
    """Words (wA, wB) over {A, B} with wA = A^-1 and wB = B^-1 in SL2(p).

    One comes from deleting the first letter of an identity word, the other
    from transpose-reversal (B^-1 = A^-T).
    """
    word = identity_word(p, rng)
    (first, exp), rest = word.runs[0], word.runs[1:]
    deleted = Word(((first, exp - 1),) + rest)
    if first is Letter.B:
        w_b = deleted
        w_a = transpose_reverse(w_b)
    else:
        w_a = deleted
        w_b = transpose_reverse(w_a)
    assert evaluate_word(w_a, p) == generator(Letter.AI, p)
    assert evaluate_word(w_b, p) == generator(Letter.BI, p)
    return w_a, w_b
