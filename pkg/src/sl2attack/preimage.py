"""Preimage attack: factor any M in SL2(p) as a word in the generators.

Pipeline: split M = P.L.D.U (permutation, lower unitriangular, diagonal,
upper unitriangular), rewrite P and the unitriangular parts as short
products of generators and diagonal matrices, factor each diagonal matrix
through a determinant-1 integer lift with entries of balanced magnitude,
then optionally expand A^-1 / B^-1 through the collision attack to obtain a
word over {A, B} alone.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .algebra import (
    IntMatrix2,
    Letter,
    ModMatrix2,
    Word,
    evaluate_word,
    transpose_reverse,
    word_simplify,
)
from .collision import inverse_generator_words, length_cap
from .errors import NotReducible, RetryExhausted
from .euclid import factor_nonneg
from .number_theory import (
    balanced_divisor,
    balanced_divisor_from_factors,
    coprime_lift,
    legendre,
    mod_inv,
    sqrt_mod,
    try_factorize,
)

MAX_DIAGONAL_ATTEMPTS = 15

# Accepted diagonal lifts must keep every entry within this multiple of p^3.
ENTRY_TOLERANCE = 8

# Rho squarings allowed per candidate split of k2*k3 inside the attempt loop
# (a couple of seconds of desk time); a candidate whose split resists this
# budget is redrawn like any other failed attempt.  The public diagonal_lift
# and balanced_divisor keep their unbounded contracts.
SPLIT_EFFORT = 6_000_000


@dataclass(frozen=True, slots=True)
class LUParts:
    """M = P^perm . L . D . U over Z/pZ.

    L = (1 0; lower_b 1), D = diag(diag_a, diag_a^-1), U = (1 upper_b; 0 1),
    and P = (0 1; -1 0) when perm is set.
    """

    p: int
    perm: bool
    lower_b: int
    diag_a: int
    upper_b: int

    def recompose(self) -> ModMatrix2:
        p = self.p
        out = ModMatrix2(1, 0, self.lower_b, 1, p)
        out = out * ModMatrix2(self.diag_a, 0, 0, mod_inv(self.diag_a, p), p)
        out = out * ModMatrix2(1, self.upper_b, 0, 1, p)
        if self.perm:
            out = ModMatrix2(0, 1, p - 1, 0, p) * out
        return out


def lu_decompose(m: ModMatrix2) -> LUParts:
    """LU split of a matrix in SL2(p); det = 1 rules out a = c = 0."""
    p = m.p
    if m.a != 0:
        inv_a = mod_inv(m.a, p)
        return LUParts(p, False, m.c * inv_a % p, m.a, inv_a * m.b % p)
    inv_c = mod_inv(m.c, p)
    return LUParts(p, True, 0, -m.c % p, inv_c * m.d % p)


@dataclass(frozen=True, slots=True)
class DiagonalLift:
    """Lift of diag(a, a^-1) to (a+k1*p, k2*p; k3*p, d+k4*p) in SL2(Z)."""

    p: int
    a: int
    d: int
    n: int
    k1: int
    k2: int
    k3: int
    k4: int

    def matrix(self) -> IntMatrix2:
        p = self.p
        return IntMatrix2(self.a + self.k1 * p, self.k2 * p, self.k3 * p, self.d + self.k4 * p)

    def well_balanced(self) -> bool:
        """Entry-magnitude discipline: k2, k3 within a factor p of each other
        and all entries at most 8*p^3."""
        if self.k3 > self.p * self.k2:
            return False
        m = self.matrix()
        return max(m.a, m.b, m.c, m.d) <= ENTRY_TOLERANCE * self.p**3


def diagonal_lift(a: int, p: int, rng: random.Random) -> DiagonalLift:
    """One random lift draw for diag(a, a^-1), 1 < a < p."""
    if not 1 < a < p:
        raise ValueError(f"need 1 < a < p, got a={a}, p={p}")
    return _diagonal_lift_with_multiplier(a, p, rng.randint(1, p))


def _diagonal_lift_with_multiplier(
    a: int, p: int, multiplier: int, split_effort: int | None = None
) -> DiagonalLift | None:
    d = coprime_lift(a, p)
    n = (a * d - 1) // p
    k1 = (-n) * mod_inv(d, a) % a + a * p
    k4 = (-n - d * k1) * mod_inv(a, p) % p + p * multiplier
    quotient, rem = divmod(n + a * k4 + d * k1, p)
    assert rem == 0  # forced by the k4 congruence
    t = k1 * k4 + quotient
    if split_effort is None:
        k2 = balanced_divisor(t)
    else:
        factors = try_factorize(t, split_effort)
        if factors is None:
            return None
        k2 = balanced_divisor_from_factors(t, factors)
    k3 = t // k2
    lift = DiagonalLift(p, a, d, n, k1, k2, k3, k4)
    assert lift.matrix().det() == 1
    return lift


def diagonal_word(a: int, p: int, rng: random.Random) -> Word:
    """Word over {A, B, A^-1, B^-1} evaluating to diag(a, a^-1) mod p.

    Each attempt draws a fresh k4 multiplier; attempts whose split is too
    lopsided are discarded, and if no attempt stays within 1000 * ln p
    letters the shortest one is kept.
    """
    if not 0 < a < p:
        raise ValueError(f"need 0 < a < p, got a={a}, p={p}")
    if a == 1:
        return Word()
    cap = length_cap(p)
    best: Word | None = None
    for _ in range(MAX_DIAGONAL_ATTEMPTS):
        lift = _diagonal_lift_with_multiplier(a, p, rng.randint(1, p), SPLIT_EFFORT)
        if lift is None or not lift.well_balanced():
            continue
        try:
            word = factor_nonneg(lift.matrix())
        except NotReducible:
            continue
        word = compress_powers(word, p)
        if best is None or word.length < best.length:
            best = word
        if word.length <= cap:
            break
    if best is None:
        raise RetryExhausted(f"no diagonal factorization for a={a} mod p={p}")
    assert evaluate_word(best, p) == ModMatrix2(a, 0, 0, mod_inv(a, p), p)
    return best


def compress_powers(word: Word, p: int) -> Word:
    """Reduce run exponents using the order-p relations A^p = B^p = I.

    Exponents are taken mod p, and a run longer than p/2 becomes the inverse
    letter raised to p - e.  Repeats until stable, so no emitted exponent
    exceeds p/2; evaluation mod p is unchanged.
    """
    runs = word.runs
    while True:
        out: list[tuple[Letter, int]] = []
        for letter, exp in runs:
            e = exp % p
            if e == 0:
                continue
            if 2 * e > p:
                letter, e = letter.inverse, p - e
            if out and out[-1][0] is letter:
                out[-1] = (letter, out[-1][1] + e)
            else:
                out.append((letter, e))
        new_runs = tuple(out)
        if new_runs == runs:
            return Word(new_runs)
        runs = new_runs


def unitriangular_word(b: int, side: str, p: int, rng: random.Random) -> Word:
    """Word evaluating to (1 0; b 1) for side "lower", (1 b; 0 1) for "upper".

    With D(x) = diag(x, x^-1): if b = alpha^2 is a residue the lower matrix
    is D(alpha^-1).B.D(alpha); otherwise b = r^2 - s^2 with r = (b+1)/2 and
    s = (b-1)/2, giving D(r^-1).B.D(r.s^-1).B^-1.D(s) after merging the two
    middle diagonals.  The upper side is the transpose-reverse of the lower.
    """
    if side not in ("lower", "upper"):
        raise ValueError(f"side must be 'lower' or 'upper', got {side!r}")
    b %= p
    if b == 0:
        return Word()

    def diag(x: int) -> Word:
        return diagonal_word(x, p, rng)

    if legendre(b, p) == 1:
        alpha = sqrt_mod(b, p)
        word = diag(mod_inv(alpha, p)) + Word([(Letter.B, 1)]) + diag(alpha)
    else:
        inv2 = mod_inv(2, p)
        r = (b + 1) * inv2 % p
        s = (b - 1) * inv2 % p
        if r == 0:
            # b = -1: here s = -1 and s^2 = 1, so (1 0; b 1) = (1 0; s^2 1)^-1.
            word = diag(mod_inv(s, p)) + Word([(Letter.BI, 1)]) + diag(s)
        else:
            word = (
                diag(mod_inv(r, p))
                + Word([(Letter.B, 1)])
                + diag(r * mod_inv(s, p) % p)
                + Word([(Letter.BI, 1)])
                + diag(s)
            )
    if side == "upper":
        word = transpose_reverse(word)
        assert evaluate_word(word, p) == ModMatrix2(1, b, 0, 1, p)
    else:
        assert evaluate_word(word, p) == ModMatrix2(1, 0, b, 1, p)
    return word


def permutation_word(p: int, rng: random.Random) -> Word:
    """Word evaluating to (0 1; -1 0): the prefix A^-1.B.A^-1 times diag(-1, -1)."""
    prefix = Word([(Letter.AI, 1), (Letter.B, 1), (Letter.AI, 1)])
    word = prefix + diagonal_word(p - 1, p, rng)
    assert evaluate_word(word, p) == ModMatrix2(0, 1, p - 1, 0, p)
    return word


def preimage_word(m: ModMatrix2, rng: random.Random, alphabet: str = "positive") -> Word:
    """Word evaluating to m; "extended" allows inverse letters, "positive"
    substitutes them with collision-attack words over {A, B} alone."""
    if alphabet not in ("extended", "positive"):
        raise ValueError(f"alphabet must be 'extended' or 'positive', got {alphabet!r}")
    p = m.p
    parts = lu_decompose(m)
    word = Word()
    if parts.perm:
        word = word + permutation_word(p, rng)
    word = word + unitriangular_word(parts.lower_b, "lower", p, rng)
    word = word + diagonal_word(parts.diag_a, p, rng)
    word = word + unitriangular_word(parts.upper_b, "upper", p, rng)
    word = word_simplify(word)
    assert evaluate_word(word, p) == m
    if alphabet == "extended":
        return word
    if any(letter.is_inverse for letter, _ in word.runs):
        w_a, w_b = inverse_generator_words(p, rng)
        word = word_simplify(_expand_inverses(word, w_a, w_b))
        assert evaluate_word(word, p) == m
    return word


def _expand_inverses(word: Word, w_a: Word, w_b: Word) -> Word:
    out: list[tuple[Letter, int]] = []

    def append(letter: Letter, exp: int) -> None:
        if out and out[-1][0] is letter:
            out[-1] = (letter, out[-1][1] + exp)
        else:
            out.append((letter, exp))

    for letter, exp in word.runs:
        if not letter.is_inverse:
            append(letter, exp)
            continue
        replacement = w_a if letter is Letter.AI else w_b
        for _ in range(exp):
            for rep_letter, rep_exp in replacement.runs:
                append(rep_letter, rep_exp)
    return Word(out)


def random_sl2(p: int, rng: random.Random) -> ModMatrix2:
    """Uniform random element of SL2(p).

    The a = 0 coset holds a 1/(p+1) share of the group; otherwise a, b, c
    are free and d is determined by the determinant.
    """
    if rng.randrange(p + 1) == 0:
        b = rng.randrange(1, p)
        c = -mod_inv(b, p) % p
        d = rng.randrange(p)
        return ModMatrix2(0, b, c, d, p)
    a = rng.randrange(1, p)
    b = rng.randrange(p)
    c = rng.randrange(p)
    d = (1 + b * c) * mod_inv(a, p) % p
    return ModMatrix2(a, b, c, d, p)
