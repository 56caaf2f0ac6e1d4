"""Euclidean-algorithm factorization of nonnegative unimodular matrices.

The monoid generated by A = (1 1; 0 1) and B = (1 0; 1 1) inside SL2(Z) is
free, and every determinant-1 matrix with nonnegative entries lies in it.
Greedy row reduction recovers the unique word: whenever row 1 dominates
row 2 entrywise an A-power peels off the left, and symmetrically for B.
"""

from __future__ import annotations

from .algebra import IntMatrix2, Letter, Word
from .errors import NotReducible


def factor_nonneg(m: IntMatrix2) -> Word:
    """Factor a nonnegative-entry, det-1 integer matrix as a word over {A, B}.

    The exact integer product of the returned word equals m (not merely a
    congruence); run exponents are the Euclidean quotients.  Raises
    NotReducible if the reduction gets stuck, which cannot happen when the
    preconditions hold and signals the caller to re-randomize its lift.
    """
    a, b, c, d = m.a, m.b, m.c, m.d
    if min(a, b, c, d) < 0:
        raise ValueError(f"entries must be nonnegative, got {m}")
    runs: list[tuple[Letter, int]] = []
    while (a, b, c, d) != (1, 0, 0, 1):
        if a >= c and b >= d:
            # Peel A^q from the left: row1 -= q * row2.  Zero denominators
            # contribute no constraint on the quotient.
            quotients = []
            if c:
                quotients.append(a // c)
            if d:
                quotients.append(b // d)
            q = min(quotients) if quotients else 0
            if q < 1:
                raise NotReducible(f"stuck at {IntMatrix2(a, b, c, d)}")
            a -= q * c
            b -= q * d
            runs.append((Letter.A, q))
        elif c >= a and d >= b:
            # Peel B^q from the left: row2 -= q * row1.
            quotients = []
            if a:
                quotients.append(c // a)
            if b:
                quotients.append(d // b)
            q = min(quotients) if quotients else 0
            if q < 1:
                raise NotReducible(f"stuck at {IntMatrix2(a, b, c, d)}")
            c -= q * a
            d -= q * b
            runs.append((Letter.B, q))
        else:
            raise NotReducible(f"rows incomparable at {IntMatrix2(a, b, c, d)}")
    return Word(runs)
