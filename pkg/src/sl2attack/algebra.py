"""Exact 2x2 matrix arithmetic, generator words, and the Cayley hash.

Matrices come in two flavours: ``IntMatrix2`` over the integers (used for
lifted matrices whose entries grow to ~p^3) and ``ModMatrix2`` over Z/pZ
with canonical entries in [0, p).  Words over the alphabet {A, B, A^-1, B^-1}
are stored run-length encoded because Euclidean quotients produce huge
exponents; the length of a word is the sum of its run exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator


class Letter(Enum):
    """One letter of the extended generator alphabet."""

    A = "A"
    B = "B"
    AI = "a"  # A^-1
    BI = "b"  # B^-1

    @property
    def inverse(self) -> "Letter":
        return _INVERSE[self]

    @property
    def transposed(self) -> "Letter":
        # A^T = B, so transposition swaps the two generators (and their inverses).
        return _TRANSPOSED[self]

    @property
    def is_inverse(self) -> bool:
        return self in (Letter.AI, Letter.BI)


_INVERSE = {Letter.A: Letter.AI, Letter.AI: Letter.A,
            Letter.B: Letter.BI, Letter.BI: Letter.B}
_TRANSPOSED = {Letter.A: Letter.B, Letter.B: Letter.A,
               Letter.AI: Letter.BI, Letter.BI: Letter.AI}
_BY_CHAR = {letter.value: letter for letter in Letter}


class WordParseError(ValueError):
    """Malformed word text; ``offset`` is the byte position of the defect."""

    def __init__(self, offset: int, message: str):
        super().__init__(message)
        self.offset = offset


Run = tuple[Letter, int]


class Word:
    """A word over {A, B, A^-1, B^-1} in canonical run-length form.

    Adjacent runs always carry distinct letters and every exponent is >= 1.
    Serialized form: 'A', 'B' for the generators, 'a', 'b' for the inverses,
    with 'X^n' denoting a run of n >= 2 equal letters, e.g. "B^3A^5B^2".
    """

    __slots__ = ("_runs",)

    def __init__(self, runs: Iterable[Run] = ()):
        merged: list[Run] = []
        for letter, exp in runs:
            if exp < 0:
                raise ValueError(f"negative run exponent {exp}")
            if exp == 0:
                continue
            if merged and merged[-1][0] is letter:
                merged[-1] = (letter, merged[-1][1] + exp)
            else:
                merged.append((letter, exp))
        self._runs = tuple(merged)

    @property
    def runs(self) -> tuple[Run, ...]:
        return self._runs

    @property
    def length(self) -> int:
        """Number of letters, i.e. the sum of run exponents."""
        return sum(exp for _, exp in self._runs)

    def __bool__(self) -> bool:
        return bool(self._runs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self._runs == other._runs

    def __hash__(self) -> int:
        return hash(self._runs)

    def __add__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self._runs + other._runs)

    def __iter__(self) -> Iterator[Run]:
        return iter(self._runs)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __str__(self) -> str:
        parts = []
        for letter, exp in self._runs:
            parts.append(letter.value if exp == 1 else f"{letter.value}^{exp}")
        return "".join(parts)

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse the serialized form; raises WordParseError with a byte offset."""
        runs: list[Run] = []
        i = 0
        n = len(text)
        while i < n:
            letter = _BY_CHAR.get(text[i])
            if letter is None:
                raise WordParseError(i, f"unexpected character {text[i]!r}")
            i += 1
            exp = 1
            if i < n and text[i] == "^":
                start = i + 1
                i = start
                while i < n and text[i].isdigit():
                    i += 1
                if i == start:
                    raise WordParseError(start, "missing run exponent after '^'")
                exp = int(text[start:i])
                if exp < 2:
                    raise WordParseError(start, f"run exponent must be >= 2, got {exp}")
            runs.append((letter, exp))
        return cls(runs)


@dataclass(frozen=True, slots=True)
class IntMatrix2:
    """2x2 matrix of arbitrary-precision integers, row-major."""

    a: int
    b: int
    c: int
    d: int

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __mul__(self, other: "IntMatrix2") -> "IntMatrix2":
        if not isinstance(other, IntMatrix2):
            return NotImplemented
        return IntMatrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    @staticmethod
    def identity() -> "IntMatrix2":
        return IntMatrix2(1, 0, 0, 1)

    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def reduce(self, p: int) -> "ModMatrix2":
        return ModMatrix2(self.a, self.b, self.c, self.d, p)


@dataclass(frozen=True, slots=True)
class ModMatrix2:
    """2x2 matrix over Z/pZ; entries are kept reduced to [0, p)."""

    a: int
    b: int
    c: int
    d: int
    p: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"modulus must be >= 2, got {self.p}")
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)
        object.__setattr__(self, "c", self.c % self.p)
        object.__setattr__(self, "d", self.d % self.p)

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.p

    def __mul__(self, other: "ModMatrix2") -> "ModMatrix2":
        if not isinstance(other, ModMatrix2):
            return NotImplemented
        if self.p != other.p:
            raise ValueError(f"modulus mismatch: {self.p} != {other.p}")
        return ModMatrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.p,
        )

    @staticmethod
    def identity(p: int) -> "ModMatrix2":
        return ModMatrix2(1, 0, 0, 1, p)

    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def transpose(self) -> "ModMatrix2":
        return ModMatrix2(self.a, self.c, self.b, self.d, self.p)

    def __str__(self) -> str:
        return f"{self.a},{self.b},{self.c},{self.d}"

    @classmethod
    def parse(cls, text: str, p: int) -> "ModMatrix2":
        """Parse the "a,b,c,d" row-major decimal form."""
        parts = text.split(",")
        if len(parts) != 4:
            raise ValueError(f"matrix must have 4 comma-separated entries, got {len(parts)}")
        try:
            entries = [int(part) for part in parts]
        except ValueError:
            raise ValueError(f"non-integer matrix entry in {text!r}") from None
        return cls(*entries, p)


def generator(letter: Letter, p: int) -> ModMatrix2:
    """The matrix of one alphabet letter in SL2(p)."""
    if letter is Letter.A:
        return ModMatrix2(1, 1, 0, 1, p)
    if letter is Letter.B:
        return ModMatrix2(1, 0, 1, 1, p)
    if letter is Letter.AI:
        return ModMatrix2(1, p - 1, 0, 1, p)
    return ModMatrix2(1, 0, p - 1, 1, p)


def evaluate_word(word: Word, p: int) -> ModMatrix2:
    """Left-to-right product of a word's letters in SL2(p).

    Generator powers are unitriangular, so each run is applied as a single
    column operation: X^e costs O(1) regardless of e.
    """
    a, b, c, d = 1, 0, 0, 1
    for letter, exp in word.runs:
        e = exp % p  # A and B have order p
        if letter is Letter.A:
            b = (b + e * a) % p
            d = (d + e * c) % p
        elif letter is Letter.B:
            a = (a + e * b) % p
            c = (c + e * d) % p
        elif letter is Letter.AI:
            b = (b - e * a) % p
            d = (d - e * c) % p
        else:
            a = (a - e * b) % p
            c = (c - e * d) % p
    return ModMatrix2(a, b, c, d, p)


def int_product(word: Word) -> IntMatrix2:
    """Exact product of a word's letters over the integers (no reduction)."""
    a, b, c, d = 1, 0, 0, 1
    for letter, e in word.runs:
        if letter is Letter.A:
            b += e * a
            d += e * c
        elif letter is Letter.B:
            a += e * b
            c += e * d
        elif letter is Letter.AI:
            b -= e * a
            d -= e * c
        else:
            a -= e * b
            c -= e * d
    return IntMatrix2(a, b, c, d)


def zemor_hash(bits: Iterable[int], p: int) -> ModMatrix2:
    """Hash a bit sequence: 0 -> A, 1 -> B, output the ordered product."""
    a, b, c, d = 1, 0, 0, 1
    for bit in bits:
        if bit == 0:
            b = (b + a) % p
            d = (d + c) % p
        elif bit == 1:
            a = (a + b) % p
            c = (c + d) % p
        else:
            raise ValueError(f"message symbols must be 0 or 1, got {bit!r}")
    return ModMatrix2(a, b, c, d, p)


def transpose_reverse(word: Word) -> Word:
    """Reverse the word and swap A<->B (and their inverses).

    Satisfies evaluate(transpose_reverse(w)) = evaluate(w)^T for every word,
    since A^T = B.
    """
    return Word((letter.transposed, exp) for letter, exp in reversed(word.runs))


def word_simplify(word: Word) -> Word:
    """Cancel adjacent mutually-inverse runs until canonical.

    Evaluation is unchanged; cancellations cascade (e.g. "A B b a" -> "").
    """
    stack: list[Run] = []
    for run in word.runs:
        letter, exp = run
        while exp:
            if not stack:
                stack.append((letter, exp))
                break
            top_letter, top_exp = stack[-1]
            if top_letter is letter:
                stack[-1] = (letter, top_exp + exp)
                break
            if top_letter is not letter.inverse:
                stack.append((letter, exp))
                break
            cancel = min(exp, top_exp)
            exp -= cancel
            if top_exp == cancel:
                stack.pop()
            else:
                stack[-1] = (top_letter, top_exp - cancel)
    return Word(stack)
