import random

import pytest

from sl2attack import (
    IntMatrix2,
    Letter,
    ModMatrix2,
    Word,
    WordParseError,
    evaluate_word,
    generator,
    int_product,
    transpose_reverse,
    word_simplify,
    zemor_hash,
)

from conftest import naive_eval, small_primes


def W(text):
    return Word.parse(text)


class TestGenerators:
    def test_a(self):
        assert generator(Letter.A, 5) == ModMatrix2(1, 1, 0, 1, 5)

    def test_b(self):
        assert generator(Letter.B, 5) == ModMatrix2(1, 0, 1, 1, 5)

    def test_a_inverse(self):
        assert generator(Letter.AI, 5) == ModMatrix2(1, 4, 0, 1, 5)

    def test_inverses_cancel(self):
        for letter in Letter:
            prod = generator(letter, 7) * generator(letter.inverse, 7)
            assert prod.is_identity()


class TestMatMul:
    def test_ab(self):
        a = generator(Letter.A, 5)
        b = generator(Letter.B, 5)
        assert a * b == ModMatrix2(2, 1, 1, 1, 5)

    def test_identity(self):
        m = ModMatrix2(2, 1, 1, 1, 5)
        assert ModMatrix2.identity(5) * m == m
        assert m * ModMatrix2.identity(5) == m

    def test_square(self):
        m = ModMatrix2(2, 1, 1, 1, 5)
        # hand multiplication: (5 3; 3 2) mod 5
        assert m * m == ModMatrix2(0, 3, 3, 2, 5)

    def test_modulus_mismatch(self):
        with pytest.raises(ValueError):
            ModMatrix2.identity(5) * ModMatrix2.identity(7)

    def test_canonical_entries(self):
        m = ModMatrix2(-1, 12, 5, -6, 5)
        assert (m.a, m.b, m.c, m.d) == (4, 2, 0, 4)


class TestEvaluateWord:
    def test_empty(self):
        assert evaluate_word(Word(), 7).is_identity()

    def test_ab(self):
        assert evaluate_word(W("AB"), 5) == ModMatrix2(2, 1, 1, 1, 5)

    def test_cancellation(self):
        assert evaluate_word(W("Aa"), 7).is_identity()

    def test_matches_naive_oracle(self):
        rng = random.Random(1)
        letters = list(Letter)
        for _ in range(200):
            p = rng.choice([5, 7, 11, 101, 997])
            word = Word((rng.choice(letters), rng.randint(1, 30)) for _ in range(rng.randint(0, 8)))
            assert evaluate_word(word, p) == naive_eval(word, p)

    def test_homomorphism(self):
        # evaluate(u || v) == evaluate(u) * evaluate(v), >= 10^3 cases
        rng = random.Random(2)
        primes = [p for p in small_primes(1000) if p > 2]
        letters = list(Letter)
        for _ in range(1000):
            p = rng.choice(primes)
            u = Word((rng.choice(letters), rng.randint(1, 50)) for _ in range(rng.randint(0, 6)))
            v = Word((rng.choice(letters), rng.randint(1, 50)) for _ in range(rng.randint(0, 6)))
            assert evaluate_word(u + v, p) == evaluate_word(u, p) * evaluate_word(v, p)

    def test_determinant_preserved(self):
        rng = random.Random(3)
        letters = list(Letter)
        for _ in range(300):
            p = rng.choice([5, 11, 101])
            word = Word((rng.choice(letters), rng.randint(1, 1000)) for _ in range(rng.randint(0, 10)))
            assert evaluate_word(word, p).det() == 1


class TestZemorHash:
    def test_ab(self):
        assert zemor_hash([0, 1], 5) == ModMatrix2(2, 1, 1, 1, 5)

    def test_empty(self):
        assert zemor_hash([], 5).is_identity()

    def test_aba(self):
        # (2 1;1 1) * A by hand
        assert zemor_hash([0, 1, 0], 5) == ModMatrix2(2, 3, 1, 2, 5)

    def test_rejects_other_symbols(self):
        with pytest.raises(ValueError):
            zemor_hash([0, 2], 5)


class TestTransposeReverse:
    def test_aab(self):
        assert transpose_reverse(W("A^2B")) == W("AB^2")

    def test_empty(self):
        assert transpose_reverse(Word()) == Word()

    def test_palindromic_runs(self):
        assert transpose_reverse(W("B^2A^5B^2")) == W("A^2B^5A^2")

    def test_involution_and_eval(self):
        rng = random.Random(4)
        letters = list(Letter)
        for _ in range(300):
            p = rng.choice([5, 13, 211])
            word = Word((rng.choice(letters), rng.randint(1, 40)) for _ in range(rng.randint(0, 8)))
            flipped = transpose_reverse(word)
            assert transpose_reverse(flipped) == word
            assert evaluate_word(flipped, p) == evaluate_word(word, p).transpose()


class TestWordSimplify:
    def test_cancels_adjacent_inverse(self):
        assert word_simplify(W("AaB")) == W("B")

    def test_partial_cancel(self):
        assert word_simplify(W("A^3a")) == W("A^2")

    def test_full_collapse(self):
        assert word_simplify(W("ABba")) == Word()

    def test_preserves_evaluation(self):
        rng = random.Random(5)
        letters = list(Letter)
        for _ in range(500):
            p = rng.choice([5, 7, 101, 499])
            word = Word((rng.choice(letters), rng.randint(1, 20)) for _ in range(rng.randint(0, 10)))
            simplified = word_simplify(word)
            assert evaluate_word(simplified, p) == evaluate_word(word, p)
            # canonical: no adjacent equal or mutually-inverse runs remain
            runs = simplified.runs
            for (l1, _), (l2, _) in zip(runs, runs[1:]):
                assert l1 is not l2 and l1 is not l2.inverse


class TestWord:
    def test_merges_adjacent_runs(self):
        word = Word([(Letter.A, 2), (Letter.A, 3), (Letter.B, 1)])
        assert word.runs == ((Letter.A, 5), (Letter.B, 1))

    def test_length_is_exponent_sum(self):
        assert W("B^3A^5B^2").length == 10
        assert Word().length == 0

    def test_drops_zero_runs(self):
        assert Word([(Letter.A, 0), (Letter.B, 2)]) == W("B^2")

    def test_rejects_negative_exponent(self):
        with pytest.raises(ValueError):
            Word([(Letter.A, -1)])

    def test_concat(self):
        assert W("A^2") + W("A^3B") == W("A^5B")


class TestSerialization:
    def test_round_trip(self):
        rng = random.Random(6)
        letters = list(Letter)
        for _ in range(300):
            word = Word((rng.choice(letters), rng.randint(1, 10**6)) for _ in range(rng.randint(0, 12)))
            assert Word.parse(str(word)) == word

    def test_exponent_one_is_bare(self):
        assert str(W("A")) == "A"
        assert str(Word([(Letter.B, 3), (Letter.AI, 1)])) == "B^3a"

    def test_inverse_letters_lowercase(self):
        assert str(Word([(Letter.AI, 2), (Letter.BI, 5)])) == "a^2b^5"

    def test_parse_error_offset_bad_char(self):
        with pytest.raises(WordParseError) as err:
            Word.parse("ABxA")
        assert err.value.offset == 2

    def test_parse_error_missing_exponent(self):
        with pytest.raises(WordParseError) as err:
            Word.parse("A^")
        assert err.value.offset == 2

    def test_parse_error_exponent_one(self):
        with pytest.raises(WordParseError) as err:
            Word.parse("B^1")
        assert err.value.offset == 2

    def test_parse_whitespace_rejected(self):
        with pytest.raises(WordParseError):
            Word.parse("A B")


class TestMatrixSerialization:
    def test_str(self):
        assert str(ModMatrix2(2, 1, 1, 1, 5)) == "2,1,1,1"

    def test_parse(self):
        assert ModMatrix2.parse("2,3,1,2", 5) == ModMatrix2(2, 3, 1, 2, 5)

    def test_parse_rejects_wrong_arity(self):
        with pytest.raises(ValueError):
            ModMatrix2.parse("1,2,3", 5)


class TestIntMatrix2:
    def test_det(self):
        assert IntMatrix2(11, 5, 35, 16).det() == 1

    def test_product(self):
        a = IntMatrix2(1, 1, 0, 1)
        b = IntMatrix2(1, 0, 1, 1)
        assert a * b == IntMatrix2(2, 1, 1, 1)

    def test_int_product_matches_reduction(self):
        rng = random.Random(7)
        letters = list(Letter)
        for _ in range(200):
            word = Word((rng.choice(letters), rng.randint(1, 12)) for _ in range(rng.randint(0, 8)))
            exact = int_product(word)
            assert exact.det() == 1
            assert exact.reduce(97) == evaluate_word(word, 97)
