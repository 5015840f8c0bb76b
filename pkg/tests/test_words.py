"""Word parsing, free reduction, Dehn's algorithm, and word evaluation."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatbundle.errors import InvalidGenusError, WordParseError, WordTooLongError
from flatbundle.lifts import compose
from flatbundle.representations import abelian_representation
from flatbundle.words import (
    Word,
    evaluate_word,
    format_word,
    free_reduce,
    is_trivial,
    parse_word,
    relator,
)

letters_g2 = st.lists(
    st.sampled_from([1, -1, 2, -2, 3, -3, 4, -4]), min_size=0, max_size=40
)


def random_word(rng, g, length):
    codes = []
    for _ in range(length):
        c = int(rng.integers(1, 2 * g + 1))
        codes.append(c if rng.integers(2) == 0 else -c)
    return Word(tuple(codes))


class TestParse:
    def test_genus_one_relator_spelling(self):
        w = parse_word("a1 b1 A1 B1", 1)
        assert w == relator(1)

    def test_unreduced_word_kept(self):
        w = parse_word("a1 A1", 1)
        assert len(w) == 2
        assert len(free_reduce(w)) == 0

    def test_index_out_of_range(self):
        with pytest.raises(WordParseError) as info:
            parse_word("a3 b1", 2)
        assert info.value.position == 0

    def test_unknown_token(self):
        with pytest.raises(WordParseError) as info:
            parse_word("a1 q7", 3)
        assert info.value.position == 1

    @given(letters_g2)
    def test_round_trip(self, letters):
        w = Word(tuple(letters))
        assert parse_word(format_word(w), 2) == w


class TestFreeReduce:
    def test_cancellation_chain(self):
        assert format_word(free_reduce(parse_word("a1 b2 B2 A1 a1", 2))) == "a1"

    def test_relator_already_reduced(self):
        for g in range(1, 11):
            assert free_reduce(relator(g)) == relator(g)
            assert len(relator(g)) == 4 * g

    @given(letters_g2)
    def test_idempotent_and_non_increasing(self, letters):
        w = Word(tuple(letters))
        r = free_reduce(w)
        assert free_reduce(r) == r
        assert len(r) <= len(w)

    def test_invalid_genus(self):
        with pytest.raises(InvalidGenusError):
            relator(0)


class TestIsTrivial:
    def test_defining_relation(self):
        assert is_trivial(relator(2), 2)
        assert is_trivial(relator(3), 3)

    def test_single_generator_is_not_trivial(self):
        assert not is_trivial(parse_word("a1", 2), 2)

    def test_torus_by_exponent_sums(self):
        assert is_trivial(parse_word("a1 b1 A1 B1", 1), 1)
        assert not is_trivial(parse_word("a1 b1 a1", 1), 1)
        assert is_trivial(parse_word("a1 b1 A1 b1 B1 B1", 1), 1)

    def test_conjugates_of_relator(self):
        rng = np.random.default_rng(0)
        for g in (2, 3):
            for _ in range(20):
                w = random_word(rng, g, int(rng.integers(0, 7)))
                r = relator(g) if rng.integers(2) == 0 else relator(g).inverse()
                assert is_trivial(w * r * w.inverse(), g)

    def test_products_of_conjugates(self):
        rng = np.random.default_rng(1)
        for g in (2, 3):
            for _ in range(20):
                prod = Word(())
                for _ in range(int(rng.integers(1, 4))):
                    w = random_word(rng, g, int(rng.integers(0, 7)))
                    r = relator(g) if rng.integers(2) == 0 else relator(g).inverse()
                    prod = prod * (w * r * w.inverse())
                assert is_trivial(prod, g)

    def test_nonzero_abelianization_rejected(self):
        rng = np.random.default_rng(2)
        for g in (2, 3):
            count = 0
            while count < 20:
                w = random_word(rng, g, int(rng.integers(1, 30)))
                if not free_reduce(w).exponent_sums():
                    continue
                count += 1
                assert not is_trivial(w, g)

    def test_word_length_cap(self):
        long_word = Word((1,) * (10**4 + 1))
        with pytest.raises(WordTooLongError):
            is_trivial(long_word, 2)


class TestEvaluateWord:
    def test_empty_word_is_identity(self):
        rep = abelian_representation(1, (Fraction(1, 3), Fraction(1, 7)))
        f = evaluate_word(Word(()), rep)
        assert f(Fraction(5, 4)) == Fraction(5, 4)

    def test_single_letter(self):
        rep = abelian_representation(2, tuple(Fraction(i, 9) for i in range(4)))
        assert evaluate_word(parse_word("a1", 2), rep) is rep.generators[0]
        assert evaluate_word(parse_word("B2", 2), rep)(Fraction(0)) == -Fraction(3, 9)

    def test_relator_under_abelian_rep_is_identity(self):
        rep = abelian_representation(3, tuple(Fraction(i + 1, 11) for i in range(6)))
        f = evaluate_word(relator(3), rep)
        assert f(Fraction(0)) == 0

    def test_homomorphism_on_samples(self):
        rng = np.random.default_rng(3)
        rep = abelian_representation(2, tuple(Fraction(i + 1, 13) for i in range(4)))
        for _ in range(10):
            u = random_word(rng, 2, int(rng.integers(0, 8)))
            v = random_word(rng, 2, int(rng.integers(0, 8)))
            lhs = evaluate_word(u * v, rep)
            rhs = compose(evaluate_word(u, rep), evaluate_word(v, rep))
            assert lhs(Fraction(1, 5)) == rhs(Fraction(1, 5))

    def test_genus_mismatch(self):
        rep = abelian_representation(1, (Fraction(0), Fraction(0)))
        with pytest.raises(InvalidGenusError):
            evaluate_word(parse_word("a2", 2), rep)
