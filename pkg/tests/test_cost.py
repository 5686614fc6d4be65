import numpy as np
import pytest

from qaoadec.codes import LinearCode, hamming_variants, ml_decode_bruteforce
from qaoadec.cost import build_cost, eval_cost


def all_y7():
    for bits in range(128):
        yield np.array([(bits >> i) & 1 for i in range(7)], dtype=np.uint8)


class TestBuildCost:
    def test_clause5_worked_example(self, hamming, zero7):
        # column 5 of the systematic generator is [1,1,0,1]
        ham = build_cost(hamming, zero7)
        clause = ham.clauses[4]
        assert clause.sign == 1
        assert clause.support == (1, 2, 4)

    def test_sign_flip(self, hamming):
        y = np.zeros(7, dtype=np.uint8)
        y[4] = 1
        ham = build_cost(hamming, y)
        assert ham.clauses[4].sign == -1
        assert ham.clauses[4].support == (1, 2, 4)

    def test_systematic_column(self, hamming, zero7):
        ham = build_cost(hamming, zero7)
        assert ham.clauses[0].sign == 1
        assert ham.clauses[0].support == (1,)

    def test_clause_count(self, hamming, zero7):
        ham = build_cost(hamming, zero7)
        assert ham.n == 7 and len(ham.clauses) == 7

    def test_zero_column_rejected(self):
        code = LinearCode([[1, 0, 0], [0, 1, 0]])
        with pytest.raises(ValueError, match="all-zero"):
            build_cost(code, [0, 0, 0])

    def test_length_mismatch(self, hamming):
        with pytest.raises(ValueError):
            build_cost(hamming, [0, 0, 0])


class TestDiagonal:
    def test_little_endian_indexing(self):
        # single clause on qubit 1: eigenvalue flips with the least
        # significant bit of the basis index
        code = LinearCode([[1, 1], [0, 1]])
        ham = build_cost(code, [0, 0])
        first = ham.clauses[0]
        assert first.support == (1,) and first.mask == 0b01
        z = np.arange(4)
        expected_first_clause = 1 - 2 * (z & 1)
        col2 = 1 - 2 * (((z & 1) ^ (z >> 1)) & 1)
        assert np.array_equal(ham.diagonal, expected_first_clause + col2)

    def test_eval_zero_assignment(self, hamming, zero7):
        ham = build_cost(hamming, zero7)
        assert eval_cost(ham, [0, 0, 0, 0]) == 7

    def test_eval_matches_correlation_exhaustive(self, hamming):
        from qaoadec.codes import correlation

        for y in all_y7():
            ham = build_cost(hamming, y)
            for z in range(16):
                zbits = np.array([(z >> i) & 1 for i in range(4)], dtype=np.uint8)
                assert eval_cost(ham, zbits) == correlation(y, hamming.encode(zbits))

    def test_bounds(self, hamming, rng):
        for _ in range(20):
            y = rng.integers(0, 2, 7, dtype=np.uint8)
            ham = build_cost(hamming, y)
            assert ham.diagonal.min() >= -7 and ham.diagonal.max() <= 7

    def test_max_matches_ml_oracle(self, hamming, rng):
        for _ in range(100):
            y = rng.integers(0, 2, 7, dtype=np.uint8)
            ham = build_cost(hamming, y)
            _, corr_star, ties = ml_decode_bruteforce(y, hamming)
            assert ham.max_eigenvalue() == corr_star
            assert ham.argmax_states().size == ties


class TestDecodingEquivalence:
    def test_argmax_sets_equal_exhaustive(self, hamming):
        # maximizing the clause sum is the same decision as ML decoding
        from qaoadec.codes import correlations_all

        for y in all_y7():
            ham = build_cost(hamming, y)
            cost_set = set(ham.argmax_states().tolist())
            corrs = correlations_all(y, hamming)
            ml_set = set(np.nonzero(corrs == corrs.max())[0].tolist())
            assert cost_set == ml_set

    def test_spectrum_multiset_invariant_under_transform(self, rng):
        y = rng.integers(0, 2, 7, dtype=np.uint8)
        base = None
        for code in hamming_variants():
            diag = np.sort(build_cost(code, y).diagonal)
            if base is None:
                base = diag
            else:
                assert np.array_equal(diag, base)
