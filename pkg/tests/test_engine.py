import numpy as np
import pytest

from qaoadec import statevector as sv
from qaoadec.codes import get_code
from qaoadec.cost import build_cost
from qaoadec.engine import (
    AngleSchedule,
    OptimizerConfig,
    cross_entropy,
    fp_expectation,
    grid_sweep,
    optimize_angles,
    run_ansatz,
    success_probability,
)


class TestAngleSchedule:
    def test_p(self):
        assert AngleSchedule((0.1, 0.2), (0.3, 0.4)).p == 2

    def test_mismatched_lengths(self):
        with pytest.raises(ValueError):
            AngleSchedule((0.1,), (0.2, 0.3))

    def test_canonicalized(self):
        a = AngleSchedule((2 * np.pi + 0.5, -0.5), (np.pi + 0.25,) * 2).canonicalized()
        assert a.gammas[0] == pytest.approx(0.5)
        assert a.gammas[1] == pytest.approx(2 * np.pi - 0.5)
        assert all(0 <= b < np.pi for b in a.betas)

    def test_vector_round_trip(self):
        a = AngleSchedule((0.1, 0.2), (0.3, 0.4))
        assert AngleSchedule.from_vector(a.as_vector()) == a


class TestRunAnsatz:
    def test_zero_angles_is_uniform(self, hamming, zero7):
        state = run_ansatz(hamming, zero7, AngleSchedule((0.0,), (0.0,)))
        assert np.allclose(state, 0.25, atol=1e-15)

    def test_identity_layer_appended(self, hamming, zero7):
        base = AngleSchedule((0.4,), (0.9,))
        s1 = run_ansatz(hamming, zero7, base)
        s2 = run_ansatz(hamming, zero7, base.padded())
        assert np.array_equal(s1, s2)

    def test_reference_expectation_at_reported_angles(self, zero7):
        code = get_code("hamming74-d1.86")
        f = fp_expectation(code, zero7, AngleSchedule((0.277,), (0.345,)))
        assert abs(f - 1.790) < 0.005

    def test_norm(self, hamming, zero7, rng):
        angles = AngleSchedule(tuple(rng.uniform(0, 2 * np.pi, 3)),
                               tuple(rng.uniform(0, np.pi, 3)))
        state = run_ansatz(hamming, zero7, angles)
        assert abs(np.vdot(state, state).real - 1) < 1e-10


class TestFpExpectation:
    def test_zero_angles(self, zero7):
        for name in ("hamming74", "hamming74-d2.43", "rm16x5"):
            code = get_code(name)
            y = np.zeros(code.n, dtype=np.uint8)
            assert abs(fp_expectation(code, y, AngleSchedule((0.0,), (0.0,)))) < 1e-12

    def test_reference_value_171(self, zero7):
        code = get_code("hamming74-d1.71")
        f = fp_expectation(code, zero7, AngleSchedule((0.311,), (0.424,)))
        assert abs(f - 2.409) < 0.005

    def test_matches_sampled_estimate(self, zero7, rng):
        code = get_code("hamming74-d1.86")
        ham = build_cost(code, zero7)
        state = run_ansatz(code, zero7, AngleSchedule((0.277,), (0.345,)))
        exact = sv.expectation(state, ham)
        probs = sv.probabilities(state)
        spread = float(np.sqrt(probs @ (ham.diagonal - exact) ** 2))
        shots = 8192
        outcomes = sv.sample_outcomes(state, shots, rng)
        sampled = float(ham.diagonal[outcomes].mean())
        assert abs(sampled - exact) < 4 * spread / np.sqrt(shots)


class TestOptimize:
    def test_level1_systematic(self, zero7):
        result = optimize_angles(get_code("hamming74-d1.86"), zero7, 1)
        assert abs(result.f_star - 1.790) < 0.01
        assert abs(fp_expectation(get_code("hamming74-d1.86"), zero7,
                                  result.best_angles) - result.f_star) < 1e-9

    def test_level1_variant_229(self, zero7):
        result = optimize_angles(get_code("hamming74-d2.29"), zero7, 1)
        assert abs(result.f_star - 1.367) < 0.01

    def test_warm_start_monotone(self, zero7):
        code = get_code("hamming74-d1.86")
        cfg = OptimizerConfig(random_starts=10, seed=1)
        f_prev = -np.inf
        warm = None
        for p in (1, 2, 3):
            result = optimize_angles(code, zero7, p, config=cfg, warm=warm)
            assert result.f_star >= f_prev - 1e-9
            f_prev = result.f_star
            warm = result.best_angles

    def test_angles_canonical_domain(self, zero7):
        result = optimize_angles(get_code("hamming74-d1.71"), zero7, 1)
        g, b = result.best_angles.gammas[0], result.best_angles.betas[0]
        assert 0 <= g < 2 * np.pi and 0 <= b < np.pi

    def test_invalid_level(self, zero7, hamming):
        with pytest.raises(ValueError):
            optimize_angles(hamming, zero7, 0)


class TestGridSweep:
    def test_single_zero_point(self, hamming, zero7):
        surface = grid_sweep(hamming, zero7, [0.0], [0.0])
        assert surface.values.shape == (1, 1)
        assert surface.values[0, 0] == 0.0

    def test_conjugation_symmetry(self, zero7):
        # complex conjugation maps (gamma, beta) -> (2pi - gamma, pi - beta)
        code = get_code("hamming74-d1.86")
        gs = np.linspace(0.1, 2 * np.pi - 0.1, 17)
        bs = np.linspace(0.1, np.pi - 0.1, 17)
        a = grid_sweep(code, zero7, gs, bs)
        b = grid_sweep(code, zero7, 2 * np.pi - gs, np.pi - bs)
        assert np.max(np.abs(a.values - b.values)) < 1e-9

    def test_grid_never_beats_optimum(self, zero7):
        code = get_code("hamming74-d1.86")
        result = optimize_angles(code, zero7, 1)
        gs = np.linspace(0, 2 * np.pi, 64, endpoint=False)
        bs = np.linspace(0, np.pi, 32, endpoint=False)
        surface = grid_sweep(code, zero7, gs, bs)
        assert surface.values.max() <= result.f_star + 1e-9

    def test_bit_identical_reruns(self, hamming, zero7):
        gs = np.linspace(0, 2, 5)
        bs = np.linspace(0, 1, 5)
        a = grid_sweep(hamming, zero7, gs, bs)
        b = grid_sweep(hamming, zero7, gs, bs)
        assert np.array_equal(a.values, b.values)


class TestDecoderMetrics:
    def test_success_probability_basis_state(self, hamming, zero7):
        state = np.zeros(16, dtype=np.complex128)
        state[0] = 1.0
        assert success_probability(state, hamming, zero7) == 1.0

    def test_success_probability_uniform(self, hamming, zero7):
        assert success_probability(sv.init_plus(4), hamming, zero7) == pytest.approx(1 / 16)

    def test_accumulated_success_bernoulli(self, zero7, rng):
        code = get_code("hamming74-d1.71")
        state = run_ansatz(code, zero7, AngleSchedule((0.311,), (0.424,)))
        q = success_probability(state, code, zero7)
        ham = build_cost(code, zero7)
        trials, n_shots = 3000, 10
        outcomes = sv.sample_outcomes(state, trials * n_shots, rng).reshape(trials, n_shots)
        hit = np.isin(outcomes, ham.argmax_states()).any(axis=1).mean()
        expected = 1 - (1 - q) ** n_shots
        sigma = np.sqrt(expected * (1 - expected) / trials)
        assert abs(hit - expected) < 4 * sigma

    def test_cross_entropy_basis_state(self, hamming, zero7):
        state = np.zeros(16, dtype=np.complex128)
        state[0] = 1.0
        assert cross_entropy(state, hamming, zero7) == 0.0

    def test_cross_entropy_uniform(self, hamming, zero7):
        assert cross_entropy(sv.init_plus(4), hamming, zero7) == pytest.approx(np.log(16))

    def test_level2_beats_level1_systematic(self, zero7):
        code = get_code("hamming74-d1.86")
        r1 = optimize_angles(code, zero7, 1)
        r2 = optimize_angles(code, zero7, 2, warm=r1.best_angles,
                             config=OptimizerConfig(random_starts=24, seed=0))
        ce1 = cross_entropy(run_ansatz(code, zero7, r1.best_angles), code, zero7)
        ce2 = cross_entropy(run_ansatz(code, zero7, r2.best_angles), code, zero7)
        assert ce2 < ce1
