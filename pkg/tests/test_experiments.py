import numpy as np
import pytest

from qaoadec import experiments
from qaoadec.codes import get_code
from qaoadec.engine import OptimizerConfig

import reference_values as ref


def strip_timestamp(csv_text):
    return "\n".join(l for l in csv_text.splitlines() if not l.startswith("# generated"))


class TestWilson:
    def test_zero_errors(self):
        lo, hi = experiments.wilson_interval(0, 100)
        assert lo == 0.0 and 0 < hi < 0.05

    def test_contains_point_estimate(self):
        lo, hi = experiments.wilson_interval(17, 200)
        assert lo < 17 / 200 < hi


class TestTable1:
    def test_rows_sorted_and_close_to_reference(self):
        record = experiments.table1_rows()
        dbars = [row[0] for row in record.rows]
        assert dbars == sorted(ref.LEVEL1_OPTIMA)
        for dbar, f_star, g_star, b_star, _ in record.rows:
            assert abs(f_star - ref.LEVEL1_OPTIMA[dbar]) < 0.01

    def test_trend_minimum_at_243(self):
        record = experiments.table1_rows()
        by_dbar = {row[0]: row[1] for row in record.rows}
        assert min(by_dbar, key=by_dbar.get) == "2.43"
        assert by_dbar["2.57"] > by_dbar["2.43"]
        assert by_dbar["2.71"] > by_dbar["2.57"]


class TestSweep:
    def test_analytic_matches_simulator(self):
        code = get_code("hamming74-d2.00")
        gs = np.linspace(0, 2 * np.pi, 9)
        bs = np.linspace(0, np.pi, 9)
        record = experiments.sweep_rows(code, gs, bs)
        for _, _, f_sim, f_analytic in record.rows:
            assert abs(f_sim - f_analytic) < 1e-9

    def test_zero_gamma_slice_is_zero(self):
        code = get_code("hamming74")
        record = experiments.sweep_rows(code, np.array([0.0]), np.linspace(0, np.pi, 7))
        assert all(abs(row[2]) < 1e-12 for row in record.rows)


class TestSuccessRate:
    def test_single_shot_row_equals_q(self):
        code = get_code("hamming74-d1.71")
        record = experiments.success_rate_rows(code, seed=1, shot_counts=[1, 10], trials=400)
        q = record.params["q"]
        assert record.rows[0][1] == pytest.approx(q)
        assert q > 1 / 16

    def test_monte_carlo_within_4_sigma(self):
        code = get_code("hamming74-d1.71")
        trials = 1500
        record = experiments.success_rate_rows(
            code, seed=2, shot_counts=[1, 10, 100], trials=trials)
        for _, analytic_rate, mc_rate, *_ in record.rows:
            sigma = np.sqrt(max(analytic_rate * (1 - analytic_rate), 1e-12) / trials)
            assert abs(mc_rate - analytic_rate) <= 4 * sigma + 1e-12

    def test_analytic_curve_monotone(self):
        code = get_code("hamming74-d1.71")
        record = experiments.success_rate_rows(code, seed=3, shot_counts=[1, 5, 25], trials=100)
        analytic = [row[1] for row in record.rows]
        assert analytic == sorted(analytic)


class TestBsc:
    def test_ml_oracle_always_present_and_dominates(self):
        code = get_code("hamming74")
        record = experiments.bsc_rows(code, [0.05], frames=1500, seed=5,
                                      decoder="qaoa-single-shot")
        decoders = [row[1] for row in record.rows]
        assert "ml-oracle" in decoders and "qaoa-single-shot" in decoders
        fer = {row[1]: row[4] for row in record.rows}
        assert fer["qaoa-single-shot"] >= fer["ml-oracle"]

    def test_ml_oracle_noiseless(self):
        code = get_code("hamming74")
        record = experiments.bsc_rows(code, [0.0], frames=300, seed=6, decoder="ml-oracle")
        assert record.rows[0][4] == 0.0

    def test_reproducible_across_thread_counts(self):
        code = get_code("hamming74")
        a = experiments.bsc_rows(code, [0.05, 0.1], frames=2200, seed=9,
                                 decoder="qaoa-multishot", shots=20, threads=1)
        b = experiments.bsc_rows(code, [0.05, 0.1], frames=2200, seed=9,
                                 decoder="qaoa-multishot", shots=20, threads=4)
        assert strip_timestamp(a.to_csv()) == strip_timestamp(b.to_csv())

    def test_ml_rows_shared_across_decoders(self):
        # channel noise comes from its own stream, so the ml-oracle counters
        # are identical whichever decoder runs alongside
        code = get_code("hamming74")
        kwargs = dict(epsilons=[0.08], frames=1200, seed=13)
        a = experiments.bsc_rows(code, decoder="qaoa-single-shot", **kwargs)
        b = experiments.bsc_rows(code, decoder="qaoa-multishot", shots=10, **kwargs)
        c = experiments.bsc_rows(code, decoder="ml-oracle", **kwargs)
        ml = lambda rec: [r for r in rec.rows if r[1] == "ml-oracle"][0][:5]
        assert ml(a) == ml(b) == ml(c)

    def test_reoptimize_per_frame_path(self):
        code = get_code("hamming74")
        record = experiments.bsc_rows(code, [0.05], frames=40, seed=2,
                                      reoptimize_per_frame=True)
        assert record.params["angles"] == "per-frame"
        fer = {row[1]: row[4] for row in record.rows}
        assert fer["qaoa-single-shot"] >= fer["ml-oracle"]

    def test_invalid_decoder(self):
        with pytest.raises(ValueError):
            experiments.bsc_rows(get_code("hamming74"), [0.1], 10, seed=0, decoder="magic")

    def test_invalid_epsilon(self):
        with pytest.raises(ValueError):
            experiments.bsc_rows(get_code("hamming74"), [0.7], 10, seed=0)


class TestCrossEntropy:
    def test_levels_decrease_for_systematic(self):
        cfg = OptimizerConfig(seed=0, random_starts=24)
        record = experiments.cross_entropy_rows([get_code("hamming74")], 2, seed=0, config=cfg)
        ce = {row[2]: row[4] for row in record.rows}
        assert ce[2] <= ce[1]
        uniform = record.rows[0][5]
        assert uniform == pytest.approx(np.log(16))
        assert all(row[4] < uniform for row in record.rows)


class TestCsvRecord:
    def test_header_carries_seed_and_rng(self):
        record = experiments.ResultRecord(
            kind="demo", columns=["a"], rows=[(1,)], seed=7)
        text = record.to_csv()
        assert "# seed: 7 rng: numpy-PCG64" in text
        assert text.splitlines()[-2] == "a"

    def test_identical_reruns_modulo_timestamp(self):
        code = get_code("hamming74")
        a = experiments.bsc_rows(code, [0.02], frames=600, seed=3)
        b = experiments.bsc_rows(code, [0.02], frames=600, seed=3)
        assert strip_timestamp(a.to_csv()) == strip_timestamp(b.to_csv())

    def test_stochastic_rows_carry_seed_and_shots(self):
        record = experiments.bsc_rows(get_code("hamming74"), [0.05], frames=200, seed=11)
        i_shots = record.columns.index("shots")
        i_seed = record.columns.index("seed")
        for row in record.rows:
            assert row[i_seed] == 11 and row[i_shots] >= 1

    def test_experiment_config_validation(self):
        with pytest.raises(ValueError, match="seed"):
            experiments.ExperimentConfig(kind="bsc").validate()
        with pytest.raises(ValueError, match="epsilon"):
            experiments.ExperimentConfig(kind="bsc", seed=1, epsilons=(0.9,)).validate()
        experiments.ExperimentConfig(kind="table1").validate()

    def test_write_csv_to_file(self, tmp_path):
        record = experiments.ResultRecord(kind="demo", columns=["x"], rows=[(1.5,)])
        out = tmp_path / "r.csv"
        experiments.write_csv(record, str(out))
        assert out.read_text().endswith("x\n1.5\n")
