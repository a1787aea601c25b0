"""Monte-Carlo draws, summaries, empirical ROCs, and the lemma oracle."""

import dataclasses
import math

import numpy as np
import pytest

from ris_sei.analytic import derive_stats, lemma1_variance
from ris_sei.channel import (
    block_samples,
    draw_realization,
    equivalent_channel,
    simulate_block,
    substream,
)
from ris_sei.detector import rss
from ris_sei.errors import InsufficientTrialsError
from ris_sei.model import GaussianStat, Hypothesis, RisState, VarianceMode
from ris_sei.montecarlo import (
    STREAM_T,
    calibrated_variances,
    delta_samples,
    empirical_delta_distribution,
    empirical_roc,
    empirical_t_distribution,
    equivalent_channel_power,
    roc_from_deltas,
    summarize,
    t_samples,
    validate_gaussianity,
)

from helpers import make_scenario


class TestTSamples:
    def test_deterministic(self):
        scenario = make_scenario()
        a = t_samples(scenario, Hypothesis.LEGITIMATE, 300)
        b = t_samples(scenario, Hypothesis.LEGITIMATE, 300)
        assert np.array_equal(a, b)

    def test_prefix_stability(self):
        # Trial i depends only on its index: a longer run starts identically.
        scenario = make_scenario()
        short = t_samples(scenario, Hypothesis.LEGITIMATE, 300)
        long = t_samples(scenario, Hypothesis.LEGITIMATE, 900)
        assert np.array_equal(long[:300], short)

    def test_chunking_invisible(self):
        # 300 spans multiple internal chunks; 257 straddles one boundary.
        scenario = make_scenario()
        a = t_samples(scenario, Hypothesis.LEGITIMATE, 257)
        b = t_samples(scenario, Hypothesis.LEGITIMATE, 300)[:257]
        assert np.array_equal(a, b)

    def test_matches_block_engine(self):
        # White-box: the T stream is the block engine on a known key.
        scenario = make_scenario()
        values = t_samples(scenario, Hypothesis.SPOOFING, 128)
        key = (STREAM_T, 0, Hypothesis.SPOOFING.tag, 0, 0)
        y = block_samples(scenario, Hypothesis.SPOOFING, key, 0, 128)
        expected = (y.real**2 + y.imag**2).mean(axis=1)
        assert np.array_equal(values, expected)

    def test_replicates_differ(self):
        scenario = make_scenario()
        a = t_samples(scenario, Hypothesis.LEGITIMATE, 200, replicate=0)
        b = t_samples(scenario, Hypothesis.LEGITIMATE, 200, replicate=1)
        assert not np.array_equal(a, b)

    def test_too_few_trials(self):
        with pytest.raises(InsufficientTrialsError):
            t_samples(make_scenario(), Hypothesis.LEGITIMATE, 99)

    def test_mean_matches_rss_of_simulated_blocks(self):
        # Cross-check against the public single-block path on a small run.
        scenario = make_scenario(L=32)
        values = t_samples(scenario, Hypothesis.LEGITIMATE, 500)
        blocks = [
            rss(simulate_block(scenario, Hypothesis.LEGITIMATE, block_index=i)).value
            for i in range(500)
        ]
        # Different streams, same distribution.
        se = math.sqrt(values.var(ddof=1) / 500 + np.var(blocks, ddof=1) / 500)
        assert abs(values.mean() - np.mean(blocks)) < 5 * se

    def test_doubling_block_length_halves_variance(self):
        base = make_scenario(L=50)
        double = dataclasses.replace(base, samples_per_block=100)
        v1 = t_samples(base, Hypothesis.LEGITIMATE, 20_000).var(ddof=1)
        v2 = t_samples(double, Hypothesis.LEGITIMATE, 20_000).var(ddof=1)
        assert v1 / v2 == pytest.approx(2.0, rel=0.1)


class TestDeltaSamples:
    def test_h0_mean_is_zero(self):
        scenario = make_scenario(L=100)
        deltas = delta_samples(scenario, Hypothesis.LEGITIMATE, 30_000)
        se = math.sqrt(deltas.var(ddof=1) / len(deltas))
        assert abs(deltas.mean()) < 4 * se

    def test_h0_variance_doubles_t_variance(self):
        scenario = make_scenario(L=100)
        deltas = delta_samples(scenario, Hypothesis.LEGITIMATE, 30_000)
        singles = t_samples(scenario, Hypothesis.LEGITIMATE, 30_000)
        assert deltas.var(ddof=1) / singles.var(ddof=1) == pytest.approx(2.0, abs=0.1)

    def test_h1_mean(self):
        scenario = make_scenario(L=100)
        deltas = delta_samples(scenario, Hypothesis.SPOOFING, 30_000)
        expected = lemma1_variance(scenario.ris, scenario.channel) - scenario.channel.var_e
        se = math.sqrt(deltas.var(ddof=1) / len(deltas))
        assert abs(deltas.mean() - expected) < 4 * se

    def test_deterministic(self):
        scenario = make_scenario()
        a = delta_samples(scenario, Hypothesis.SPOOFING, 200)
        b = delta_samples(scenario, Hypothesis.SPOOFING, 200)
        assert np.array_equal(a, b)

    def test_too_few_trials(self):
        with pytest.raises(InsufficientTrialsError):
            delta_samples(make_scenario(), Hypothesis.LEGITIMATE, 10)


class TestSummarize:
    def test_moments_and_histogram(self):
        values = np.array([1.0, 2.0, 3.0, 4.0])
        summary = summarize(values)
        assert summary.n_trials == 4
        assert summary.mean == pytest.approx(2.5)
        assert summary.variance == pytest.approx(np.var(values, ddof=1))
        assert sum(summary.bin_counts) == 4
        assert summary.bin_edges[0] <= values.min()
        assert summary.bin_edges[-1] >= values.max()

    def test_std_error(self):
        summary = summarize(np.arange(100, dtype=np.float64))
        assert summary.std_error == pytest.approx(math.sqrt(summary.variance / 100))

    def test_distribution_wrappers(self):
        scenario = make_scenario(L=16)
        t_summary = empirical_t_distribution(scenario, Hypothesis.LEGITIMATE, 200)
        d_summary = empirical_delta_distribution(scenario, Hypothesis.SPOOFING, 200)
        assert t_summary.n_trials == 200
        assert d_summary.n_trials == 200
        assert np.array_equal(
            t_samples(scenario, Hypothesis.LEGITIMATE, 200).mean(), t_summary.mean
        )


class TestRocFromDeltas:
    def test_rates_are_exact_counts(self):
        dt0 = np.array([0.0, 1.0, 2.0, 3.0])
        dt1 = np.array([2.0, 3.0, 4.0, 5.0])
        curve = roc_from_deltas(dt0, dt1, [1.5])
        assert curve.points == ((2 / 4, 4 / 4),)
        assert curve.n_trials_per_point == 4

    def test_sorted_by_false_alarm(self):
        dt0 = np.linspace(-1, 1, 100)
        dt1 = np.linspace(0, 2, 100)
        curve = roc_from_deltas(dt0, dt1, [0.5, -0.5, 0.0])
        pf = curve.p_false_alarm
        assert list(pf) == sorted(pf)

    def test_extreme_thresholds(self):
        dt0 = np.linspace(-1, 1, 50)
        dt1 = np.linspace(0, 2, 50)
        curve = roc_from_deltas(dt0, dt1, [-10.0, 10.0])
        assert curve.points[0] == (0.0, 0.0)  # points sort by ascending P_f
        assert curve.points[-1] == (1.0, 1.0)

    def test_monotone_by_construction(self):
        scenario = make_scenario(L=50)
        curve = empirical_roc(scenario, np.linspace(-0.5, 0.5, 21), 2_000)
        pf = curve.p_false_alarm
        pd = curve.p_detection
        assert all(a <= b for a, b in zip(pf, pf[1:]))
        assert all(a <= b for a, b in zip(pd, pd[1:]))

    def test_blind_scenario_hugs_diagonal(self):
        # var_e == sigma_h^2 makes both hypotheses identically distributed.
        scenario = make_scenario(
            n=1, state=RisState.OFF, var_a=0.7, var_e=0.7, noise_var=0.5, L=80
        )
        thresholds = np.linspace(-0.2, 0.2, 9)
        curve = empirical_roc(scenario, thresholds, 10_000)
        for pf, pd in curve.points:
            assert abs(pd - pf) <= 0.03


class TestCalibratedVariances:
    def test_matches_fourth_moment_for_weak_cascade(self):
        scenario = make_scenario(n=2, var_ar=0.3, var_rb=0.3, L=64)
        fourth = derive_stats(scenario, VarianceMode.FOURTH_MOMENT)
        v_t0, v_t1, v_d0, v_d1 = calibrated_variances(scenario, 40_000)
        assert v_t0 / fourth.t_h0.variance == pytest.approx(1.0, abs=0.06)
        assert v_t1 / fourth.t_h1.variance == pytest.approx(1.0, abs=0.06)
        assert v_d0 / fourth.dt_h0.variance == pytest.approx(1.0, abs=0.06)
        assert v_d1 / fourth.dt_h1.variance == pytest.approx(1.0, abs=0.06)

    def test_too_few_trials(self):
        with pytest.raises(InsufficientTrialsError):
            calibrated_variances(make_scenario(), 50)


class TestValidateGaussianity:
    def test_true_gaussian_passes(self):
        rng = substream(99, (0,))
        draws = 1.5 + 0.7 * rng.standard_normal(20_000)
        report = validate_gaussianity(summarize(draws), GaussianStat(1.5, 0.49))
        assert report.passed
        assert report.mean_ok and report.cdf_ok

    def test_wrong_mean_fails(self):
        rng = substream(99, (1,))
        draws = rng.standard_normal(20_000)
        report = validate_gaussianity(summarize(draws), GaussianStat(0.5, 1.0))
        assert not report.mean_ok
        assert not report.passed

    def test_wrong_shape_fails_cdf(self):
        # Exponential draws with matched mean/variance still miss the CDF.
        rng = substream(99, (2,))
        draws = rng.exponential(1.0, 50_000)
        report = validate_gaussianity(summarize(draws), GaussianStat(1.0, 1.0))
        assert not report.cdf_ok

    def test_zero_variance_target_fails(self):
        rng = substream(99, (3,))
        report = validate_gaussianity(
            summarize(rng.standard_normal(2_000)), GaussianStat(0.0, 0.0)
        )
        assert not report.passed
        assert report.cdf_gap == float("inf")

    def test_too_few_trials(self):
        with pytest.raises(InsufficientTrialsError):
            validate_gaussianity(summarize(np.arange(10.0)), GaussianStat(0.0, 1.0))


class TestEquivalentChannelPower:
    def test_matches_closed_form(self):
        from ris_sei.model import ChannelParams, RisConfig

        ris = RisConfig(6, (1.0, 0.9, 0.8, 0.7, 0.6, 0.5), (0.0, 0.5, 1.0, 1.5, 2.0, 2.5))
        params = ChannelParams(0.6, 0.4, 0.9, 0.25, 0.8)
        mean, se = equivalent_channel_power(ris, params, 100_000, seed=21)
        assert abs(mean - lemma1_variance(ris, params)) < 4 * se

    def test_matches_per_realization_loop(self):
        # Second oracle route: average |h_eq|^2 over explicit realizations.
        from ris_sei.model import ChannelParams, RisConfig

        ris = RisConfig(3, (1.0, 0.5, 0.25), (0.0, 1.0, 2.0))
        params = ChannelParams(0.6, 0.4, 0.9, 0.25, 0.8)
        rng = substream(22, (0,))
        powers = np.array(
            [
                abs(equivalent_channel(draw_realization(params, 3, rng), ris)) ** 2
                for _ in range(20_000)
            ]
        )
        mean, se = equivalent_channel_power(ris, params, 100_000, seed=23)
        pooled = math.sqrt(se**2 + powers.var(ddof=1) / len(powers))
        assert abs(mean - powers.mean()) < 4 * pooled

    def test_deterministic(self):
        from ris_sei.model import ChannelParams, RisConfig

        ris = RisConfig(2, (1.0, 1.0), (0.0, 0.0))
        params = ChannelParams(0.5, 0.5, 1.0, 0.25, 0.8)
        assert equivalent_channel_power(ris, params, 5_000, seed=3) == equivalent_channel_power(
            ris, params, 5_000, seed=3
        )

    def test_too_few_draws(self):
        from ris_sei.model import ChannelParams, RisConfig

        with pytest.raises(InsufficientTrialsError):
            equivalent_channel_power(
                RisConfig(1, (1.0,), (0.0,)), ChannelParams(1, 1, 1, 1, 1), 10, seed=3
            )
