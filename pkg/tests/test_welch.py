import numpy as np
import pytest

from biogate.errors import WindowLongerThanSegment
from biogate.features import PsdEstimate, psd_summary, welch_psd
from biogate.signal_model import Segment


def seg(samples, fs):
    return Segment(np.asarray(samples, float), fs, duration_s=len(samples) / fs)


class TestParseval:
    @pytest.mark.parametrize("seed", range(5))
    def test_white_noise_integral_matches_variance(self, seed):
        rng = np.random.default_rng(seed)
        x = rng.normal(0.0, 1.0, size=800)
        x -= x.mean()
        psd = welch_psd(seg(x, 100.0))
        assert abs(psd.integral() - x.var()) / x.var() < 0.10

    @pytest.mark.parametrize("f0,amp", [(5.0, 1.0), (13.0, 2.0), (31.0, 0.5)])
    def test_bin_centered_sinusoid_power(self, f0, amp):
        # analytic mean power of A*sin is A^2/2; f0 on a 1 Hz bin center
        t = np.arange(800) / 100.0
        x = amp * np.sin(2 * np.pi * f0 * t)
        psd = welch_psd(seg(x, 100.0))
        expected = amp**2 / 2.0
        assert abs(psd.integral() - expected) / expected < 0.05
        peak = psd.frequencies_hz[np.argmax(psd.power)]
        assert peak == pytest.approx(f0, abs=psd.frequencies_hz[1])

    def test_zero_signal_zero_power(self):
        psd = welch_psd(seg(np.zeros(800), 100.0))
        assert np.all(psd.power == 0.0)


class TestShape:
    def test_grid_runs_zero_to_nyquist(self):
        psd = welch_psd(seg(np.random.default_rng(0).normal(size=800), 100.0))
        assert psd.frequencies_hz[0] == 0.0
        assert psd.frequencies_hz[-1] == 50.0
        assert np.all(np.diff(psd.frequencies_hz) > 0)

    def test_eight_second_segment_averages_fifteen_windows(self):
        # 8 s at 100 Hz, 1 s window, 50% overlap: 15 periodograms
        x = np.random.default_rng(1).normal(size=800)
        n_windows = 1 + (800 - 100) // 50
        assert n_windows == 15
        welch_psd(seg(x, 100.0))  # must accept exactly this layout

    def test_window_longer_than_segment(self):
        with pytest.raises(WindowLongerThanSegment):
            welch_psd(seg(np.ones(50), 100.0), window_s=1.0)

    def test_window_below_eight_samples(self):
        with pytest.raises(ValueError):
            welch_psd(seg(np.ones(800), 100.0), window_s=0.05)

    def test_bad_overlap(self):
        with pytest.raises(ValueError):
            welch_psd(seg(np.ones(800), 100.0), overlap_frac=1.0)

    def test_validation_of_estimate(self):
        with pytest.raises(ValueError):
            PsdEstimate(np.array([0.0, 1.0]), np.array([1.0, -2.0]))


class TestAgainstScipy:
    def test_matches_library_welch(self):
        scipy_signal = pytest.importorskip("scipy.signal")
        rng = np.random.default_rng(42)
        x = rng.normal(size=1600)
        mine = welch_psd(seg(x, 200.0), window_s=1.0, overlap_frac=0.5)
        f, p = scipy_signal.welch(
            x, fs=200.0, window="hann", nperseg=200, noverlap=100, detrend="constant"
        )
        assert np.allclose(mine.frequencies_hz, f)
        assert np.allclose(mine.power, p, rtol=1e-8, atol=1e-12)


class TestSummary:
    def test_dc_offset_does_not_move_the_stats(self):
        x = np.random.default_rng(3).normal(size=800)
        base = psd_summary(welch_psd(seg(x, 100.0)))
        shifted = psd_summary(welch_psd(seg(x + 100.0, 100.0)))
        assert shifted[0] == pytest.approx(base[0], rel=1e-9)
        assert shifted[1] == pytest.approx(base[1], rel=1e-9)

    def test_stats_cover_positive_frequencies(self):
        psd = welch_psd(seg(np.random.default_rng(4).normal(size=800), 100.0))
        mean_p, std_p = psd_summary(psd)
        body = psd.power[1:]
        assert mean_p == pytest.approx(body.mean())
        assert std_p == pytest.approx(body.std())
