import numpy as np
import pytest

from dirsr.filterbank import BandPair1D, analyze_1d, daub4, synthesize_1d


class TestDaub4:
    def test_orthonormality(self):
        f = daub4()
        assert np.dot(f.low, f.low) == pytest.approx(1.0)
        assert np.dot(f.high, f.high) == pytest.approx(1.0)
        assert np.dot(f.low, f.high) == pytest.approx(0.0, abs=1e-15)

    def test_moments(self):
        f = daub4()
        assert f.low.sum() == pytest.approx(np.sqrt(2.0))
        assert f.high.sum() == pytest.approx(0.0, abs=1e-15)
        # vanishing first moment of the high-pass (two vanishing moments)
        assert np.dot(f.high, np.arange(4.0)) == pytest.approx(0.0, abs=1e-14)

    def test_quadrature_mirror_relation(self):
        f = daub4()
        for k in range(4):
            assert f.high[k] == pytest.approx((-1) ** k * f.low[3 - k])

    def test_filters_read_only(self):
        f = daub4()
        with pytest.raises(ValueError):
            f.low[0] = 0.0


class TestAnalyzeSynthesize:
    @pytest.mark.parametrize("n", [4, 6, 8, 16])
    def test_critical_perfect_reconstruction(self, rng, n):
        x = rng.standard_normal(n)
        b = analyze_1d(x, daub4(), "critical")
        assert b.low.size == n // 2 and b.high.size == n // 2
        assert np.allclose(synthesize_1d(b, daub4()), x, atol=1e-12)

    @pytest.mark.parametrize("n", [1, 3, 4, 8, 15])
    def test_oversampled_perfect_reconstruction(self, rng, n):
        x = rng.standard_normal(n)
        b = analyze_1d(x, daub4(), "oversampled")
        assert b.low.size == n and b.high.size == n
        assert np.allclose(synthesize_1d(b, daub4()), x, atol=1e-12)

    def test_critical_energy_conservation(self, rng):
        x = rng.standard_normal(8)
        b = analyze_1d(x, daub4(), "critical")
        assert np.dot(x, x) == pytest.approx(
            np.dot(b.low, b.low) + np.dot(b.high, b.high)
        )

    def test_oversampled_doubles_energy(self, rng):
        # undecimated analysis is a tight frame with redundancy 2
        x = rng.standard_normal(8)
        b = analyze_1d(x, daub4(), "oversampled")
        assert np.dot(b.low, b.low) + np.dot(b.high, b.high) == pytest.approx(
            2.0 * np.dot(x, x)
        )

    def test_oversampled_matches_direct_convolution(self, rng):
        x = rng.standard_normal(8)
        f = daub4()
        b = analyze_1d(x, f, "oversampled")
        direct = [sum(f.low[k] * x[(i + k) % 8] for k in range(4)) for i in range(8)]
        assert np.allclose(b.low, direct, atol=1e-14)

    def test_constant_signal(self):
        b = analyze_1d(np.ones(8), daub4(), "oversampled")
        assert np.allclose(b.low, np.sqrt(2.0))
        assert np.allclose(b.high, 0.0, atol=1e-14)

    def test_critical_rejects_odd_length(self):
        with pytest.raises(ValueError, match="even"):
            analyze_1d(np.zeros(5), daub4(), "critical")

    def test_rejects_empty_and_bad_mode(self):
        with pytest.raises(ValueError, match="empty"):
            analyze_1d(np.zeros(0), daub4(), "oversampled")
        with pytest.raises(ValueError, match="mode"):
            analyze_1d(np.zeros(4), daub4(), "smooth")

    def test_synthesize_checks_lengths(self):
        bad = BandPair1D(np.zeros(3), np.zeros(4), "critical", 8)
        with pytest.raises(ValueError, match="inconsistent"):
            synthesize_1d(bad, daub4())
