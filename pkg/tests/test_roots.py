"""Root finding: dense-sampling vs companion-matrix cross-validation."""

import math

import numpy as np
import pytest

from trigcrystal import (
    EnsembleSpec,
    TrigPolynomial,
    all_roots_companion,
    derivative_rescaled,
    fraction_real,
    real_roots_sampled,
    sample,
)


def cosine(N):
    a = np.zeros(N + 1)
    a[N] = 1.0
    return TrigPolynomial(N, a, np.zeros(N + 1))


def random_derivative(N, p, seed):
    spec = EnsembleSpec.equal_variance(N, 0, 1, seed)
    f = sample(spec, 0)
    return derivative_rescaled(f, p) if p else f


class TestSampled:
    def test_cos_8x_roots(self):
        rs = real_roots_sampled(cosine(8))
        assert rs.real_count == 16
        expected = math.pi / 16 + np.arange(16) * math.pi / 8
        assert np.max(np.abs(rs.real_roots - expected)) < 1e-10

    def test_sin_x_roots(self):
        f = TrigPolynomial(1, [0.0, 0.0], [0.0, 1.0])
        rs = real_roots_sampled(f)
        assert rs.real_count == 2
        assert abs(rs.real_roots[0] - 0.0) < 1e-10
        assert abs(rs.real_roots[1] - math.pi) < 1e-10

    def test_no_real_roots(self):
        f = TrigPolynomial(1, [2.0, 1.0], [0.0, 0.0])  # 2 + cos x
        rs = real_roots_sampled(f)
        assert rs.real_count == 0
        assert fraction_real(rs, 1) == 0.0

    def test_zero_polynomial_is_degenerate(self):
        f = TrigPolynomial(2, [0.0] * 3, [0.0] * 3)
        with pytest.raises(ValueError, match="degenerate"):
            real_roots_sampled(f)

    def test_oversample_floor(self):
        with pytest.raises(ValueError):
            real_roots_sampled(cosine(2), oversample=2)

    def test_near_tangent_pairs_are_recovered(self):
        # cos(8x) + (1 - eps) dips just below zero at eight minima; each dip
        # hides a close root pair with no grid sign change
        for eps in (1e-3, 1e-5):
            a = np.zeros(9)
            a[0] = 1.0 - eps
            a[8] = 1.0
            f = TrigPolynomial(8, a, np.zeros(9))
            rs = real_roots_sampled(f)
            rc = all_roots_companion(f)
            assert rs.real_count == rc.real_count == 16
            assert np.max(np.abs(rs.real_roots - rc.real_roots)) < 1e-8


class TestCompanion:
    def test_cos_Nx_is_all_real(self):
        N = 9
        rc = all_roots_companion(cosine(N))
        assert rc.real_count == 2 * N
        assert len(rc.complex_roots) == 0
        assert fraction_real(rc, N) == 1.0

    def test_total_count_is_2N(self):
        for seed in range(5):
            N = 11
            f = random_derivative(N, 0, 1000 + seed)
            rc = all_roots_companion(f)
            assert rc.real_count + len(rc.complex_roots) == 2 * N

    def test_complex_roots_conjugate_symmetric(self):
        f = random_derivative(14, 0, 4242)
        rc = all_roots_companion(f)
        z = np.array(sorted(rc.complex_roots, key=lambda w: (round(w.real, 9), w.imag)))
        assert len(z) % 2 == 0
        for k in range(0, len(z), 2):
            assert abs(z[k] - np.conj(z[k + 1])) < 1e-10

    def test_degree_deficient_rejected(self):
        f = TrigPolynomial(3, [0.0, 1.0, 0.0, 0.0], [0.0] * 4)
        with pytest.raises(ValueError, match="degree deficient"):
            all_roots_companion(f)

    def test_classify_tol_insensitive(self):
        counts = {}
        for tol in (1e-10, 1e-8, 1e-6):
            total = 0
            for seed in range(20):
                f = random_derivative(10, 2, 31337 + seed)
                total += all_roots_companion(f, classify_tol=tol).real_count
            counts[tol] = total
        assert counts[1e-10] == counts[1e-8] == counts[1e-6]


class TestCrossValidation:
    def test_methods_agree_on_random_ensembles(self):
        rng = np.random.default_rng(2718)
        for _ in range(40):
            N = int(rng.integers(4, 21))
            p = int(rng.integers(0, 11))
            f = random_derivative(N, p, int(rng.integers(1, 2**31)))
            a = real_roots_sampled(f)
            b = all_roots_companion(f)
            assert a.real_count == b.real_count
            if a.real_count:
                assert np.max(np.abs(a.real_roots - b.real_roots)) < 1e-8

    def test_crystallization_toward_top_mode(self):
        # zeros of high derivatives approach the zeros of the top mode
        # c_N cos(Nx + phi); the attraction sharpens with the order
        N = 8
        f = random_derivative(N, 0, 2024)
        a_top, b_top = f.cos_coeffs[N], f.sin_coeffs[N]
        phi = math.atan2(b_top, a_top)
        top = np.sort(np.mod((phi + math.pi / 2 + np.arange(2 * N) * math.pi) / N,
                             2 * math.pi))

        def max_dist(p):
            rr = real_roots_sampled(derivative_rescaled(f, p)).real_roots
            d = np.abs(rr[:, None] - top[None, :])
            d = np.minimum(d, 2 * math.pi - d)
            return float(d.min(axis=1).max())

        assert max_dist(40) < max_dist(10)


class TestRootSet:
    def test_json_schema(self):
        rc = all_roots_companion(random_derivative(6, 1, 5))
        doc = rc.to_json()
        assert set(doc) == {"real", "complex", "method"}
        assert doc["method"] == "companion"
        assert all(len(pair) == 2 for pair in doc["complex"])
        rs = real_roots_sampled(random_derivative(6, 1, 5))
        assert rs.to_json()["complex"] is None

    def test_csv_one_root_per_line(self):
        rs = real_roots_sampled(cosine(4))
        lines = rs.real_roots_csv().strip().split("\n")
        assert len(lines) == rs.real_count
        assert abs(float(lines[0]) - math.pi / 8) < 1e-10
