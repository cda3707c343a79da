import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ringvac import (
    DomainError,
    ModelPoint,
    inner_products,
    mode_frequencies,
    mode_function,
    mode_residuals,
    secular_value,
    spectrum_modes,
)

# Frozen oracle values, computed independently by bisection on the raw
# secular function (200 halvings from a 1e-3 scan).
FIRST_ROOT_B0_L2 = 0.38344860277068993
ROOTS_B03_L5 = [
    0.41562989847471254,
    0.8532241427875822,
    1.3609649210899204,
    1.6545027292321146,
    2.1880089796474795,
    2.6973384702265992,
]
# Doppler multiset m(1 -+ beta) for beta = 0.5 up to 3.2.
DOPPLER_B05 = [0.5, 1.0, 1.5, 1.5, 2.0, 2.5, 3.0, 3.0]


class TestSecularValue:
    def test_known_value(self):
        # alpha=1/2, beta=0, lam=2: 0.5 * 1 * 1 - 0.5 * 0
        assert secular_value(0.5, ModelPoint(beta=0.0, lambda_hat=2.0)) == pytest.approx(0.5)

    def test_vectorized(self):
        p = ModelPoint(beta=0.2, lambda_hat=1.0)
        a = np.array([0.3, 0.7, 1.1])
        v = secular_value(a, p)
        assert v.shape == (3,)
        assert v[1] == pytest.approx(secular_value(0.7, p))

    def test_dirichlet_rejected(self):
        with pytest.raises(DomainError):
            secular_value(0.5, ModelPoint(beta=0.0, lambda_hat=math.inf))

    @given(
        alpha=st.floats(0.01, 8.0),
        beta=st.floats(-0.9, 0.9),
        lam=st.floats(0.0, 50.0),
    )
    def test_even_in_beta(self, alpha, beta, lam):
        p_plus = ModelPoint(beta=beta, lambda_hat=lam)
        p_minus = ModelPoint(beta=-beta, lambda_hat=lam)
        a = secular_value(alpha, p_plus)
        b = secular_value(alpha, p_minus)
        assert a == pytest.approx(b, rel=1e-13, abs=1e-13)


class TestModeFrequencies:
    def test_doppler_multiset_at_zero_coupling(self):
        spec = mode_frequencies(ModelPoint(beta=0.5, lambda_hat=0.0), alpha_max=3.2)
        assert len(spec.alphas) == len(DOPPLER_B05)
        for got, want in zip(spec.alphas, DOPPLER_B05):
            assert got == pytest.approx(want, abs=1e-10)

    def test_degeneracy_flags_mark_coincident_pairs(self):
        spec = mode_frequencies(ModelPoint(beta=0.5, lambda_hat=0.0), alpha_max=3.2)
        flagged = [a for a, d in zip(spec.alphas, spec.degenerate) if d]
        assert flagged == pytest.approx([1.5, 1.5, 3.0, 3.0], abs=1e-10)

    def test_first_root_beta_zero(self):
        spec = mode_frequencies(ModelPoint(beta=0.0, lambda_hat=2.0), alpha_max=1.2)
        assert spec.alphas[0] == pytest.approx(FIRST_ROOT_B0_L2, abs=1e-12)
        # integers stay in the spectrum at beta = 0 for every coupling
        assert spec.alphas[1] == pytest.approx(1.0, abs=1e-12)

    def test_beta_zero_transcendental_condition(self):
        # non-integer roots at beta=0 satisfy tan(pi a) = lam / (2 a)
        spec = mode_frequencies(ModelPoint(beta=0.0, lambda_hat=3.0), alpha_max=4.0)
        for a in spec.alphas:
            if abs(a - round(a)) > 1e-6:
                assert math.tan(math.pi * a) == pytest.approx(3.0 / (2 * a), rel=1e-8)

    def test_oracle_roots_beta03_lam5(self):
        spec = mode_frequencies(ModelPoint(beta=0.3, lambda_hat=5.0), alpha_max=2.75)
        assert len(spec.alphas) == len(ROOTS_B03_L5)
        for got, want in zip(spec.alphas, ROOTS_B03_L5):
            assert got == pytest.approx(want, abs=1e-10)

    def test_dirichlet_closed_form(self):
        spec = mode_frequencies(ModelPoint(beta=0.5, lambda_hat=math.inf), alpha_max=2.0)
        want = [0.375 * m for m in range(1, 6)]
        assert list(spec.alphas) == pytest.approx(want, abs=0)

    def test_strong_coupling_approaches_dirichlet(self):
        spec = mode_frequencies(ModelPoint(beta=0.5, lambda_hat=1e6), alpha_max=2.0)
        for a in spec.alphas:
            m = round(a / 0.375)
            assert a == pytest.approx(0.375 * m, abs=1e-4)

    def test_weak_coupling_continuity(self):
        # every zero-coupling value survives a tiny coupling; one extra root
        # near sqrt(lam / 2 pi) rises from the excluded origin
        lam = 1e-6
        spec = mode_frequencies(ModelPoint(beta=0.5, lambda_hat=lam), alpha_max=3.2)
        lifted = math.sqrt(lam / (2 * math.pi))
        assert spec.alphas[0] == pytest.approx(lifted, rel=1e-2)
        rest = list(spec.alphas[1:])
        assert len(rest) == len(DOPPLER_B05)
        for got, want in zip(rest, DOPPLER_B05):
            assert got == pytest.approx(want, abs=1e-5)

    def test_roots_positive_sorted_within_window(self):
        spec = mode_frequencies(ModelPoint(beta=0.7, lambda_hat=10.0), alpha_max=5.0)
        a = np.asarray(spec.alphas)
        assert np.all(a > 0)
        assert np.all(np.diff(a) >= 0)
        assert a[-1] <= 5.0 * (1 + 1e-9)

    def test_spectrum_even_in_beta(self):
        p = mode_frequencies(ModelPoint(beta=0.6, lambda_hat=4.0), alpha_max=3.0)
        m = mode_frequencies(ModelPoint(beta=-0.6, lambda_hat=4.0), alpha_max=3.0)
        assert list(p.alphas) == pytest.approx(list(m.alphas), abs=1e-10)

    def test_residuals_of_returned_roots(self):
        spec = mode_frequencies(ModelPoint(beta=0.3, lambda_hat=5.0), alpha_max=2.75)
        p = ModelPoint(beta=0.3, lambda_hat=5.0)
        for a in spec.alphas:
            assert abs(secular_value(a, p)) < 1e-10 * (1 + a + 5.0 / 4)

    def test_bad_window(self):
        with pytest.raises(DomainError):
            mode_frequencies(ModelPoint(beta=0.0, lambda_hat=1.0), alpha_max=0.0)

    def test_light_speed_rejected(self):
        with pytest.raises(DomainError):
            mode_frequencies(ModelPoint(beta=1.0, lambda_hat=1.0), alpha_max=2.0)


class TestModeFunction:
    @pytest.mark.parametrize("beta,lam", [(0.0, 0.0), (0.0, 2.0), (0.5, 2.0), (0.5, 50.0), (-0.4, 7.0)])
    def test_residuals_small(self, beta, lam):
        point = ModelPoint(beta=beta, lambda_hat=lam)
        spec = mode_frequencies(point, alpha_max=3.0)
        for mode in spectrum_modes(spec):
            r = mode_residuals(mode)
            assert r.ode_max < 1e-9
            assert r.periodicity_defect < 1e-9
            assert r.jump_defect < 1e-9

    def test_orthonormal_under_both_relations(self):
        spec = mode_frequencies(ModelPoint(beta=0.5, lambda_hat=2.0), alpha_max=3.0)
        modes = spectrum_modes(spec)[:5]
        for i, mi in enumerate(modes):
            for j, mj in enumerate(modes):
                first, second = inner_products(mi, mj)
                want = 1.0 if i == j else 0.0
                assert abs(first - want) < 1e-9
                assert abs(second) < 1e-9

    def test_degenerate_pair_is_orthonormalized(self):
        # coincident Doppler pair at alpha = 1.5 for beta = 0.5, lam = 0
        point = ModelPoint(beta=0.5, lambda_hat=0.0)
        m0 = mode_function(1.5, point, branch=0)
        m1 = mode_function(1.5, point, branch=1)
        f00, s00 = inner_products(m0, m0)
        f11, s11 = inner_products(m1, m1)
        f01, s01 = inner_products(m0, m1)
        assert abs(f00 - 1) < 1e-10 and abs(f11 - 1) < 1e-10
        assert abs(f01) < 1e-10 and abs(s01) < 1e-10

    def test_dirichlet_mode_has_nodes(self):
        point = ModelPoint(beta=0.5, lambda_hat=math.inf)
        mode = mode_function(0.75, point)
        assert abs(mode(0.0)) < 1e-12
        assert abs(mode(2 * math.pi)) < 1e-12
        r = mode_residuals(mode)
        assert r.ode_max < 1e-9
        assert r.jump_defect < 1e-12

    def test_strong_coupling_mode_nearly_vanishes_at_barrier(self):
        point = ModelPoint(beta=0.0, lambda_hat=1e6)
        spec = mode_frequencies(point, alpha_max=1.0)
        mode = mode_function(spec.alphas[0], point)
        assert abs(mode(0.0)) < 1e-2

    def test_non_root_rejected(self):
        point = ModelPoint(beta=0.0, lambda_hat=2.0)
        with pytest.raises(DomainError):
            mode_function(0.5, point)

    def test_non_root_accepted_without_validation_fails_diagnostics(self):
        # negative control: the defect report must expose a wrong frequency
        point = ModelPoint(beta=0.0, lambda_hat=2.0)
        mode = mode_function(FIRST_ROOT_B0_L2 + 1e-3, point, validate=False)
        r = mode_residuals(mode)
        assert max(r.periodicity_defect, r.jump_defect) > 1e-5

    def test_branch_misuse_rejected(self):
        point = ModelPoint(beta=0.0, lambda_hat=2.0)
        with pytest.raises(DomainError):
            mode_function(1.0, point, branch=2)

    @settings(max_examples=25, deadline=None)
    @given(beta=st.floats(-0.8, 0.8), lam=st.floats(0.1, 20.0))
    def test_first_mode_normalized(self, beta, lam):
        point = ModelPoint(beta=beta, lambda_hat=lam)
        spec = mode_frequencies(point, alpha_max=1.5)
        mode = mode_function(spec.alphas[0], point)
        first, second = inner_products(mode, mode)
        assert abs(first - 1) < 1e-8
        assert abs(second) < 1e-8


class TestSpectrumModes:
    def test_count_limits_output(self):
        spec = mode_frequencies(ModelPoint(beta=0.5, lambda_hat=2.0), alpha_max=4.0)
        modes = spectrum_modes(spec, count=3)
        assert len(modes) == 3
        assert [m.alpha for m in modes] == pytest.approx(list(spec.alphas[:3]))

    def test_degenerate_pairs_get_distinct_branches(self):
        spec = mode_frequencies(ModelPoint(beta=0.5, lambda_hat=0.0), alpha_max=3.2)
        modes = spectrum_modes(spec)
        pairs = [m for m in modes if abs(m.alpha - 1.5) < 1e-9]
        assert len(pairs) == 2
        f, s = inner_products(pairs[0], pairs[1])
        assert abs(f) < 1e-10 and abs(s) < 1e-10
