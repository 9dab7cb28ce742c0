"""Strategy optimization: closed-form d=2, see-saw for d=3, strategy evaluation."""

import numpy as np
import pytest

from ugame import (
    GameConfig,
    Measurement,
    evaluate_strategy,
    guessing_probability,
    optimize_d2,
    optimize_numeric,
    pguess_max_d2,
    post_measurement_ensemble,
)
from ugame import refdata
from ugame.mesh import prep_state_d3, waveplates_to_measurement
from ugame.optimize import best_known_probe_d3, optimal_probe_d2


class TestOptimizeD2:
    def test_full_coherence(self):
        assert optimize_d2(1.0).p_guess == pytest.approx(1.0, abs=1e-9)

    def test_classical_coin(self):
        assert optimize_d2(0.0).p_guess == pytest.approx((2 + np.sqrt(2)) / 4, abs=1e-9)

    def test_published_intermediate_value(self):
        assert optimize_d2(0.5466).p_guess == pytest.approx(0.90292, abs=1e-5)

    def test_probe_amplitudes(self):
        np.testing.assert_allclose(
            optimize_d2(0.3).best_state, [0.92388, -0.38268], atol=1e-5
        )

    def test_matches_closed_form_and_reproducible(self):
        for gamma in np.arange(0.0, 1.0001, 0.1):
            result = optimize_d2(float(gamma))
            assert result.p_guess == pytest.approx(pguess_max_d2(float(gamma)), abs=1e-9)
            ens = post_measurement_ensemble(
                GameConfig(d=2, gamma=float(gamma)),
                np.outer(result.best_state, result.best_state.conj()),
            )
            replay = guessing_probability(ens, result.best_measurement)
            assert replay == pytest.approx(result.p_guess, abs=1e-9)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            optimize_d2(-0.1)


class TestOptimizeNumeric:
    def test_d2_matches_analytic(self):
        result = optimize_numeric(GameConfig(d=2, gamma=0.75), restarts=4, seed=11)
        assert result.p_guess == pytest.approx(pguess_max_d2(0.75), abs=1e-6)

    def test_d2_never_exceeds_upper_bound_on_grid(self):
        for gamma in np.arange(0.0, 1.0001, 0.1):
            result = optimize_numeric(GameConfig(d=2, gamma=float(gamma)), restarts=4, seed=13)
            reference = pguess_max_d2(float(gamma))
            assert reference - 1e-5 <= result.p_guess <= reference + 1e-9

    def test_d3_classical_coin_value(self):
        result = optimize_numeric(GameConfig(d=3, gamma=0.0), restarts=8, seed=3)
        assert result.p_guess == pytest.approx((1 + 1 / np.sqrt(3)) / 2, abs=1e-4)

    def test_d3_full_coherence_below_one(self, seesaw_d3_gamma1):
        """No perfect guessing in d=3: the optimum stays clearly below 1."""
        assert 0.97 <= seesaw_d3_gamma1.p_guess <= 0.99

    def test_monotone_ascent(self, seesaw_d3_gamma1):
        history = seesaw_d3_gamma1.history
        assert len(history) >= 2
        assert all(b >= a - 1e-12 for a, b in zip(history, history[1:]))

    def test_deterministic_for_fixed_seed(self):
        config = GameConfig(d=3, gamma=0.6)
        first = optimize_numeric(config, restarts=4, seed=21)
        second = optimize_numeric(config, restarts=4, seed=21)
        assert first.p_guess == second.p_guess
        np.testing.assert_array_equal(first.best_state, second.best_state)

    def test_partitioning_independent(self, monkeypatch):
        config = GameConfig(d=3, gamma=0.6)
        serial = optimize_numeric(config, restarts=6, seed=29)
        monkeypatch.setenv("UGAME_THREADS", "3")
        threaded = optimize_numeric(config, restarts=6, seed=29)
        assert serial.p_guess == threaded.p_guess
        np.testing.assert_array_equal(serial.best_state, threaded.best_state)

    def test_result_reproducible_by_evaluation(self, seesaw_d3_gamma1):
        result = seesaw_d3_gamma1
        ens = post_measurement_ensemble(
            GameConfig(d=3, gamma=1.0),
            np.outer(result.best_state, result.best_state.conj()),
        )
        replay = guessing_probability(ens, result.best_measurement)
        assert replay == pytest.approx(result.p_guess, abs=1e-9)

    def test_unsupported_dimension_rejected(self):
        with pytest.raises(ValueError, match="d in"):
            optimize_numeric(GameConfig(d=4, gamma=0.5), restarts=1, seed=0)

    def test_bad_restart_count_rejected(self):
        with pytest.raises(ValueError, match="restarts"):
            optimize_numeric(GameConfig(d=2, gamma=0.5), restarts=0, seed=0)


class TestEvaluateStrategy:
    def test_best_known_setting_with_published_measurement(self):
        """Preparation angles (26.6, 5.9) and the published projector pair."""
        psi = prep_state_d3(26.6, 5.9)
        p = evaluate_strategy(
            GameConfig(d=3, gamma=0.9918),
            np.outer(psi, psi.conj()),
            refdata.measurement_d3_best(),
        )
        assert p == pytest.approx(0.9753, abs=5e-4)

    def test_detuned_setting_with_waveplate_measurement(self):
        """Preparation angles (26.6, 17.9) with its own analysis-waveplate setting."""
        psi = prep_state_d3(26.6, 17.9)
        analysis = waveplates_to_measurement(46.1, 6.5)
        m = Measurement(elements=(
            analysis.elements[0], np.zeros((2, 2), dtype=complex), analysis.elements[1]
        ))
        p = evaluate_strategy(GameConfig(d=3, gamma=0.9918), np.outer(psi, psi.conj()), m)
        assert p == pytest.approx(0.9326, abs=5e-4)

    def test_classical_coin_standard_probe_z_measurement(self):
        """gamma=0, probe |0>, Z readout: 1/2 + 1/4 = 3/4 by direct substitution."""
        rho0 = np.diag([1.0, 0.0]).astype(complex)
        z_meas = Measurement(elements=(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])))
        p = evaluate_strategy(GameConfig(d=2, gamma=0.0), rho0, z_meas)
        assert p == pytest.approx(0.75, abs=1e-12)

    def test_optimal_probe_helpers_are_normalized(self):
        assert np.linalg.norm(optimal_probe_d2()) == pytest.approx(1.0, abs=1e-12)
        assert np.linalg.norm(best_known_probe_d3()) == pytest.approx(1.0, abs=1e-12)
