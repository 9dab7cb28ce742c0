"""End-to-end experiment simulations and estimation utilities."""

import numpy as np
import pytest

from ugame import (
    DetectionTable,
    GameConfig,
    Measurement,
    NoiseModel,
    PauliExpectations,
    best_known_probe_d3,
    estimate_gamma,
    fidelity,
    optimal_probe_d2,
    pguess_max_d2,
    post_measurement_ensemble,
    reconstruct_from_pauli,
    register_state,
    simulate_d2,
    simulate_d3,
    simulate_fourier_test,
    sweep_curve_d2,
)
from ugame import refdata
from ugame.discrimination import DiscriminationProblem, helstrom
from ugame.pipeline import pauli_expectations_of


def optimal_d2_measurement(gamma: float) -> Measurement:
    psi = optimal_probe_d2()
    ens = post_measurement_ensemble(GameConfig(d=2, gamma=gamma), np.outer(psi, psi.conj()))
    return helstrom(DiscriminationProblem(states=ens.states))[1]


class TestSimulateD2:
    def test_predicted_port_probabilities(self):
        """Experimental register state, v=0.99: the four published port probabilities."""
        psi = optimal_probe_d2()
        noise = NoiseModel(layer_visibility=0.99, register_state=refdata.REGISTER_STATE_EXP)
        table = simulate_d2(noise, np.outer(psi, psi.conj()), refdata.measurement_d2_optimal())
        np.testing.assert_allclose(
            table.probs.flatten(), refdata.PORT_PROBS_D2_PREDICTED, atol=1e-3
        )
        assert table.p_guess == pytest.approx(refdata.P_GUESS_D2_PREDICTED, abs=5e-4)

    def test_ideal_full_coherence_is_certain(self):
        psi = optimal_probe_d2()
        noise = NoiseModel(layer_visibility=1.0, register_state=register_state(1.0))
        table = simulate_d2(noise, np.outer(psi, psi.conj()), optimal_d2_measurement(1.0))
        assert table.p_guess == pytest.approx(1.0, abs=1e-9)

    def test_ideal_classical_coin(self):
        psi = optimal_probe_d2()
        noise = NoiseModel(layer_visibility=1.0, register_state=register_state(0.0))
        table = simulate_d2(noise, np.outer(psi, psi.conj()), optimal_d2_measurement(0.0))
        assert table.p_guess == pytest.approx((2 + np.sqrt(2)) / 4, abs=1e-9)

    def test_noiseless_pipeline_matches_closed_form_on_grid(self):
        psi = optimal_probe_d2()
        rho = np.outer(psi, psi.conj())
        for gamma in np.arange(0.0, 1.0001, 0.05):
            gamma = float(gamma)
            noise = NoiseModel(layer_visibility=1.0, register_state=register_state(gamma))
            table = simulate_d2(noise, rho, optimal_d2_measurement(gamma))
            assert table.p_guess == pytest.approx(pguess_max_d2(gamma), abs=1e-9)

    def test_global_probe_phase_irrelevant(self):
        psi = optimal_probe_d2()
        noise = NoiseModel(layer_visibility=0.99, register_state=refdata.REGISTER_STATE_EXP)
        m = refdata.measurement_d2_optimal()
        base = simulate_d2(noise, np.outer(psi, psi.conj()), m)
        rotated = np.exp(0.7j) * psi
        again = simulate_d2(noise, np.outer(rotated, rotated.conj()), m)
        np.testing.assert_allclose(again.probs, base.probs, atol=1e-12)

    def test_wrong_probe_dimension_rejected(self):
        with pytest.raises(ValueError, match="2-dimensional"):
            simulate_d2(NoiseModel(), np.eye(3) / 3, refdata.measurement_d2_optimal())


class TestSimulateD3:
    def test_predicted_guessing_probability(self):
        """Experimental register, v=0.98, best known strategy: p_guess about 0.9554."""
        psi = best_known_probe_d3()
        noise = NoiseModel(
            visibility_v=0.98, layer_visibility=0.98,
            register_state=refdata.REGISTER_STATE_EXP,
        )
        table = simulate_d3(noise, np.outer(psi, psi.conj()), refdata.measurement_d3_best())
        assert table.p_guess == pytest.approx(refdata.P_GUESS_D3_PREDICTED, abs=1e-3)

    def test_noiseless_best_known_strategy(self):
        psi = best_known_probe_d3()
        noise = NoiseModel(register_state=register_state(0.9918))
        table = simulate_d3(noise, np.outer(psi, psi.conj()), refdata.measurement_d3_best())
        assert table.p_guess == pytest.approx(0.9753, abs=5e-4)

    def test_noiseless_seesaw_optimum(self, seesaw_d3_gamma1):
        noise = NoiseModel(register_state=register_state(1.0))
        psi = seesaw_d3_gamma1.best_state
        table = simulate_d3(noise, np.outer(psi, psi.conj()), seesaw_d3_gamma1.best_measurement)
        assert table.p_guess >= 0.9788

    def test_guess_one_row_is_empty(self):
        psi = best_known_probe_d3()
        noise = NoiseModel(visibility_v=0.98, register_state=register_state(0.9918))
        table = simulate_d3(noise, np.outer(psi, psi.conj()), refdata.measurement_d3_best())
        np.testing.assert_allclose(table.probs[1, :], 0.0, atol=0)


class TestSimulateFourierTest:
    def test_perfect_visibility_is_identity(self):
        np.testing.assert_allclose(simulate_fourier_test(1.0), np.eye(3), atol=1e-9)

    def test_published_prediction_at_098(self):
        table = simulate_fourier_test(0.98)
        np.testing.assert_allclose(table, refdata.FOURIER_TEST_PREDICTED, atol=1e-4)

    def test_mean_diagonal_near_measured_average(self):
        table = simulate_fourier_test(0.98)
        assert np.diag(table).mean() == pytest.approx(0.9769, abs=1e-4)
        assert abs(np.diag(table).mean() - refdata.FOURIER_TEST_MEAN_DIAGONAL_MEASURED) < 5e-4

    @pytest.mark.parametrize("v", [0.0, 0.3, 0.7, 0.9, 0.98, 1.0])
    def test_columns_are_distributions(self, v):
        table = simulate_fourier_test(v)
        assert table.min() >= -1e-12
        np.testing.assert_allclose(table.sum(axis=0), np.ones(3), atol=1e-9)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            simulate_fourier_test(1.01)


class TestEstimateGamma:
    def test_exact_register_state(self):
        gamma, fid = estimate_gamma(register_state(0.5))
        assert gamma == pytest.approx(0.5, abs=1e-12)
        assert fid == pytest.approx(1.0, abs=1e-9)

    def test_maximally_mixed(self):
        gamma, fid = estimate_gamma(np.eye(2) / 2)
        assert gamma == 0.0
        assert fid == pytest.approx(1.0, abs=1e-9)

    def test_experimental_state(self):
        gamma, fid = estimate_gamma(refdata.REGISTER_STATE_EXP)
        assert gamma == pytest.approx(0.9918, abs=2e-4)
        assert fid >= 0.9995

    def test_grid_recovery(self):
        for gamma in np.arange(0.0, 1.0001, 0.01):
            est, _ = estimate_gamma(register_state(float(gamma)))
            assert est == pytest.approx(float(gamma), abs=5e-5)

    def test_grid_endpoint_is_exactly_one(self):
        est, _ = estimate_gamma(register_state(1.0))
        assert est == 1.0

    def test_scan_agrees_with_scalar_fidelity(self):
        rho = refdata.REGISTER_STATE_EXP
        _, best = estimate_gamma(rho)
        for gamma in (0.95, 0.9918, 1.0):
            assert fidelity(rho, register_state(gamma)) <= best + 1e-10

    def test_bad_step_rejected(self):
        with pytest.raises(ValueError, match="step"):
            estimate_gamma(register_state(0.2), step=0.0)


class TestPauliReconstruction:
    def test_zero_vector_is_maximally_mixed(self):
        out = reconstruct_from_pauli(PauliExpectations(0.0, 0.0, 0.0))
        np.testing.assert_allclose(out, np.eye(2) / 2, atol=0)

    def test_x_eigenstate(self):
        out = reconstruct_from_pauli(PauliExpectations(1.0, 0.0, 0.0))
        np.testing.assert_allclose(out, np.full((2, 2), 0.5), atol=1e-12)

    def test_experimental_register_components(self):
        """Components read off the tomographic state by the inverse map."""
        out = reconstruct_from_pauli(PauliExpectations(0.9910, 0.0314, 0.0248))
        np.testing.assert_allclose(out, refdata.REGISTER_STATE_EXP, atol=1e-3)

    def test_round_trip_through_expectations(self):
        pauli = pauli_expectations_of(refdata.REGISTER_STATE_EXP)
        assert pauli.x == pytest.approx(0.9910, abs=1e-12)
        assert pauli.y == pytest.approx(0.0314, abs=1e-12)
        assert pauli.z == pytest.approx(0.0248, abs=1e-12)
        out = reconstruct_from_pauli(pauli)
        np.testing.assert_allclose(out, refdata.REGISTER_STATE_EXP, atol=1e-12)

    def test_norm_above_slack_rejected(self):
        with pytest.raises(ValueError, match="norm"):
            PauliExpectations(1.0, 0.1, 0.0)

    def test_radial_clip_inside_slack(self):
        eps = 4e-10
        out = reconstruct_from_pauli(PauliExpectations(np.sqrt(1 + eps), 0.0, 0.0))
        assert np.linalg.eigvalsh(out).min() >= -1e-12


class TestDetectionTable:
    def test_negative_entry_rejected(self):
        with pytest.raises(ValueError, match="negative"):
            DetectionTable(probs=np.array([[1.1, 0.0], [-0.1, 0.0]]))

    def test_bad_total_rejected(self):
        with pytest.raises(ValueError, match="sums"):
            DetectionTable(probs=np.array([[0.5, 0.0], [0.0, 0.4]]))

    def test_p_guess_is_diagonal_sum(self):
        table = DetectionTable(probs=np.array([[0.4, 0.1], [0.2, 0.3]]))
        assert table.p_guess == pytest.approx(0.7)


class TestSweepCurve:
    def test_ideal_dephasing_matches_analytic(self):
        rows = sweep_curve_d2([0.0, 0.5, 1.0], layer_v=1.0)
        for row in rows:
            assert row["p_guess_model"] == pytest.approx(row["p_max_analytic"], abs=1e-9)

    def test_published_points_fill_reference_column(self):
        rows = sweep_curve_d2([refdata.GAMMAS_D2[0], 0.123], layer_v=0.99)
        assert rows[0]["p_guess_paper"] == refdata.P_EXP_D2[0]
        assert np.isnan(rows[1]["p_guess_paper"])
