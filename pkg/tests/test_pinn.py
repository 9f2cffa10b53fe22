from __future__ import annotations

import logging
import math
import tempfile
import unittest
from pathlib import Path

import numpy as np

from autodiff import DualValue, dual_propagate
from pinn import (
    HIDDEN_LAYERS,
    Adam,
    CheckpointFormatError,
    MlpParams,
    TrainingConfig,
    TrainingDivergedError,
    init_params,
    initial_abscissae,
    loss_f,
    loss_u,
    parse_checkpoint,
    predict,
    read_checkpoint,
    residual_f,
    residual_from_dual,
    sample_collocation,
    serialize_checkpoint,
    train,
    write_checkpoint,
    write_loss_history_csv,
)
from problems import FluxKind, get_problem, ic_eval


def _constant_params(width: int, c: float) -> MlpParams:
    arrays = [np.zeros_like(a) for a in init_params(width, 0).arrays()]
    arrays[-1] = np.array([c])
    return MlpParams.from_arrays(arrays)


class TestInitParams(unittest.TestCase):
    def test_layer_sizes_and_bounds(self) -> None:
        params = init_params(40, 0)
        self.assertEqual(params.layer_sizes, (2,) + (40,) * HIDDEN_LAYERS + (1,))
        for w, b in params.layers:
            fan_in, fan_out = w.shape
            self.assertLessEqual(float(np.abs(w).max()), math.sqrt(6.0 / (fan_in + fan_out)))
            np.testing.assert_array_equal(b, np.zeros(fan_out))
        for w in params.weights[:-1]:
            self.assertLessEqual(float(np.abs(w).max()), math.sqrt(6.0 / 42.0))

    def test_seeded(self) -> None:
        self.assertTrue(init_params(8, 5).same_as(init_params(8, 5)))
        self.assertFalse(np.array_equal(init_params(8, 5).flatten(), init_params(8, 6).flatten()))

    def test_validation(self) -> None:
        with self.assertRaises(ValueError):
            init_params(0, 0)
        params = init_params(3, 0)
        with self.assertRaises(ValueError):
            MlpParams(weights=params.weights[:-1], biases=params.biases[:-1])
        bad = list(params.arrays())
        bad[0] = bad[0].copy()
        bad[0][0, 0] = np.nan
        with self.assertRaises(ValueError):
            MlpParams.from_arrays(bad)

    def test_flat_round_trip(self) -> None:
        params = init_params(5, 1)
        self.assertTrue(params.with_flat(params.flatten()).same_as(params))
        self.assertEqual(params.flatten().size, params.num_parameters)


class TestSampling(unittest.TestCase):
    def test_initial_points(self) -> None:
        x = initial_abscissae(get_problem("burgers-shock"), 100)
        self.assertEqual(x[0], -10.0)
        self.assertEqual(x[-1], 10.0)
        np.testing.assert_allclose(np.diff(x), 20.0 / 99.0, rtol=1e-12)

    def test_collocation_bounds_and_values(self) -> None:
        problem = get_problem("burgers-shock")
        pts = sample_collocation(problem, 5000, 100, seed=4)
        self.assertEqual((pts.n_f, pts.n_u), (5000, 100))
        self.assertTrue(np.all((pts.x_f >= -10.0) & (pts.x_f <= 10.0)))
        self.assertTrue(np.all((pts.t_f >= 0.0) & (pts.t_f <= 8.0)))
        np.testing.assert_array_equal(pts.u_u, np.where(pts.x_u < 0, 1.0, 0.0))
        np.testing.assert_array_equal(pts.t_u, np.zeros(100))

    def test_collocation_is_seeded(self) -> None:
        problem = get_problem("bl-shock")
        a = sample_collocation(problem, 50, 10, seed=1)
        b = sample_collocation(problem, 50, 10, seed=1)
        c = sample_collocation(problem, 50, 10, seed=2)
        np.testing.assert_array_equal(a.x_f, b.x_f)
        self.assertFalse(np.array_equal(a.x_f, c.x_f))


class TestResidualAndLosses(unittest.TestCase):
    def test_constant_network_has_zero_residual(self) -> None:
        params = _constant_params(4, 0.3)
        for flux in (FluxKind.burgers(), FluxKind.buckley_leverett(1.0)):
            for eps in (0.0, 0.01):
                f = residual_f(params, flux, eps, np.array([-1.0, 2.0]), np.array([0.5, 3.0]))
                np.testing.assert_array_equal(f, np.zeros((2, 1)))

    def test_exact_burgers_solution_has_zero_residual(self) -> None:
        # u = x / (t + 1) solves u_t + u u_x = 0.
        x = np.array([-2.0, 0.5, 3.0])
        t = np.array([0.0, 1.0, 2.5])
        u = DualValue(value=x / (t + 1), d_dx=1.0 / (t + 1), d_dt=-x / (t + 1) ** 2, d2_dx2=np.zeros(3))
        np.testing.assert_allclose(residual_from_dual(u, FluxKind.burgers(), 0.0), 0.0, atol=1e-15)

    def test_viscosity_subtracts_eps_uxx(self) -> None:
        params = init_params(4, 2)
        x, t = np.array([0.3, -1.1]), np.array([0.2, 0.9])
        flux = FluxKind.burgers()
        uxx = dual_propagate(params, x, t).d2_dx2
        diff = residual_f(params, flux, 0.0, x, t) - residual_f(params, flux, 0.01, x, t)
        np.testing.assert_allclose(diff, 0.01 * uxx, rtol=1e-10, atol=1e-14)

    def test_loss_examples(self) -> None:
        fan = get_problem("burgers-rarefaction")
        shock = get_problem("burgers-shock")
        x_u = initial_abscissae(fan, 100)
        zero = _constant_params(4, 0.0)
        one = _constant_params(4, 1.0)
        self.assertEqual(loss_u(zero, x_u, ic_eval(fan.ic, x_u)), 1.0)
        pts = sample_collocation(fan, 100, 100, seed=0)
        self.assertEqual(loss_f(zero, fan.flux, 0.01, pts.x_f, pts.t_f), 0.0)
        self.assertEqual(loss_u(one, x_u, ic_eval(shock.ic, x_u)), 0.5)

    def test_loss_input_validation(self) -> None:
        params = init_params(2, 0)
        with self.assertRaises(ValueError):
            loss_u(params, np.zeros(3), np.zeros(2))
        with self.assertRaises(ValueError):
            loss_f(params, FluxKind.burgers(), 0.0, np.zeros(0), np.zeros(0))


class TestPredict(unittest.TestCase):
    def test_constant_and_pure(self) -> None:
        params = _constant_params(3, -0.25)
        np.testing.assert_array_equal(predict(params, np.array([1.0, 2.0]), np.array([0.0, 5.0])), [-0.25, -0.25])
        p = init_params(5, 0)
        x = np.linspace(-1, 1, 7)
        self.assertEqual(predict(p, x, x).tobytes(), predict(p, x, x).tobytes())


class TestAdam(unittest.TestCase):
    def test_first_step_moves_by_learning_rate(self) -> None:
        opt = Adam(learning_rate=0.1)
        (out,) = opt.update([np.array([1.0, -2.0])], [np.array([3.0, -0.5])])
        np.testing.assert_allclose(out, [0.9, -1.9], rtol=1e-6)
        self.assertEqual(opt.step_count, 1)


class TestTrain(unittest.TestCase):
    def _config(self, **kw) -> TrainingConfig:
        base = dict(
            problem=get_problem("burgers-rarefaction"), n_f=64, n_u=20, width=6, seed=0, iterations=40, learning_rate=5e-3
        )
        base.update(kw)
        return TrainingConfig(**base)

    def test_zero_iterations_returns_initial_params(self) -> None:
        result = train(self._config(iterations=0))
        self.assertTrue(result.params.same_as(init_params(6, 0)))
        self.assertEqual(result.loss_history.size, 0)

    def test_loss_decreases_and_is_deterministic(self) -> None:
        with self.assertLogs("pinn.module", level=logging.INFO):
            a = train(self._config(log_every=10))
        b = train(self._config(log_every=10))
        self.assertEqual(a.loss_history.size, 40)
        self.assertLess(a.final_loss, a.loss_history[0])
        self.assertEqual(a.loss_history.tobytes(), b.loss_history.tobytes())
        self.assertTrue(a.params.same_as(b.params))

    def test_divergence_is_reported(self) -> None:
        params = init_params(6, 0)
        arrays = params.arrays()
        arrays[-1] = np.array([1e200])
        huge = MlpParams.from_arrays(arrays)
        with self.assertRaises(TrainingDivergedError) as ctx:
            train(self._config(), initial_params=huge)
        self.assertEqual(ctx.exception.code, "PINN_TRAINING_DIVERGED")
        self.assertEqual(ctx.exception.detail["iteration"], 0)

    def test_config_validation(self) -> None:
        for bad in (dict(n_f=0), dict(width=0), dict(viscosity=-0.1), dict(seed=-1), dict(beta1=1.0)):
            with self.assertRaises(ValueError, msg=str(bad)):
                self._config(**bad)


class TestCheckpoint(unittest.TestCase):
    def test_round_trip_and_bytes_stable(self) -> None:
        params = init_params(7, 3)
        data = serialize_checkpoint(params)
        self.assertTrue(data.startswith(b"PINNCKPT"))
        self.assertTrue(parse_checkpoint(data).same_as(params))
        with tempfile.TemporaryDirectory() as tmp:
            a = Path(tmp) / "x" / "a.bin"
            write_checkpoint(params=params, out_path=a)
            self.assertEqual(a.read_bytes(), data)
            self.assertTrue(read_checkpoint(a).same_as(params))

    def test_corrupt_checkpoints(self) -> None:
        data = serialize_checkpoint(init_params(3, 0))
        with self.assertRaises(CheckpointFormatError):
            parse_checkpoint(b"NOTACKPT" + data[8:])
        with self.assertRaises(CheckpointFormatError):
            parse_checkpoint(data[:-8])
        with self.assertRaises(CheckpointFormatError):
            parse_checkpoint(data + b"\x00")

    def test_loss_history_csv(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / "loss.csv"
            write_loss_history_csv(history=np.array([2.0, 0.5]), out_path=out)
            self.assertEqual(out.read_text(encoding="utf-8"), "iteration,loss\n0,2\n1,0.5\n")


if __name__ == "__main__":
    unittest.main()
