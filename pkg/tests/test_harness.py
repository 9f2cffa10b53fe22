from __future__ import annotations

import json
import math
import tempfile
import unittest
from pathlib import Path
from types import SimpleNamespace
from unittest.mock import patch

import numpy as np

from fv_solver import FvConfig, GridSolution, SchemeKind, solve
from harness import (
    ARTIFACT_NAMES,
    ConfigError,
    ErrorSeries,
    ExperimentConfig,
    HarnessError,
    LengthMismatchError,
    TimeNotRecordedError,
    comparison_abscissae,
    error_vs_reference,
    load_experiment_config,
    parse_override,
    render_report_markdown,
    rerun_from_report,
    run_experiment,
    run_sweep,
    sample_for_comparison,
)
from harness.metrics import grid_domain
from harness.module import _entropy_verdicts
from oracles import exact_burgers_shock, exact_solution_for
from pinn import TrainingDivergedError
from problems import PROBLEM_NAMES, UnknownProblemError, get_problem

TINY_DOC = """\
problem: burgers-shock
report_times: [1.0, 2.0]
n_compare: 50
fv:
  dx: 0.1
training:
  n_f: 32
  n_u: 10
  width: 3
  viscosity: 0.01
  seed: 0
  iterations: 3
profiles:
  quick: {}
  full:
    training:
      iterations: 5
"""


# Slowest full-batch Adam step seen at N_f = 10^4, width 40 (single-threaded numpy).
SLOWEST_STEP_S = 0.82


def _write_tiny(config_dir: Path, name: str = "tiny-shock") -> None:
    config_dir.mkdir(parents=True, exist_ok=True)
    (config_dir / f"{name}.yaml").write_text(TINY_DOC, encoding="utf-8")


class TestErrorVsReference(unittest.TestCase):
    def test_examples(self) -> None:
        v = np.linspace(-1.0, 1.0, 7)
        self.assertEqual(error_vs_reference(v, v), 0.0)
        self.assertAlmostEqual(error_vs_reference(v + 0.3, v), 0.09, places=15)
        self.assertEqual(error_vs_reference([1.0, 0.0], [0.0, 0.0]), 0.5)

    def test_length_mismatch(self) -> None:
        with self.assertRaises(LengthMismatchError) as ctx:
            error_vs_reference([1.0, 2.0], [1.0])
        self.assertEqual(ctx.exception.detail, {"left": 2, "right": 1})
        with self.assertRaises(LengthMismatchError):
            error_vs_reference([], [])


class TestSampleForComparison(unittest.TestCase):
    def test_grid_sampling_spans_the_domain(self) -> None:
        x = np.linspace(-9.95, 9.95, 200)
        sol = GridSolution(x_centers=x, times=np.array([2.0]), values=np.full((1, 200), 0.25))
        values = sample_for_comparison(sol, 2.0, 100)
        np.testing.assert_array_equal(values, np.full(100, 0.25))

        pts = comparison_abscissae(grid_domain(sol), 100)
        self.assertAlmostEqual(pts[0], -10.0, places=12)
        self.assertAlmostEqual(pts[-1], 10.0, places=12)

    def test_time_not_recorded(self) -> None:
        sol = GridSolution(x_centers=np.arange(3.0), times=np.array([1.0]), values=np.zeros((1, 3)))
        with self.assertRaises(TimeNotRecordedError) as ctx:
            sample_for_comparison(sol, 2.0, 10)
        self.assertEqual(ctx.exception.code, "HARNESS_TIME_NOT_RECORDED")

    def test_oracle_against_itself(self) -> None:
        oracle = exact_solution_for(get_problem("burgers-rarefaction"))
        a = sample_for_comparison(oracle, 3.0, 100, domain=(-10.0, 10.0))
        self.assertEqual(error_vs_reference(a, sample_for_comparison(oracle, 3.0, 100, domain=(-10.0, 10.0))), 0.0)
        with self.assertRaises(ValueError):
            sample_for_comparison(oracle, 3.0, 100)

    def test_cross_scheme_agreement_on_catalog(self) -> None:
        for name in PROBLEM_NAMES:
            problem = get_problem(name)
            times = (1.0, 2.0, 3.0, 4.0) if name == "bl-shock" else (2.0, 4.0, 6.0, 8.0)
            lf = solve(problem, FvConfig(dx=0.01, scheme=SchemeKind.LAX_FRIEDRICHS, record_times=times))
            le = solve(problem, FvConfig(dx=0.01, scheme=SchemeKind.LAGRANGIAN_EULERIAN, record_times=times))
            for t in times:
                err = error_vs_reference(sample_for_comparison(lf, t), sample_for_comparison(le, t))
                self.assertLessEqual(err, 0.01, msg=f"{name} t={t}")


class TestContracts(unittest.TestCase):
    def test_error_series_validation(self) -> None:
        s = ErrorSeries(times=(1.0, 2.0), elf=(0.1, 0.3), eel=(0.2, 0.0))
        self.assertAlmostEqual(s.mean_elf, 0.2)
        self.assertAlmostEqual(s.mean_eel, 0.1)
        with self.assertRaises(ValueError):
            ErrorSeries(times=(1.0,), elf=(0.1, 0.2), eel=(0.1,))
        with self.assertRaises(ValueError):
            ErrorSeries(times=(1.0,), elf=(-0.1,), eel=(0.1,))
        with self.assertRaises(ValueError):
            ErrorSeries(times=(1.0,), elf=(math.nan,), eel=(0.1,))

    def test_harness_error_from_exception(self) -> None:
        e = HarnessError.from_exception(TrainingDivergedError(iteration=7, loss=math.inf))
        self.assertEqual(e.code, "PINN_TRAINING_DIVERGED")
        self.assertEqual(e.detail["iteration"], 7)
        plain = HarnessError.from_exception(RuntimeError("boom"))
        self.assertEqual(plain.code, "HARNESS_INTERNAL")
        self.assertEqual(plain.detail, {"type": "RuntimeError"})


class TestEntropyVerdicts(unittest.TestCase):
    def test_exact_shock_profile_is_admissible_at_every_report_pair(self) -> None:
        config = load_experiment_config("burgers-shock")
        with patch("harness.module.predict", side_effect=lambda params, x, t: exact_burgers_shock(x, float(t[0]))):
            verdicts = _entropy_verdicts(get_problem("burgers-shock"), SimpleNamespace(params=None), config)
        self.assertEqual([(v.t_early, v.t_late) for v in verdicts], [(2.0, 4.0), (4.0, 6.0), (6.0, 8.0)])
        for v in verdicts:
            self.assertTrue(v.admissible, msg=str(v))
            self.assertLessEqual(abs(v.speed - 0.5), v.speed_resolution)

    def test_stationary_expansion_profile_is_rejected(self) -> None:
        config = load_experiment_config("burgers-rarefaction")
        with patch("harness.module.predict", side_effect=lambda params, x, t: np.where(x <= 0.0, -1.0, 1.0)):
            verdicts = _entropy_verdicts(get_problem("burgers-rarefaction"), SimpleNamespace(params=None), config)
        self.assertEqual(len(verdicts), 3)
        self.assertFalse(any(v.admissible for v in verdicts))


class TestConfig(unittest.TestCase):
    def test_checked_in_configs_resolve(self) -> None:
        for name in PROBLEM_NAMES:
            quick = load_experiment_config(name)
            full = load_experiment_config(name, profile="full")
            self.assertEqual(quick.problem, name)
            self.assertEqual(quick.profile, "quick")
            self.assertEqual(quick.training.n_f, 10_000)
            self.assertEqual(quick.n_compare, 100)
            self.assertEqual(quick.fv.dx, 0.01)
            self.assertEqual((quick.fv.cfl_lax_friedrichs, quick.fv.cfl_lagrangian_eulerian), (0.4, 0.2))
            self.assertLessEqual(quick.training.iterations * SLOWEST_STEP_S, 15 * 60, msg=name)
            self.assertEqual(full.training.iterations, 20_000)
            expected_eps = 0.0 if name == "burgers-rarefaction" else 0.01
            self.assertEqual(quick.training.viscosity, expected_eps)
        self.assertEqual(load_experiment_config("bl-shock", profile="full").training.n_f, 1_000_000)
        self.assertEqual(load_experiment_config("bl-shock").report_times, (1.0, 2.0, 3.0, 4.0))
        self.assertEqual(load_experiment_config("burgers-shock").report_times, (2.0, 4.0, 6.0, 8.0))

    def test_overrides(self) -> None:
        self.assertEqual(parse_override("training.width=60"), (("training", "width"), 60))
        self.assertEqual(parse_override("fv.dx=0.02"), (("fv", "dx"), 0.02))
        self.assertEqual(parse_override("report_times=[1, 2]"), (("report_times",), [1, 2]))
        cfg = load_experiment_config("burgers-shock", overrides=["training.width=60", "training.seed=2"])
        self.assertEqual((cfg.training.width, cfg.training.seed), (60, 2))
        for bad in ("training.depth=3", "width=3", "training.width", "fv.dx.extra=1"):
            with self.assertRaises(ConfigError, msg=bad):
                parse_override(bad)

    def test_invalid_values_are_config_errors(self) -> None:
        with self.assertRaises(ConfigError):
            load_experiment_config("burgers-shock", overrides=["training.width=abc"])
        with self.assertRaises(ConfigError):
            load_experiment_config("burgers-shock", overrides=["report_times=[2, 9]"])
        with self.assertRaises(ConfigError):
            load_experiment_config("burgers-shock", overrides=["fv.cfl_lax_friedrichs=0.6"])
        with self.assertRaises(ConfigError):
            load_experiment_config("burgers-shock", overrides=["training.beta1=1.5"])
        with self.assertRaises(ConfigError):
            load_experiment_config("burgers-shock", profile="huge")

    def test_unknown_name(self) -> None:
        with self.assertRaises(UnknownProblemError):
            load_experiment_config("no-such-problem")

    def test_config_echo_round_trip(self) -> None:
        cfg = load_experiment_config("bl-shock", overrides=["training.width=60"])
        echo = json.loads(json.dumps(cfg.to_dict()))
        self.assertEqual(ExperimentConfig.from_dict(echo), cfg)
        with self.assertRaises(ConfigError):
            ExperimentConfig.from_dict({**echo, "extra": 1})


class TestRunExperiment(unittest.TestCase):
    def test_tiny_experiment_writes_artifacts_and_reruns_identically(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            root = Path(tmp)
            _write_tiny(root / "configs")
            report = run_experiment("tiny-shock", out_dir=root / "runs", config_dir=root / "configs")
            self.assertTrue(report.ok, msg=report.errors)
            exp_dir = root / "runs" / "tiny-shock"
            for file_name in ARTIFACT_NAMES.values():
                self.assertTrue((exp_dir / file_name).is_file(), msg=file_name)

            assert report.series is not None
            self.assertEqual(report.series.times, (1.0, 2.0))
            self.assertEqual(len(report.cross_scheme), 2)
            self.assertEqual(set(report.exact_errors), {"pinn", "lax_friedrichs", "lagrangian_eulerian"})
            self.assertEqual(report.exact_sources, ["exact", "exact"])
            self.assertEqual(report.config["training"]["width"], 3)

            errors_csv = (exp_dir / "errors.csv").read_text(encoding="utf-8")
            self.assertTrue(errors_csv.startswith("t,elf,eel\n"))
            payload = json.loads((exp_dir / "report.json").read_text(encoding="utf-8"))
            self.assertTrue(payload["ok"])
            self.assertEqual(payload["config_source"], TINY_DOC)
            markdown = (exp_dir / "report.md").read_text(encoding="utf-8")
            self.assertIn("```yaml", markdown)
            self.assertIn("## Experiment document\n\n```yaml\n" + TINY_DOC + "```\n", markdown)

            again = rerun_from_report(exp_dir / "report.json", out_dir=root / "rerun")
            self.assertEqual(again.config_source, TINY_DOC)
            self.assertEqual(again.series, report.series)
            self.assertEqual(
                (root / "rerun" / "tiny-shock" / "errors.csv").read_bytes(), (exp_dir / "errors.csv").read_bytes()
            )
            self.assertEqual(
                (root / "rerun" / "tiny-shock" / "checkpoint.bin").read_bytes(),
                (exp_dir / "checkpoint.bin").read_bytes(),
            )

    def test_profile_and_overrides_flow_into_the_echo(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            root = Path(tmp)
            _write_tiny(root / "configs")
            report = run_experiment(
                "tiny-shock",
                ["training.width=2"],
                out_dir=root / "runs",
                profile="full",
                config_dir=root / "configs",
            )
            self.assertEqual(report.config["profile"], "full")
            self.assertEqual(report.config["training"]["iterations"], 5)
            self.assertEqual(report.config["training"]["width"], 2)

    def test_training_failure_is_reported(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            root = Path(tmp)
            _write_tiny(root / "configs")
            with patch("harness.module.train", side_effect=TrainingDivergedError(iteration=2, loss=math.nan)):
                report = run_experiment("tiny-shock", out_dir=root / "runs", config_dir=root / "configs")
            self.assertFalse(report.ok)
            self.assertEqual([e.code for e in report.errors], ["PINN_TRAINING_DIVERGED"])
            self.assertIsNone(report.series)
            exp_dir = root / "runs" / "tiny-shock"
            self.assertTrue((exp_dir / "fv_lax_friedrichs.csv").is_file())
            self.assertFalse((exp_dir / "checkpoint.bin").exists())
            payload = json.loads((exp_dir / "report.json").read_text(encoding="utf-8"))
            self.assertFalse(payload["ok"])
            self.assertEqual(payload["config"]["name"], "tiny-shock")
            self.assertIn("error[PINN_TRAINING_DIVERGED]", render_report_markdown(report))

    def test_sweep_picks_lowest_mean_eel(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            root = Path(tmp)
            _write_tiny(root / "configs")
            result = run_sweep("tiny-shock", [2, 3], [0], out_dir=root / "runs", config_dir=root / "configs")
            self.assertTrue(result.ok)
            self.assertEqual([(r.width, r.seed) for r in result.rows], [(2, 0), (3, 0)])
            assert result.best is not None
            self.assertEqual(result.best.mean_eel, min(r.mean_eel for r in result.rows))
            lines = (root / "runs" / "tiny-shock-sweep" / "sweep.csv").read_text(encoding="utf-8").splitlines()
            self.assertEqual(lines[0], "width,seed,mean_eel,mean_elf")
            self.assertEqual(len(lines), 3)
            self.assertTrue((root / "runs" / "tiny-shock-sweep" / "width3-seed0" / "report.json").is_file())


if __name__ == "__main__":
    unittest.main()
