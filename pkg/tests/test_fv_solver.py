from __future__ import annotations

import tempfile
import unittest
from pathlib import Path

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from fv_solver import (
    FvConfig,
    GridFormatError,
    GridSolution,
    SchemeKind,
    SolverDivergedError,
    cell_centers,
    cfl_timestep,
    interface_fluxes,
    numerical_flux,
    parse_grid_csv,
    read_grid_csv,
    serialize_grid_csv,
    solve,
    step,
    write_grid_csv,
)
from oracles import exact_burgers_rarefaction, welge_state
from problems import PROBLEM_NAMES, FluxKind, flux_eval, get_problem, ic_eval

BURGERS = FluxKind.burgers()
LF = SchemeKind.LAX_FRIEDRICHS
LE = SchemeKind.LAGRANGIAN_EULERIAN


class TestNumericalFlux(unittest.TestCase):
    def test_examples(self) -> None:
        self.assertAlmostEqual(numerical_flux(LF, BURGERS, 1.0, 0.0, 1.0), 0.75, places=15)
        self.assertAlmostEqual(numerical_flux(LE, BURGERS, 1.0, 0.0, 1.0), 0.5, places=15)

    @settings(max_examples=100, deadline=None)
    @given(
        st.floats(min_value=-2.0, max_value=2.0, allow_nan=False),
        st.floats(min_value=1e-3, max_value=1e3, allow_nan=False),
        st.sampled_from([LF, LE]),
        st.sampled_from([BURGERS, FluxKind.buckley_leverett(1.0)]),
    )
    def test_consistency(self, u: float, r: float, scheme: SchemeKind, flux: FluxKind) -> None:
        self.assertAlmostEqual(numerical_flux(scheme, flux, u, u, r), flux_eval(flux, u), places=12)

    def test_rejects_non_positive_ratio(self) -> None:
        with self.assertRaises(ValueError):
            numerical_flux(LF, BURGERS, 1.0, 0.0, 0.0)


class TestCflTimestep(unittest.TestCase):
    def test_examples(self) -> None:
        self.assertAlmostEqual(cfl_timestep(BURGERS, np.array([-1.0, 1.0]), 0.01, 0.4), 0.004, places=15)
        self.assertAlmostEqual(cfl_timestep(BURGERS, np.zeros(5), 0.01, 0.2), 0.002, places=15)
        self.assertAlmostEqual(cfl_timestep(BURGERS, np.array([0.0, 2.0]), 0.1, 0.2), 0.01, places=15)

    def test_clipped_to_max_step(self) -> None:
        self.assertEqual(cfl_timestep(BURGERS, np.array([1.0]), 0.01, 0.4, max_step=1e-4), 1e-4)

    def test_non_finite_state_diverges(self) -> None:
        with self.assertRaises(SolverDivergedError) as ctx:
            cfl_timestep(BURGERS, np.array([0.0, np.nan]), 0.01, 0.4, t=1.5, step_index=3)
        self.assertEqual(ctx.exception.code, "FV_SOLVER_DIVERGED")
        self.assertEqual(ctx.exception.detail, {"t": 1.5, "step": 3})

    def test_rejects_cfl_outside_bound(self) -> None:
        with self.assertRaises(ValueError):
            cfl_timestep(BURGERS, np.array([1.0]), 0.01, 0.5)


class TestStep(unittest.TestCase):
    def test_constant_state_is_unchanged(self) -> None:
        u = np.full(50, 0.3)
        for scheme in (LF, LE):
            np.testing.assert_allclose(step(scheme, BURGERS, u, 0.1, 0.01), u, rtol=0, atol=1e-15)

    def test_interior_mass_balance(self) -> None:
        for name in PROBLEM_NAMES:
            problem = get_problem(name)
            x, h = cell_centers(problem, 0.05)
            u = np.asarray(ic_eval(problem.ic, x))
            for scheme in (LF, LE):
                v = u.copy()
                for _ in range(20):
                    k = cfl_timestep(problem.flux, v, h, 0.2)
                    f = interface_fluxes(scheme, problem.flux, v, h, k)
                    nxt = step(scheme, problem.flux, v, h, k)
                    balance = (nxt.sum() - v.sum()) * h + k * (f[-1] - f[0])
                    self.assertLess(abs(balance), 1e-12, msg=f"{name} {scheme.value}")
                    v = nxt


class TestFvConfig(unittest.TestCase):
    def test_default_cfl_per_scheme(self) -> None:
        self.assertEqual(FvConfig(dx=0.01, scheme=LF).cfl_number, 0.4)
        self.assertEqual(FvConfig(dx=0.01, scheme=LE).cfl_number, 0.2)

    def test_validation(self) -> None:
        with self.assertRaises(ValueError):
            FvConfig(dx=0.01, scheme=LF, cfl_number=0.5)
        with self.assertRaises(ValueError):
            FvConfig(dx=0.0, scheme=LF)
        with self.assertRaises(ValueError):
            FvConfig(dx=0.01, scheme=LF, record_times=(2.0, 1.0))
        with self.assertRaises(TypeError):
            FvConfig(dx=0.01, scheme="lax_friedrichs")  # type: ignore[arg-type]


class TestSolve(unittest.TestCase):
    def test_initial_snapshot_equals_ic(self) -> None:
        problem = get_problem("burgers-shock")
        sol = solve(problem, FvConfig(dx=0.05, scheme=LE, record_times=(0.0,)))
        np.testing.assert_array_equal(sol.at_time(0.0), ic_eval(problem.ic, sol.x_centers))

    def test_record_times_are_exact(self) -> None:
        sol = solve(get_problem("burgers-rarefaction"), FvConfig(dx=0.05, scheme=LF, record_times=(0.3, 1.0, 2.5)))
        self.assertEqual(sol.times.tolist(), [0.3, 1.0, 2.5])
        self.assertEqual(sol.values.shape, (3, 400))

    def test_record_times_past_t_end_rejected(self) -> None:
        with self.assertRaises(ValueError):
            solve(get_problem("burgers-shock"), FvConfig(dx=0.05, scheme=LE, record_times=(9.0,)))

    def test_shock_position_at_t8(self) -> None:
        dx = 0.01
        sol = solve(get_problem("burgers-shock"), FvConfig(dx=dx, scheme=LE, cfl_number=0.2, record_times=(8.0,)))
        u = sol.at_time(8.0)
        front = sol.x_centers[np.flatnonzero(u > 0.5)[-1]]
        self.assertLess(abs(front - 4.0), 5 * dx)

    def test_rarefaction_center_at_t4(self) -> None:
        sol = solve(get_problem("burgers-rarefaction"), FvConfig(dx=0.01, scheme=LE, record_times=(4.0,)))
        self.assertLess(abs(float(np.interp(0.0, sol.x_centers, sol.at_time(4.0)))), 0.05)

    def test_bl_front_follows_welge_speed(self) -> None:
        _, sigma = welge_state(1.0)
        sol = solve(get_problem("bl-shock"), FvConfig(dx=0.01, scheme=LE, record_times=(4.0,)))
        u = sol.at_time(4.0)
        front = sol.x_centers[np.flatnonzero(u > 0.5)[-1]]
        self.assertLess(abs(front - 4.0 * sigma), 0.1)

    def test_max_principle_all_problems(self) -> None:
        for name in PROBLEM_NAMES:
            problem = get_problem(name)
            for scheme in (LF, LE):
                sol = solve(problem, FvConfig(dx=0.05, scheme=scheme, record_times=(0.0, 2.0, 4.0, 8.0)))
                lo, hi = sol.values[0].min(), sol.values[0].max()
                self.assertGreaterEqual(sol.values.min(), lo - 1e-12, msg=f"{name} {scheme.value}")
                self.assertLessEqual(sol.values.max(), hi + 1e-12, msg=f"{name} {scheme.value}")

    def test_first_order_convergence_on_rarefaction(self) -> None:
        problem = get_problem("burgers-rarefaction")
        errors = []
        for dx in (0.04, 0.02, 0.01):
            sol = solve(problem, FvConfig(dx=dx, scheme=LE, record_times=(2.0,)))
            exact = exact_burgers_rarefaction(sol.x_centers, 2.0)
            errors.append(float(np.sum(np.abs(sol.at_time(2.0) - exact)) * sol.dx))
        self.assertGreaterEqual(errors[0] / errors[1], 1.4)
        self.assertGreaterEqual(errors[1] / errors[2], 1.4)

    def test_schemes_agree_at_t4(self) -> None:
        for name in PROBLEM_NAMES:
            problem = get_problem(name)
            lf = solve(problem, FvConfig(dx=0.01, scheme=LF, record_times=(4.0,))).at_time(4.0)
            le = solve(problem, FvConfig(dx=0.01, scheme=LE, record_times=(4.0,))).at_time(4.0)
            rms = float(np.sqrt(np.mean((lf - le) ** 2)))
            self.assertLess(rms, 0.05, msg=name)

    def test_solve_is_deterministic(self) -> None:
        problem = get_problem("bl-shock")
        cfg = FvConfig(dx=0.05, scheme=LF, record_times=(1.0, 2.0))
        self.assertTrue(solve(problem, cfg).same_as(solve(problem, cfg)))


class TestGridSolution(unittest.TestCase):
    def _solution(self) -> GridSolution:
        return solve(get_problem("burgers-smooth"), FvConfig(dx=0.1, scheme=LE, record_times=(0.5, 1.0)))

    def test_at_time_unknown(self) -> None:
        with self.assertRaises(KeyError):
            self._solution().at_time(0.7)

    def test_total_mass_conserved_while_waves_are_interior(self) -> None:
        sol = solve(get_problem("burgers-rarefaction"), FvConfig(dx=0.05, scheme=LE, record_times=(0.0, 4.0)))
        mass = sol.total_mass()
        self.assertAlmostEqual(float(mass[0]), float(mass[1]), places=10)

    def test_rejects_non_uniform_grid(self) -> None:
        with self.assertRaises(ValueError):
            GridSolution(x_centers=np.array([0.0, 1.0, 3.0]), times=np.array([0.0]), values=np.zeros((1, 3)))


class TestGridCsv(unittest.TestCase):
    def test_csv_round_trip_and_bytes_stable(self) -> None:
        sol = solve(get_problem("burgers-smooth"), FvConfig(dx=0.1, scheme=LE, record_times=(0.25, 0.5)))
        with tempfile.TemporaryDirectory() as tmp:
            a = Path(tmp) / "a" / "sol.csv"
            b = Path(tmp) / "b" / "sol.csv"
            write_grid_csv(solution=sol, out_path=a)
            write_grid_csv(solution=sol, out_path=b)
            self.assertEqual(a.read_bytes(), b.read_bytes())
            self.assertTrue(read_grid_csv(a).same_as(sol))
        text = serialize_grid_csv(sol)
        self.assertTrue(text.startswith("t,x,u\n"))
        self.assertTrue(text.endswith("\n"))

    def test_parse_errors(self) -> None:
        with self.assertRaises(GridFormatError):
            parse_grid_csv("")
        with self.assertRaises(GridFormatError):
            parse_grid_csv("t,x,v\n0,0,1\n")
        with self.assertRaises(GridFormatError):
            parse_grid_csv("t,x,u\n1,0,1\n0,0,1\n")
        with self.assertRaises(GridFormatError):
            parse_grid_csv("t,x,u\n0,0,1\n0,1,1\n1,0,1\n1,2,1\n")


if __name__ == "__main__":
    unittest.main()
