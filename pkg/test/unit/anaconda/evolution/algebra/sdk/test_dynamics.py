import unittest

import numpy as np

from src.anaconda.evolution.algebra.sdk import (
    evolution_map,
    fixed_points,
    jacobian,
    jacobian_algebra,
    linearize_at_fixed_points,
    make_algebra,
)
from src.anaconda.evolution.algebra.sdk.contracts import FixedPointMethod, FixedPointReport, SolverOptions
from src.anaconda.evolution.algebra.sdk.contracts.errors import InvalidInputError
from src.anaconda.evolution.algebra.sdk.dynamics import E7_BOUND_NOTE, E7_THRESHOLD, fixed_point_residual


class TestEvolutionMap(unittest.TestCase):
    def test_e4(self):
        np.testing.assert_array_equal(evolution_map(make_algebra(2, [[0, 1], [0, 0]]), [2, 5]), [0.0, 4.0])

    def test_origin(self):
        np.testing.assert_array_equal(evolution_map(make_algebra(2, [[1, 2], [3, 4]]), [0, 0]), [0.0, 0.0])

    def test_e7_3d(self):
        algebra = make_algebra(3, [[1, 0, 0], [1, 0, 0], [1, 0, 0]])
        np.testing.assert_array_equal(evolution_map(algebra, [1, 1, 1]), [3.0, 0.0, 0.0])


class TestJacobian(unittest.TestCase):
    def test_e5(self):
        np.testing.assert_array_equal(jacobian(make_algebra(2, [[0, 1], [0, -1]]), [0, -1]), [[0, 0], [0, 2]])

    def test_origin(self):
        np.testing.assert_array_equal(jacobian(make_algebra(2, [[1, 2], [3, 4]]), [0, 0]), np.zeros((2, 2)))

    def test_e6_layout(self):
        a2, a3, x1, x2 = 0.5, -2.0, 1.5, 0.25
        np.testing.assert_allclose(
            jacobian(make_algebra(2, [[1, a2], [a3, 1]]), [x1, x2]),
            [[2 * x1, 2 * a3 * x2], [2 * a2 * x1, 2 * x2]],
        )

    def test_length_mismatch(self):
        with self.assertRaises(InvalidInputError):
            jacobian(make_algebra(2, np.eye(2)), [1, 0, 0])

    def test_matches_central_differences(self):
        generator = np.random.default_rng(17)
        step = 1e-5
        for _ in range(100):
            dim = int(generator.choice((2, 3)))
            algebra = make_algebra(dim, generator.uniform(-2, 2, (dim, dim)))
            x = generator.uniform(-2, 2, dim)
            numeric = np.column_stack(
                [
                    (evolution_map(algebra, x + step * unit) - evolution_map(algebra, x - step * unit)) / (2 * step)
                    for unit in np.eye(dim)
                ]
            )
            np.testing.assert_allclose(jacobian(algebra, x), numeric, atol=1e-6)


class TestJacobianAlgebra(unittest.TestCase):
    def test_e1(self):
        result = jacobian_algebra(make_algebra(2, [[1, 0], [0, 0]]), [1, 0])
        self.assertEqual(result.matrix, ((2.0, 0.0), (0.0, 0.0)))

    def test_e7_3d(self):
        result = jacobian_algebra(make_algebra(3, [[1, 0, 0], [1, 0, 0], [1, 0, 0]]), [1, 0, 0])
        np.testing.assert_array_equal(result.array, [[2, 0, 0], [0, 0, 0], [0, 0, 0]])

    def test_origin(self):
        result = jacobian_algebra(make_algebra(2, [[1, 2], [3, 4]]), [0, 0])
        np.testing.assert_array_equal(result.array, np.zeros((2, 2)))


class TestClosedFormFixedPoints(unittest.TestCase):
    def assert_points(self, report: FixedPointReport, expected, atol: float = 1e-9):
        self.assertEqual(len(report.points), len(expected))
        np.testing.assert_allclose(np.array(report.points).reshape(len(expected), -1), expected, atol=atol)

    def test_e1(self):
        report = fixed_points(make_algebra(2, [[1, 0], [0, 0]]))
        self.assertTrue(report.complete)
        self.assertEqual(report.method, FixedPointMethod.CLOSED_FORM)
        self.assertEqual(report.family, "E1")
        self.assert_points(report, [[1.0, 0.0]])

    def test_e2(self):
        self.assert_points(fixed_points(make_algebra(2, [[1, 0], [1, 0]])), [[1.0, 0.0]])

    def test_e3_and_e4_have_none(self):
        self.assertEqual(fixed_points(make_algebra(2, [[1, 1], [-1, -1]])).points, ())
        self.assertEqual(fixed_points(make_algebra(2, [[0, 1], [0, 0]])).points, ())

    def test_e5(self):
        self.assert_points(fixed_points(make_algebra(2, [[0, 1], [0, -1]])), [[0.0, -1.0]])

    def test_e6_decoupled(self):
        report = fixed_points(make_algebra(2, np.eye(2)))
        self.assert_points(report, [[0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])

    def test_e6_points_are_fixed(self):
        generator = np.random.default_rng(23)
        for a2, a3 in generator.uniform(-0.8, 0.8, (20, 2)):
            algebra = make_algebra(2, [[1, a2], [a3, 1]])
            report = fixed_points(algebra)
            self.assertGreaterEqual(len(report.points), 1)
            for point, residual in zip(report.points, report.residuals):
                self.assertLessEqual(residual, 1e-8)
                self.assertLessEqual(fixed_point_residual(algebra, point), 1e-8)

    def test_e7_zero(self):
        report = fixed_points(make_algebra(2, [[0, 1], [1, 0]]))
        self.assert_points(report, [[1.0, 1.0]])
        self.assertIn(E7_BOUND_NOTE, report.annotations)

    def test_e7_below_bound_has_three_points(self):
        golden = (1 + np.sqrt(5)) / 2
        report = fixed_points(make_algebra(2, [[0, 1], [1, -2]]))
        self.assertLess(-2.0, E7_THRESHOLD)
        self.assert_points(report, [[(1 - golden) ** 2, 1 - golden], [1.0, -1.0], [golden**2, golden]])
        for residual in report.residuals:
            self.assertLess(residual, 1e-10)
        self.assertIn(E7_BOUND_NOTE, report.annotations)
        self.assertEqual(len(report.annotations), 2)

    def test_3d_forms(self):
        self.assert_points(fixed_points(make_algebra(3, [[1, 0, 0], [1, 0, 0], [1, 0, 0]])), [[1.0, 0.0, 0.0]])
        self.assertEqual(fixed_points(make_algebra(3, [[0, 0, 0], [1, 0, 0], [1, 0, 0]])).points, ())
        self.assertTrue(fixed_points(make_algebra(3, [[0, 0, 0], [1, 0, 0], [1, 0, 0]])).complete)


class TestMultistartFixedPoints(unittest.TestCase):
    def test_scaled_e1(self):
        report = fixed_points(make_algebra(2, [[2, 0], [0, 0]]))
        self.assertFalse(report.complete)
        self.assertEqual(report.method, FixedPointMethod.MULTISTART_NEWTON)
        self.assertEqual(len(report.points), 1)
        np.testing.assert_allclose(report.points[0], [0.5, 0.0], atol=1e-9)

    def test_deterministic(self):
        algebra = make_algebra(2, [[1, 0.3], [0.2, 0.7]])
        options = SolverOptions(restarts=32, seed=4)
        self.assertEqual(fixed_points(algebra, options), fixed_points(algebra, options))

    def test_reported_points_are_fixed_and_distinct(self):
        algebra = make_algebra(3, [[1, 0.3, 0.1], [0.2, 0.7, 0.0], [0.1, 0.0, 0.9]])
        report = fixed_points(algebra, SolverOptions(restarts=64))
        self.assertGreaterEqual(len(report.points), 1)
        for point in report.points:
            self.assertLessEqual(fixed_point_residual(algebra, point), 1e-8)
            self.assertGreater(max(abs(x) for x in point), 1e-6)
        for index, point in enumerate(report.points):
            for other in report.points[index + 1 :]:
                self.assertGreater(max(abs(a - b) for a, b in zip(point, other)), 1e-6)
        self.assertEqual(list(report.points), sorted(report.points))

    def test_diagonal_scaling_maps_fixed_points(self):
        algebra = make_algebra(2, [[1, 0.3], [0.2, 0.7]])
        scales = np.array([2.0, -0.5])
        scaled = make_algebra(2, np.diag(scales**2) @ algebra.array @ np.diag(1 / scales))
        for point in fixed_points(algebra).points:
            self.assertLessEqual(fixed_point_residual(scaled, np.array(point) / scales), 1e-8)


class TestLinearize(unittest.TestCase):
    def test_e2(self):
        pairs = linearize_at_fixed_points(make_algebra(2, [[1, 0], [1, 0]]))
        self.assertEqual(len(pairs), 1)
        point, linear = pairs[0]
        np.testing.assert_allclose(point, [1.0, 0.0])
        np.testing.assert_allclose(linear.array, [[2.0, 0.0], [0.0, 0.0]])

    def test_e4_has_none(self):
        self.assertEqual(linearize_at_fixed_points(make_algebra(2, [[0, 1], [0, 0]])), [])

    def test_e12_has_none(self):
        self.assertEqual(linearize_at_fixed_points(make_algebra(3, [[0, 0, 0], [1, 0, 0], [1, 0, 0]])), [])


if __name__ == "__main__":
    runner = unittest.TextTestRunner()
    runner.run(TestClosedFormFixedPoints())
