import unittest

import numpy as np

from src.anaconda.evolution.algebra.sdk import (
    algebras_equal,
    canonical2,
    classify2,
    make_algebra,
    make_class2,
    predicted_iso,
    table2d,
    transform,
)
from src.anaconda.evolution.algebra.sdk.classify2d import canonical_e6, same_class2
from src.anaconda.evolution.algebra.sdk.contracts import BasisChange, Label2
from src.anaconda.evolution.algebra.sdk.contracts.errors import (
    DivisionByNearZeroError,
    InvalidInputError,
    NoFixedPointError,
)


class TestClass2(unittest.TestCase):
    def test_parameter_counts(self):
        self.assertIsNone(make_class2("E1").params)
        self.assertEqual(make_class2("E7", [0.5]).params, (0.5,))
        with self.assertRaises(InvalidInputError):
            make_class2("E1", [1.0])
        with self.assertRaises(InvalidInputError):
            make_class2("E6", [1.0])
        with self.assertRaises(InvalidInputError):
            make_class2("E8")

    def test_degenerate_e6(self):
        with self.assertRaises(InvalidInputError):
            make_class2("E6", [2.0, 0.5])

    def test_describe(self):
        self.assertEqual(make_class2("Zero").describe(), "Zero")
        self.assertEqual(make_class2("E6", [0.5, -1.0]).describe(), "E6(0.5, -1.0)")

    def test_canonical_e6_order(self):
        klass, swapped = canonical_e6(0.3, -0.7)
        self.assertTrue(swapped)
        self.assertEqual(klass.params, (-0.7, 0.3))
        self.assertFalse(canonical_e6(-0.7, 0.3)[1])

    def test_canonical_forms(self):
        self.assertEqual(canonical2(make_class2("E3")).matrix, ((1.0, 1.0), (-1.0, -1.0)))
        self.assertEqual(canonical2(make_class2("E6", [2.0, 3.0])).matrix, ((1.0, 2.0), (3.0, 1.0)))
        self.assertEqual(canonical2(make_class2("E7", [-2.0])).matrix, ((0.0, 1.0), (1.0, -2.0)))

    def test_same_class(self):
        self.assertTrue(same_class2(make_class2("E7", [1.0]), make_class2("E7", [1.0 + 1e-9])))
        self.assertFalse(same_class2(make_class2("E7", [1.0]), make_class2("E7", [1.1])))
        self.assertFalse(same_class2(make_class2("E1"), make_class2("E2")))


class TestClassify2(unittest.TestCase):
    def assert_witness(self, algebra, classification):
        self.assertTrue(classification.verified)
        transformed = transform(algebra, classification.witness)
        self.assertTrue(algebras_equal(transformed, canonical2(classification.canonical)))

    def test_zero(self):
        result = classify2(make_algebra(2, [[0, 0], [0, 0]]))
        self.assertEqual(result.canonical.label, Label2.ZERO)
        self.assertEqual(result.witness, BasisChange.identity(2))

    def test_e5_identity(self):
        algebra = make_algebra(2, [[0, 1], [0, -1]])
        result = classify2(algebra)
        self.assertEqual(result.canonical.label, Label2.E5)
        np.testing.assert_allclose(result.witness.array, np.eye(2))

    def test_scaled_e1(self):
        algebra = make_algebra(2, [[2, 0], [0, 0]])
        result = classify2(algebra)
        self.assertEqual(result.canonical.label, Label2.E1)
        np.testing.assert_allclose(result.witness.array, np.diag([0.5, 1.0]))

    def test_swapped_e1(self):
        algebra = make_algebra(2, [[0, 0], [0, 2]])
        result = classify2(algebra)
        self.assertEqual(result.canonical.label, Label2.E1)
        self.assert_witness(algebra, result)

    def test_e7_normalisation(self):
        algebra = make_algebra(2, [[0, 2], [2, 0]])
        result = classify2(algebra)
        self.assertEqual(result.canonical.label, Label2.E7)
        self.assertAlmostEqual(result.canonical.params[0], 0.0)
        np.testing.assert_allclose(result.witness.array, np.diag([0.5, 0.5]))

    def test_e6_normalisation_swaps(self):
        algebra = make_algebra(2, [[2, 3], [1, 4]])
        result = classify2(algebra)
        self.assertEqual(result.canonical.label, Label2.E6)
        np.testing.assert_allclose(result.canonical.params, (0.125, 3.0))
        np.testing.assert_allclose(result.witness.array, [[0.0, 0.25], [0.5, 0.0]])
        self.assert_witness(algebra, result)

    def test_e7_with_zero_first_diagonal(self):
        algebra = make_algebra(2, [[3, 1], [2, 0]])
        result = classify2(algebra)
        self.assertEqual(result.canonical.label, Label2.E7)
        self.assert_witness(algebra, result)

    def test_rank_one_forms_are_fixed(self):
        for label in ("E1", "E2", "E3", "E4", "E5"):
            with self.subTest(label=label):
                klass = make_class2(label)
                result = classify2(canonical2(klass))
                self.assertEqual(result.canonical, klass)

    def test_recovers_transformed_forms(self):
        generator = np.random.default_rng(11)
        classes = [make_class2(label) for label in ("E1", "E2", "E3", "E4", "E5")]
        classes += [make_class2("E6", [-0.7, 0.3]), make_class2("E7", [1.5])]
        for klass in classes:
            for _ in range(5):
                change = BasisChange.from_array(
                    np.diag(generator.uniform(0.3, 2.0, 2) * generator.choice((-1.0, 1.0), 2))
                    @ np.eye(2)[generator.permutation(2)]
                )
                algebra = transform(canonical2(klass), change)
                with self.subTest(klass=klass.describe(), change=change.rows):
                    result = classify2(algebra)
                    self.assertTrue(same_class2(result.canonical, klass))
                    self.assert_witness(algebra, result)

    def test_wrong_dimension(self):
        with self.assertRaises(InvalidInputError):
            classify2(make_algebra(3, np.eye(3)))


class TestPredictedIso(unittest.TestCase):
    def test_rank_one_classes(self):
        for label in ("E1", "E2", "E5"):
            self.assertEqual(predicted_iso(make_class2(label), (1.0, 0.0)).label, Label2.E1)

    def test_no_fixed_point(self):
        for label in ("Zero", "E3", "E4"):
            with self.assertRaises(NoFixedPointError):
                predicted_iso(make_class2(label), (1.0, 0.0))

    def test_e6_formula(self):
        predicted = predicted_iso(make_class2("E6", [0.0, 0.0]), (1.0, 1.0))
        self.assertEqual(predicted, make_class2("E6", [0.0, 0.0]))
        predicted = predicted_iso(make_class2("E6", [1.0, 2.0]), (1.0, 2.0))
        np.testing.assert_allclose(predicted.params, (0.25, 8.0))

    def test_e7_formula(self):
        predicted = predicted_iso(make_class2("E7", [2.0]), (8.0, 1.0))
        self.assertAlmostEqual(predicted.params[0], 2.0 * np.cbrt(1.0 / 64.0))

    def test_near_zero_coordinate(self):
        with self.assertRaises(DivisionByNearZeroError):
            predicted_iso(make_class2("E6", [0.0, 0.0]), (1.0, 0.0))


class TestTable2d(unittest.TestCase):
    def test_e2_row(self):
        row = table2d(make_class2("E2"))
        self.assertEqual(row.klass, "E2")
        self.assertEqual(len(row.rows), 1)
        entry = row.rows[0]
        np.testing.assert_allclose(entry.fixed_point, (1.0, 0.0), atol=1e-9)
        np.testing.assert_allclose(entry.jacobian_matrix, [[2.0, 0.0], [0.0, 0.0]], atol=1e-9)
        self.assertEqual(entry.classified_as, "E1")
        self.assertTrue(entry.matches_prediction)

    def test_e5_row(self):
        entry = table2d(make_class2("E5")).rows[0]
        np.testing.assert_allclose(entry.fixed_point, (0.0, -1.0), atol=1e-9)
        np.testing.assert_allclose(entry.jacobian_matrix, [[0.0, 0.0], [0.0, 2.0]], atol=1e-9)
        self.assertEqual(entry.classified_as, "E1")

    def test_no_points(self):
        for label in ("E3", "E4"):
            self.assertEqual(table2d(make_class2(label)).rows, ())

    def test_decoupled_e6(self):
        row = table2d(make_class2("E6", [0.0, 0.0]))
        self.assertEqual([entry.classified_as for entry in row.rows], ["E1", "E1", "E6(0.0, 0.0)"])
        self.assertIsNone(row.rows[0].matches_prediction)
        self.assertIsNotNone(row.rows[0].note)
        self.assertTrue(row.rows[2].matches_prediction)

    def test_e7_below_bound(self):
        row = table2d(make_class2("E7", [-2.0]))
        self.assertEqual(len(row.rows), 3)
        self.assertTrue(all(entry.matches_prediction for entry in row.rows))
        self.assertEqual(len(row.annotations), 2)


if __name__ == "__main__":
    runner = unittest.TextTestRunner()
    runner.run(TestClassify2())
