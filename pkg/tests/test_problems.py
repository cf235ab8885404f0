# Distributed under the MIT License.
# See LICENSE for details.
"""
Contains unit tests for the truncated Hamburger, Stieltjes and Hausdorff
problems.

"""

import math
import unittest

import numpy as np

from matmoment import errors, hankel, problems, symmetric

from .oracle import OracleMeasureSpec, oracle_moments, random_measure


def _scalar(values):
    return hankel.MatrixMomentSequence(values)


class TestHamburger(unittest.TestCase):
    """
    Test class `problems.Hamburger`.

    """

    def test_examples(self):
        self.assertTrue(problems.check_hamburger(_scalar([1., 0., 1.])))

        verdict = problems.check_hamburger(_scalar([1., 2., 3.]))
        self.assertFalse(verdict)
        self.assertEqual(verdict.problem_kind, "Hamburger")
        self.assertEqual(verdict.truncation_order, 2)
        certificate = verdict.failing_certificate
        self.assertEqual(certificate.matrix_name, "H_1")
        self.assertAlmostEqual(certificate.eigenvalue, 2. - math.sqrt(5.))
        h = np.array([[1., 2.], [2., 3.]])
        v = certificate.eigenvector
        self.assertAlmostEqual(v @ h @ v, 2. - math.sqrt(5.))

    def test_two_atoms(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            spec = random_measure(rng, 2, 2)
            spec = OracleMeasureSpec((-1., 2.), spec.weights)
            verdict = problems.check_hamburger(oracle_moments(spec, 4))
            self.assertTrue(verdict)
            self.assertEqual(verdict.tested, ("H_2",))

    def test_raw_mode_rejected(self):
        seq = hankel.MatrixMomentSequence([np.eye(2)], symmetric=False)
        with self.assertRaises(errors.AsymmetricInput):
            problems.check_hamburger(seq)

    def test_support(self):
        self.assertTrue(problems.Hamburger.contains(-1.e9))
        self.assertEqual(problems.Hamburger.name(), "Hamburger")


class TestStieltjes(unittest.TestCase):
    """
    Test class `problems.Stieltjes`.

    """

    def test_examples(self):
        verdict = problems.check_stieltjes(_scalar([1., 1., 2., 6.]))
        self.assertTrue(verdict)
        self.assertEqual(verdict.tested, ("H_1", "EH_1"))

        verdict = problems.check_stieltjes(_scalar([1., -1., 1., -1.]))
        self.assertFalse(verdict)
        self.assertEqual(verdict.failing_certificate.matrix_name, "EH_1")

        origin = hankel.MatrixMomentSequence([np.eye(2)] +
                                             [np.zeros((2, 2))] * 3)
        self.assertTrue(problems.check_stieltjes(origin))

    def test_insufficient(self):
        with self.assertRaises(errors.InsufficientMoments):
            problems.check_stieltjes(_scalar([1.]))

    def test_support(self):
        self.assertFalse(problems.Stieltjes.contains(-0.5))
        self.assertTrue(problems.Stieltjes.contains(-1.e-9, eps=1.e-7))
        self.assertTrue(problems.Stieltjes.contains(1.e9))


class TestHausdorff(unittest.TestCase):
    """
    Test class `problems.Hausdorff`.

    """

    def test_examples(self):
        lebesgue = _scalar([1. / (k + 1) for k in range(5)])
        verdict = problems.check_hausdorff(lebesgue)
        self.assertTrue(verdict)
        self.assertEqual(verdict.tested, ("H_2", "(E-E2)H_1"))

        verdict = problems.check_hausdorff(_scalar([1., 2., 4.]))
        self.assertFalse(verdict)
        self.assertEqual(verdict.failing_certificate.matrix_name, "(E-E2)H_0")
        self.assertAlmostEqual(verdict.failing_certificate.eigenvalue, -2.)

        identities = hankel.MatrixMomentSequence([np.eye(3)] * 5)
        verdict = problems.check_hausdorff(identities)
        self.assertTrue(verdict)
        self.assertIn("(E-E2)H_1", verdict.tested)

    def test_odd_truncation(self):
        lebesgue = _scalar([1. / (k + 1) for k in range(4)])
        verdict = problems.check_hausdorff(lebesgue)
        self.assertTrue(verdict)
        self.assertEqual(verdict.tested, ("EH_1", "(I-E)H_1"))
        self.assertFalse(problems.check_hausdorff(_scalar([1., 2.])))

    def test_insufficient(self):
        with self.assertRaises(errors.InsufficientMoments):
            problems.check_hausdorff(_scalar([1.]))

    def test_support(self):
        self.assertEqual(problems.Hausdorff.support(), (0., 1.))
        self.assertTrue(problems.Hausdorff.contains(1.))
        self.assertFalse(problems.Hausdorff.contains(1.5))


class TestMomentProperties(unittest.TestCase):
    """
    Test properties shared by the three problems on random atomic measures.

    """

    def test_measure_oracle(self):
        rng = np.random.default_rng(8)
        windows = {
            problems.Hamburger: (-2., 2.),
            problems.Stieltjes: (0., 3.),
            problems.Hausdorff: (0., 1.),
        }
        for problem, (lo, hi) in windows.items():
            for trial in range(200):
                k = 1 + trial % 3
                p = 1 + trial % 4
                spec = random_measure(rng, k, p, lo, hi, gap=0.25)
                seq = oracle_moments(spec, 2 * k + 1 + trial % 2)
                verdict = problem().check(seq)
                self.assertTrue(verdict,
                                msg=f"{problem.name()}: {spec.nodes}")

    def test_nesting(self):
        rng = np.random.default_rng(9)
        for trial in range(100):
            spec = random_measure(rng, 3, 2, psd=trial % 2 == 0)
            seq = oracle_moments(spec, 8)
            for m in range(4, 0, -1):
                if symmetric.is_psd(hankel.build_hankel(seq, m).matrix()):
                    for j in range(m):
                        self.assertTrue(
                            symmetric.is_psd(
                                hankel.build_hankel(seq, j).matrix()))

    def test_riesz_positivity(self):
        rng = np.random.default_rng(10)
        for _ in range(100):
            spec = random_measure(rng, 3, 2)
            seq = oracle_moments(spec, 6)
            self.assertTrue(problems.check_hamburger(seq))
            coeffs = rng.standard_normal((4, 2, 2))
            value = hankel.riesz_eval(seq, hankel.gram_polynomial(coeffs))
            self.assertGreaterEqual(value, -1.e-9 * seq.scale)

    def test_implication_chain(self):
        rng = np.random.default_rng(12)
        for trial in range(100):
            k, p = 1 + trial % 3, 1 + trial % 2
            seq = oracle_moments(random_measure(rng, k, p, 0., 1., 0.25),
                                 2 * k + 2)
            self.assertTrue(problems.check_hausdorff(seq))
            self.assertTrue(problems.check_stieltjes(seq))
            self.assertTrue(problems.check_hamburger(seq))

    def test_outside_unit_interval(self):
        rng = np.random.default_rng(13)
        for trial in range(100):
            k, p = 1 + trial % 3, 1 + trial % 2
            inside = random_measure(rng, k, p, 0., 1., 0.3) if k > 1 else None
            nodes = (inside.nodes[:k - 1] if inside else ()) + (rng.uniform(
                1.5, 2.5),)
            weights = (inside.weights[:k - 1] if inside else
                       ()) + (np.eye(p) * rng.uniform(0.5, 1.),)
            spec = OracleMeasureSpec(nodes, weights, (0., 3.))
            seq = oracle_moments(spec, 2 * k + 2)
            self.assertTrue(problems.check_stieltjes(seq))
            self.assertFalse(problems.check_hausdorff(seq),
                             msg=f"{spec.nodes}")


if __name__ == "__main__":
    unittest.main()
