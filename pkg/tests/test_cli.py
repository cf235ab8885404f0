# Distributed under the MIT License.
# See LICENSE for details.
"""
Contains end-to-end tests of the `matmoment` command.

"""

import contextlib
import io
import json
import os
import tempfile
import unittest
from unittest import mock

import numpy as np

from matmoment import cli

SQRT2 = np.sqrt(2.)
TRIDIAGONAL = [[2., -1., 0.], [-1., 2., -1.], [0., -1., 2.]]
TRIDIAGONAL_DOCUMENT = {
    "mode": "recurrence",
    "dim": 3,
    "recurrence": {
        "order": 3,
        "coeffs": [6, -10, 4],
        "initials": [
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            TRIDIAGONAL,
            [[5, -4, 1], [-4, 6, -4], [1, -4, 5]],
        ],
    },
}
LINEAR_GROWTH_DOCUMENT = {
    "mode": "recurrence",
    "dim": 2,
    "recurrence": {
        "order": 2,
        "coeffs": [2, -1],
        "initials": [[[1, 1], [1, 1]], [[2, 2], [2, 2]]],
    },
}
LEBESGUE_DOCUMENT = {
    "mode": "sequence",
    "dim": 1,
    "moments": [[[1. / (k + 1)]] for k in range(5)],
}


def scalar_document(values, **extra):
    return dict({
        "mode": "sequence",
        "dim": 1,
        "moments": [[[v]] for v in values]
    }, **extra)


class TestCli(unittest.TestCase):
    """
    Test function `cli.main`.

    """

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self._tmp.cleanup)

    def write(self, name, obj):
        path = os.path.join(self._tmp.name, name)
        with open(path, "w", encoding="utf-8") as f:
            if isinstance(obj, str):
                f.write(obj)
            else:
                json.dump(obj, f)
        return path

    def run_main(self, *argv):
        out = io.StringIO()
        with contextlib.redirect_stdout(out):
            code = cli.main(list(argv))
        lines = [json.loads(line) for line in out.getvalue().splitlines()]
        return code, lines

    def test_check(self):
        code, (result,) = self.run_main(
            "check", "--kind", "hausdorff",
            self.write("lebesgue.json", LEBESGUE_DOCUMENT))
        self.assertEqual(code, 0)
        self.assertEqual(result["exit_code"], 0)
        verdict = result["verdicts"]["hausdorff"]
        self.assertTrue(verdict["satisfied"])
        self.assertEqual(verdict["tested"], ["H_2", "(E-E2)H_1"])

        code, (result,) = self.run_main(
            "check", "--kind", "hamburger",
            self.write("bad.json", scalar_document([1, 2, 3])))
        self.assertEqual(code, 1)
        certificate = result["verdicts"]["hamburger"]["failing_certificate"]
        self.assertEqual(certificate["matrix_name"], "H_1")
        self.assertAlmostEqual(certificate["eigenvalue"], 2. - np.sqrt(5.))

        code, (result,) = self.run_main(
            "check", "--kind", "stieltjes",
            self.write("short.json", scalar_document([1])))
        self.assertEqual(code, 2)
        self.assertEqual(result["error"]["type"], "InsufficientMoments")

    def test_check_recurrence(self):
        path = self.write("tridiagonal.json", TRIDIAGONAL_DOCUMENT)
        code, _ = self.run_main("check", "--kind", "stieltjes", path)
        self.assertEqual(code, 0)
        code, (result,) = self.run_main("check", "--kind", "hausdorff", path)
        self.assertEqual(code, 1)
        self.assertEqual(result["verdicts"]["hausdorff"]["truncation_order"],
                         12)

    def test_solve(self):
        code, (result,) = self.run_main(
            "solve", self.write("tridiagonal.json", TRIDIAGONAL_DOCUMENT))
        self.assertEqual(code, 0)
        self.assertEqual(result["data"]["outcome"], "measure")
        self.assertTrue(result["data"]["all_weights_psd"])
        self.assertTrue(result["data"]["hankel_psd"])
        self.assertEqual(result["data"]["support_kinds"],
                         ["hamburger", "stieltjes"])
        atoms = result["measure"]["atoms"]
        np.testing.assert_allclose([atom["node"] for atom in atoms],
                                   [2. - SQRT2, 2., 2. + SQRT2],
                                   atol=1.e-9)
        np.testing.assert_allclose(
            atoms[1]["weight"],
            [[0.5, 0., -0.5], [0., 0., 0.], [-0.5, 0., 0.5]],
            atol=1.e-9)
        np.testing.assert_allclose(result["minimal_polynomial"]["coeffs"],
                                   [-4., 10., -6., 1.],
                                   atol=1.e-9)
        self.assertLess(result["residuals"]["reconstruction"], 1.e-9)

    def test_solve_repeated_roots(self):
        code, (result,) = self.run_main(
            "solve", self.write("growth.json", LINEAR_GROWTH_DOCUMENT))
        self.assertEqual(code, 1)
        self.assertEqual(result["data"]["outcome"], "repeated_roots")
        failure = result["data"]["failure"]
        self.assertEqual(failure["type"], "RepeatedRoots")
        self.assertAlmostEqual(failure["root"], 1., places=6)
        self.assertEqual(failure["multiplicity"], 2)
        self.assertNotIn("measure", result)

    def test_solve_sequence(self):
        document = {
            "mode": "sequence",
            "dim": 2,
            "moments": [[[0.5**k, 0.], [0., 0.5**k]] for k in range(6)],
        }
        code, (result,) = self.run_main("solve",
                                        self.write("geometric.json", document))
        self.assertEqual(code, 0)
        self.assertEqual(result["data"]["support_kinds"],
                         ["hamburger", "stieltjes", "hausdorff"])
        self.assertEqual(len(result["measure"]["atoms"]), 1)

    def test_reconstruct(self):
        solved = io.StringIO()
        with contextlib.redirect_stdout(solved):
            cli.main(
                ["solve",
                 self.write("tridiagonal.json", TRIDIAGONAL_DOCUMENT)])
        path = self.write("solved.json", solved.getvalue())
        code, (result,) = self.run_main("reconstruct", "--order", "4", path)
        self.assertEqual(code, 0)
        moments = np.array(result["data"]["moments"])
        self.assertEqual(moments.shape, (5, 3, 3))
        for k in range(5):
            np.testing.assert_allclose(moments[k],
                                       np.linalg.matrix_power(TRIDIAGONAL, k),
                                       atol=1.e-8)

        measure = {"dim": 1, "atoms": [{"node": 0.5, "weight": [[2.]]}]}
        code, (result,) = self.run_main("reconstruct", "--order", "2",
                                        self.write("measure.json", measure))
        self.assertEqual(result["data"]["moments"], [[[2.]], [[1.]], [[0.5]]])
        self.assertEqual(
            self.run_main("reconstruct", "--order", "-1", path)[0], 2)

    def test_riesz(self):
        path = self.write(
            "lebesgue.json",
            dict(LEBESGUE_DOCUMENT, polynomial=[[[1.]], [[-1.]]]))
        code, (result,) = self.run_main("riesz", path)
        self.assertEqual(code, 0)
        self.assertAlmostEqual(result["data"]["value"], 0.5)
        code, (result,) = self.run_main("riesz", "--square", path)
        self.assertEqual(code, 0)
        self.assertAlmostEqual(result["data"]["value"], 1. / 3.)

        path = self.write(
            "bad.json", scalar_document([1, 2, 3],
                                        polynomial=[[[2.]], [[-1.]]]))
        code, (result,) = self.run_main("riesz", "--square", path)
        self.assertEqual(code, 1)
        self.assertAlmostEqual(result["data"]["value"], -1.)

        code, (result,) = self.run_main(
            "riesz", self.write("plain.json", LEBESGUE_DOCUMENT))
        self.assertEqual(code, 2)
        self.assertEqual(result["error"]["type"], "SchemaError")

    def test_batch(self):
        paths = [
            self.write("lebesgue.json", LEBESGUE_DOCUMENT),
            self.write("bad.json", scalar_document([1, 2, 3])),
            self.write("broken.json", "{"),
        ]
        code, results = self.run_main("check", "--kind", "hamburger",
                                      "--jobs", "2", *paths)
        self.assertEqual(code, 2)
        self.assertEqual([r["source"] for r in results], paths)
        self.assertEqual([r["exit_code"] for r in results], [0, 1, 2])
        self.assertEqual(results[2]["error"]["type"], "ParseError")

    def test_tolerance_flags(self):
        path = self.write("bad.json", scalar_document([1, 2, 3]))
        self.assertEqual(
            self.run_main("check", "--kind", "hamburger", "--tol-psd", "1",
                          path)[0], 0)
        code, (result,) = self.run_main("check", "--kind", "hamburger",
                                        "--tol-psd", "-1", path)
        self.assertEqual(code, 2)
        self.assertEqual(result["error"]["type"], "SchemaError")

    def test_missing_file(self):
        code, (result,) = self.run_main(
            "solve", os.path.join(self._tmp.name, "missing.json"))
        self.assertEqual(code, 2)
        self.assertEqual(result["error"]["type"], "MomentError")

    def test_shipped_examples(self):
        examples = os.path.join(os.path.dirname(__file__), os.pardir, "docs",
                                "examples")
        cases = [
            (["solve"], "three_node_tridiagonal.json", 0),
            (["solve"], "binet_raw.json", 0),
            (["solve"], "linear_growth.json", 1),
            (["solve"], "geometric.json", 0),
            (["solve"], "indefinite_atoms.json", 1),
            (["check", "--kind", "hamburger"], "indefinite_atoms.json", 1),
            (["check", "--kind", "hausdorff"], "lebesgue_unit_interval.json",
             0),
            (["riesz", "--square"], "lebesgue_unit_interval.json", 0),
            (["reconstruct", "--order", "3"], "two_atom_measure.json", 0),
        ]
        for command, name, expected in cases:
            code, _ = self.run_main(*command, os.path.join(examples, name))
            self.assertEqual(code, expected, msg=name)

    def test_stdin(self):
        data = json.dumps(LEBESGUE_DOCUMENT).encode("utf-8")
        stdin = io.TextIOWrapper(io.BytesIO(data))
        with mock.patch("sys.stdin", stdin):
            code, (result,) = self.run_main("check", "--kind", "stieltjes")
        self.assertEqual(code, 0)
        self.assertNotIn("source", result)


if __name__ == "__main__":
    unittest.main()
