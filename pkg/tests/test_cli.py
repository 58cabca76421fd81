from contextlib import redirect_stderr, redirect_stdout
import io
import json
from pathlib import Path
import tempfile
import unittest

import kloops as kl
from kloops.cli import parse_args, run

from .fixtures import NONBOL5, NOT_LATIN, fixture, symetron


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run([str(a) for a in argv])
    return code, out.getvalue(), err.getvalue()


class TestCli(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self._tmp.name)
        for name in ("z5", "z9", "z15", "z3xz3", "frobenius21"):
            kl.write_table(fixture(name).table, self.dir / f"{name}.tbl")
        kl.write_table(symetron("z5").table, self.dir / "z5_symetron.tbl")
        kl.write_table(kl.direct_product(fixture("z3"), fixture("z5")).table, self.dir / "z3xz5.tbl")
        kl.write_table(kl.CayleyTable(NONBOL5), self.dir / "nonbol5.tbl")
        kl.write_table(kl.CayleyTable(NOT_LATIN), self.dir / "not_latin.tbl")

    def tearDown(self):
        self._tmp.cleanup()

    def path(self, name):
        return self.dir / f"{name}.tbl"

    def test_parse_args(self):
        args = parse_args(["--cap", "10", "normal", "z9.tbl", "--subloop", "0,3,6"])
        self.assertEqual(args.cap, 10)
        self.assertEqual(args.subloop, "0,3,6")
        self.assertIs(args.command, kl.cli.cmd_normal)
        with redirect_stdout(io.StringIO()), self.assertRaises(SystemExit) as ctx:
            parse_args(["--version"])
        self.assertEqual(ctx.exception.code, 0)

    def test_validate(self):
        code, out, _ = run_cli("validate", self.path("z5"), "--as", "kloop")
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[:3], ["valid: true", "order: 5", "kind: kloop"])

        code, out, _ = run_cli("validate", self.path("frobenius21"))
        self.assertEqual(code, 0)
        self.assertIn("associativity_witness: ", out)

    def test_validate_failures(self):
        code, out, _ = run_cli("validate", self.path("nonbol5"), "--as", "bol")
        self.assertEqual(code, 1)
        self.assertIn("valid: false", out)
        self.assertIn("bol_witness: ", out)

        code, out, _ = run_cli("validate", self.path("nonbol5"), "--as", "loop")
        self.assertEqual(code, 0)
        self.assertIn("kind: loop", out)

        code, out, err = run_cli("validate", self.path("not_latin"))
        self.assertEqual(code, 2)
        self.assertEqual(out, "")
        self.assertTrue(err.startswith("error: NotLatin: "))

    def test_non_ascii_digit_is_malformed(self):
        path = self.dir / "superscript.tbl"
        path.write_text("2\n0 1\n1 ²\n", encoding="utf-8")
        code, out, err = run_cli("validate", path)
        self.assertEqual(code, 2)
        self.assertEqual(out, "")
        self.assertTrue(err.startswith("error: MalformedInput: "))

    def test_validate_symetron(self):
        code, out, _ = run_cli("validate", self.path("z5_symetron"), "--as", "symetron")
        self.assertEqual(code, 0)
        self.assertIn("kind: symetron", out)

        code, _, err = run_cli("validate", self.path("z5"), "--as", "symetron")
        self.assertEqual(code, 2)
        self.assertIn("NotSymetron", err)

    def test_invariants(self):
        code, out, _ = run_cli("invariants", self.path("z5"))
        self.assertEqual(code, 0)
        lines = out.splitlines()
        for expected in (
            "kind: kloop",
            "order: 5",
            "is_fixed_point_free: true",
            "mlt_left: 5",
            "precession_group: 1",
            "subloops: 2",
            "identity.1: pass",
        ):
            self.assertIn(expected, lines)

    def test_invariants_json_and_cap(self):
        code, out, _ = run_cli("--format", "json", "--cap", "2", "invariants", self.path("z5"))
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual(data["kind"], "kloop")
        self.assertEqual(data["group_sizes"]["mlt"], kl.CAP_EXCEEDED)
        self.assertEqual(data["group_sizes"]["inner_group"], 1)
        self.assertEqual(data["counts"]["subloops"], 2)
        self.assertTrue(data["identities"]["3-literal"])

    def test_invariants_of_nonbol_loop(self):
        code, out, _ = run_cli("invariants", self.path("nonbol5"))
        self.assertEqual(code, 0)
        self.assertIn("subloops: n/a", out.splitlines())
        self.assertNotIn("identity.", out)

    def test_invariants_symetron(self):
        code, out, _ = run_cli("invariants", self.path("z5_symetron"), "--as", "symetron")
        self.assertEqual(code, 0)
        self.assertIn("convex_sets: 7", out.splitlines())

    def test_identities(self):
        code, out, _ = run_cli("identities", self.path("frobenius21"))
        self.assertEqual(code, 0)
        self.assertIn("item.1: pass", out.splitlines())
        self.assertIn("window: 42", out.splitlines())

        code, out, _ = run_cli("identities", self.path("z5"), "--involution")
        self.assertIn("item.10: pass", out.splitlines())

        code, _, err = run_cli("identities", self.path("nonbol5"))
        self.assertEqual(code, 2)
        self.assertIn("PreconditionError", err)

    def test_convert(self):
        target = self.dir / "converted.tbl"
        code, out, _ = run_cli("--out", target, "convert", self.path("z5"), "--to", "symetron")
        self.assertEqual(code, 0)
        self.assertEqual(out, "")
        self.assertEqual(kl.read_table(target), symetron("z5").table)

        code, out, _ = run_cli("convert", target, "--to", "kloop")
        self.assertEqual(kl.parse_table(out), fixture("z5").table)

        code, out, _ = run_cli("convert", target, "--to", "kloop", "--basepoint", "3")
        self.assertEqual(code, 0)
        self.assertEqual(kl.find_identity(kl.parse_table(out)), 0)

    def test_subloops(self):
        code, out, _ = run_cli("subloops", self.path("z9"))
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines(), ["0", "0,3,6", "0,1,2,3,4,5,6,7,8"])

    def test_normal(self):
        code, out, _ = run_cli("normal", self.path("z9"), "--subloop", "0,3,6")
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines(), ["normal: true", "normal_by_cosets: true"])

        code, out, _ = run_cli("normal", self.path("frobenius21"), "--subloop", "0,7,14")
        self.assertEqual(code, 1)
        self.assertIn("normal: false", out)

        code, _, err = run_cli("normal", self.path("z9"), "--subloop", "0,3")
        self.assertEqual(code, 2)
        self.assertIn("not a subloop", err)

        code, _, err = run_cli("normal", self.path("z9"), "--subloop", "0,x")
        self.assertEqual(code, 2)
        self.assertIn("MalformedInput", err)

    def test_quotient(self):
        code, out, _ = run_cli("quotient", self.path("z9"), "--subloop", "0,3,6")
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[0], "# block 0: 0,3,6")
        self.assertEqual(kl.parse_table(out), fixture("z3").table)

        code, out, _ = run_cli("quotient", self.path("frobenius21"), "--subloop", "0,7,14")
        self.assertEqual(code, 1)
        self.assertTrue(out.startswith("normal: false"))

    def test_centralizer(self):
        code, out, _ = run_cli("centralizer", self.path("z5"), "--element", "2")
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines(), ["centralizer: 0,1,2,3,4", "center: 0,1,2,3,4"])

        code, _, _ = run_cli("centralizer", self.path("z5"), "--element", "9")
        self.assertEqual(code, 2)

    def test_iso(self):
        code, out, _ = run_cli("iso", self.path("z15"), self.path("z3xz5"))
        self.assertEqual(code, 0)
        self.assertIn("isomorphic: true", out)

        code, out, _ = run_cli("--format", "json", "iso", self.path("z9"), self.path("z3xz3"))
        self.assertEqual(code, 1)
        self.assertEqual(json.loads(out), {"isomorphic": False})

    def test_cover(self):
        code, out, _ = run_cli("cover", self.path("z5"), "--subset", "0")
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[0], "translates: 5")

        code, out, _ = run_cli("cover", self.path("z5_symetron"), "--subset", "0,1,2,3,4", "--as", "symetron")
        self.assertEqual(out.splitlines(), ["translates: 1", "0,0"])

        code, _, _ = run_cli("cover", self.path("z5"), "--subset", "")
        self.assertEqual(code, 2)

    def test_enumerate(self):
        code, out, _ = run_cli("enumerate", "--order", "4")
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[0], "# order 4: 2 classes")
        self.assertEqual(kl.parse_tables(out), kl.enumerate_kloops(4))

        code, _, err = run_cli("enumerate", "--order", "9")
        self.assertEqual(code, 2)
        self.assertIn("OrderTooLarge", err)

    def test_enumerate_order_8(self):
        code, out, _ = run_cli("enumerate", "--order", "8")
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[0], "# order 8: 6 classes")
        tables = kl.parse_tables(out)
        self.assertEqual(len(tables), 6)
        for t in tables:
            self.assertTrue(kl.make_loop(t).flags.is_kloop)
            self.assertEqual(kl.canonical_form(t), t)

    def test_runs_are_byte_identical(self):
        commands = [
            ("validate", self.path("frobenius21")),
            ("--format", "json", "invariants", self.path("z9")),
            ("invariants", self.path("z3xz3")),
            ("identities", self.path("z15")),
            ("subloops", self.path("frobenius21")),
            ("iso", self.path("z15"), self.path("z3xz5")),
            ("cover", self.path("frobenius21"), "--subset", "0,1,5"),
            ("convert", self.path("z9"), "--to", "symetron"),
            ("enumerate", "--order", "6"),
        ]
        first = [run_cli(*argv) for argv in commands]
        second = [run_cli(*argv) for argv in commands]
        self.assertEqual(first, second)
        self.assertTrue(all(code == 0 for code, _, _ in first))

    def test_missing_file(self):
        code, _, err = run_cli("subloops", self.dir / "missing.tbl")
        self.assertEqual(code, 2)
        self.assertTrue(err.startswith("error: FileNotFoundError"))
