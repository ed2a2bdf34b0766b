"""CLI contract: spec examples, exit codes, schema validity, CSV shape, cache stability.

Usage: test_cli.py <braceforge binary> <schema dir>
"""

import csv
import io
import json
import os
import pathlib
import subprocess
import sys
import tempfile
import unittest

import jsonschema
from referencing import Registry, Resource

CLI = ""
SCHEMAS = pathlib.Path()


def run(*args, env=None):
    full_env = {k: v for k, v in os.environ.items() if k != "BRACEFORGE_CACHE"}
    full_env.update(env or {})
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=full_env, timeout=240)


def validator(name):
    registry = Registry()
    for path in SCHEMAS.glob("*.schema.json"):
        registry = registry.with_resource(path.name, Resource.from_contents(json.loads(path.read_text())))
    schema = json.loads((SCHEMAS / name).read_text())
    return jsonschema.Draft202012Validator(schema, registry=registry)


def csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class Enumerate(unittest.TestCase):
    def json_of(self, *args):
        r = run("enumerate", *args, "--format", "json")
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        validator("enumeration.schema.json").validate(doc)
        return doc

    def test_cyclic6(self):
        doc = self.json_of("--group", "cyclic:6")
        self.assertEqual(doc["count"], 3)
        self.assertEqual(sorted(s["type"] for s in doc["subgroups"]), ["C6", "D3", "D3"])

    def test_dihedral3_csv(self):
        r = run("enumerate", "--group", "dihedral:3", "--format", "csv")
        self.assertEqual(r.returncode, 0, r.stderr)
        rows = csv_rows(r.stdout)
        self.assertEqual(len(rows), 5)
        self.assertEqual(sorted(row["type"] for row in rows), ["C6", "C6", "C6", "D3", "D3"])

    def test_cyclic15(self):
        self.assertEqual(self.json_of("--group", "cyclic:15")["count"], 1)

    def test_oracle_flag(self):
        doc = self.json_of("--group", "quaternion:8", "--with-oracle")
        self.assertIs(doc["oracle_agrees"], True)

    def test_csv_rows_equal_json_count(self):
        for spec in ("dihedral:4", "alternating:4", "cyclic:2*cyclic:2*cyclic:2"):
            r = run("enumerate", "--group", spec, "--format", "csv")
            self.assertEqual(r.returncode, 0, r.stderr)
            self.assertEqual(len(csv_rows(r.stdout)), self.json_of("--group", spec)["count"], spec)

    def test_table_ingestion_matches_preset(self):
        preset = self.json_of("--group", "dihedral:4")
        with tempfile.TemporaryDirectory() as d:
            path = pathlib.Path(d) / "d4.json"
            path.write_text(json.dumps({"table": preset["group"]["table"], "label": "from-file"}))
            doc = self.json_of("--table", str(path))
        self.assertEqual(doc["count"], preset["count"])
        self.assertEqual(doc["group_type"], "D4")
        self.assertEqual(doc["group"]["label"], "from-file")

    def test_text_is_default(self):
        r = run("enumerate", "--group", "cyclic:6")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertIn("3 regular G-stable subgroups", r.stdout)


class Classify(unittest.TestCase):
    def report(self, spec):
        r = run("classify", "--group", spec, "--format", "json")
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        validator("report.schema.json").validate(doc)
        for name, verdict in doc["laws"].items():
            self.assertNotEqual(verdict["status"], "fail", name)
        return doc

    def test_quaternion_dihedral_section(self):
        doc = self.report("quaternion:8")
        dihedral = {i for i, inv in enumerate(doc["invariants"]) if inv["type"] == "D4"}
        self.assertEqual(len(dihedral), 6)
        brace = [c for c in doc["brace_classes"] if set(c) <= dihedral]
        giso = [c for c in doc["giso_classes"] if set(c) <= dihedral]
        self.assertEqual(sorted(len(c) for c in brace), [3, 3])
        self.assertEqual(len(giso), 6)

    def test_dihedral4_lambda_shares_giso_class_not_brace_class(self):
        doc = self.report("dihedral:4")
        inv = doc["invariants"]
        table = doc["group"]["table"]
        lam_elems = sorted(list(row) for row in table)
        lam = next(i for i, s in enumerate(doc["subgroups"]) if sorted(s["elements"]) == lam_elems)
        partners = [i for i in range(len(inv)) if i != lam and inv[i]["giso_class"] == inv[lam]["giso_class"]]
        self.assertTrue(partners)
        self.assertTrue(all(inv[i]["brace_class"] != inv[lam]["brace_class"] for i in partners))

    def test_cyclic6_brace_class_sizes(self):
        doc = self.report("cyclic:6")
        self.assertEqual(sorted(len(c) for c in doc["brace_classes"]), [1, 1, 1])

    def test_csv_rows_equal_subgroups(self):
        r = run("classify", "--group", "dihedral:4", "--format", "csv")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(len(csv_rows(r.stdout)), len(self.report("dihedral:4")["subgroups"]))


class PqVerify(unittest.TestCase):
    def verify(self, *args):
        r = run("pq-verify", *args, "--format", "json")
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        validator("pq.schema.json").validate(doc)
        self.assertIs(doc["all_verified"], True)
        return doc

    def test_3_2(self):
        doc = self.verify("--p", "3", "--q", "2")
        self.assertEqual(doc["brace_classes"], 6)
        self.assertIs(doc["cross_checked"], True)

    def test_7_3(self):
        doc = self.verify("--p", "7", "--q", "3")
        counts = {c["group"]: c["subgroup_count"] for c in doc["cases"]}
        by_tag = {}
        for c in doc["cases"]:
            by_tag.setdefault(c["group"], 0)
            by_tag[c["group"]] += c["subgroup_count"]
        self.assertEqual(sorted(by_tag.values()), [5, 23], counts)
        self.assertEqual(doc["brace_classes"], 8)

    def test_5_3_inert(self):
        doc = self.verify("--p", "5", "--q", "3")
        self.assertEqual(doc["brace_classes"], 1)
        self.assertEqual(len(doc["braces"]), 1)

    def test_text_and_csv(self):
        r = run("pq-verify", "--p", "3", "--q", "2")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertIn("all claims verified", r.stdout)
        r = run("pq-verify", "--p", "3", "--q", "2", "--format", "csv")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertTrue(all(row["status"] != "fail" for row in csv_rows(r.stdout)))


class ExitCodes(unittest.TestCase):
    def test_input_errors(self):
        with tempfile.TemporaryDirectory() as d:
            bad_table = pathlib.Path(d) / "bad.json"
            bad_table.write_text('{"table": [[0, 1], [0, 1]]}')
            broken = pathlib.Path(d) / "broken.json"
            broken.write_text("{")
            cases = [
                ("enumerate", "--group", "nonsense:3"),
                ("enumerate", "--group", "dihedral:3", "--format", "yaml"),
                ("enumerate",),
                ("enumerate", "--table", str(bad_table)),
                ("enumerate", "--table", str(broken)),
                ("enumerate", "--table", str(pathlib.Path(d) / "missing.json")),
                ("pq-verify", "--p", "4", "--q", "2"),
                ("pq-verify", "--p", "3", "--q", "5"),
                ("pq-verify", "--p", "7", "--q", "3", "--g", "3"),
                ("frobnicate",),
            ]
            for args in cases:
                self.assertEqual(run(*args).returncode, 1, args)

    def test_unsupported(self):
        self.assertEqual(run("enumerate", "--group", "cyclic:16").returncode, 2)
        self.assertEqual(run("enumerate", "--group", "dihedral:5", "--with-oracle").returncode, 2)

    def test_help_is_success(self):
        self.assertEqual(run("--help").returncode, 0)


class Cache(unittest.TestCase):
    def test_warm_rerun_is_byte_identical(self):
        with tempfile.TemporaryDirectory() as d:
            cache, out = pathlib.Path(d) / "cache", pathlib.Path(d) / "out"
            outputs = []
            for i in range(2):
                target = out.with_suffix(f".{i}.json")
                r = run("classify", "--group", "metacyclic:7,3,2", "--format", "json", "--out", str(target),
                        "--cache-dir", str(cache))
                self.assertEqual(r.returncode, 0, r.stderr)
                outputs.append(target.read_bytes())
            self.assertEqual(len(list(cache.glob("*.json"))), 1)
            self.assertEqual(outputs[0], outputs[1])
            uncached = run("classify", "--group", "metacyclic:7,3,2", "--format", "json")
            self.assertEqual(uncached.stdout.encode(), outputs[0])

    def test_environment_variable(self):
        with tempfile.TemporaryDirectory() as d:
            r = run("enumerate", "--group", "dihedral:4", env={"BRACEFORGE_CACHE": d})
            self.assertEqual(r.returncode, 0, r.stderr)
            self.assertEqual(len(list(pathlib.Path(d).glob("*.json"))), 1)


if __name__ == "__main__":
    CLI, SCHEMAS = sys.argv[1], pathlib.Path(sys.argv[2])
    unittest.main(argv=sys.argv[:1], verbosity=2)
