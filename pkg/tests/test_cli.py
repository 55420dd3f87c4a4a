from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from balanced_complexes import fixtures
from balanced_complexes.cli import main, run
from balanced_complexes.complex_core import Complex, WeightedComplex
from balanced_complexes.cox_poly import LaurentElement
from balanced_complexes.hypertree import Hypertree, check_axioms
from balanced_complexes.picard import CurveClass, DivisorClass


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, json.loads(out.getvalue())


def subset(doc, expected):
    return {k: doc[k] for k in expected} == expected


def test_balance_example():
    code, doc = call("balance", "--char", "2", "fixtures://two-triangles-disjoint")
    assert code == 0
    assert subset(doc, {"balanceable": True, "witness": ["1"] * 6, "dim": 1})


def test_pair_example():
    assert call("pair", "fixtures://F9", "fixtures://class-oct") == (0, {"value": -1})
    assert call("pair", "fixtures://F7", "fixtures://two-triangles-disjoint") == (0, {"value": -1})


def test_class_example():
    code, doc = call("class", "fixtures://square", "--n", "5")
    assert code == 0
    assert subset(doc, {"H": 2, "E": {"1": -1, "2": -1, "3": -1, "4": -1}})


def test_char_sweep_reports():
    _, doc = call("report", "char-sweep", "fixtures://two-triangles-disjoint", "--chars", "0,2,3,5")
    assert doc["balanceable_at"] == [2]
    _, doc = call("report", "char-sweep", "fixtures://octagon", "--chars", "0,2,3,5")
    assert doc["balanceable_at"] == [0, 2, 3, 5]


def test_catalogue_report():
    code, doc = call("report", "catalogue", "--vertices", "5", "--char", "0")
    assert code == 0 and doc["mismatches"] == [] and doc["count"] == 10


def test_other_subcommands():
    assert call("minimal", "fixtures://octagon")[1]["minimal"] is True
    _, doc = call("classify", "--char", "0", "fixtures://hexagon")
    assert doc["tag"] == "EvenCycle" and doc["m"] == 6 and doc["irreducible_degree_two"] is True
    _, doc = call("invariance", "fixtures://keel-vermeire")
    assert doc["invariant"] and doc["balanced"]
    _, doc = call("clear", "fixtures://octagon-alternating")
    assert doc["invariant"] and doc["class"] == fixtures.load("class-oct")
    _, doc = call("hypertree", "check", "fixtures://hypertree-6")
    assert doc["ok"]
    _, doc = call("hypertree", "degree", "fixtures://hypertree-6", "--vertex", "outside")
    assert doc["degree"] == 3
    _, doc = call("enumerate-hypertrees", "--n", "6")
    assert doc["count"] == 1 and doc["hypertrees"][0]["min_degree"] == 2
    _, doc = call("hypertree", "enumerate", "--n", "5")
    assert doc["count"] == 0
    _, doc = call("enumerate-minimal", "--vertices", "4", "--char", "2")
    assert doc["count"] == 4
    _, doc = call("fixtures")
    assert "octagon" in doc["fixtures"]


def test_output_is_independent_of_jobs():
    a = call("enumerate-minimal", "--vertices", "5", "--char", "3")
    b = call("enumerate-minimal", "--vertices", "5", "--char", "3", "--jobs", "2")
    assert a == b


def test_domain_errors_exit_one(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, doc = call("balance", str(bad))
    assert code == 1 and "malformed JSON" in doc["error"]["message"]
    code, doc = call("balance", "fixtures://no-such-thing")
    assert code == 1 and doc["error"]["type"] == "FixtureError"
    code, doc = call("balance", "fixtures://F9")
    assert code == 1 and doc["error"]["type"] == "InputError"
    code, doc = call("class", "fixtures://square", "--n", "4")
    assert code == 1
    code, _ = call("balance", "--char", "4", "fixtures://square")
    assert code == 1
    code, _ = call("balance", str(tmp_path / "missing.json"))
    assert code == 1


def test_usage_errors_exit_two():
    assert main(["balance", "--bogus", "x"]) == 2
    assert main(["no-such-command"]) == 2


def test_stdin_and_module_entry_point():
    doc = json.dumps(fixtures.load("square"))
    proc = subprocess.run([sys.executable, "-m", "balanced_complexes", "minimal", "-"],
                          input=doc, capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["minimal"] is True


def _parse(doc):
    if "dotH" in doc:
        return CurveClass.from_json(doc)
    if "H" in doc:
        return DivisorClass.from_json(doc)
    if "parts" in doc:
        return Hypertree.from_json(doc)
    if "terms" in doc:
        return LaurentElement.from_json(doc)
    if "weights" in doc:
        return WeightedComplex.from_json(doc)
    return Complex.from_json(doc)


@pytest.mark.parametrize("name", fixtures.names())
def test_fixtures_round_trip(name):
    obj = fixtures.build(name)
    doc = fixtures.load(name)
    parsed = _parse(json.loads(json.dumps(doc)))
    assert parsed == obj
    assert parsed.to_json() == doc
    if isinstance(obj, Hypertree):
        assert check_axioms(obj).ok
    assert call("fixtures", name) == (0, doc)
