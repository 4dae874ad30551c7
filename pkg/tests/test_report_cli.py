from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from structura.algebra import Algebra
from structura.catalog import DEFAULT_RUN, UnknownAlgebra, build, build_catalog, describe
from structura.cli import main
from structura.constructions import octonion_table
from structura.report import (
    CAVEAT,
    VerificationReport,
    emit,
    exit_status,
    identity_report,
    run_verification,
    verify_named,
)

REPORT_KEYS = ["algebra", "dim", "caveat", "checks", "delta_results", "timings_ms"]


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- catalog ----------------------------------------------------------------------------------


def test_catalog_examples():
    assert build("octonion-table").dim == 8
    assert build("toc").dim == 35
    with pytest.raises(UnknownAlgebra) as err:
        build("nosuch")
    assert "nosuch" in str(err.value)
    assert [a.dim for a in build_catalog(["field", "jordan-2", "sum-field-field"])] == [1, 4, 2]
    assert build("matrix-inv-3").dim == 9 and build("hermitian-3").dim == 12
    assert build("tensor-octonion-quaternion").dim == 32
    entry = describe("tensor-octonion-quaternion")
    assert entry.default and "octonion" in entry.description


def test_catalog_rejects_malformed_names():
    for bad in ("jordan-0", "sum-octonion", "tensor--field", "matrix-inv-x"):
        with pytest.raises(UnknownAlgebra):
            build(bad)


# -- reports ----------------------------------------------------------------------------------


def test_octonion_report():
    rep = run_verification(octonion_table(), [Fraction(1, 2)])
    assert rep.ok
    (res,) = rep.delta_results
    assert (res.space_dim, res.centroid_dim, res.nontrivial) == (1, 1, False)
    ids = [c.id for c in rep.checks]
    assert ids == ["unit", "involution", "structurable", "centroid", "delta=1/2:no-nontrivial", "delta=1/2:normal-form", "generalized"]


def test_sum_report_is_block_diagonal():
    rep = verify_named("sum-octonion-matrix-inv-2", [Fraction(1, 2)])
    assert rep.ok
    assert (rep.delta_results[0].space_dim, rep.delta_results[0].centroid_dim) == (2, 2)
    assert any(c.id == "delta=1/2:block-diagonal" and c.passed for c in rep.checks)


def test_failures_become_checks_not_exceptions():
    o = octonion_table()
    sc = {k: dict(v) for k, v in o.sc.items()}
    sc[(1, 2)][3] += 1
    bad = Algebra(8, o.labels, sc, o.unit, o.involution, "corrupt")
    rep = run_verification(bad, [Fraction(2)])
    assert not rep.ok
    assert exit_status([rep]) == 1
    statuses = {c.id: c.status for c in rep.checks}
    assert statuses["structurable"] == "fail"
    # a solver error inside the run surfaces as a failing entry
    rep2 = run_verification(o, [Fraction(1, 2)], mode="certified", primes=[7])
    assert not rep2.ok
    assert any(c.status == "fail" and "ValueError" in c.detail for c in rep2.checks)


def test_emit_schema_and_empty_report():
    empty = VerificationReport("nothing", 0)
    data = json.loads(emit(empty))
    assert list(data) == REPORT_KEYS
    assert data["checks"] == [] and data["timings_ms"] == {}
    assert exit_status([empty]) == 0
    rep = verify_named("octonion-table", [Fraction(1, 2)])
    d = json.loads(emit(rep))
    assert d["caveat"] == CAVEAT
    assert list(d["checks"][0]) == ["id", "claim_ref", "status", "detail"]
    res = d["delta_results"][0]
    assert list(res) == ["delta", "space_dim", "centroid_dim", "nontrivial", "certificate"]
    assert res["delta"] == "1/2" and res["certificate"] == {"method": "exact", "primes": []}
    assert "| structurable |" in emit(rep, "md")
    with pytest.raises(ValueError):
        emit(rep, "xml")


def test_timings_are_opt_in():
    rep = verify_named("matrix-inv-2", [Fraction(1)])
    assert json.loads(emit(rep))["timings_ms"] == {}
    timed = json.loads(emit(rep, timings=True))["timings_ms"]
    assert "structurable" in timed and all(isinstance(v, int) for v in timed.values())


def test_identity_report_adds_jordan_operator_check():
    rep = identity_report(build("jordan-3"))
    assert [c.id for c in rep.checks] == ["unit", "involution", "structurable", "jordan-operator"]
    assert rep.ok


# -- CLI -----------------------------------------------------------------------------------


def test_cli_catalog_list(capsys):
    code, out, _ = run_cli(capsys, "catalog", "list")
    assert code == 0
    for name in DEFAULT_RUN:
        assert name in out
    assert "needs --include-large" in out


def test_cli_build_roundtrip(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "build", "hermitian-2")
    assert code == 0
    a = Algebra.from_json(out)
    assert a.sc == build("hermitian-2").sc
    dest = tmp_path / "oct.json"
    assert run_cli(capsys, "build", "octonion-table", "--out", str(dest))[0] == 0
    assert Algebra.from_json(dest.read_text()).dim == 8


def test_cli_verify_is_byte_identical(capsys, tmp_path):
    outs = []
    for k in range(2):
        dest = tmp_path / f"r{k}.json"
        code, _, _ = run_cli(capsys, "verify", "octonion-table", "--delta", "1/2,1,2", "--out", str(dest))
        assert code == 0
        outs.append(dest.read_bytes())
    assert outs[0] == outs[1]
    d = json.loads(outs[0])
    assert [r["delta"] for r in d["delta_results"]] == ["1/2", "1/1", "2/1"]


def test_cli_verify_certified_with_primes(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "quaternion", "--delta", "1/2", "--mode", "certified", "--primes", "1000000007,998244353", "--seed", "3"
    )
    assert code == 0
    res = json.loads(out)["delta_results"][0]
    assert res["certificate"] == {"method": "modular-squeeze", "primes": [1000000007, 998244353]}


def test_cli_markdown(capsys):
    code, out, _ = run_cli(capsys, "verify", "triple-1d", "--delta", "1/2", "--format", "md")
    assert code == 0 and out.startswith("## triple-1d (dim 4)")


def test_cli_identities(capsys):
    code, out, _ = run_cli(capsys, "identities", "jordan-2")
    assert code == 0
    assert [c["id"] for c in json.loads(out)["checks"]][-1] == "jordan-operator"


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "nosuch"],
        ["build", "nosuch"],
        ["identities", "nosuch"],
        ["verify", "field", "--primes", "1000000007"],
        ["verify", "field", "--primes", "1000000007,12"],
        ["verify", "field", "--primes", "1000000007,3"],
        ["verify", "field", "--mode", "fast"],
        ["verify", "field", "--delta", "1/0"],
        ["verify"],
        [],
    ],
)
def test_cli_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2


def test_cli_unwritable_output_exits_2(capsys, tmp_path):
    assert main(["build", "field", "--out", str(tmp_path / "missing" / "x.json")]) == 2


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "structura.cli", "verify", "field", "--delta", "1/2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["algebra"] == "field"
