"""End-to-end CLI behaviour: exit codes, schemas, determinism."""

import json

import pytest

from detsum.cli import main
from detsum import jsonio
from detsum.rings import INTEGERS, ModRing, PrimeField, ProductRing, RATIONALS
from detsum.matrices import SquareMatrix

COUNTEREXAMPLE_DOC = (
    '{"ring":{"kind":"mod","N":6},"n":2,'
    '"matrices":[[[3,0],[0,0]],[[0,0],[0,3]],[[4,0],[0,4]]]}'
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out)


def test_verify_lemma3_holds(capsys):
    code, report = run_json(capsys, "verify-lemma3", "--m", "4", "--n", "3")
    assert code == 0
    assert report["status"] == "holds"
    assert report["result"]["holds"] is True
    assert report["result"]["term_count"] == 16
    assert report["elapsed_ms"] is None


def test_verify_lemma2_hypothesis_violation_is_usage_error(capsys):
    code, report = run_json(capsys, "verify-lemma2", "--m", "2", "--n", "2")
    assert code == 1
    assert report["status"] == "error"
    assert "m > n" in report["result"]["error"]


def test_verify_lemma2_holds(capsys):
    code, report = run_json(capsys, "verify-lemma2", "--m", "3", "--n", "2")
    assert code == 0
    assert report["status"] == "holds"


def test_search_subsum_counterexample(capsys, tmp_path):
    path = tmp_path / "matrices.json"
    path.write_text(COUNTEREXAMPLE_DOC)
    code, report = run_json(capsys, "search-subsum", "--input", str(path), "--bound", "2")
    assert code == 0
    assert report["status"] == "none"
    assert report["result"]["witness"] is None

    code, report = run_json(capsys, "search-subsum", "--input", str(path), "--bound", "3")
    assert code == 0
    assert report["status"] == "found"
    assert report["result"]["witness"]["indices"] == [0, 1, 2]


def test_alt_sum_contract_and_informational(capsys):
    doc = '{"ring":{"kind":"integers"},"n":1,"matrices":[[[2]],[[3]],[[5]],[[1]]]}'
    code, report = run_json(capsys, "alt-sum", "--input", doc)
    assert code == 0 and report["status"] == "holds"
    assert report["result"]["contract_applies"] is True

    # m = 1 <= n: no contract; a nonzero residual is reported as "none".
    doc = '{"ring":{"kind":"integers"},"n":1,"matrices":[[[3]]]}'
    code, report = run_json(capsys, "alt-sum", "--input", doc)
    assert code == 0 and report["status"] == "none"
    assert report["result"]["residual"] == -3


def test_reports_are_byte_identical(capsys):
    _, first = run_cli(capsys, "fuzz", "--trials", "2", "--suites", "det-agreement", "--seed", "5")
    _, second = run_cli(capsys, "fuzz", "--trials", "2", "--suites", "det-agreement", "--seed", "5")
    assert first == second


def test_timing_flag_fills_elapsed(capsys):
    code, report = run_json(capsys, "verify-lemma3", "--m", "3", "--n", "1", "--timing")
    assert code == 0
    assert isinstance(report["elapsed_ms"], int)


def test_seed_env_var_and_flag_precedence(capsys, monkeypatch):
    monkeypatch.setenv("DETSUM_SEED", "9")
    code, report = run_json(capsys, "fuzz", "--trials", "1", "--suites", "det-agreement")
    assert code == 0 and report["result"]["seed"] == 9
    code, report = run_json(
        capsys, "fuzz", "--trials", "1", "--suites", "det-agreement", "--seed", "4"
    )
    assert code == 0 and report["result"]["seed"] == 4


def test_malformed_json_reports_position(capsys):
    code, report = run_json(capsys, "alt-sum", "--input", '{"ring": nope}')
    assert code == 1
    assert report["status"] == "error"
    assert "line 1" in report["result"]["error"]


def test_usage_errors_exit_one(capsys):
    assert main(["no-such-command"]) == 1
    assert main(["verify-lemma3", "--m", "4"]) == 1  # missing --n
    assert main(["verify-lemma3", "--m", "4", "--n", "3", "--threads", "0"]) == 1
    assert main(["fuzz", "--suites", "no-such-suite"]) == 1


def test_example8_and_semilocal_search(capsys):
    code, report = run_json(capsys, "example8")
    assert code == 0 and report["status"] == "holds"
    instance_doc = json.dumps(report["result"]["instance_a"])

    code, search = run_json(
        capsys, "semilocal-search", "--input", instance_doc, "--bound", "3"
    )
    assert code == 0 and search["status"] == "none"
    code, search = run_json(
        capsys, "semilocal-search", "--input", instance_doc, "--bound", "4"
    )
    assert code == 0 and search["status"] == "found"
    assert search["result"]["witness"]["indices"] == [0, 1, 2, 3]


def test_local_counterexample_report(capsys):
    code, report = run_json(
        capsys, "local-counterexample", "--modulus", "6",
        "--m1", "3", "--m2", "4", "--n", "2",
    )
    assert code == 0 and report["status"] == "holds"
    assert report["result"]["bound_defeated"] is True
    assert report["result"]["total_is_identity"] is True
    assert report["result"]["subset_determinants"] == ["0", "1", "3", "4"]


def test_ideal_chain_strict_ascent(capsys):
    doc = '{"ring":{"kind":"integers"},"n":2,"matrices":[[[1,0],[0,0]],[[0,0],[0,1]]]}'
    code, report = run_json(capsys, "ideal-chain", "--input", doc)
    assert code == 0 and report["status"] == "holds"
    assert report["result"]["chain"]["generators"] == [0, 0, 1]
    assert report["result"]["stabilized_at_n"] is True


def test_perturb_subcommand(capsys):
    doc = (
        '{"ring":{"kind":"integers"},"n":2,'
        '"matrices":[[[0,0],[0,0]],[[0,0],[0,0]],[[1,0],[0,1]]]}'
    )
    code, report = run_json(capsys, "perturb", "--input", doc)
    assert code == 0 and report["status"] == "found"
    assert report["result"]["residual_is_zero"] is True
    assert report["result"]["witness"]["indices"] == [0]


def test_homogeneous_subcommand(capsys):
    doc = json.dumps(
        {
            "ring": {"kind": "integers"},
            "var_count": 2,
            "poly": {"terms": [[[1, 0], 2], [[0, 1], -3]]},
            "vectors": [[1, 4], [-2, 5]],
        }
    )
    code, report = run_json(capsys, "homogeneous", "--input", doc)
    assert code == 0 and report["status"] == "holds"
    assert report["result"]["degree"] == 1
    assert report["result"]["is_zero"] is True


def test_simplex_subcommand(capsys):
    doc = (
        '{"ring":{"kind":"rationals"},"n":2,'
        '"matrices":[[[1,0],[0,0]],[[0,0],[0,1]],[[1,0],[0,1]]]}'
    )
    code, report = run_json(capsys, "simplex", "--input", doc)
    assert code == 0 and report["status"] == "holds"
    assert report["result"]["premise_holds"] is False
    assert {"m": 3, "indices": [2]} in report["result"]["failing_subsets"]


def test_certificate_subcommand(capsys):
    code, report = run_json(capsys, "certificate", "--m", "3", "--n", "2")
    assert code == 0 and report["status"] == "holds"
    assert report["result"]["verified"] is True
    assert len(report["result"]["terms"]) == 6


def test_embed_subcommand_and_mixed_fields_error(capsys):
    doc = json.dumps(
        {
            "ring": {
                "kind": "product",
                "components": [{"kind": "prime_field", "p": 3}, {"kind": "prime_field", "p": 3}],
            },
            "elements": [[1, 2], [1, 0]],
        }
    )
    code, report = run_json(capsys, "embed", "--input", doc)
    assert code == 0 and report["status"] == "holds"
    assert report["result"]["unit_detection_matches"] is True

    mixed = json.dumps(
        {
            "ring": {
                "kind": "product",
                "components": [{"kind": "prime_field", "p": 2}, {"kind": "prime_field", "p": 3}],
            },
            "elements": [[1, 2]],
        }
    )
    code, report = run_json(capsys, "embed", "--input", mixed)
    assert code == 1 and report["status"] == "error"


def test_mine_mixed_char_subcommand(capsys):
    code, report = run_json(capsys, "mine-mixed-char", "--fields", "2,3", "--m", "4", "--bound", "2")
    assert code == 0 and report["status"] == "none"
    assert report["result"]["count"] == 0
    assert main(["mine-mixed-char", "--fields", "4,3", "--m", "2", "--bound", "2"]) == 1


def test_text_output_mode(capsys):
    code, out = run_cli(capsys, "verify-lemma3", "--m", "3", "--n", "1", "--output", "text")
    assert code == 0
    assert out.startswith("subcommand: verify-lemma3")
    assert "status: holds" in out


def test_fuzz_exit_zero_on_pass(capsys):
    code, report = run_json(
        capsys, "fuzz", "--trials", "2",
        "--suites", "alt-sum-zero,search-nonlocal-counterexample",
    )
    assert code == 0 and report["status"] == "holds"
    assert report["result"]["total_failures"] == 0


def test_contract_violation_exits_two(capsys, monkeypatch):
    from detsum import ContractViolation
    from detsum import cli as cli_mod

    def boom(args, seed):
        raise ContractViolation("synthetic failure for exit-code plumbing")

    monkeypatch.setitem(cli_mod._HANDLERS, "example8", boom)
    code, report = run_json(capsys, "example8")
    assert code == 2
    assert report["status"] == "violated"


# -- serialization round trips -------------------------------------------------

def test_matrix_document_round_trip():
    doc = json.loads(COUNTEREXAMPLE_DOC)
    matrices = jsonio.matrices_from_json(doc)
    emitted = jsonio.matrices_to_json(matrices)
    again = jsonio.matrices_from_json(emitted)
    assert jsonio.matrices_to_json(again) == emitted


def test_value_round_trip_every_ring():
    from fractions import Fraction
    from detsum.rings import IntPolyRing, SparsePoly

    cases = [
        (INTEGERS, 10**20),
        (RATIONALS, Fraction(-3, 7)),
        (PrimeField(7), 5),
        (ModRing(6), 4),
        (ProductRing([PrimeField(2), PrimeField(3)]), (1, 2)),
        (IntPolyRing(2), SparsePoly(2, {(1, 1): 3, (0, 0): -(10**20)})),
    ]
    for ring, value in cases:
        value = ring.normalize(value)
        blob = jsonio.value_to_json(ring, value)
        assert jsonio.value_from_json(ring, json.loads(json.dumps(blob))) == value


def test_big_integers_serialize_as_strings():
    assert jsonio.encode_int(2**53 - 1) == 2**53 - 1
    assert jsonio.encode_int(2**53) == str(2**53)
    assert jsonio.decode_int("123456789012345678901", "x") == 123456789012345678901


def test_ring_descriptor_round_trip():
    rings = [
        INTEGERS,
        RATIONALS,
        PrimeField(101),
        ModRing(10),
        ProductRing([PrimeField(2), PrimeField(3), PrimeField(5)]),
    ]
    for ring in rings:
        assert jsonio.ring_from_json(jsonio.ring_to_json(ring)) == ring
