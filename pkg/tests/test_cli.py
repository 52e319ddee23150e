"""Command-line interface: grammar, outputs, exit codes, round-trips."""

import json
from fractions import Fraction

from hyperconnect import ConnectionExpansion, TruncatedSeries
from hyperconnect.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_meixner_example(capsys):
    code, out, _ = run(
        capsys, "eval", "--family", "meixner",
        "--n", "1", "--x", "4", "--alpha", "1", "--c", "1/2",
    )
    assert code == 0
    assert out.strip() == "-3"


def test_eval_json_output(capsys):
    code, out, _ = run(
        capsys, "eval", "--family", "meixner", "--output", "json",
        "--n", "1", "--x", "4", "--alpha", "1", "--c", "1/2",
    )
    assert code == 0
    assert json.loads(out) == {"value": "-3"}


def test_eval_rejects_decimals_on_exact_backend(capsys):
    code, _, err = run(
        capsys, "eval", "--family", "meixner",
        "--n", "1", "--x", "4", "--alpha", "1", "--c", "0.5",
    )
    assert code == 2
    assert "rational literals" in err


def test_connect_identity_table(capsys):
    code, out, _ = run(
        capsys, "connect", "--relation", "alpha_to_beta",
        "--alpha", "3/2", "--beta", "3/2", "--c", "2/5", "--n-max", "3",
    )
    assert code == 0
    rows = [line.split() for line in out.strip().splitlines()]
    assert rows == [["1"], ["0", "1"], ["0", "0", "1"], ["0", "0", "0", "1"]]


def test_connect_json_round_trip(capsys):
    code, out, _ = run(
        capsys, "connect", "--relation", "meixner_alpha_to_beta",
        "--alpha", "3/2", "--beta", "7/3", "--c", "2/5",
        "--n-max", "4", "--output", "json",
    )
    assert code == 0
    table = ConnectionExpansion.from_json(json.loads(out))
    assert table.n_max == 4
    assert table.coefficient(1, 1) == Fraction(7, 3) / Fraction(3, 2)


def test_connect_power_collection_and_linear_solve_agree(capsys):
    outputs = []
    for method in ("power-collection", "linear-solve"):
        code, out, _ = run(
            capsys, "connect", "--relation", "alpha_to_beta", "--method", method,
            "--alpha", "3/2", "--beta", "7/3", "--c", "2/5",
            "--n-max", "4", "--output", "json",
        )
        assert code == 0
        payload = json.loads(out)
        outputs.append(payload["table"])
    assert outputs[0] == outputs[1]


def test_connect_generic_source_target(capsys):
    code, out, _ = run(
        capsys, "connect", "--family", "al_salam_carlitz_1",
        "--method", "power-collection",
        "--source", "a=1/4,q=1/3", "--target", "a=1/5,q=1/3",
        "--n-max", "3", "--output", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["method"] == "power-collection"
    assert payload["field"] == "numeric"


def test_connect_type_relation_outputs(capsys):
    args = ("connect", "--relation", "type_c_to_d",
            "--alpha", "3/2", "--c", "2/5", "--d", "3/7", "--n-max", "3")
    code, out, _ = run(capsys, *args)
    assert code == 0
    assert "connection-type" in out and "coefficients take x" in out
    code, out, _ = run(capsys, *args, "--output", "json")
    payload = json.loads(out)
    assert payload["x_dependent"] is True and payload["table"] is None
    table = ConnectionExpansion.from_json(payload)
    assert table.coefficient(1, 1, Fraction(2)) is not None
    code, out, _ = run(capsys, *args, "--output", "csv")
    assert out.splitlines()[0] == "relation,meixner_type_c_to_d"


def test_expand_json_round_trip(capsys):
    code, out, _ = run(
        capsys, "expand", "--family", "meixner", "--order", "5",
        "--x", "4", "--alpha", "3/2", "--c", "2/5", "--output", "json",
    )
    assert code == 0
    series = TruncatedSeries.from_json(json.loads(out))
    assert series.order == 5
    assert series.coefficient(0) == 1


def test_catalog_lists_all_families(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["families"]) == 16
    code, out, _ = run(capsys, "catalog", "--family", "al_salam_chihara")
    doc = json.loads(out)
    assert doc["id"] == "al_salam_chihara"
    assert doc["factors"]


def test_verify_single_identity(capsys):
    code, out, _ = run(
        capsys, "verify", "--identity", "meixner_1f1_alpha_shift",
        "--x", "4", "--alpha", "3/2", "--beta", "7/3", "--c", "2/5",
        "--order", "8",
    )
    assert code == 0
    assert out.startswith("PASS")
    assert "1/1 pass" in out


def test_verify_relation_with_x_samples(capsys):
    code, out, _ = run(
        capsys, "verify", "--identity", "meixner_alpha_to_beta",
        "--alpha", "3/2", "--beta", "7/3", "--c", "2/5",
        "--n-max", "6", "--x-samples", "0,1,5/2",
    )
    assert code == 0
    assert "PASS" in out


def test_verify_acceptance_suite_exit_zero(capsys):
    code, out, _ = run(
        capsys, "verify", "--suite", "acceptance", "--backend", "exact",
        "--order", "8", "--output", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"]["fail"] == 0
    assert payload["summary"]["error"] == 0
    assert payload["summary"]["total"] == payload["summary"]["pass"]


def test_verify_inconclusive_exit_three(capsys):
    code, out, _ = run(
        capsys, "verify", "--identity", "meixner_orthogonality",
        "--alpha", "2", "--c", "1/2", "--n", "4", "--m", "4",
        "--x-max", "12", "--backend", "numeric",
    )
    assert code == 3
    assert "INCONCLUSIVE" in out


def test_verify_unknown_identity_exit_one(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "made_up_theorem")
    assert code == 1
    assert "ERROR" in out


def test_usage_error_exit_two(capsys):
    code, _, err = run(capsys, "verify")
    assert code == 2
    assert "usage error" in err


def test_json_outputs_are_deterministic(capsys):
    def grab():
        _, out, _ = run(
            capsys, "verify", "--identity", "meixner_1f1_alpha_shift",
            "--x", "4", "--alpha", "3/2", "--beta", "7/3", "--c", "2/5",
            "--order", "6", "--output", "json",
        )
        payload = json.loads(out)
        for report in payload["reports"]:
            report.pop("millis")  # wall time is outside the comparison payload
        return json.dumps(payload, sort_keys=False)

    assert grab() == grab()


def test_output_path_writes_file(tmp_path, capsys):
    target = tmp_path / "table.csv"
    code, out, _ = run(
        capsys, "connect", "--relation", "alpha_to_beta",
        "--alpha", "3/2", "--beta", "7/3", "--c", "2/5",
        "--n-max", "2", "--output", "csv", "--output-path", str(target),
    )
    assert code == 0
    assert out == ""
    lines = target.read_text().splitlines()
    assert lines[0] == "0,1"
    assert lines[1].startswith("1,")
