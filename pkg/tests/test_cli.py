import json

import pytest

from matchcliff import cli

from conftest import FIXTURES


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_kv(out):
    pairs = {}
    for line in out.strip().splitlines():
        k, _, v = line.partition("=")
        pairs[k] = v
    return pairs


def test_expect_on_free_circuit(capsys):
    code, out, _ = run_cli(
        capsys, "expect", f"{FIXTURES}/free_n3.json", "--pauli", "ZII"
    )
    assert code == 0
    pairs = parse_kv(out)
    assert -1.0 <= float(pairs["value"]) <= 1.0
    assert pairs["method"] == "covariance"


def test_expect_json_output(capsys):
    code, out, _ = run_cli(
        capsys, "expect", f"{FIXTURES}/free_n3.json", "--pauli", "ZII", "--json"
    )
    assert code == 0
    doc = json.loads(out)
    assert "value" in doc and "class" in doc


def test_expect_length_mismatch_is_input_error(capsys):
    code, _, err = run_cli(
        capsys, "expect", f"{FIXTURES}/free_n3.json", "--pauli", "ZZ"
    )
    assert code == 1
    assert "error=" in err


def test_expect_missing_file_is_input_error(capsys):
    code, _, err = run_cli(capsys, "expect", "no_such_file.json", "--pauli", "Z")
    assert code == 1


def test_marginal_on_free_circuit(capsys):
    code, out, _ = run_cli(
        capsys,
        "marginal",
        f"{FIXTURES}/free_n3.json",
        "--qubits",
        "0,2",
        "--bits",
        "10",
    )
    assert code == 0
    prob = float(parse_kv(out)["probability"])
    assert 0.0 <= prob <= 1.0


def test_marginal_unsupported_exit_code(capsys):
    code, _, err = run_cli(
        capsys,
        "marginal",
        f"{FIXTURES}/ghz4.json",
        "--qubits",
        "0",
        "--bits",
        "0",
    )
    assert code == 2
    assert "error=" in err


def test_classify_circuit_file(capsys):
    code, out, _ = run_cli(capsys, "classify", f"{FIXTURES}/swap_conj_n3.json")
    assert code == 0
    pairs = parse_kv(out)
    assert pairs["structure"] == "conjugated"
    assert "PIBO" in pairs["class"]


def test_classify_cz_chain_encoding(capsys):
    code, out, _ = run_cli(
        capsys, "classify", "--encoding", f"{FIXTURES}/cz_chain_n5.txt"
    )
    assert code == 0
    pairs = parse_kv(out)
    assert pairs["family"] == "CZ+SWAP"
    assert pairs["circuit"] == "CZ(0,1) CZ(1,2) CZ(2,3) CZ(3,4)"


def test_classify_reorder_encoding(capsys):
    code, out, _ = run_cli(
        capsys, "classify", "--encoding", f"{FIXTURES}/reorder_equiv.txt"
    )
    assert code == 0
    pairs = parse_kv(out)
    assert pairs["family"] == "CZ+SWAP"
    assert "CZ(" not in pairs["circuit"]


def test_classify_pruned_tree_encoding(capsys):
    code, out, _ = run_cli(
        capsys, "classify", "--encoding", f"{FIXTURES}/sierpinski.txt"
    )
    assert code == 0
    pairs = parse_kv(out)
    assert pairs["valid"] == "True"
    assert pairs["family"] == "general (not CZ+SWAP)"


def test_oracle_check_passes_on_free_fixture(capsys):
    code, out, _ = run_cli(
        capsys,
        "oracle-check",
        f"{FIXTURES}/free_n3.json",
        "--queries",
        "30",
        "--seed",
        "1",
    )
    assert code == 0
    pairs = parse_kv(out)
    assert pairs["status"] == "pass"
    assert float(pairs["max_deviation"]) <= 1e-9


def test_oracle_check_on_conjugated_fixture(capsys):
    code, out, _ = run_cli(
        capsys,
        "oracle-check",
        f"{FIXTURES}/swap_conj_n3.json",
        "--queries",
        "30",
    )
    assert code == 0
    assert parse_kv(out)["status"] == "pass"
