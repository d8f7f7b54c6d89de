import json

import pytest

from ctcsim.circuits import CTCProgram
from ctcsim.cli import main
from ctcsim.dsl import program_to_text
from ctcsim.exact.scalars import rational_from_text, scalar_from_text
from ctcsim.gallery import QUANTUM_DEMOS
from ctcsim.semantics import gadget_np_search

GRANDFATHER = QUANTUM_DEMOS["grandfather"]

BAD_GATE = """quantum
registers ctc=1 cr=0
defgate G = [1/2, 0; 0, 1]
apply G ctc[0]
"""

OVERFLOW = """quantum
registers ctc=1 cr=1
apply X ctc[3]
"""

DOUBLY_STOCHASTIC = """stochastic
registers ctc=1 cr=1
matrix = [1/2, 1/2; 1/2, 1/2]
output-rule 1
output cr[0]
"""

FOUR_QUBITS = """quantum
registers ctc=4 cr=0
apply X ctc[0]
"""


def write(tmp_path, text, name="prog.ctc"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, err = run(capsys, argv + ["--json"])
    return code, json.loads(out), err


# -- validate ----------------------------------------------------------------

def test_validate_ok(tmp_path, capsys):
    code, out, err = run(capsys, ["validate", write(tmp_path, GRANDFATHER)])
    assert code == 0
    assert out.strip() == "valid"


def test_validate_semantic_violation(tmp_path, capsys):
    code, out, err = run(capsys, ["validate", write(tmp_path, BAD_GATE)])
    assert code == 3
    assert "squared norm" in out


def test_validate_json_envelope(tmp_path, capsys):
    code, doc, err = run_json(capsys, ["validate", write(tmp_path, GRANDFATHER)])
    assert code == 0
    assert set(doc) == {"schema_version", "data", "timings_ms"}
    assert doc["schema_version"] == 1
    assert doc["data"]["ok"] is True
    assert doc["data"]["violations"] == []
    assert doc["data"]["program"] == {
        "kind": "quantum", "ctc": 1, "cr": 1, "output_bit": 0,
    }
    assert all(isinstance(v, float) and v >= 0 for v in doc["timings_ms"].values())
    assert "timings_ms" not in doc["data"]


def test_parse_error_exit_and_position(tmp_path, capsys):
    code, out, err = run(capsys, ["validate", write(tmp_path, OVERFLOW)])
    assert code == 2
    assert "line 3, col 9" in err


def test_missing_file(capsys):
    code, out, err = run(capsys, ["validate", "/no/such/file.ctc"])
    assert code == 2
    assert "cannot read" in err


# -- decide ------------------------------------------------------------------

def test_decide_grandfather_is_ambiguous(tmp_path, capsys):
    code, out, err = run(capsys, ["decide", write(tmp_path, GRANDFATHER)])
    assert code == 4
    assert "verdict: ambiguous" in out
    assert "exact acceptance probability: 1/2" in out
    assert "compared to 1/2: equal" in out


def test_decide_force_one_accepts(tmp_path, capsys):
    code, out, err = run(
        capsys, ["decide", write(tmp_path, QUANTUM_DEMOS["force-one"])]
    )
    assert code == 0
    assert "verdict: accept" in out


def test_decide_classical_reject(tmp_path, capsys):
    text = program_to_text(gadget_np_search(2, [False] * 4))
    code, out, err = run(capsys, ["decide", write(tmp_path, text)])
    assert code == 1
    assert "verdict: reject" in out


def test_decide_stochastic_ambiguous(tmp_path, capsys):
    code, out, err = run(capsys, ["decide", write(tmp_path, DOUBLY_STOCHASTIC)])
    assert code == 4


def test_decide_json_payload(tmp_path, capsys):
    code, doc, err = run_json(capsys, ["decide", write(tmp_path, GRANDFATHER)])
    assert code == 4
    data = doc["data"]
    assert data["verdict"] == "ambiguous"
    assert data["exact_accept_probability"] == "1/2"
    assert rational_from_text(data["exact_accept_probability"])
    assert data["half_comparison"] == "equal"
    assert data["certified"] is True
    lo, hi = data["probability_range_approx"]
    assert isinstance(lo, float) and isinstance(hi, float)
    state = data["witness"]["state"]
    assert state == [["1/2", "0"], ["0", "1/2"]]
    for row in state:
        for cell in row:
            scalar_from_text(cell)  # every cell is an exact literal


def test_decide_json_is_deterministic(tmp_path, capsys):
    path = write(tmp_path, GRANDFATHER)
    _, doc1, _ = run_json(capsys, ["decide", path])
    _, doc2, _ = run_json(capsys, ["decide", path])
    assert json.dumps(doc1["data"], sort_keys=True) == json.dumps(
        doc2["data"], sort_keys=True
    )


# -- fixpoint ----------------------------------------------------------------

def test_fixpoint_quantum_exact_matrix(tmp_path, capsys):
    code, doc, err = run_json(capsys, ["fixpoint", write(tmp_path, GRANDFATHER)])
    assert code == 0
    assert doc["data"]["fixed_point"] == [["1/2", "0"], ["0", "1/2"]]
    approx = doc["data"]["fixed_point_approx"]
    assert approx[0][0] == [0.5, 0.0]


def test_fixpoint_seed_selection(tmp_path, capsys):
    path = write(tmp_path, QUANTUM_DEMOS["dephase"])
    code, doc, err = run_json(capsys, ["fixpoint", path, "--seed", "basis:1"])
    assert code == 0
    assert doc["data"]["fixed_point"] == [["0", "0"], ["0", "1"]]
    code, _, _ = run(capsys, ["fixpoint", path, "--seed", "mixed"])
    assert code == 0


def test_fixpoint_bad_seed(tmp_path, capsys):
    code, out, err = run(
        capsys, ["fixpoint", write(tmp_path, GRANDFATHER), "--seed", "vortex"]
    )
    assert code == 3
    assert "unknown seed" in err


def test_fixpoint_classical_cycle(tmp_path, capsys):
    text = program_to_text(gadget_np_search(2, [False, False, True, False]))
    code, doc, err = run_json(capsys, ["fixpoint", write(tmp_path, text)])
    assert code == 0
    assert doc["data"]["cycle"] == ["10"]
    probs = doc["data"]["distribution"]["probabilities"]
    assert probs == ["0", "0", "1", "0"]


def test_fixpoint_classical_rejects_seed(tmp_path, capsys):
    text = program_to_text(gadget_np_search(2, [False] * 4))
    code, out, err = run(
        capsys, ["fixpoint", write(tmp_path, text), "--seed", "mixed"]
    )
    assert code == 3


def test_fixpoint_stochastic_distribution(tmp_path, capsys):
    code, doc, err = run_json(
        capsys, ["fixpoint", write(tmp_path, DOUBLY_STOCHASTIC)]
    )
    assert code == 0
    assert doc["data"]["distribution"]["probabilities"] == ["1/2", "1/2"]
    assert doc["data"]["multiple"] is False


def test_fixpoint_resource_cap(tmp_path, capsys):
    code, out, err = run(capsys, ["fixpoint", write(tmp_path, FOUR_QUBITS)])
    assert code == 5
    assert "resource cap" in err


# -- demo --------------------------------------------------------------------

def test_demo_grandfather(capsys):
    code, out, err = run(capsys, ["demo", "grandfather"])
    assert code == 4


def test_demo_np_search_params(capsys):
    code, doc, err = run_json(
        capsys,
        ["demo", "np-search", "--param", "n=2", "--param", "solutions=10"],
    )
    assert code == 0
    assert doc["data"]["support"] == ["10"]
    code, out, err = run(
        capsys, ["demo", "np-search", "--param", "n=2", "--param", "solutions=none"]
    )
    assert code == 1


def test_demo_np_search_bad_param(capsys):
    code, out, err = run(
        capsys, ["demo", "np-search", "--param", "n=2", "--param", "solutions=777"]
    )
    assert code == 3
    assert "bad 2-bit string" in err


def test_demo_pspace(capsys):
    code, doc, err = run_json(capsys, ["demo", "pspace"])
    assert code == 0
    assert doc["data"]["halting_answer"] == 1
    assert doc["data"]["run_length"] == 3
    code, out, err = run(capsys, ["demo", "pspace", "--param", "machine=reject"])
    assert code == 1
    code, out, err = run(capsys, ["demo", "pspace", "--param", "machine=stray"])
    assert code == 0


def test_demo_pspace_unknown_machine(capsys):
    code, out, err = run(capsys, ["demo", "pspace", "--param", "machine=warp"])
    assert code == 3
    assert "unknown machine" in err


def test_demo_narrow_default_value(capsys):
    code, doc, err = run_json(capsys, ["demo", "narrow"])
    assert code == 0
    assert doc["data"]["exact_accept_probability"] == "1023/1039"
    assert doc["data"]["witness_count"] == 1
    code, out, err = run(capsys, ["demo", "narrow", "--param", "witnesses=none"])
    assert code == 1


def test_demo_perturb(capsys):
    code, doc, err = run_json(capsys, ["demo", "perturb", "--param", "eps=1/10"])
    assert code == 0
    data = doc["data"]
    assert data["first_stationary"] == ["1", "0"]
    assert data["second_stationary"] == ["0", "1"]
    assert data["cross_distances"] == ["1/10", "1/10"]
    assert data["within_eps"] == [True, True]


def test_demo_rejects_malformed_param(capsys):
    code, out, err = run(capsys, ["demo", "narrow", "--param", "oops"])
    assert code == 3
    assert "key=value" in err


def test_unknown_demo_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["demo", "warpdrive"])
    assert exc.value.code == 2


def test_unknown_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["transmogrify"])
    assert exc.value.code == 2


# -- oracle --------------------------------------------------------------------

def test_oracle_matches_exact(tmp_path, capsys):
    code, doc, err = run_json(
        capsys, ["oracle", write(tmp_path, GRANDFATHER), "--steps", "4000"]
    )
    assert code == 0
    assert doc["data"]["max_deviation_approx"] < 1e-2
    assert doc["data"]["fixed_point"] == [["1/2", "0"], ["0", "1/2"]]


def test_oracle_quantum_only(tmp_path, capsys):
    text = program_to_text(gadget_np_search(2, [False] * 4))
    code, out, err = run(
        capsys, ["oracle", write(tmp_path, text), "--steps", "10"]
    )
    assert code == 3
    assert "quantum programs only" in err
