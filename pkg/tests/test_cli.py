import json
import subprocess
import sys

from centaut.cli import main
from centaut.groups import cyclic, save_cayley


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_heisenberg(capsys):
    code, out, _ = run(capsys, "analyze", "heisenberg:3", "--json")
    rec = json.loads(out)
    assert code == 0
    assert rec["autc_order"] == 9 and rec["criterion"] is False
    assert (rec["d"], rec["d1"], rec["d2"]) == (2, 1, 2)
    assert rec["adjoint"] == {"adjoint_order": 9, "abelian": True, "class": 1, "rank": 2}
    assert rec["ring"]["size"] == 9


def test_analyze_witness(capsys):
    code, out, _ = run(capsys, "analyze", "wreath:3", "--json")
    rec = json.loads(out)
    assert rec["criterion"] is True
    assert rec["witness"]["order"] == 3 and rec["witness"]["inner"] is False


def test_analyze_p2(capsys):
    _, out, _ = run(capsys, "analyze", "product(cyclic:2,dihedral:8)", "--json")
    rec = json.loads(out)
    assert rec["criterion"] == "inapplicable_p2"
    assert rec["witness"]["order"] == 2 and not rec["purely_non_abelian"]


def test_analyze_trivial(capsys):
    code, out, _ = run(capsys, "analyze", "cyclic:1", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["order"] == 1 and rec["autc_order"] == 1 and rec["ring"]["size"] == 1


def test_analyze_table_output(capsys):
    code, out, _ = run(capsys, "analyze", "modular:3")
    assert code == 0 and "autc_order" in out and "witness" not in out


def test_bad_cayley_file(capsys, loop_file):
    code, _, err = run(capsys, "analyze", f"cayley:{loop_file}")
    assert code == 2 and "associativity fails for triple" in err


def test_bad_spec(capsys):
    code, _, err = run(capsys, "analyze", "product(cyclic:3,")
    assert code == 2 and "error" in err


def test_verify_p2_rows_inapplicable(capsys):
    code, out, _ = run(capsys, "verify", "--prime-filter", "2", "--json")
    rep = json.loads(out)
    assert code == 0
    for row in ("omega_exchange", "p_central_adjoint", "omega_autc", "noninner_criterion"):
        assert rep["rows"][row]["status"] == "inapplicable"
    assert rep["rows"]["decomposable_noninner"]["status"] == "pass"


def test_verify_corrupted_fixture(capsys, tmp_path):
    save_cayley(cyclic(3), tmp_path / "good.json")
    data = json.loads((tmp_path / "good.json").read_text())
    data["table"][1][0], data["table"][1][1] = data["table"][1][1], data["table"][1][0]
    (tmp_path / "bad.json").write_text(json.dumps(data))
    (tmp_path / "corpus.txt").write_text("cyclic:3\ncayley:good.json\ncayley:bad.json  # corrupted\n")
    code, out, _ = run(capsys, "verify", "--corpus", str(tmp_path / "corpus.txt"))
    assert code != 0 and "load error" in out


def test_verify_json_is_deterministic(capsys, tmp_path):
    (tmp_path / "c.json").write_text(json.dumps({"groups": ["heisenberg:3", "dihedral:8", "cyclic:9"]}))
    _, first, _ = run(capsys, "verify", "--corpus", str(tmp_path / "c.json"), "--json")
    _, second, _ = run(capsys, "verify", "--corpus", str(tmp_path / "c.json"), "--json")
    assert first == second


def test_search_question(capsys, tmp_path):
    code, out, _ = run(capsys, "search-question", "--json")
    assert code == 0 and json.loads(out) == []
    (tmp_path / "c.txt").write_text("heisenberg:3\nabelian:3,3\n")
    _, out, _ = run(capsys, "search-question", "--corpus", str(tmp_path / "c.txt"), "--json")
    assert json.loads(out) == []


def test_budget_flag_produces_skips(capsys, tmp_path):
    (tmp_path / "c.txt").write_text("heisenberg:3\n")
    code, out, _ = run(capsys, "verify", "--corpus", str(tmp_path / "c.txt"), "--budget", "8", "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["rows"]["adney_yen_isomorphism"]["status"] == "skip"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "centaut", "analyze", "cyclic:3", "--json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["autc_order"] == 2
