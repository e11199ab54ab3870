import json

import pytest

from rholatin import cli
from rholatin.core import RhoProfile, validate_square


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def inst(grid, n, k, rho):
    return {"n": n, "k": k, "rho": rho, "r": len(grid), "s": len(grid[0]), "grid": grid}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(tmp_path, capsys):
    path = write(tmp_path, "a.json", inst([[1, 2], [2, 1]], 3, 3, [3, 3, 3]))
    code, out, _ = run(capsys, "validate", path)
    rep = json.loads(out)
    assert code == 0 and rep["e"] == [2, 2, 0] and rep["necessary_bound"]["violators"] == [3]


def test_validate_errors(tmp_path, capsys):
    code, out, _ = run(capsys, "validate", write(tmp_path, "b.json", inst([[1]], 2, 2, [2, 1])))
    assert code == 2 and "SumMismatch" in out
    code, out, _ = run(capsys, "validate", write(tmp_path, "c.json", inst([[1, 1]], 2, 2, [2, 2])))
    assert code == 2 and "RowRepeat" in out and "columns 1 and 2" in out
    bad = tmp_path / "d.json"
    bad.write_text("{not json")
    assert run(capsys, "validate", str(bad))[0] == 2


def test_complete_success_and_round_trip(tmp_path, capsys):
    path = write(tmp_path, "a.json", inst([[1, 2], [2, 1]], 3, 4, [3, 2, 2, 2]))
    emit = tmp_path / "out.json"
    code, out, _ = run(capsys, "complete", path, "--emit", str(emit))
    assert code == 0
    sq = json.loads(emit.read_text())
    assert sq == json.loads(out)
    validate_square(sq["grid"], RhoProfile(sq["n"], sq["k"], tuple(sq["rho"])))
    assert run(capsys, "validate", str(emit))[0] == 0


def test_complete_infeasible(tmp_path, capsys):
    path = write(tmp_path, "a.json", inst([[1, 2]], 3, 4, [2, 1, 3, 3]))
    code, out, _ = run(capsys, "complete", path)
    res = json.loads(out)
    assert code == 1 and res["certificate"]["replayed"] is True


def test_complete_full(tmp_path, capsys):
    path = write(tmp_path, "a.json", inst([[1, 2], [2, 1]], 2, 2, [2, 2]))
    code, out, _ = run(capsys, "complete", path)
    assert code == 0 and json.loads(out)["grid"] == [[1, 2], [2, 1]]


def test_check_theorems(tmp_path, capsys):
    ok = write(tmp_path, "ok.json", inst([[1, 2], [2, 1]], 3, 4, [3, 2, 2, 2]))
    assert run(capsys, "check", ok, "--theorem", "flow")[0] == 0
    assert run(capsys, "check", ok, "--theorem", "ryser")[0] == 0
    bad = write(tmp_path, "bad.json", inst([[1, 2], [2, 1]], 3, 3, [3, 3, 3]))
    code, out, _ = run(capsys, "check", bad, "--theorem", "necessary")
    assert code == 1 and json.loads(out)["violators"] == [3]
    code, out, _ = run(capsys, "check", ok, "--theorem", "hall")
    assert code == 2 and "s = n" in out
    hall = write(tmp_path, "h.json", inst([[1, 2, 3]], 3, 3, [3, 3, 3]))
    code, out, _ = run(capsys, "check", hall, "--theorem", "hall")
    assert code == 0 and json.loads(out)["agree"]


def test_check_guard_exit(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("RHOLATIN_GUARDS", json.dumps({"single_rs": 1}))
    path = write(tmp_path, "a.json", inst([[1, 2], [2, 1]], 3, 4, [3, 2, 2, 2]))
    assert run(capsys, "check", path, "--theorem", "ryser")[0] == 3


def test_generate(capsys):
    code, out, _ = run(capsys, "generate", "--n", "2", "--k", "2", "--rho", "2,2")
    assert code == 0 and sorted(json.loads(out)["grid"]) == [[1, 2], [2, 1]]
    first = run(capsys, "generate", "--n", "3", "--k", "4", "--rho", "3,2,2,2", "--seed", "7")
    second = run(capsys, "generate", "--n", "3", "--k", "4", "--rho", "3,2,2,2", "--seed", "7")
    assert first[0] == 0 and first[1] == second[1]
    assert run(capsys, "generate", "--n", "2", "--k", "2", "--rho", "2,1")[0] == 2
    assert run(capsys, "generate", "--n", "2")[0] == 2


def test_audit_small(tmp_path, capsys):
    log = tmp_path / "log.jsonl"
    code, out, _ = run(capsys, "audit", "--seeds", "0..40", "--max-n", "4", "--log-file", str(log))
    assert code == 0
    lines = [json.loads(line) for line in log.read_text().splitlines()]
    assert [line["seed"] for line in lines] == list(range(41))
    assert set(lines[0]) == {"seed", "digest", "flow", "oracle", "audit", "agree", "prng"}
    assert json.loads(out)["disagreements"] == []


def test_audit_guard_exceeded(capsys):
    assert run(capsys, "audit", "--seeds", "0..1", "--max-n", "9")[0] == 3


def test_audit_catches_flipped_inequality(capsys, monkeypatch):
    # mutant: the r x n conditions compare the wrong way round
    import rholatin.conditions as cond

    real = cond.hall_value

    def flipped(*args):
        lhs, rhs, rel = real(*args)
        return lhs, rhs, ">=" if rel == "<=" else "<="

    monkeypatch.setattr(cond, "hall_value", flipped)
    code, _, err = run(capsys, "audit", "--seeds", "0..30", "--max-n", "3")
    assert code == 1 and "reproduce with" in err
