import json
import subprocess
import sys

import pytest

from hurwitz.cli import main, multiplicities


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_multiplicity_shortcut():
    assert multiplicities([2, 2, 2, 33, 198, 198]) == "2_3, 33, 198_2"


def test_classes(capsys):
    code, out, _ = run(capsys, "classes", "--group", "S4")
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["group_order"] == 24
    assert [c["size"] for c in doc["result"]["classes"]] == [1, 3, 6, 8, 6]


def test_count_and_field_order(capsys):
    code, out, _ = run(capsys, "count", "--group", "A5", "--cv", "2A,3A,5A")
    doc = json.loads(out)
    assert code == 0
    assert list(doc) == ["command", "version", "inputs", "result"]
    assert doc["result"]["li"] == 1
    assert set(doc["inputs"]) == {"group", "config"}


def test_partition_m11(capsys):
    code, out, _ = run(capsys, "partition", "--group", "M11", "--cv", "11A,11A,11A,11A")
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["sizes"] == [2, 2, 2, 33, 198, 198, 198, 864, 2996]
    assert len(doc["result"]["orbits"]) == 9


def test_human_rendering_uses_shortcut(capsys):
    code, out, _ = run(capsys, "partition", "--group", "M11", "--cv", "11A,11A,11A,11A", "--human")
    assert code == 0
    assert out.startswith("sizes: 2_3, 33, 198_3, 864, 2996")


def test_reports_independent_of_workers(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "partition", "--group", "L2_8", "--cv", "7A,7A,7A,2A", "--workers", "1", "--out", str(a))
    run(capsys, "partition", "--group", "L2_8", "--cv", "7A,7A,7A,2A", "--workers", "2", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_config_errors_exit_2(capsys):
    assert run(capsys, "count", "--group", "A5", "--cv", "2A,9Z,5A")[0] == 2
    assert run(capsys, "count", "--group", "NoSuchGroup", "--cv", "2A,3A,5A")[0] == 2
    assert run(capsys, "partition", "--group", "A5", "--cv", "2A,3A,5A,5A", "--mode", "sym",
               "--sym", "23")[0] == 2
    assert run(capsys, "partition", "--group", "A5", "--cv", "2A,3A,5A,5A", "--mode", "sym")[0] == 2
    assert run(capsys, "partition", "--group", "A5", "--cv", "2A,3A,5A,5A", "--sym", "34")[0] == 2
    code, _, err = run(capsys, "construct", "size4", "--group", "A5", "--s1", "(1,2,3)",
                       "--s2", "(1,2,3)")
    assert code == 2
    assert json.loads(err)["error"] == "configuration"


SEED = "1 2 4 6 8 9 3 7 5;1 2 7 3 9 4 8 5 6;2 3 7 9 5 1 4 8 6;6 1 2 7 5 9 3 8 4"


def test_resource_limit_and_byte_identical_resume(capsys, tmp_path):
    full, resumed, ck = tmp_path / "full.json", tmp_path / "resumed.json", tmp_path / "ck.txt"
    assert run(capsys, "orbit", "--group", "L2_8", "--seed-tuple", SEED, "--out", str(full))[0] == 0
    code, _, err = run(capsys, "orbit", "--group", "L2_8", "--seed-tuple", SEED,
                       "--max-members", "20", "--checkpoint", str(ck))
    assert code == 3
    assert json.loads(err)["checkpoint"] == str(ck)
    assert run(capsys, "resume", "--group", "L2_8", "--checkpoint", str(ck), "--out", str(resumed))[0] == 0
    assert full.read_bytes() == resumed.read_bytes()


def test_time_limit_exits_3(capsys):
    code, _, _ = run(capsys, "orbit", "--group", "L2_8", "--seed-tuple", SEED, "--time-limit", "-1")
    assert code == 3


def test_bounded_m11(capsys):
    code, out, _ = run(capsys, "bounded", "--group", "M11", "--cv", "11A,11A,11A,11A", "--limit", "40")
    assert code == 0
    assert json.loads(out)["result"]["sizes"] == [2, 2, 2, 33]


def test_invariants_table(capsys):
    code, out, _ = run(capsys, "invariants", "--group", "M11", "--cv", "11A,11A,11A,11A")
    rows = json.loads(out)["result"]["orbits"]
    assert code == 0
    assert rows[3] == {"size": 33, "genus": 1, "signature": [1, 1, 1]}


def test_construct_and_counterexample_exit(capsys, monkeypatch):
    args = ["construct", "size4", "--group", "L2_8", "--s1", "(2,9,4,3,5,7,6)",
            "--s2", "(1,4,2,8,7,9,5)"]
    code, out, _ = run(capsys, *args)
    assert code == 0
    assert json.loads(out)["result"]["findings"] == []
    from hurwitz import generic
    broken = dict(generic.SIZE4_PURE)
    broken["B(1,2)"] = [1, 2, 3, 4]
    monkeypatch.setattr(generic, "SIZE4_PURE", broken)
    code, out, _ = run(capsys, *args)
    assert code == 4
    assert json.loads(out)["result"]["findings"]


def test_specialize_and_translate(capsys):
    seed = "(2,9,4,3,5,7,6);(1,4,2,8,7,9,5);(2,9,4,3,5,7,6);(1,3)(2,7)(4,5)(6,8)"
    code, out, _ = run(capsys, "specialize", "--group", "L2_8", "--seed-tuple", seed,
                       "--positions", "1")
    assert code == 0
    assert len(json.loads(out)["result"]["classes"]) == 3
    code, _, _ = run(capsys, "translate", "--group", "L2_8", "--seed-tuple", seed, "--variant", "f41")
    assert code == 2


def test_structconst_with_count(capsys):
    code, out, _ = run(capsys, "structconst", "--chartab", "S3", "--group", "S3",
                       "--cv", "2A,2A,3A,2A,2A,3A")
    res = json.loads(out)["result"]
    assert code == 0
    assert (res["floor"], res["li"], res["li_within_floor"]) == (18, 18, True)


def test_heuristics_table(capsys):
    code, out, _ = run(capsys, "heuristics", "--group", "S3,A4", "--m", "4,5", "--human")
    assert code == 0
    assert out.splitlines()[0].split() == ["m", "G", "l_m,G"]
    assert "avg order S3  2.1666" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--m", "4,5,6", "--samples", "5")
    assert code == 0
    assert json.loads(out)["result"]["failed"] == 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hurwitz", "count", "--group", "S3",
                          "--cv", "2A,2A,3A"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["result"]["li"] == 1


def test_workers_env(monkeypatch):
    from hurwitz import orbit
    monkeypatch.setenv("HURWITZ_WORKERS", "3")
    assert orbit.default_workers() == 3
    monkeypatch.setenv("HURWITZ_WORKERS", "junk")
    assert orbit.default_workers() == 1
