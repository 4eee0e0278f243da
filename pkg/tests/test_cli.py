import json
import subprocess
import sys

import pytest

from matroid_pricing.cli import main
from matroid_pricing.generate import gen_instance
from matroid_pricing.verify import NO_PRICE_FAMILY1, NO_PRICE_FAMILY2

from test_pipelines import CYCLIC_PAIR

P2_VS_UNIFORM = {
    "ground_set": 4,
    "matroid1": {"type": "partition", "classes": [[0, 1], [2, 3]], "bounds": [1, 1]},
    "matroid2": {"type": "uniform", "n": 4, "k": 2},
}


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_price_partition_example(tmp_path, capsys):
    inst = _write(tmp_path, "p2.json", P2_VS_UNIFORM)
    code, out, _ = _run(capsys, "price", "--instance", inst, "--mode", "partition", "--verify")
    res = json.loads(out)
    assert code == 0 and res["prices"] == ["0", "5", "0", "5"]
    assert res["verification"]["pass"] is True


def test_price_to_file_then_verify(tmp_path, capsys):
    inst = _write(tmp_path, "p2.json", P2_VS_UNIFORM)
    out = tmp_path / "p.json"
    assert _run(capsys, "price", "--instance", inst, "--out", str(out))[0] == 0
    code, text, _ = _run(capsys, "verify", "--instance", inst, "--prices", str(out), "--conjecture", "2")
    assert code == 0 and json.loads(text)["pass"]


def test_tampered_prices_fail_verification(tmp_path, capsys):
    inst = _write(tmp_path, "p2.json", P2_VS_UNIFORM)
    bad = _write(tmp_path, "bad.json", {"prices": ["0", "0", "0", "0"]})
    code, text, _ = _run(capsys, "verify", "--instance", inst, "--prices", bad, "--conjecture", "2")
    rep = json.loads(text)
    assert code == 1 and not rep["pass"] and rep["violations"]


def test_weighted_with_verify(tmp_path, capsys):
    inst = _write(tmp_path, "w.json", gen_instance("weighted", 6, 3))
    code, out, _ = _run(capsys, "price", "--instance", inst, "--mode", "weighted", "--verify")
    assert code == 0 and json.loads(out)["verification"]["pass"]


def test_rank_valuation_and_gs_modes(tmp_path, capsys):
    rv = _write(tmp_path, "rv.json", gen_instance("rank-valuation", 5, 1))
    code, out, _ = _run(capsys, "price", "--instance", rv, "--mode", "rank-valuation", "--verify")
    assert code == 0 and json.loads(out)["verification"]["conjecture"] == "C0"
    gs = _write(tmp_path, "gs.json", gen_instance("gs-table", 4, 1))
    code, out, _ = _run(capsys, "price", "--instance", gs, "--mode", "gs", "--verify")
    res = json.loads(out)
    assert code == 0 and res["mode"].startswith("gs/") and res["verification"]["pass"]


def test_disjoint_form(tmp_path, capsys):
    inst = dict(P2_VS_UNIFORM)
    inst["matroid2"] = {"type": "partition", "classes": [[0, 1], [2, 3]], "bounds": [1, 1]}
    path = _write(tmp_path, "d.json", inst)
    code, out, _ = _run(capsys, "price", "--instance", path, "--form", "disjoint", "--verify")
    assert code == 0 and json.loads(out)["verification"]["conjecture"] == "C1"


def test_malformed_json_reports_position(tmp_path, capsys):
    bad = _write(tmp_path, "bad.json", '{"ground_set": 4,\n  "matroid1": }')
    code, _, err = _run(capsys, "price", "--instance", bad)
    assert code == 1 and "line 2" in err and "column" in err


def test_remark_families_fail(tmp_path, capsys):
    fam = _write(tmp_path, "remark.json", {"bases1": [sorted(b) for b in NO_PRICE_FAMILY1],
                                           "bases2": [sorted(b) for b in NO_PRICE_FAMILY2]})
    for order in (["1", "2", "3", "4"], ["2", "1", "4", "3"]):
        prices = _write(tmp_path, "p.json", {"prices": order})
        code, out, _ = _run(capsys, "verify", "--instance", fam, "--prices", prices, "--conjecture", "1")
        assert code == 1 and not json.loads(out)["pass"]


def test_unresolved_exit_code(tmp_path, capsys):
    inst = _write(tmp_path, "cyc.json", {"ground_set": 6, "matroid1": CYCLIC_PAIR[0],
                                         "matroid2": CYCLIC_PAIR[1]})
    code, out, _ = _run(capsys, "price", "--instance", inst)
    res = json.loads(out)
    assert code == 2 and res["status"] == "unresolved" and res["witness"]["cycle"] == [1, 5]


def test_gen_is_deterministic(tmp_path, capsys):
    a = _run(capsys, "gen", "--kind", "sbo-pair", "--n", "7", "--seed", "4")[1]
    b = _run(capsys, "gen", "--kind", "sbo-pair", "--n", "7", "--seed", "4")[1]
    assert a == b and json.loads(a)["ground_set"] == 7


@pytest.mark.parametrize("graph", [
    {"U": 2, "V": 2, "edges": [[0, 0], [0, 1], [1, 1], [1, 0]]},
    {"U": 3, "V": 3, "edges": [[u, v] for u in range(3) for v in range(3)]},
], ids=["C4", "K33"])
def test_match_weights(tmp_path, capsys, graph):
    path = _write(tmp_path, "g.json", graph)
    code, out, _ = _run(capsys, "match-weights", "--graph", path)
    res = json.loads(out)
    assert code == 0 and res["perfect"] and len(res["weights"]) == len(graph["edges"])


def test_batch_with_jobs(tmp_path, capsys):
    paths = [_write(tmp_path, f"i{s}.json", gen_instance("partition-vs-any", 5, s)) for s in range(4)]
    outdir = tmp_path / "out"
    code, _, _ = _run(capsys, "price", "--instance", *paths, "--out", str(outdir), "--jobs", "2", "--verify")
    assert code == 0
    for s in range(4):
        assert json.loads((outdir / f"i{s}.prices.json").read_text())["verification"]["pass"]


def test_module_entry_point(tmp_path):
    inst = _write(tmp_path, "p2.json", P2_VS_UNIFORM)
    done = subprocess.run([sys.executable, "-m", "matroid_pricing.cli", "price", "--instance", inst],
                          capture_output=True, text=True)
    assert done.returncode == 0 and json.loads(done.stdout)["prices"] == ["0", "5", "0", "5"]
