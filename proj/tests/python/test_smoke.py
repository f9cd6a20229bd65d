"""Smoke tests for the python bindings and the CLI."""

import json
import os
import subprocess

import pytest

import kmtlab as kmt


def test_domains_and_functions():
    line = kmt.Domain("line", n=8)
    assert line.size == 8
    cube = kmt.Domain("cube", d=3)
    assert cube.size == 8
    f = kmt.Function.from_bits(line, [1, 1, 1, 0, 0, 0, 0, 0])
    assert f.eval(0) and not f.eval(5)
    back = kmt.Function.from_json(f.to_json())
    assert back.bits() == f.bits()


def test_monotonicity_and_distance():
    line = kmt.Domain("line", n=6)
    f = kmt.Function.from_bits(line, [1, 0, 1, 0, 1, 0])
    assert not kmt.is_k_monotone(f, 5)
    assert kmt.is_k_monotone(f, 6)
    assert kmt.exact_distance(f, 2, "dp") == (1, 3)
    assert kmt.exact_distance(f, 2, "brute") == (1, 3)
    witness = kmt.find_violation(f, 2)
    assert witness is not None and len(witness) == 3

    bound = kmt.greedy_matching_bound(f, 2)
    assert bound["lower_bound"] == (1, 6)


def test_line_testers():
    fn, meta = kmt.generate("random_kmono", json.dumps({"n": 2000, "k": 3}), 7)
    assert meta["k_monotone"]
    verdict = kmt.test_line_one_sided(fn, 3, 0.1, seed=1)
    assert verdict["decision"] == "ACCEPT"

    far, far_meta = kmt.generate(
        "alt_line", json.dumps({"n": 2000, "runs": 60, "k": 3}), 8
    )
    num, den = map(int, far_meta["exact_distance"].split("/"))
    assert num / den >= 0.1
    rejected = sum(
        kmt.test_line_one_sided(far, 3, 0.1, seed=s)["decision"] == "REJECT"
        for s in range(30)
    )
    assert rejected >= 20


def test_grid_and_cube_testers():
    band, meta = kmt.generate("band2", json.dumps({"n": 128}), 3)
    assert meta["k_monotone"]
    assert kmt.test_grid2_2monotone(band, 0.15, seed=2)["decision"] == "ACCEPT"

    stripes, smeta = kmt.generate("stripes2", json.dumps({"n": 128, "width": 2}), 4)
    assert kmt.test_grid2_2monotone(stripes, 0.15, seed=3)["decision"] == "REJECT"

    cube_fn, cmeta = kmt.generate("random_kmono", json.dumps({"n": 2, "d": 10, "k": 2}), 5)
    assert kmt.test_cube_one_sided(cube_fn, 2, 0.3, seed=4)["decision"] == "ACCEPT"


def test_tolerant_and_l1():
    fn, _ = kmt.generate("random_kmono", json.dumps({"n": 240, "k": 2}), 11)
    v = kmt.tolerant_test_full(fn, 2, 0.05, 0.45, seed=5)
    assert v["decision"] == "ACCEPT"
    assert v["queries"] == 25 * 392

    dom = kmt.Domain("line", n=40)
    values = [f"{min(i // 5, 8)}/8" for i in range(40)]
    lv = kmt.tolerant_l1_test_monotone(dom, values, 0.05, 0.45, seed=6)
    assert lv["decision"] == "ACCEPT"


def test_lemma_checks_registry():
    names = dict(kmt.lemma_checks())
    assert "oracle-equivalence" in names
    ok, detail = kmt.run_lemma_check("threshold-sum")
    assert ok, detail


@pytest.mark.skipif("KMT_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_round_trip(tmp_path):
    cli = os.environ["KMT_CLI"]
    fn_path = tmp_path / "f.json"
    out = subprocess.run(
        [cli, "gen", "--family", "gv_line", "--params",
         json.dumps({"n": 4800, "k": 4, "eps": 0.1}), "--seed", "9",
         "-o", str(fn_path)],
        capture_output=True, text=True, check=True)
    meta = json.loads(out.stdout)
    assert meta["family"] == "gv_line"

    run = subprocess.run(
        [cli, "test", "--tester", "line1", "--fn", str(fn_path),
         "--k", "4", "--eps", "0.1", "--seed", "1"],
        capture_output=True, text=True)
    verdict = json.loads(run.stdout)
    assert run.returncode in (0, 1)
    assert verdict["decision"] in ("ACCEPT", "REJECT")

    dist = subprocess.run(
        [cli, "distance", "--fn", str(fn_path), "--k", "4", "--engine", "dp"],
        capture_output=True, text=True, check=True)
    assert "/" in json.loads(dist.stdout)["distance"]

    lemma = subprocess.run([cli, "lemma-check", "--name", "rounding"],
                           capture_output=True, text=True)
    assert lemma.returncode == 0
