from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

import pytest

from kakeya_hash import harness
from kakeya_hash.cli import main
from kakeya_hash.harness import ConfigError, ExperimentConfig
from kakeya_hash.hashcore import PointSet, linf_pass
from kakeya_hash.linalg import enumerate_surjective_maps, field_make


def cfg(**raw):
    return ExperimentConfig.from_dict(raw)


def write(tmp_path, raw, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(raw, indent=1))
    return str(p)


HB = {"kind": "hash_balance", "p": 2, "n": 8, "seed": 3, "trials": 40, "t": 3, "tau": "1/2",
      "set": {"type": "random", "size": 60}}


# --- parsing ------------------------------------------------------------------------

def test_rationals_roundtrip():
    for x in [Fraction(0), Fraction(7, 3), Fraction(-5, 8), Fraction(10**30, 7)]:
        assert harness.parse_rational(harness.fmt_rational(x)) == x
    assert harness.parse_rational(3) == 3
    with pytest.raises(ConfigError):
        harness.parse_rational(0.5)
    with pytest.raises(ConfigError):
        harness.parse_rational("1/0")
    assert harness.parse_big_int("2^60") == 2**60


def test_unknown_key_has_line_number(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"kind": "hash_balance",\n "p": 2,\n "colour": 1}\n')
    with pytest.raises(ConfigError, match=r"'colour' \(line 3\)"):
        harness.load_config(str(path))


def test_invalid_json_reports_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"kind": "hash_balance",\n "p": 2,,\n}')
    with pytest.raises(ConfigError, match="line 2"):
        harness.load_config(str(path))


def test_validation_errors():
    with pytest.raises(ConfigError, match="seed"):
        cfg(**{k: v for k, v in HB.items() if k != "seed"})
    with pytest.raises(ConfigError, match="trials"):
        cfg(**dict(HB, trials=0))
    with pytest.raises(ConfigError):
        cfg(**dict(HB, tau=0.5))
    with pytest.raises(ConfigError):
        cfg(**dict(HB, t=9))
    with pytest.raises(ConfigError):
        cfg(**dict(HB, p=4))
    with pytest.raises(ConfigError):
        cfg(**dict(HB, kind="nope"))
    with pytest.raises(ConfigError):
        cfg(**dict(HB, set={"type": "random", "size": 5, "extra": 1}))
    # exhaustive runs need no seed
    c = cfg(kind="hash_balance", p=2, n=3, t=1, tau=1, exhaustive=True, set={"type": "full"})
    assert c.seed is None


def test_set_specs():
    c = cfg(**dict(HB, set={"type": "union", "parts": [
        {"type": "subspace", "rows": [[1, 0, 0, 0, 0, 0, 0, 0]], "shift": [0, 1, 0, 0, 0, 0, 0, 0]},
        {"type": "explicit", "points": [[1, 1, 1, 1, 1, 1, 1, 1]]},
    ]}))
    S = harness.build_set(c)
    assert S.size == 3
    assert (1, 1, 0, 0, 0, 0, 0, 0) in S
    full = harness.build_set(cfg(**dict(HB, set={"type": "full"})))
    assert full.size == 256


# --- runners --------------------------------------------------------------------------

def test_full_space_always_passes():
    c = cfg(kind="hash_balance", p=2, n=4, seed=1, trials=30, t=2, tau=0, set={"type": "full"})
    res = harness.run_hash_balance(c)
    assert res.summary["passes"] == 30 and res.summary["pass_fraction"] == "1/1"


def test_exhaustive_mode_matches_enumeration():
    F2 = field_make(2)
    c = cfg(kind="hash_balance", p=2, n=3, t=2, tau=1, exhaustive=True,
            set={"type": "explicit", "points": [[0, 0, 1], [0, 1, 0], [1, 1, 1], [1, 0, 0], [1, 1, 0], [0, 1, 1]]})
    res = harness.run_hash_balance(c)
    S = harness.build_set(c)
    maps = list(enumerate_surjective_maps(F2, 3, 2))
    assert res.summary["trials"] == 42
    assert res.summary["passes"] == sum(linf_pass(L, S, 1) for L in maps)
    assert Fraction(res.summary["pass_fraction"]) == harness.exact_pass_fraction(S, 2, 1)


def test_sampled_fraction_converges_to_exact():
    c = cfg(kind="hash_balance", p=2, n=3, t=1, tau=Fraction(1, 2).__str__(), seed=9, trials=3000,
            set={"type": "explicit", "points": [[0, 0, 1], [0, 1, 0], [1, 1, 1], [1, 0, 0], [1, 1, 0], [0, 1, 1]]})
    res = harness.run_hash_balance(c)
    exact = harness.exact_pass_fraction(harness.build_set(c), 1, Fraction(1, 2))
    lo, hi = res.summary["ci95_advisory"]
    assert lo - 0.02 <= float(exact) <= hi + 0.02


def test_records_are_exact_and_consistent():
    res = harness.run_hash_balance(cfg(**HB))
    assert len(res.records) == 40
    for r in res.records:
        linf = Fraction(r["linf"])
        assert r["pass"] == (linf * 8 <= Fraction(1, 2))
        assert Fraction(r["l1"]) >= linf
    assert [r["trial_index"] for r in res.records] == list(range(40))


def test_parallel_equals_serial():
    a = harness.run_hash_balance(cfg(**HB)).to_jsonl()
    b = harness.run_hash_balance(cfg(**dict(HB, jobs=4))).to_jsonl()
    assert a == b


def test_csv_histograms():
    res = harness.run_hash_balance(cfg(**HB))
    rows = list(csv.reader(io.StringIO(res.to_csv())))
    assert rows[0] == ["trial_index", "bucket", "count"]
    per_trial = {}
    for idx, _, count in rows[1:]:
        per_trial[int(idx)] = per_trial.get(int(idx), 0) + int(count)
    assert per_trial == {i: 60 for i in range(40)}


def test_baseline_compare():
    c = cfg(kind="baseline_compare", p=2, n=12, seed=4, trials=200, t=6, tau=1,
            set={"type": "random", "size": 256})
    res = harness.run_baseline_compare(c)
    s = res.summary
    assert s["mean_load"] == "4/1"
    assert Fraction(s["random_function"]["mean"]) >= 4 and Fraction(s["linear"]["mean"]) >= 4
    assert all(r["linear_max"] >= 4 and r["random_max"] >= 4 for r in res.records)
    assert res.to_jsonl() == harness.run_baseline_compare(c).to_jsonl()


def test_baseline_birthday_regime():
    # 2^t >= |S|^2: linear maps are injective on S most of the time
    c = cfg(kind="baseline_compare", p=2, n=20, seed=5, trials=300, t=12, set={"type": "random", "size": 40})
    res = harness.run_baseline_compare(c)
    ones = sum(r["linear_max"] == 1 for r in res.records)
    assert ones >= 0.6 * 300


def test_audits():
    fur = harness.run_audits(cfg(kind="furstenberg_audit", p=2, n=3, k=2))
    assert fur.exit_code == 0 and fur.summary["subsets_checked"] == 256
    pm = harness.run_audits(cfg(kind="polymethod_selfcheck", seed=0, trials=30))
    assert pm.exit_code == 0 and pm.summary["violations"] == 0
    bal = harness.run_audits(cfg(kind="balance_audit", p=2, n=4, k=3, tau=1, seed=2, sigmas=[1],
                                 set={"type": "full"}))
    assert bal.exit_code == 0
    with pytest.raises(ConfigError):
        harness.run_audits(cfg(**HB))


def test_budget_exit_code():
    res = harness.run(cfg(**dict(HB, budget=5)))
    assert res.exit_code == harness.EXIT_BUDGET


# --- CLI ------------------------------------------------------------------------------

def test_cli_hash_balance_deterministic(tmp_path, capsys):
    path = write(tmp_path, HB)
    assert main(["hash-balance", "--config", path]) == 0
    first = capsys.readouterr().out
    assert main(["hash-balance", "--config", path, "--jobs", "3"]) == 0
    assert capsys.readouterr().out == first
    lines = first.strip().split("\n")
    assert json.loads(lines[-1])["summary"] is True
    assert len(lines) == 41


def test_cli_overrides_and_out(tmp_path):
    path = write(tmp_path, HB)
    out = tmp_path / "o.jsonl"
    assert main(["hash-balance", "--config", path, "--trials", "5", "--seed", "8", "--out", str(out)]) == 0
    lines = out.read_text().strip().split("\n")
    assert len(lines) == 6 and json.loads(lines[-1])["seed"] == 8


def test_cli_csv(tmp_path, capsys):
    assert main(["hash-balance", "--config", write(tmp_path, HB), "--format", "csv"]) == 0
    assert capsys.readouterr().out.startswith("trial_index,bucket,count\n")


def test_cli_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "hash_balance", "oops": 1}')
    assert main(["hash-balance", "--config", str(bad)]) == 2
    assert main(["hash-balance", "--config", str(tmp_path / "missing.json")]) == 2
    assert main(["hash-balance", "--config", write(tmp_path, HB), "--budget", "3"]) == 3
    # command and config kind must agree
    assert main(["baseline", "--config", write(tmp_path, HB)]) == 2
    fur = write(tmp_path, {"kind": "furstenberg_audit", "p": 2, "n": 3, "k": 2}, "f.json")
    assert main(["audit", "furstenberg", "--config", fur]) == 0
    pm = write(tmp_path, {"kind": "polymethod_selfcheck", "seed": 1, "trials": 10}, "p.json")
    assert main(["audit", "polymethod", "--config", pm]) == 0
    capsys.readouterr()


def test_cli_params(capsys):
    assert main(["params", "--variant", "thm21", "--q", "16", "--n", "10", "--size", "16^5"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["t"] == 1 and out["r"] == 4
    assert main(["params", "--variant", "injective", "--size", "1024", "--delta", "1/2"]) == 0
    assert json.loads(capsys.readouterr().out)["t"] == 20
    assert main(["params", "--variant", "thm22", "--n", "100", "--size", "2^60", "--tau", "3",
                 "--delta", "1/2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["t"] == 13 and out["entropy_loss"] == "47/1"
    assert main(["params", "--variant", "hypothesis", "--p", "2", "--ell", "11", "--n", "5",
                 "--tau", "1", "--delta", "1/2"]) == 0
    assert json.loads(capsys.readouterr().out)["ok"] is True
    assert main(["params", "--variant", "thm21", "--n", "5"]) == 2
    assert main(["params", "--variant", "thm22", "--n", "100", "--size", "2^10", "--tau", "1",
                 "--delta", "1/2"]) == 2
    capsys.readouterr()


def test_pointset_from_config_is_seeded():
    a = harness.build_set(cfg(**HB))
    b = harness.build_set(cfg(**HB))
    assert a == b and isinstance(a, PointSet)
