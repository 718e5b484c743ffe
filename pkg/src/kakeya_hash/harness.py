"""Experiment configs, seeded trial runners and JSONL/CSV serialisation.

Every runner returns a :class:`RunResult`: a list of JSON-ready records in
trial order plus a summary dict. Rationals are written as ``"num/den"``
strings so the data path never touches floats; the only floats in the
output are the advisory confidence intervals and quantile summaries.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import numpy as np
from scipy import stats

from . import balance, furstenberg, polymethod
from .hashcore import PointSet, histogram, l1_distance, linf_distance
from .linalg import (
    BudgetExceeded,
    FieldCtx,
    LinearMap,
    Subspace,
    check_budget,
    default_budget,
    enumerate_surjective_maps,
    field_make,
    mat_kernel,
    sample_surjective_map,
)
from .rng import aux_rng, set_rng, trial_rng

KINDS = ("hash_balance", "balance_audit", "furstenberg_audit", "polymethod_selfcheck",
         "baseline_compare")
RANDOMIZED = {"hash_balance", "baseline_compare", "balance_audit", "polymethod_selfcheck"}

COMMON_KEYS = {"kind", "p", "ell", "n", "seed", "trials", "budget", "jobs"}
KIND_KEYS = {
    "hash_balance": {"set", "t", "tau", "exhaustive"},
    "baseline_compare": {"set", "t", "tau"},
    "balance_audit": {"set", "k", "tau", "sigmas"},
    "furstenberg_audit": {"k", "gamma_grid", "beta_grid", "mode", "samples"},
    "polymethod_selfcheck": {"max_degree", "rank_n", "ms"},
}

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class ConfigError(ValueError):
    """Invalid experiment configuration; the message names key and line."""


def fmt_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(value, key: str = "value") -> Fraction:
    """Exact parse of ints and "num/den" strings; floats are rejected."""
    if isinstance(value, bool) or isinstance(value, float):
        raise ConfigError(f"{key}: use an integer or a \"num/den\" string, not {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and re.fullmatch(r"\s*-?\d+\s*(/\s*\d+\s*)?", value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise ConfigError(f"{key}: zero denominator in {value!r}") from None
    raise ConfigError(f"{key}: cannot parse {value!r} as a rational")


def parse_big_int(value, key: str = "value") -> int:
    """Integers, optionally written as "a^b" or "a**b"."""
    if isinstance(value, bool):
        raise ConfigError(f"{key}: expected an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        m = re.fullmatch(r"\s*(\d+)\s*(?:\^|\*\*)\s*(\d+)\s*", value)
        if m:
            return int(m.group(1)) ** int(m.group(2))
        if re.fullmatch(r"\s*-?\d+\s*", value):
            return int(value)
    raise ConfigError(f"{key}: cannot parse {value!r} as an integer")


@dataclass
class ExperimentConfig:
    kind: str
    p: int = 2
    ell: int = 1
    n: int | None = None
    seed: int | None = None
    trials: int | None = None
    budget: int | None = None
    jobs: int = 1
    options: dict[str, Any] = field(default_factory=dict)

    @property
    def ctx(self) -> FieldCtx:
        return field_make(self.p, self.ell)

    @property
    def effective_budget(self) -> int:
        return default_budget() if self.budget is None else self.budget

    @classmethod
    def from_dict(cls, raw: dict, text: str | None = None) -> "ExperimentConfig":
        def where(key: str) -> str:
            if text is None:
                return ""
            for lineno, line in enumerate(text.splitlines(), 1):
                if f'"{key}"' in line:
                    return f" (line {lineno})"
            return ""

        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        kind = raw.get("kind")
        if kind not in KINDS:
            raise ConfigError(f"kind{where('kind')}: expected one of {', '.join(KINDS)}, got {kind!r}")
        allowed = COMMON_KEYS | KIND_KEYS[kind]
        for key in raw:
            if key not in allowed:
                raise ConfigError(f"unknown key {key!r}{where(key)} for kind {kind}")

        def integer(key: str, default=None, minimum: int | None = None):
            if key not in raw:
                return default
            try:
                v = parse_big_int(raw[key], key)
            except ConfigError as e:
                raise ConfigError(f"{e}{where(key)}") from None
            if minimum is not None and v < minimum:
                raise ConfigError(f"{key}{where(key)}: must be >= {minimum}, got {v}")
            return v

        cfg = cls(
            kind=kind,
            p=integer("p", 2, 2),
            ell=integer("ell", 1, 1),
            n=integer("n", None, 1),
            seed=integer("seed", None, 0),
            trials=integer("trials", None, 1),
            budget=integer("budget", None, 1),
            jobs=integer("jobs", 1, 1),
        )
        try:
            field_make(cfg.p, cfg.ell)
        except ValueError as e:
            raise ConfigError(f"p{where('p')}: {e}") from None
        if cfg.seed is not None and cfg.seed >= 2**64:
            raise ConfigError(f"seed{where('seed')}: must fit in 64 bits")
        opts: dict[str, Any] = {}
        for key in KIND_KEYS[kind]:
            if key not in raw:
                continue
            val = raw[key]
            try:
                if key in ("tau",):
                    opts[key] = parse_rational(val, key)
                elif key in ("sigmas", "gamma_grid", "beta_grid"):
                    if not isinstance(val, list) or not val:
                        raise ConfigError(f"{key}: expected a nonempty list")
                    opts[key] = [parse_rational(v, key) for v in val]
                elif key == "ms":
                    if not isinstance(val, list) or not val:
                        raise ConfigError(f"{key}: expected a nonempty list")
                    opts[key] = [parse_big_int(v, key) for v in val]
                elif key in ("t", "k", "samples", "max_degree", "rank_n"):
                    opts[key] = parse_big_int(val, key)
                elif key == "exhaustive":
                    if not isinstance(val, bool):
                        raise ConfigError(f"{key}: expected true or false")
                    opts[key] = val
                elif key == "mode":
                    if val not in ("exhaustive", "sampled"):
                        raise ConfigError(f"{key}: expected exhaustive or sampled")
                    opts[key] = val
                elif key == "set":
                    opts[key] = _check_set_desc(val)
            except ConfigError as e:
                raise ConfigError(f"{e}{where(key)}") from None
        cfg.options = opts
        cfg.validate(where)
        return cfg

    def validate(self, where: Callable[[str], str] = lambda k: "") -> None:
        o = self.options
        needs_seed = self.kind in RANDOMIZED and not (self.kind == "hash_balance" and o.get("exhaustive"))
        if self.kind == "furstenberg_audit" and o.get("mode") == "sampled":
            needs_seed = True
        if needs_seed and self.seed is None:
            raise ConfigError(f"seed is mandatory for kind {self.kind}")
        if self.kind in ("hash_balance", "baseline_compare", "balance_audit"):
            for key in ("n", "tau") if self.kind != "baseline_compare" else ("n",):
                if (self.n if key == "n" else o.get(key)) is None:
                    raise ConfigError(f"{key} is required for kind {self.kind}")
            if "set" not in o:
                raise ConfigError(f"set is required for kind {self.kind}")
        if self.kind in ("hash_balance", "baseline_compare"):
            t = o.get("t")
            if t is None or not 1 <= t <= self.n:
                raise ConfigError(f"t{where('t')}: need 1 <= t <= n")
            if not o.get("exhaustive") and self.trials is None:
                raise ConfigError("trials is required for sampled runs")
        if self.kind == "balance_audit":
            k = o.get("k")
            if k is None or not 0 <= k <= self.n:
                raise ConfigError(f"k{where('k')}: need 0 <= k <= n")
        if self.kind == "furstenberg_audit":
            if self.n is None or "k" not in o:
                raise ConfigError("n and k are required for kind furstenberg_audit")
            if not 1 <= o["k"] <= self.n:
                raise ConfigError(f"k{where('k')}: need 1 <= k <= n")
        if "tau" in o and o["tau"] < 0:
            raise ConfigError(f"tau{where('tau')}: must be nonnegative")


def _check_set_desc(desc) -> dict:
    if not isinstance(desc, dict) or "type" not in desc:
        raise ConfigError("set: expected an object with a \"type\"")
    kind = desc["type"]
    allowed = {
        "explicit": {"type", "points"},
        "random": {"type", "size"},
        "full": {"type"},
        "subspace": {"type", "rows", "shift"},
        "union": {"type", "parts"},
    }
    if kind not in allowed:
        raise ConfigError(f"set: unknown type {kind!r}")
    extra = set(desc) - allowed[kind]
    if extra:
        raise ConfigError(f"set: unknown key(s) {sorted(extra)} for type {kind}")
    if kind == "random":
        desc = dict(desc, size=parse_big_int(desc.get("size"), "set.size"))
    if kind == "union":
        if not isinstance(desc.get("parts"), list):
            raise ConfigError("set: union needs a list of parts")
        desc = dict(desc, parts=[_check_set_desc(p) for p in desc["parts"]])
    return desc


def load_config(path: str, overrides: dict[str, Any] | None = None) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ConfigError(f"cannot read config: {e}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    if isinstance(raw, dict):
        raw.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return ExperimentConfig.from_dict(raw, text)


def build_set(cfg: ExperimentConfig, desc: dict | None = None) -> PointSet:
    """Materialise the configured point set (random sets use the set stream)."""
    ctx, n = cfg.ctx, cfg.n
    desc = cfg.options["set"] if desc is None else desc
    kind = desc["type"]
    try:
        if kind == "full":
            return PointSet.full(ctx, n)
        if kind == "explicit":
            return PointSet.from_vectors(ctx, n, desc.get("points", []))
        if kind == "random":
            return PointSet.random(set_rng(cfg.seed or 0), ctx, n, desc["size"])
        if kind == "subspace":
            sub = Subspace.from_rows(ctx, n, desc.get("rows", []) or np.zeros((0, n)))
            vecs = sub.vectors()
            shift = np.array(desc.get("shift", [0] * n), dtype=np.int64)
            return PointSet.from_vectors(ctx, n, ctx.add(vecs, shift[None, :]))
        parts = [build_set(cfg, p) for p in desc["parts"]]
        return PointSet.from_vectors(ctx, n, np.vstack([p.points for p in parts]) if parts
                                     else np.zeros((0, n)))
    except (ValueError, IndexError) as e:
        raise ConfigError(f"set: {e}") from None


# --- runners ---------------------------------------------------------------------------

@dataclass
class RunResult:
    records: list[dict]
    summary: dict
    exit_code: int = EXIT_OK
    histograms: list[tuple[int, dict[int, int]]] = field(default_factory=list)

    def to_jsonl(self) -> str:
        lines = [json.dumps(r, sort_keys=True, separators=(",", ":")) for r in self.records]
        lines.append(json.dumps(self.summary, sort_keys=True, separators=(",", ":")))
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        if not self.histograms:
            raise ConfigError("csv output is only available for histogram-producing runs")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["trial_index", "bucket", "count"])
        for idx, counts in self.histograms:
            for bucket in sorted(counts):
                w.writerow([idx, bucket, counts[bucket]])
        return buf.getvalue()


def clopper_pearson(k: int, n: int, level: float = 0.95) -> tuple[float, float]:
    """Exact binomial confidence interval for k successes out of n."""
    alpha = 1 - level
    lo = 0.0 if k == 0 else float(stats.beta.ppf(alpha / 2, k, n - k + 1))
    hi = 1.0 if k == n else float(stats.beta.ppf(1 - alpha / 2, k + 1, n - k))
    return lo, hi


def _parallel_map(fn, items, jobs: int) -> list:
    if jobs <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _map_record(idx: int, L: LinearMap, S: PointSet, tau: Fraction) -> tuple[dict, dict]:
    h = histogram(L, S)
    dist = linf_distance(h)
    rec = {
        "trial_index": idx,
        "map": L.matrix.tolist(),
        "linf": fmt_rational(dist),
        "l1": fmt_rational(l1_distance(h)),
        "max_bucket": h.max_count,
        "pass": dist * L.ctx.q**L.t <= tau,
    }
    return rec, dict(h.counts)


def run_hash_balance(cfg: ExperimentConfig) -> RunResult:
    """Pass fraction of tau-closeness over random (or all) surjective maps."""
    if cfg.kind != "hash_balance":
        raise ConfigError("run_hash_balance needs kind hash_balance")
    S = build_set(cfg)
    if S.size == 0:
        raise ConfigError("set: the point set is empty")
    ctx, n, t, tau = cfg.ctx, cfg.n, cfg.options["t"], cfg.options["tau"]
    exhaustive = bool(cfg.options.get("exhaustive"))
    if exhaustive:
        check_budget(ctx.q ** (t * n) * S.size, cfg.effective_budget, "exhaustive hash_balance")
        maps = list(enumerate_surjective_maps(ctx, n, t))
        results = _parallel_map(lambda i: _map_record(i, maps[i], S, tau), range(len(maps)), cfg.jobs)
    else:
        check_budget(cfg.trials * S.size * n * t, cfg.effective_budget, "hash_balance")

        def one(i: int):
            return _map_record(i, sample_surjective_map(trial_rng(cfg.seed, i), ctx, n, t), S, tau)

        results = _parallel_map(one, range(cfg.trials), cfg.jobs)
    records = [r for r, _ in results]
    passes = sum(r["pass"] for r in records)
    total = len(records)
    lo, hi = clopper_pearson(passes, total)
    summary = {
        "summary": True,
        "kind": cfg.kind,
        "q": ctx.q,
        "n": n,
        "t": t,
        "set_size": S.size,
        "tau": fmt_rational(tau),
        "seed": cfg.seed,
        "exhaustive": exhaustive,
        "trials": total,
        "passes": passes,
        "pass_fraction": fmt_rational(Fraction(passes, total)),
        "ci95_advisory": [round(lo, 6), round(hi, 6)],
    }
    return RunResult(records, summary, EXIT_OK, [(r["trial_index"], h) for r, h in results])


def _quantiles(values: list[int]) -> dict:
    arr = np.asarray(values)
    qs = np.quantile(arr, [0.5, 0.9, 0.99], method="inverted_cdf")
    return {"mean": fmt_rational(Fraction(int(arr.sum()), len(arr))),
            "median": int(qs[0]), "p90": int(qs[1]), "p99": int(qs[2]), "max": int(arr.max())}


def run_baseline_compare(cfg: ExperimentConfig) -> RunResult:
    """Max bucket load: random surjective linear maps vs truly random functions."""
    if cfg.kind != "baseline_compare":
        raise ConfigError("run_baseline_compare needs kind baseline_compare")
    S = build_set(cfg)
    if S.size == 0:
        raise ConfigError("set: the point set is empty")
    ctx, n, t = cfg.ctx, cfg.n, cfg.options["t"]
    buckets = ctx.q**t
    check_budget(cfg.trials * (S.size * n * t + buckets), cfg.effective_budget, "baseline_compare")

    def one(i: int) -> dict:
        rng = trial_rng(cfg.seed, i)
        L = sample_surjective_map(rng, ctx, n, t)
        linear = histogram(L, S).max_count
        # the random function gets its own stream so it never shares draws with L
        rand = aux_rng(cfg.seed ^ i).integers(0, buckets, size=S.size)
        random_max = int(np.bincount(rand, minlength=buckets).max())
        return {"trial_index": i, "linear_max": linear, "random_max": random_max}

    records = _parallel_map(one, range(cfg.trials), cfg.jobs)
    summary = {
        "summary": True,
        "kind": cfg.kind,
        "q": ctx.q,
        "n": n,
        "t": t,
        "set_size": S.size,
        "seed": cfg.seed,
        "trials": cfg.trials,
        "mean_load": fmt_rational(Fraction(S.size, buckets)),
        "linear": _quantiles([r["linear_max"] for r in records]),
        "random_function": _quantiles([r["random_max"] for r in records]),
    }
    if "tau" in cfg.options:
        cap = (1 + cfg.options["tau"]) * Fraction(S.size, buckets)
        summary["tau"] = fmt_rational(cfg.options["tau"])
        summary["linear_within_tau"] = sum(r["linear_max"] <= cap for r in records)
        summary["random_within_tau"] = sum(r["random_max"] <= cap for r in records)
    return RunResult(records, summary)


def _audit_balance(cfg: ExperimentConfig) -> RunResult:
    S = build_set(cfg)
    ctx, n, k, tau = cfg.ctx, cfg.n, cfg.options["k"], cfg.options["tau"]
    budget = cfg.effective_budget
    rep = balance.shift_balanced_fraction(S, k, tau, budget=budget)
    records: list[dict] = [{
        "check": "shift_balanced_fraction",
        "k": k,
        "tau": fmt_rational(tau),
        "total_subspaces": rep.total_subspaces,
        "shift_balanced": rep.shift_balanced_count,
        "fraction": fmt_rational(rep.fraction),
        "witnesses": [{"basis": [list(r) for r in A.basis], "shift": list(s)} for A, s in rep.witnesses],
    }]
    violations = 0
    # kernel-view cross-check: maps with a k-dimensional kernel
    t = n - k
    if t >= 1 and S.size:
        trials = cfg.trials or 100
        mem = S.membership
        for i in range(trials):
            L = sample_surjective_map(trial_rng(cfg.seed, i), ctx, n, t)
            direct = linf_distance(histogram(L, S)) * ctx.q**t <= tau
            kernel = balance.is_shift_balanced(mat_kernel(L.matrix), S, tau, mem)[0]
            if direct != kernel:
                violations += 1
                records.append({"check": "kernel_equivalence", "trial_index": i,
                                "map": L.matrix.tolist(), "linf_pass": direct, "shift_balanced": kernel})
        records.append({"check": "kernel_equivalence", "maps": trials, "mismatches": violations})
    for sigma in cfg.options.get("sigmas", []):
        if k < 3:
            raise ConfigError("sigmas need k >= 3")
        a = balance.audit_claim_concentration(S, k, sigma, budget=budget)
        ok = a.passed
        violations += not ok
        records.append({
            "check": "concentration", "sigma": fmt_rational(sigma),
            "fraction": fmt_rational(a.fraction), "flats": a.flats,
            "e_k_minus_2": fmt_rational(a.e_k2), "hypothesis_holds": a.hypothesis_holds,
            "bound": _render_bound(a.bound), "general_bound": _render_bound(a.general_bound),
            "pass": ok, "pass_stated": a.passed_stated,
        })
    summary = {"summary": True, "kind": cfg.kind, "q": ctx.q, "n": n, "k": k,
               "set_size": S.size, "seed": cfg.seed, "violations": violations}
    return RunResult(records, summary, EXIT_VIOLATION if violations else EXIT_OK)


def _render_bound(b) -> str:
    return "inf" if b == math.inf else ("-inf" if b == -math.inf else fmt_rational(b))


def _audit_furstenberg(cfg: ExperimentConfig) -> RunResult:
    q = cfg.ctx.q
    o = cfg.options
    grid_default = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]
    mode = o.get("mode", "exhaustive")
    rng = set_rng(cfg.seed) if mode == "sampled" else None
    rep = furstenberg.audit_lower_bound_exhaustive(
        cfg.n, q, o["k"], o.get("gamma_grid", grid_default), o.get("beta_grid", grid_default),
        mode=mode, samples=o.get("samples", 4096), rng=rng, budget=cfg.effective_budget)
    records = [{"check": "lower_bound", "mask": v.mask, "size": v.size, "gamma": fmt_rational(v.gamma),
                "beta": fmt_rational(v.beta), "bound": fmt_rational(v.bound)} for v in rep.violations]
    summary = {
        "summary": True, "kind": cfg.kind, "q": q, "n": cfg.n, "k": o["k"], "mode": mode,
        "subsets_checked": rep.subsets_checked,
        "furstenberg_instances": rep.furstenberg_instances,
        "violations": len(rep.violations),
        "min_slack": None if rep.min_slack is None else fmt_rational(rep.min_slack),
    }
    return RunResult(records, summary, EXIT_VIOLATION if rep.violations else EXIT_OK)


def _audit_polymethod(cfg: ExperimentConfig) -> RunResult:
    """Schwartz-Zippel, chain rule, rank lemmas and the good-monomial certificate."""
    o = cfg.options
    ctx = cfg.ctx
    trials = cfg.trials or 200
    max_deg = o.get("max_degree", 4)
    nvars = cfg.n or 2
    records: list[dict] = []
    violations = 0

    sz_fail = chain_fail = equality = 0
    for i in range(trials):
        rng = trial_rng(cfg.seed, i)
        d = int(rng.integers(1, max_deg + 1))
        f = polymethod.random_poly(rng, ctx, nvars, d)
        if f.is_zero():
            continue
        a = polymethod.sz_audit(f)
        equality += a.equality
        if not a.passed:
            sz_fail += 1
            records.append({"check": "schwartz_zippel", "trial_index": i, "poly": repr(f),
                            "total_mult": a.total_mult, "bound": a.bound})
        i_idx = tuple(int(x) for x in rng.integers(0, 3, size=nvars))
        j_idx = tuple(int(x) for x in rng.integers(0, 3, size=nvars))
        lhs, rhs = polymethod.chain_rule_pair(f, i_idx, j_idx)
        if lhs != rhs:
            chain_fail += 1
            records.append({"check": "chain_rule", "trial_index": i, "poly": repr(f),
                            "i": list(i_idx), "j": list(j_idx)})
    records.append({"check": "schwartz_zippel", "trials": trials, "violations": sz_fail,
                    "equality_cases": equality})
    records.append({"check": "chain_rule", "trials": trials, "violations": chain_fail})
    violations += sz_fail + chain_fail

    rank_n = o.get("rank_n", 2)
    for m in o.get("ms", [1, 2]):
        for d in range(m * ctx.q**2):
            for kind in ("V", "V_full"):
                a = polymethod.rank_lemma_audit(ctx, rank_n, m, d, kind, budget=cfg.effective_budget)
                violations += not a.passed
                records.append({"check": "rank_lemma", "subset": kind, "m": m, "d": d,
                                "rank": a.rank, "target": a.target, "pass": a.passed})
    full = list(polymethod.enumerate_V(ctx, rank_n, True, budget=cfg.effective_budget))
    for d in range(min(2, ctx.q**2)):
        g = polymethod.select_good_monomials(full, d, 1)
        violations += not g.passed
        records.append({"check": "good_monomials", "d": d, "r": 1, "size": len(g.monomials),
                        "target": g.target, "certificate_rank": g.certificate_rank, "pass": g.passed})
    summary = {"summary": True, "kind": cfg.kind, "q": ctx.q, "seed": cfg.seed,
               "violations": violations}
    return RunResult(records, summary, EXIT_VIOLATION if violations else EXIT_OK)


AUDITS = {
    "balance_audit": _audit_balance,
    "furstenberg_audit": _audit_furstenberg,
    "polymethod_selfcheck": _audit_polymethod,
}


def run_audits(cfg: ExperimentConfig) -> RunResult:
    """Run one audit family; exit code 0 iff there were no violations."""
    if cfg.kind not in AUDITS:
        raise ConfigError(f"kind {cfg.kind} is not an audit")
    return AUDITS[cfg.kind](cfg)


def run(cfg: ExperimentConfig) -> RunResult:
    """Dispatch on ``cfg.kind``; budget overruns surface as exit code 3."""
    try:
        if cfg.kind == "hash_balance":
            return run_hash_balance(cfg)
        if cfg.kind == "baseline_compare":
            return run_baseline_compare(cfg)
        return run_audits(cfg)
    except BudgetExceeded as e:
        return RunResult([], {"summary": True, "kind": cfg.kind, "error": str(e)}, EXIT_BUDGET)


def exact_pass_fraction(S: PointSet, t: int, tau) -> Fraction:
    """Pass fraction over all surjective maps via the kernel view (no map enumeration).

    Every (n-t)-dimensional subspace is the kernel of the same number of
    surjective maps, so the fraction over maps equals the fraction over
    kernels.
    """
    rep = balance.shift_balanced_fraction(S, S.n - t, tau)
    return rep.fraction


__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "RunResult",
    "build_set",
    "clopper_pearson",
    "exact_pass_fraction",
    "fmt_rational",
    "load_config",
    "parse_big_int",
    "parse_rational",
    "run",
    "run_audits",
    "run_baseline_compare",
    "run_hash_balance",
]
