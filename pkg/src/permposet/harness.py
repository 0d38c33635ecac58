"""Exhaustive verification sweeps, counterexample reproduction and the
minimality search, all reporting through :class:`VerificationReport`.

The sweeps turn structural results into machine checks: wherever a
hypothesis holds (interval block, separated pair, at most one similar
group, rank property preconditions) the promised conclusion is asserted
against engine-computed values.  Violations are collected, never
silently dropped, and every enumerated instance is either checked or
recorded as skipped.

Reports are deterministic: same config, same bytes (the elapsed-time
field can be excluded when diffing).  Worker support partitions the
outer tau stream; each worker owns its dags and the results are merged
in task order, so worker count never changes a report.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from multiprocessing import Pool
from typing import Any, Callable, Iterable, Iterator, Sequence

from .blocks import proper_blocks, regions, similar_groups
from .perms import (
    Perm,
    complemented_perm,
    format_permutation,
    occurrences,
    pattern_summary,
    reversed_perm,
    standard_form,
)
from .poset import (
    DEFAULT_NODE_BUDGET,
    ENGINE_VERSION,
    ZETA_NODE_LIMIT,
    NodeBudgetExceeded,
    build_interval,
    build_occurrence_poset,
    interval_free_subposet,
    is_boolean,
    is_rank_property,
    mobius,
    mobius_via_zeta,
    mu_to_top_table_fast,
    subposet_mobius,
)
from .predicates import (
    cor_sign_prediction,
    thm_interval_block_occ,
    thm_interval_block_pair,
    thm_separated,
    thm_similar_hypothesis,
    verdict_record,
)
from .symmetry import (  # noqa: F401  (symmetry_reduce is part of this API)
    apply_symmetry,
    is_orbit_min,
    pair_canonical,
    symmetry_images,
    symmetry_reduce,
)

#: the two known length-minimal pairs with mu outside {-1, 1} despite
#: being interval free; the first has a unique occurrence and mu = 0,
#: the second a unique occurrence and mu = 2.
COUNTEREXAMPLE_MU_ZERO = ((3, 2, 1), (2, 5, 1, 7, 3, 10, 4, 6, 9, 8))
COUNTEREXAMPLE_MU_TWO = ((2, 3, 4, 1), (2, 3, 8, 1, 6, 12, 4, 10, 5, 9, 7, 11))


def catalan(n: int) -> int:
    """The n-th Catalan number (C_0 = 1)."""
    if n < 0:
        raise ValueError("catalan is defined for n >= 0")
    return math.comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def _avoiders(n: int) -> tuple[Perm, ...]:
    # Every 132-avoider splits at its largest letter: everything left of
    # n exceeds everything right of n, and both sides avoid 132.
    if n == 0:
        return ((),)
    out = []
    for left_len in range(n):
        shift = n - 1 - left_len
        for left in _avoiders(left_len):
            head = tuple(v + shift for v in left) + (n,)
            for right in _avoiders(n - 1 - left_len):
                out.append(head + right)
    return tuple(out)


def generate_avoiders_132(n: int) -> list[Perm]:
    """All 132-avoiding permutations of length n, lexicographically.

    The count is the n-th Catalan number.  Generation is recursive
    (split at the largest letter), not a filter over S_n.
    """
    if n <= 0:
        raise ValueError("need n >= 1")
    return sorted(_avoiders(n))


@dataclass(frozen=True)
class SweepConfig:
    """Scope and resources for a sweep.

    sigma_lengths None means every length from 1 to |tau|.  The pattern
    class restricts which tau are enumerated; symmetry reduction keeps
    one tau per orbit (reports then count representatives only).
    """

    max_tau_length: int = 6
    sigma_lengths: tuple[int, ...] | None = None
    pattern_class: str = "all"
    symmetry_reduction: bool = False
    worker_count: int = 1
    node_budget: int = DEFAULT_NODE_BUDGET
    oracle_check: bool = False

    def __post_init__(self):
        if self.max_tau_length < 1:
            raise ValueError("max_tau_length must be at least 1")
        if self.worker_count < 1:
            raise ValueError("worker_count must be at least 1")
        if self.node_budget < 1:
            raise ValueError("node_budget must be at least 1")
        if self.pattern_class not in ("all", "avoid_132"):
            raise ValueError(f"unknown pattern class {self.pattern_class!r}")
        if self.sigma_lengths is not None:
            lens = tuple(sorted(set(int(k) for k in self.sigma_lengths)))
            if lens and lens[0] < 1:
                raise ValueError("sigma_lengths must be positive")
            if lens and lens[-1] > self.max_tau_length:
                raise ValueError("sigma_lengths exceed max_tau_length")
            object.__setattr__(self, "sigma_lengths", lens)

    def as_dict(self) -> dict[str, Any]:
        return {
            "max_tau_length": self.max_tau_length,
            "sigma_lengths": list(self.sigma_lengths)
            if self.sigma_lengths is not None else None,
            "pattern_class": self.pattern_class,
            "symmetry_reduction": self.symmetry_reduction,
            "worker_count": self.worker_count,
            "node_budget": self.node_budget,
            "oracle_check": self.oracle_check,
        }

    def lengths_for(self, n: int) -> tuple[int, ...]:
        if self.sigma_lengths is None:
            return tuple(range(1, n + 1))
        return tuple(k for k in self.sigma_lengths if k <= n)


@dataclass
class VerificationReport:
    """Outcome of one sweep; violations empty means the sweep passed.

    instances_checked + skipped equals the number of enumerated
    instances.  Histograms and extremes are JSON-able and fully
    deterministic; elapsed_seconds is the only field that varies
    between identical runs.
    """

    suite: str
    config: dict[str, Any]
    instances_checked: int = 0
    skipped: int = 0
    violations: list[dict[str, Any]] = field(default_factory=list)
    extremes: dict[str, Any] = field(default_factory=dict)
    histograms: dict[str, dict[str, int]] = field(default_factory=dict)
    elapsed_seconds: float = 0.0
    engine_version: int = ENGINE_VERSION

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self, include_elapsed: bool = True) -> str:
        payload = {
            "suite": self.suite,
            "config": self.config,
            "engine_version": self.engine_version,
            "passed": self.passed,
            "instances_checked": self.instances_checked,
            "skipped": self.skipped,
            "violations": self.violations,
            "extremes": self.extremes,
            "histograms": self.histograms,
        }
        if include_elapsed:
            payload["elapsed_seconds"] = round(self.elapsed_seconds, 3)
        return json.dumps(payload, sort_keys=True, indent=2)

    def summary_lines(self) -> list[str]:
        lines = [
            f"suite: {self.suite}",
            f"instances checked: {self.instances_checked}"
            + (f" (skipped {self.skipped})" if self.skipped else ""),
            f"violations: {len(self.violations)}",
            f"elapsed: {self.elapsed_seconds:.2f}s",
            f"result: {'PASS' if self.passed else 'FAIL'}",
        ]
        for bad in self.violations[:10]:
            lines.append("violation: " + json.dumps(bad, sort_keys=True))
        if len(self.violations) > 10:
            lines.append(f"... and {len(self.violations) - 10} more")
        return lines


def _hist_json(counter: Counter) -> dict[str, int]:
    return {str(k): counter[k] for k in sorted(counter)}


def _merge_hist(target: Counter, incoming: dict) -> None:
    for k, v in incoming.items():
        target[k] += v


def _better(current, candidate, take_larger: bool):
    if current is None:
        return candidate
    if take_larger:
        return candidate if candidate["value"] > current["value"] else current
    return candidate if candidate["value"] < current["value"] else current


def _run_tasks(task_fn: Callable, tasks: Sequence, worker_count: int,
               chunksize: int = 1) -> list:
    if worker_count <= 1 or len(tasks) <= 1:
        return [task_fn(t) for t in tasks]
    with Pool(worker_count) as pool:
        return pool.map(task_fn, tasks, chunksize=chunksize)


def _iter_taus(config: SweepConfig, n: int) -> Iterator[Perm]:
    if config.pattern_class == "avoid_132":
        stream: Iterable[Perm] = generate_avoiders_132(n)
    else:
        stream = itertools.permutations(range(1, n + 1))
    if config.symmetry_reduction:
        return (cls.representative for cls in symmetry_reduce(stream))
    return iter(stream)


# -- theorem sweep -----------------------------------------------------


def _occ_record(sigma, tau, occ, mu=None) -> dict[str, Any]:
    rec = {
        "sigma": format_permutation(sigma),
        "tau": format_permutation(tau),
        "occurrence": list(occ),
    }
    if mu is not None:
        rec["mu"] = mu
    return rec


def _theorem_tau_task(args) -> dict[str, Any]:
    """All theorem checks for one host tau; returns a mergeable dict."""
    tau, ks, oracle_check, node_budget, cache = args
    n = len(tau)
    res = {
        "occ_instances": 0,
        "pair_instances": 0,
        "skipped": 0,
        "violations": [],
        "rank_hist": Counter(),
        "mu_hist": Counter(),
        "pair_mu_hist": Counter(),
        "check_hist": Counter(),
        "occ_min": None,
        "occ_max": None,
        "pair_min": None,
        "pair_max": None,
        "guard_example": None,
    }
    violations = res["violations"]
    checks = res["check_hist"]
    block_masks = [b.position_mask() for b in proper_blocks(tau)]

    def bad(check: str, record: dict) -> None:
        violations.append({"check": check, **record})

    for k in ks:
        for idx in itertools.combinations(range(n), k):
            occ = tuple(i + 1 for i in idx)
            sigma = standard_form(tau[i] for i in idx)
            try:
                dag = build_occurrence_poset(tau, occ, node_budget)
            except NodeBudgetExceeded:
                res["skipped"] += 1
                continue
            mu = mobius(dag)
            res["occ_instances"] += 1
            grade = n - k
            res["rank_hist"][grade] += 1
            res["mu_hist"][mu] += 1
            rec = _occ_record(sigma, tau, occ, mu)
            ext = {"value": mu, **_occ_record(sigma, tau, occ)}
            res["occ_min"] = _better(res["occ_min"], ext, False)
            res["occ_max"] = _better(res["occ_max"], ext, True)

            if oracle_check and dag.node_count <= ZETA_NODE_LIMIT:
                checks["zeta_occurrence"] += 1
                zeta_mu = mobius_via_zeta(dag)
                if zeta_mu != mu:
                    bad("zeta_occurrence", {**rec, "zeta_mu": zeta_mu})

            # disjoint interval block forces mu = 0
            v_block = thm_interval_block_occ(tau, occ)
            if v_block.holds:
                checks["block_occurrence"] += 1
                if mu != 0:
                    bad("block_occurrence",
                        verdict_record(v_block, sigma, tau, occ, mu))

            # two independent readings of "separated" must agree, and
            # the witness pair must actually be similar
            groups = similar_groups(tau, occ)
            v_sep = thm_separated(tau, occ)
            checks["separated_bridge"] += 1
            if v_sep.holds != (not groups):
                bad("separated_bridge",
                    verdict_record(v_sep, sigma, tau, occ, mu))
            elif not v_sep.holds:
                x, y = v_sep.witness["pair"]
                if not any(x in g and y in g for g in groups):
                    bad("separated_bridge",
                        verdict_record(v_sep, sigma, tau, occ, mu))

            # separated iff boolean, and boolean fixes the sign
            checks["separated_boolean"] += 1
            boolean = is_boolean(dag)
            if boolean != v_sep.holds:
                bad("separated_boolean",
                    {**rec, "separated": v_sep.holds, "boolean": boolean})
            if v_sep.holds:
                checks["separated_sign"] += 1
                if mu != (-1) ** grade:
                    bad("separated_sign", rec)

            # nodes outside the interval-free subposet carry mu = 0;
            # when the subposet keeps the top its own mu agrees there
            sub = interval_free_subposet(dag)
            dropped = sub.dropped()
            if dropped:
                checks["dropped_mu_zero"] += 1
                for di in dropped:
                    if dag.mu[di] != 0:
                        bad("dropped_mu_zero",
                            {**rec, "node": dag.keys[di].text(),
                             "node_mu": dag.mu[di]})
                        break
            if sub.contains_top():
                checks["subposet_mu_match"] += 1
                sub_mu = subposet_mobius(sub)[dag.top]
                if sub_mu != mu:
                    bad("subposet_mu_match", {**rec, "subposet_mu": sub_mu})

            # at most one maximal similar group makes the subposet RP
            v_sim = thm_similar_hypothesis(tau, occ)
            sub_rp = is_rank_property(sub)
            if v_sim.holds and k < n:
                checks["similar_rank_property"] += 1
                if not sub_rp:
                    bad("similar_rank_property",
                        verdict_record(v_sim, sigma, tau, occ, mu))

            # RP is preserved by removing an RP subset
            host_rp = is_rank_property(dag)
            if host_rp and dropped:
                balance = sum(1 if dag.ranks[i] % 2 == 0 else -1
                              for i in dropped)
                if balance == 0:
                    checks["rp_difference"] += 1
                    if not sub_rp:
                        bad("rp_difference", rec)

            # bounded RP poset with mu = +-1 by rank below the top
            if host_rp and grade > 0:
                premise = all(
                    dag.mu[i] == (-1) ** (dag.ranks[i] % 2)
                    for i in range(dag.node_count) if i != dag.top)
                if premise:
                    checks["rp_sign"] += 1
                    if mu != (-1) ** grade:
                        bad("rp_sign", rec)

            # the packaged sign prediction must match wherever it fires
            prediction = cor_sign_prediction(tau, occ)
            if prediction is not None:
                checks["sign_prediction"] += 1
                if prediction != mu:
                    bad("sign_prediction", {**rec, "prediction": prediction})

    # pair level: mu for every pattern in scope via the bulk table,
    # with the dag route (and optional zeta oracle) confirming every
    # blocked pair's zero
    table = mu_to_top_table_fast(tau, min(ks)) if ks else {}
    for k in ks:
        for sigma, (count, union_mask) in sorted(
                pattern_summary(tau, k).items()):
            res["pair_instances"] += 1
            pair_mu = table[sigma]
            res["pair_mu_hist"][pair_mu] += 1
            checks["pair_mu_table"] += 1
            prec = {"sigma": format_permutation(sigma),
                    "tau": format_permutation(tau), "mu": pair_mu,
                    "occurrence_count": count}
            ext = {"value": pair_mu, "sigma": prec["sigma"],
                   "tau": prec["tau"], "occurrence_count": count}
            res["pair_min"] = _better(res["pair_min"], ext, False)
            res["pair_max"] = _better(res["pair_max"], ext, True)
            blocked = any(bm & union_mask == 0 for bm in block_masks)
            if blocked:
                checks["block_pair"] += 1
                v_pair = thm_interval_block_pair(sigma, tau)
                if not v_pair.holds:
                    bad("block_pair_bridge",
                        verdict_record(v_pair, sigma, tau, mu=pair_mu))
                if cache is not None:
                    dag_mu = cache.get_or_compute(
                        sigma, tau,
                        lambda: _pair_mu_and_size(sigma, tau, node_budget))
                    if dag_mu is None:
                        res["skipped"] += 1
                        res["pair_instances"] -= 1
                        continue
                else:
                    try:
                        dag = build_interval(sigma, tau, node_budget)
                    except NodeBudgetExceeded:
                        res["skipped"] += 1
                        res["pair_instances"] -= 1
                        continue
                    dag_mu = mobius(dag)
                    if oracle_check and dag.node_count <= ZETA_NODE_LIMIT:
                        checks["zeta_pair"] += 1
                        zeta_mu = mobius_via_zeta(dag)
                        if zeta_mu != dag_mu:
                            bad("zeta_pair", {**prec, "zeta_mu": zeta_mu})
                if dag_mu != 0:
                    bad("block_pair", {**prec, "dag_mu": dag_mu})
                if dag_mu != pair_mu:
                    bad("pair_mu_routes", {**prec, "dag_mu": dag_mu})
            elif pair_mu == 0:
                # mu = 0 without a block: the converse direction fails,
                # and the sweep must witness that
                checks["mu_zero_without_block"] += 1
                if res["guard_example"] is None:
                    res["guard_example"] = prec

    res["rank_hist"] = dict(res["rank_hist"])
    res["mu_hist"] = dict(res["mu_hist"])
    res["pair_mu_hist"] = dict(res["pair_mu_hist"])
    res["check_hist"] = dict(res["check_hist"])
    return res


def _pair_mu_and_size(sigma, tau, node_budget):
    try:
        dag = build_interval(sigma, tau, node_budget)
    except NodeBudgetExceeded:
        return None
    return mobius(dag), dag.node_count


def sweep_theorems(config: SweepConfig, mu_cache=None) -> VerificationReport:
    """Check every theorem-shaped implication over all occurrences.

    Scope: every tau in the configured class up to max_tau_length,
    every occurrence of every pattern length in scope, plus the
    pair-level block checks for every distinct pattern.  A persistent
    cache may serve the blocked-pair mu values; cached runs execute
    inline (the cache is not shared across workers).
    """
    started = time.perf_counter()
    report = VerificationReport("theorems", config.as_dict())
    rank_hist: Counter = Counter()
    mu_hist: Counter = Counter()
    pair_mu_hist: Counter = Counter()
    check_hist: Counter = Counter()
    occ_min = occ_max = pair_min = pair_max = guard = None

    for n in range(1, config.max_tau_length + 1):
        ks = config.lengths_for(n)
        if not ks:
            continue
        tasks = [(tau, ks, config.oracle_check, config.node_budget, mu_cache)
                 for tau in _iter_taus(config, n)]
        workers = 1 if mu_cache is not None else config.worker_count
        for res in _run_tasks(_theorem_tau_task, tasks, workers,
                              chunksize=max(1, len(tasks) // 64)):
            report.instances_checked += (res["occ_instances"]
                                         + res["pair_instances"])
            report.skipped += res["skipped"]
            report.violations.extend(res["violations"])
            _merge_hist(rank_hist, res["rank_hist"])
            _merge_hist(mu_hist, res["mu_hist"])
            _merge_hist(pair_mu_hist, res["pair_mu_hist"])
            _merge_hist(check_hist, res["check_hist"])
            if res["occ_min"] is not None:
                occ_min = _better(occ_min, res["occ_min"], False)
                occ_max = _better(occ_max, res["occ_max"], True)
            if res["pair_min"] is not None:
                pair_min = _better(pair_min, res["pair_min"], False)
                pair_max = _better(pair_max, res["pair_max"], True)
            if guard is None:
                guard = res["guard_example"]

    report.histograms = {
        "occurrence_rank": _hist_json(rank_hist),
        "occurrence_mu": _hist_json(mu_hist),
        "pair_mu": _hist_json(pair_mu_hist),
        "checks": _hist_json(check_hist),
    }
    report.extremes = {
        "occurrence_mu_min": occ_min,
        "occurrence_mu_max": occ_max,
        "pair_mu_min": pair_min,
        "pair_mu_max": pair_max,
        "mu_zero_without_block_example": guard,
    }
    report.elapsed_seconds = time.perf_counter() - started
    return report

# -- conjecture sweeps -------------------------------------------------


def sweep_conjecture_1(max_n: int = 9) -> VerificationReport:
    """mu(1, tau) stays in {-1, 0, 1} for every 132-avoiding tau.

    Exhaustive over lengths 1..max_n; per-length value histograms and
    Catalan count checks are part of the report.
    """
    if max_n < 1:
        raise ValueError("need max_n >= 1")
    started = time.perf_counter()
    report = VerificationReport(
        "conjecture1", {"max_n": max_n, "pattern_class": "avoid_132"})
    counts = {}
    vmin = vmax = None
    one = (1,)
    for n in range(1, max_n + 1):
        hist: Counter = Counter()
        avoiders = generate_avoiders_132(n)
        counts[str(n)] = len(avoiders)
        if len(avoiders) != catalan(n):
            report.violations.append(
                {"check": "catalan_count", "n": n,
                 "generated": len(avoiders), "expected": catalan(n)})
        for tau in avoiders:
            value = mu_to_top_table_fast(tau, 1)[one]
            report.instances_checked += 1
            hist[value] += 1
            rec = {"value": value, "tau": format_permutation(tau)}
            vmin = _better(vmin, rec, False)
            vmax = _better(vmax, rec, True)
            if value not in (-1, 0, 1):
                report.violations.append(
                    {"check": "mu_band", "tau": format_permutation(tau),
                     "mu": value})
        report.histograms[f"mu_n{n}"] = _hist_json(hist)
    report.histograms["avoider_counts"] = counts
    report.extremes = {"mu_min": vmin, "mu_max": vmax}
    report.elapsed_seconds = time.perf_counter() - started
    return report


#: symmetry that carries the 132-avoiders onto each avoidance class
_CLASS_MAPS = (
    ("132", lambda p: p),
    ("231", reversed_perm),
    ("312", complemented_perm),
    ("213", lambda p: reversed_perm(complemented_perm(p))),
)


def sweep_conjecture_2(max_n: int = 8,
                       sigma_lengths: Iterable[int] | None = None
                       ) -> VerificationReport:
    """|mu(sigma, tau)| never exceeds the occurrence count of sigma.

    Runs over every 132-avoiding tau up to max_n and every pattern of
    the requested lengths (default 2..|tau|), then repeats the sweep on
    the three mirror-image avoidance classes (231, 312, 213) and checks
    that all four produce identical aggregate verdicts.
    """
    if max_n < 1:
        raise ValueError("need max_n >= 1")
    req = tuple(sorted(set(sigma_lengths))) if sigma_lengths else None
    if req and (req[0] < 1 or req[-1] > max_n):
        raise ValueError("sigma_lengths out of range")
    started = time.perf_counter()
    report = VerificationReport(
        "conjecture2",
        {"max_n": max_n,
         "sigma_lengths": list(req) if req else None,
         "classes": [name for name, _ in _CLASS_MAPS]})
    digests = {}
    ratio_best = None
    for class_name, transform in _CLASS_MAPS:
        checked = 0
        hist: Counter = Counter()
        class_violations = 0
        for n in range(1, max_n + 1):
            ks = req if req else tuple(range(2, n + 1))
            ks = tuple(k for k in ks if k <= n)
            if not ks:
                continue
            for base in generate_avoiders_132(n):
                tau = transform(base)
                table = mu_to_top_table_fast(tau, min(ks))
                for k in ks:
                    for sigma, (count, _) in sorted(
                            pattern_summary(tau, k).items()):
                        value = table[sigma]
                        checked += 1
                        hist[value] += 1
                        if abs(value) > count:
                            class_violations += 1
                            report.violations.append(
                                {"check": "mu_bound", "class": class_name,
                                 "sigma": format_permutation(sigma),
                                 "tau": format_permutation(tau),
                                 "mu": value, "occurrence_count": count})
                        elif class_name == "132":
                            # tightness, tracked on the base class only
                            rec = {"abs_mu": abs(value), "count": count,
                                   "sigma": format_permutation(sigma),
                                   "tau": format_permutation(tau)}
                            if ratio_best is None or (
                                    rec["abs_mu"] * ratio_best["count"]
                                    > ratio_best["abs_mu"] * rec["count"]):
                                ratio_best = rec
        digests[class_name] = {
            "instances": checked,
            "violations": class_violations,
            "mu_histogram": _hist_json(hist),
        }
        report.instances_checked += checked
    base_digest = digests["132"]
    for class_name, digest in digests.items():
        if digest != base_digest:
            report.violations.append(
                {"check": "class_agreement", "class": class_name,
                 "digest": digest, "expected": base_digest})
    report.histograms["mu"] = dict(base_digest["mu_histogram"])
    report.extremes = {"tightest": ratio_best,
                       "per_class": digests}
    report.elapsed_seconds = time.perf_counter() - started
    return report


# -- randomized oracle agreement --------------------------------------


def sweep_oracle_sample(pair_count: int = 1000, max_len: int = 9,
                        seed: int = 20260814,
                        node_budget: int = DEFAULT_NODE_BUDGET
                        ) -> VerificationReport:
    """Recursion mu versus zeta-inversion mu on random plain intervals.

    Pairs are drawn with sigma an actual pattern of tau, so intervals
    are never empty; the samples are reproducible from the seed.
    """
    started = time.perf_counter()
    report = VerificationReport(
        "oracle-sample",
        {"pair_count": pair_count, "max_len": max_len, "seed": seed,
         "node_budget": node_budget})
    rng = random.Random(seed)
    hist: Counter = Counter()
    nodes_max = None
    for _ in range(pair_count):
        n = rng.randint(2, max_len)
        tau = tuple(rng.sample(range(1, n + 1), n))
        k = rng.randint(1, n)
        idx = sorted(rng.sample(range(n), k))
        sigma = standard_form(tau[i] for i in idx)
        try:
            dag = build_interval(sigma, tau, node_budget)
        except NodeBudgetExceeded:
            report.skipped += 1
            continue
        if dag.node_count > ZETA_NODE_LIMIT:
            report.skipped += 1
            continue
        mu = mobius(dag)
        zeta_mu = mobius_via_zeta(dag)
        report.instances_checked += 1
        hist[mu] += 1
        rec = {"value": dag.node_count,
               "sigma": format_permutation(sigma),
               "tau": format_permutation(tau)}
        nodes_max = _better(nodes_max, rec, True)
        if mu != zeta_mu:
            report.violations.append(
                {"check": "zeta_pair", "sigma": format_permutation(sigma),
                 "tau": format_permutation(tau), "mu": mu,
                 "zeta_mu": zeta_mu})
    report.histograms["mu"] = _hist_json(hist)
    report.extremes = {"largest_interval": nodes_max}
    report.elapsed_seconds = time.perf_counter() - started
    return report


# -- counterexample reproduction and minimality -----------------------


def reproduce_counterexamples(search: bool = False, worker_count: int = 1,
                              node_budget: int = DEFAULT_NODE_BUDGET
                              ) -> VerificationReport:
    """Assert the two documented interval-free pairs behave as recorded.

    The first pair has a unique occurrence, no interval block, two
    similar groups and mu = 0; the second has a unique occurrence, one
    eight-letter region and mu = 2 (recursion and zeta oracle).  With
    search=True the exhaustive length-10 minimality search runs too and
    must find exactly the first pair's symmetry class.
    """
    started = time.perf_counter()
    report = VerificationReport(
        "counterexamples", {"search": search, "worker_count": worker_count,
                            "node_budget": node_budget})
    facts = {}

    def expect(name: str, ok: bool, detail: Any) -> None:
        report.instances_checked += 1
        facts[name] = detail
        if not ok:
            report.violations.append(
                {"check": name, "detail": detail})

    sigma_a, tau_a = COUNTEREXAMPLE_MU_ZERO
    occs_a = occurrences(sigma_a, tau_a)
    expect("a_unique_occurrence", occs_a == [(6, 9, 10)],
           [list(o) for o in occs_a])
    expect("a_interval_free",
           not thm_interval_block_pair(sigma_a, tau_a).holds,
           thm_interval_block_pair(sigma_a, tau_a).witness)
    dag_a = build_interval(sigma_a, tau_a, node_budget)
    mu_a = mobius(dag_a)
    expect("a_mu_zero", mu_a == 0, mu_a)
    expect("a_mu_zero_zeta", mobius_via_zeta(dag_a) == 0,
           dag_a.node_count)
    occ_dag_a = build_occurrence_poset(tau_a, occs_a[0], node_budget)
    expect("a_occurrence_mu_zero", mobius(occ_dag_a) == 0,
           occ_dag_a.node_count)
    expect("a_single_occurrence_collapse",
           occ_dag_a.node_count == dag_a.node_count,
           [occ_dag_a.node_count, dag_a.node_count])
    groups_a = similar_groups(tau_a, occs_a[0])
    expect("a_two_similar_groups", len(groups_a) == 2,
           [list(g) for g in groups_a])
    expect("a_no_sign_prediction",
           cor_sign_prediction(tau_a, occs_a[0]) is None,
           cor_sign_prediction(tau_a, occs_a[0]))

    sigma_b, tau_b = COUNTEREXAMPLE_MU_TWO
    occs_b = occurrences(sigma_b, tau_b)
    expect("b_unique_occurrence", occs_b == [(1, 2, 3, 4)],
           [list(o) for o in occs_b])
    expect("b_interval_free",
           not thm_interval_block_pair(sigma_b, tau_b).holds,
           thm_interval_block_pair(sigma_b, tau_b).witness)
    regs_b = regions(tau_b, occs_b[0])
    expect("b_single_region_of_eight",
           len(regs_b) == 1 and len(regs_b[0].positions) == 8,
           [list(r.positions) for r in regs_b])
    dag_b = build_interval(sigma_b, tau_b, node_budget)
    mu_b = mobius(dag_b)
    expect("b_mu_two", mu_b == 2, mu_b)
    expect("b_mu_two_zeta", mobius_via_zeta(dag_b) == 2, dag_b.node_count)
    occ_dag_b = build_occurrence_poset(tau_b, occs_b[0], node_budget)
    expect("b_occurrence_mu_two", mobius(occ_dag_b) == 2,
           occ_dag_b.node_count)
    expect("b_single_occurrence_collapse",
           occ_dag_b.node_count == dag_b.node_count,
           [occ_dag_b.node_count, dag_b.node_count])

    if search:
        sub = minimality_search(len(tau_a), len(sigma_a),
                                worker_count=worker_count)
        report.violations.extend(sub.violations)
        report.instances_checked += sub.instances_checked
        report.skipped += sub.skipped
        expected = pair_canonical(sigma_a, tau_a)
        expected_text = [format_permutation(expected[0]),
                         format_permutation(expected[1])]
        found = sub.extremes["classes"]
        expect("c_unique_class", found == [expected_text], found)
        facts["search"] = sub.extremes

    report.extremes = facts
    report.elapsed_seconds = time.perf_counter() - started
    return report


def _minimality_chunk(args) -> dict[str, Any]:
    """Scan the tau block with the given prefix for single-occurrence
    interval-free pairs whose mu is outside {-1, 1}.

    Only orbit-least tau are examined.  For a pattern occurring exactly
    once the occurrence-position union from pattern_summary is the
    occurrence itself, and the occurrence poset coincides with the
    plain interval, so mu comes from the cheaper marked build; hits are
    re-verified through the plain route by the caller.
    """
    n, k, prefix = args
    rest = sorted(set(range(1, n + 1)) - set(prefix))
    found = []
    classes = 0
    singles = 0
    pairs = 0
    hist: Counter = Counter()
    for tail in itertools.permutations(rest):
        tau = prefix + tail
        if not is_orbit_min(tau):
            continue
        classes += 1
        block_masks = [b.position_mask() for b in proper_blocks(tau)]
        for sigma, (count, union) in sorted(pattern_summary(tau, k).items()):
            if count != 1:
                continue
            singles += 1
            if any(bm & union == 0 for bm in block_masks):
                continue
            pairs += 1
            occ = tuple(p + 1 for p in range(n) if union >> p & 1)
            value = mobius(build_occurrence_poset(tau, occ))
            hist[value] += 1
            if value not in (-1, 1):
                found.append((sigma, tau, value, count))
    return {"classes": classes, "singles": singles, "pairs": pairs,
            "hist": dict(hist), "found": found}


def minimality_search(tau_len: int = 10, sigma_len: int = 3,
                      worker_count: int = 1,
                      node_budget: int = DEFAULT_NODE_BUDGET
                      ) -> VerificationReport:
    """Exhaust all single-occurrence interval-free pairs at the given
    sizes, orbit-reduced, keeping those with mu outside {-1, 1}.

    Subjects are pairs where sigma occurs exactly once in tau and no
    proper interval block of tau avoids that occurrence (with one
    occurrence the pair-level and occurrence-level block notions
    coincide, as do the two posets).  The tau stream is one
    lexicographically least representative per symmetry orbit.  Every
    hit is re-verified through the plain dag recursion and the zeta
    oracle, so the marked fast path cannot fabricate or hide a find.
    """
    if sigma_len > tau_len:
        raise ValueError("sigma_len exceeds tau_len")
    if sigma_len < 1 or tau_len < 1:
        raise ValueError("lengths must be positive")
    started = time.perf_counter()
    report = VerificationReport(
        "minimality-search",
        {"tau_len": tau_len, "sigma_len": sigma_len,
         "worker_count": worker_count, "node_budget": node_budget})
    if tau_len >= 8:
        values = range(1, tau_len + 1)
        tasks = [(tau_len, sigma_len, (a, b))
                 for a in values for b in values if b != a]
    else:
        tasks = [(tau_len, sigma_len, ())]
    classes = 0
    singles = 0
    hist: Counter = Counter()
    found = []
    for res in _run_tasks(_minimality_chunk, tasks, worker_count):
        classes += res["classes"]
        singles += res["singles"]
        report.instances_checked += res["pairs"]
        _merge_hist(hist, res["hist"])
        found.extend(res["found"])
    found.sort(key=lambda item: (item[1], item[0]))

    hits = []
    class_reps = []
    for sigma, tau, value, count in found:
        dag = build_interval(sigma, tau, node_budget)
        dag_mu = mobius(dag)
        zeta_mu = (mobius_via_zeta(dag)
                   if dag.node_count <= ZETA_NODE_LIMIT else dag_mu)
        if not (dag_mu == zeta_mu == value):
            report.violations.append(
                {"check": "hit_recheck", "sigma": format_permutation(sigma),
                 "tau": format_permutation(tau), "table_mu": value,
                 "dag_mu": dag_mu, "zeta_mu": zeta_mu})
        rep = pair_canonical(sigma, tau)
        rep_text = [format_permutation(rep[0]), format_permutation(rep[1])]
        if rep_text not in class_reps:
            class_reps.append(rep_text)
        hits.append({"sigma": format_permutation(sigma),
                     "tau": format_permutation(tau), "mu": value,
                     "occurrence_count": count})
    class_reps.sort()

    report.histograms["pair_mu"] = _hist_json(hist)
    report.extremes = {
        "orbit_representatives_scanned": classes,
        "single_occurrence_pairs": singles,
        "hits": hits,
        "classes": class_reps,
    }
    report.elapsed_seconds = time.perf_counter() - started
    return report


# -- symmetry audit ----------------------------------------------------


def audit_symmetry(max_n: int = 6) -> VerificationReport:
    """mu is constant on joint symmetry orbits: mu(g.sigma, g.tau) must
    equal mu(sigma, tau) for all eight g, checked per orbit of tau."""
    if max_n < 1:
        raise ValueError("need max_n >= 1")
    started = time.perf_counter()
    report = VerificationReport("symmetry-audit", {"max_n": max_n})
    orbits = 0
    orbit_hist: Counter = Counter()
    for n in range(1, max_n + 1):
        stream = itertools.permutations(range(1, n + 1))
        for cls in symmetry_reduce(stream):
            orbits += 1
            orbit_hist[n] += 1
            rep = cls.representative
            base = mu_to_top_table_fast(rep, 1)
            tables = {}
            for element, image in symmetry_images(rep):
                if image not in tables:
                    tables[image] = mu_to_top_table_fast(image, 1)
                img_table = tables[image]
                for sigma, value in base.items():
                    report.instances_checked += 1
                    img_sigma = apply_symmetry(sigma, element)
                    got = img_table[img_sigma]
                    if got != value:
                        report.violations.append(
                            {"check": "symmetry_transport",
                             "tau": format_permutation(rep),
                             "element": list(element),
                             "sigma": format_permutation(sigma),
                             "expected": value, "got": got})
    report.histograms["orbits_per_length"] = _hist_json(orbit_hist)
    report.extremes = {"orbits": orbits}
    report.elapsed_seconds = time.perf_counter() - started
    return report
