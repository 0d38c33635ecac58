"""Acceptance gate.

Eight criteria, one test each, so a verbose pytest run prints exactly
one pass/fail line per criterion.  Tolerances are pinned inside the
tests: value checks are exact (integers throughout), time budgets are
asserted where a criterion carries one.  The length-7 theorem sweep is
shared between criteria 4 and 5 through a module fixture; everything
else runs inside its own criterion.

Expected wall time for the whole module is roughly 15 minutes on one
core, dominated by criterion 8 (three length-7 sweeps for the cache
comparison), criterion 4 (one length-7 sweep with the zeta oracle) and
criterion 3 (the exhaustive length-10 search).
"""

import itertools
import json
import math
import random
import time

import pytest

from permposet.blocks import interval_blocks, is_separated, regions, similar_groups
from permposet.cache import MuCache
from permposet.harness import (
    COUNTEREXAMPLE_MU_TWO,
    COUNTEREXAMPLE_MU_ZERO,
    SweepConfig,
    audit_symmetry,
    catalan,
    generate_avoiders_132,
    minimality_search,
    reproduce_counterexamples,
    sweep_conjecture_1,
    sweep_conjecture_2,
    sweep_oracle_sample,
    sweep_theorems,
)
from permposet.perms import (
    contains,
    count_occurrences,
    format_permutation,
    occurrence_letters,
    occurrences,
    parse_permutation,
)
from permposet.poset import (
    build_interval,
    build_occurrence_poset,
    is_boolean,
    mobius,
    mobius_via_zeta,
    to_dot,
)
from permposet.predicates import thm_interval_block_pair
from permposet.symmetry import pair_canonical

pytestmark = pytest.mark.acceptance

p = parse_permutation


@pytest.fixture(scope="module")
def theorem_suite():
    """Exhaustive theorem sweep over all tau up to length 7, with the
    zeta oracle on every interval it can reach (criteria 4 and 5)."""
    return sweep_theorems(SweepConfig(max_tau_length=7, oracle_check=True))


def test_criterion_1_known_value_regressions():
    """Known single values; all exact, and the whole batch under 1 s."""
    started = time.perf_counter()

    assert mobius(build_interval(p("1"), p("123"))) == 0
    assert mobius(build_interval(p("12"), p("3412"))) == 1
    assert mobius(build_occurrence_poset(p("3412"), (1, 2))) == 0

    assert count_occurrences(p("231"), p("23541")) == 5
    assert count_occurrences(p("123"), p("246153")) == 2

    tau = p("74136825")
    hits = occurrences(p("1243"), tau)
    assert {occurrence_letters(tau, o) for o in hits} == {
        (1, 3, 6, 5),
        (1, 3, 8, 5),
    }

    tau = p("71342865")
    letters = {
        "".join(str(tau[q - 1]) for q in b.positions()) for b in interval_blocks(tau)
    }
    assert letters == {"34", "342", "1342", "65", "71342865"}

    verdict = thm_interval_block_pair(p("2341"), p("162395784"))
    assert verdict.holds and verdict.witness["letters"] == "23"

    assert occurrence_letters(p("146253"), (3, 5, 6)) == (6, 5, 3)
    assert is_separated(p("146253"), (3, 5, 6)) == (True, None)
    assert occurrence_letters(p("1357264"), (4, 6, 7)) == (7, 6, 4)
    assert is_separated(p("1357264"), (4, 6, 7))[0] is False

    tau = p("357128469")
    occ = (4, 6, 7)  # the letters 1, 8, 4
    assert occurrence_letters(tau, occ) == (1, 8, 4)
    assert [r.values for r in regions(tau, occ)] == [(3, 5, 7), (2,), (6, 9)]
    groups = similar_groups(tau, occ)
    assert any(5 in g and 7 in g for g in groups)
    assert not any(3 in g and 5 in g for g in groups)

    assert is_boolean(build_interval(p("123"), p("1324")))
    assert is_boolean(build_interval(p("12"), p("3412")))

    assert time.perf_counter() - started < 1.0


def test_criterion_2_documented_counterexamples():
    """Both length-10 and length-12 interval-free pairs reproduce
    exactly, in under a minute."""
    sigma_a, tau_a = COUNTEREXAMPLE_MU_ZERO
    assert occurrence_letters(tau_a, (6, 9, 10)) == (10, 9, 8)
    sigma_b, tau_b = COUNTEREXAMPLE_MU_TWO
    assert occurrence_letters(tau_b, (1, 2, 3, 4)) == (2, 3, 8, 1)

    report = reproduce_counterexamples()
    assert report.violations == []
    assert report.elapsed_seconds < 60.0

    facts = report.extremes
    assert facts["a_unique_occurrence"] == [[6, 9, 10]]
    assert facts["a_mu_zero"] == 0
    assert facts["b_unique_occurrence"] == [[1, 2, 3, 4]]
    assert facts["b_mu_two"] == 2
    assert facts["b_single_region_of_eight"] == [[5, 6, 7, 8, 9, 10, 11, 12]]

    # recursion and zeta oracle directly, once more, outside the harness
    dag_b = build_interval(sigma_b, tau_b)
    assert mobius(dag_b) == 2
    assert mobius_via_zeta(dag_b) == 2


def test_criterion_3_minimality_search_length_ten():
    """Exhaustive search over single-occurrence interval-free pairs
    with |sigma| = 3 and |tau| = 10: exactly one symmetry class has mu
    outside {-1, 1}, it has mu = 0, and it is the documented pair."""
    report = minimality_search(10, 3)
    assert report.violations == []
    assert report.elapsed_seconds < 1800.0

    assert report.extremes["orbit_representatives_scanned"] == 456_454
    assert report.extremes["single_occurrence_pairs"] == 15_740
    assert report.instances_checked == 547
    assert report.histograms["pair_mu"] == {"-1": 546, "0": 1}

    hits = report.extremes["hits"]
    assert len(hits) == 1
    assert hits[0]["mu"] == 0

    expected = pair_canonical(*COUNTEREXAMPLE_MU_ZERO)
    assert report.extremes["classes"] == [
        [format_permutation(expected[0]), format_permutation(expected[1])]
    ]


def test_criterion_4_theorem_sweep_exhaustive_to_seven(theorem_suite):
    """Zero violations over every tau up to length 7, every occurrence
    and every pattern: block implies mu = 0 (both forms), separated iff
    boolean with the predicted sign, the similar-group rank property,
    the packaged sign prediction, and mu = 0 on every dropped node."""
    report = theorem_suite
    assert report.violations == []
    assert report.skipped == 0
    assert report.instances_checked == 890_092
    assert report.elapsed_seconds < 1800.0

    checks = report.histograms["checks"]
    for name in (
        "block_occurrence",
        "block_pair",
        "separated_bridge",
        "separated_boolean",
        "separated_sign",
        "dropped_mu_zero",
        "subposet_mu_match",
        "similar_rank_property",
        "rp_difference",
        "rp_sign",
        "sign_prediction",
    ):
        assert checks.get(name, 0) > 0, name

    # the converse of the block theorems genuinely fails somewhere, and
    # the sweep recorded a witness for that
    assert checks["mu_zero_without_block"] > 0
    assert report.extremes["mu_zero_without_block_example"] is not None


def test_criterion_5_oracle_equivalence(theorem_suite):
    """The zeta-matrix route agrees with the recursion on every
    interval of criterion 4 and on 1,000 random pairs up to length 9."""
    checks = theorem_suite.histograms["checks"]
    occurrence_slots = sum(
        math.factorial(n) * (2**n - 1) for n in range(1, 8)
    )
    assert checks["zeta_occurrence"] == occurrence_slots == 689_569
    assert checks["zeta_pair"] == checks["block_pair"] > 0
    assert not [v for v in theorem_suite.violations if v["check"].startswith("zeta")]

    sample = sweep_oracle_sample(pair_count=1000, max_len=9)
    assert sample.violations == []
    assert sample.instances_checked == 1000
    assert sample.skipped == 0


def test_criterion_6_conjecture_sweeps():
    """Both conjectures hold on their stated ranges, and the avoider
    generator counts match the Catalan numbers (the generator itself is
    checked against a brute filter up to length 7)."""
    assert catalan(0) == 1
    catalan_tail = [1, 2, 5, 14, 42, 132, 429, 1430]
    for n, want in enumerate(catalan_tail, start=1):
        assert catalan(n) == want

    for n in range(1, 8):
        assert generate_avoiders_132(n) == [
            perm
            for perm in itertools.permutations(range(1, n + 1))
            if not contains((1, 3, 2), perm)
        ]

    c1 = sweep_conjecture_1(9)
    assert c1.violations == []
    assert c1.histograms["avoider_counts"] == {
        str(n): catalan(n) for n in range(1, 10)
    }
    assert c1.instances_checked == sum(catalan(n) for n in range(1, 10))

    c2 = sweep_conjecture_2(8)
    assert c2.violations == []
    per_class = c2.extremes["per_class"]
    assert len({json.dumps(d, sort_keys=True) for d in per_class.values()}) == 1
    assert c2.instances_checked == 4 * per_class["132"]["instances"]
    assert per_class["132"]["instances"] > 0


def test_criterion_7_symmetry_audit():
    """mu is constant on joint symmetry orbits for every pair up to
    length 6, exactly."""
    report = audit_symmetry(6)
    assert report.violations == []
    assert report.extremes["orbits"] == 149
    assert report.instances_checked == 20_536


def test_criterion_8_infrastructure_round_trips(tmp_path):
    """Parse/serialize round trips to length 50, byte-identical DOT and
    report output on repeated runs, and cache on/off equality over the
    criterion-4 scope."""
    rng = random.Random(20260814)
    for _ in range(2000):
        n = rng.randint(1, 50)
        word = list(range(1, n + 1))
        rng.shuffle(word)
        perm = tuple(word)
        assert parse_permutation(format_permutation(perm)) == perm

    dag_a = build_interval(p("132"), p("426153"))
    dag_b = build_interval(p("132"), p("426153"))
    assert to_dot(dag_a) == to_dot(dag_b)
    marked_a = build_occurrence_poset(p("23541"), (1, 2, 5))
    marked_b = build_occurrence_poset(p("23541"), (1, 2, 5))
    assert to_dot(marked_a) == to_dot(marked_b)

    first = audit_symmetry(4).to_json(include_elapsed=False)
    second = audit_symmetry(4).to_json(include_elapsed=False)
    assert first == second

    # cache off, cache cold, cache warm: one byte-identical report
    config = SweepConfig(max_tau_length=7)
    baseline = sweep_theorems(config)
    assert baseline.violations == []
    cache = MuCache(tmp_path / "mu.jsonl")
    cold = sweep_theorems(config, mu_cache=cache)
    entries_after_cold = len(cache)
    assert entries_after_cold > 0
    warm = sweep_theorems(config, mu_cache=cache)
    assert len(cache) == entries_after_cold

    a = baseline.to_json(include_elapsed=False)
    b = cold.to_json(include_elapsed=False)
    c = warm.to_json(include_elapsed=False)
    assert a == b
    assert b == c

    # the persisted file itself reloads to the same answers; the sweep
    # caches exactly the blocked pairs, so probe one of those
    reloaded = MuCache(tmp_path / "mu.jsonl")
    assert len(reloaded) == entries_after_cold
    assert reloaded.lookup(p("21"), p("2134")) == 0
