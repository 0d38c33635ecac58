"""Command-line interface.

Commands: mu, occurrences, predicates, interval (DOT dump), verify.
Every flag can also be set through an environment variable with the
PERMPOSET_ prefix (PERMPOSET_MAX_N=7 mirrors --max-n 7); explicit flags
win.  Exit codes: 0 pass, 1 violation, 2 usage or parse error, 3 node
budget exhausted (or, for verify --strict, budget skips).
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from .cache import MuCache, default_cache_path
from .harness import (
    SweepConfig,
    VerificationReport,
    audit_symmetry,
    minimality_search,
    reproduce_counterexamples,
    sweep_conjecture_1,
    sweep_conjecture_2,
    sweep_oracle_sample,
    sweep_theorems,
)
from .perms import (
    check_occurrence,
    format_permutation,
    occurrence_letters,
    occurrences,
    parse_permutation,
    standard_form,
)
from .poset import (
    DEFAULT_NODE_BUDGET,
    NodeBudgetExceeded,
    build_interval,
    build_occurrence_poset,
    mobius,
    to_dot,
)
from .predicates import (
    cor_sign_prediction,
    record_json,
    thm_interval_block_occ,
    thm_interval_block_pair,
    thm_separated,
    thm_similar_hypothesis,
    verdict_record,
)

ENV_PREFIX = "PERMPOSET_"


def _env(flag: str) -> str | None:
    return os.environ.get(ENV_PREFIX + flag.upper().replace("-", "_"))


def _env_flag(flag: str) -> bool:
    raw = _env(flag)
    return raw is not None and raw.lower() not in ("", "0", "false", "no")


def _env_int(flag: str, fallback: int) -> int:
    raw = _env(flag)
    return int(raw) if raw is not None else fallback


def _parse_positions(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"bad position list {text!r}") from None


def _parse_lengths(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(","))


def _checked_occurrence(sigma, tau, text: str) -> tuple[int, ...]:
    occ = check_occurrence(tau, _parse_positions(text))
    if standard_form(occurrence_letters(tau, occ)) != sigma:
        raise ValueError(
            f"positions {text} are not an occurrence of "
            f"{format_permutation(sigma)}")
    return occ


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permposet",
        description="Mobius function and structure of pattern "
                    "containment intervals of permutations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--node-budget", type=int,
                       default=_env_int("node-budget", DEFAULT_NODE_BUDGET),
                       help="cap on generated dag nodes")

    p_mu = sub.add_parser("mu", help="print mu(sigma, tau)")
    p_mu.add_argument("sigma")
    p_mu.add_argument("tau")
    p_mu.add_argument("--occurrence", default=_env("occurrence"),
                      help="comma-separated positions; compute mu over "
                           "the poset of this fixed occurrence instead")
    p_mu.add_argument("--emit-dot", default=_env("emit-dot"),
                      help="also write the interval as DOT to this path")
    p_mu.add_argument("--use-cache", action="store_true",
                      default=_env_flag("use-cache"))
    p_mu.add_argument("--cache-path", default=_env("cache-path"))
    common(p_mu)

    p_occ = sub.add_parser("occurrences",
                           help="list occurrences of sigma in tau")
    p_occ.add_argument("sigma")
    p_occ.add_argument("tau")
    p_occ.add_argument("--json", action="store_true",
                       default=_env_flag("json"))

    p_pred = sub.add_parser(
        "predicates",
        help="JSON verdicts for the structural predicates")
    p_pred.add_argument("sigma")
    p_pred.add_argument("tau")
    common(p_pred)

    p_int = sub.add_parser("interval", help="dump an interval as DOT")
    p_int.add_argument("sigma")
    p_int.add_argument("tau")
    p_int.add_argument("--occurrence", default=_env("occurrence"))
    p_int.add_argument("--emit-dot", default=_env("emit-dot"),
                       help="write here instead of stdout")
    common(p_int)

    p_ver = sub.add_parser("verify", help="run a verification sweep")
    p_ver.add_argument("suite",
                       choices=["theorems", "conjecture1", "conjecture2",
                                "counterexamples", "minimality", "symmetry",
                                "oracle"])
    p_ver.add_argument("--max-n", type=int,
                       default=_env_int("max-n", 0) or None)
    p_ver.add_argument("--sigma-len", default=_env("sigma-len"),
                       help="comma-separated pattern lengths to include")
    p_ver.add_argument("--avoid", choices=["132"], default=_env("avoid"),
                       help="restrict tau to this avoidance class")
    p_ver.add_argument("--workers", type=int,
                       default=_env_int("workers", 1))
    p_ver.add_argument("--use-cache", action="store_true",
                       default=_env_flag("use-cache"))
    p_ver.add_argument("--cache-path", default=_env("cache-path"))
    p_ver.add_argument("--strict", action="store_true",
                       default=_env_flag("strict"),
                       help="exit 3 when instances were skipped")
    p_ver.add_argument("--json", action="store_true",
                       default=_env_flag("json"),
                       help="print the full report as JSON")
    p_ver.add_argument("--report", default=_env("report"),
                       help="write the report (without the elapsed-time "
                            "field, so files are diffable) to this path")
    p_ver.add_argument("--search", action="store_true",
                       default=_env_flag("search"),
                       help="with counterexamples: also run the "
                            "exhaustive length-10 minimality search")
    common(p_ver)
    return parser


def _emit_dot(dag, path: str | None) -> None:
    text = to_dot(dag)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")


def cmd_mu(args) -> int:
    sigma = parse_permutation(args.sigma)
    tau = parse_permutation(args.tau)
    if args.occurrence:
        occ = _checked_occurrence(sigma, tau, args.occurrence)
        dag = build_occurrence_poset(tau, occ, args.node_budget)
    elif args.use_cache or args.cache_path:
        cache = MuCache(args.cache_path or default_cache_path())

        def compute():
            dag = build_interval(sigma, tau, args.node_budget)
            return mobius(dag), dag.node_count

        value = cache.get_or_compute(sigma, tau, compute)
        if value is None:
            raise NodeBudgetExceeded(args.node_budget)
        if args.emit_dot:
            _emit_dot(build_interval(sigma, tau, args.node_budget),
                      args.emit_dot)
        print(value)
        return 0
    else:
        dag = build_interval(sigma, tau, args.node_budget)
    print(mobius(dag))
    if args.emit_dot:
        _emit_dot(dag, args.emit_dot)
    return 0


def cmd_occurrences(args) -> int:
    sigma = parse_permutation(args.sigma)
    tau = parse_permutation(args.tau)
    for occ in occurrences(sigma, tau):
        letters = occurrence_letters(tau, occ)
        if args.json:
            print(record_json({"positions": list(occ),
                               "letters": list(letters)}))
        else:
            positions = ",".join(str(p) for p in occ)
            print(f"{positions}\t{format_permutation(letters)}")
    return 0


def cmd_predicates(args) -> int:
    sigma = parse_permutation(args.sigma)
    tau = parse_permutation(args.tau)
    occs = occurrences(sigma, tau)
    if not occs:
        print(f"error: {args.sigma} does not occur in {args.tau}",
              file=sys.stderr)
        return 2
    for occ in occs:
        dag = build_occurrence_poset(tau, occ, args.node_budget)
        mu = mobius(dag)
        for verdict in (thm_interval_block_occ(tau, occ),
                        thm_separated(tau, occ)):
            print(record_json(verdict_record(verdict, sigma, tau, occ, mu)))
        verdict = thm_similar_hypothesis(tau, occ)
        print(record_json(verdict_record(
            verdict, sigma, tau, occ, mu,
            prediction=cor_sign_prediction(tau, occ))))
    pair = thm_interval_block_pair(sigma, tau)
    pair_mu = mobius(build_interval(sigma, tau, args.node_budget))
    print(record_json(verdict_record(pair, sigma, tau, mu=pair_mu)))
    return 0


def cmd_interval(args) -> int:
    sigma = parse_permutation(args.sigma)
    tau = parse_permutation(args.tau)
    if args.occurrence:
        dag = build_occurrence_poset(
            tau, _checked_occurrence(sigma, tau, args.occurrence),
            args.node_budget)
    else:
        dag = build_interval(sigma, tau, args.node_budget)
    _emit_dot(dag, args.emit_dot)
    return 0


def _run_verify(args) -> VerificationReport:
    if args.suite == "theorems":
        config = SweepConfig(
            max_tau_length=args.max_n or 6,
            sigma_lengths=_parse_lengths(args.sigma_len)
            if args.sigma_len else None,
            pattern_class="avoid_132" if args.avoid == "132" else "all",
            worker_count=args.workers,
            node_budget=args.node_budget,
            oracle_check=True)
        cache = MuCache(args.cache_path or default_cache_path()) \
            if (args.use_cache or args.cache_path) else None
        return sweep_theorems(config, mu_cache=cache)
    if args.suite == "conjecture1":
        return sweep_conjecture_1(args.max_n or 9)
    if args.suite == "conjecture2":
        lengths = _parse_lengths(args.sigma_len) if args.sigma_len else None
        return sweep_conjecture_2(args.max_n or 8, lengths)
    if args.suite == "counterexamples":
        return reproduce_counterexamples(search=args.search,
                                         worker_count=args.workers,
                                         node_budget=args.node_budget)
    if args.suite == "minimality":
        sigma_len = int(args.sigma_len) if args.sigma_len else 3
        return minimality_search(args.max_n or 10, sigma_len,
                                 worker_count=args.workers,
                                 node_budget=args.node_budget)
    if args.suite == "symmetry":
        return audit_symmetry(args.max_n or 6)
    return sweep_oracle_sample(max_len=args.max_n or 9,
                               node_budget=args.node_budget)


def cmd_verify(args) -> int:
    report = _run_verify(args)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report.to_json(include_elapsed=False) + "\n")
    if args.json:
        print(report.to_json())
    else:
        for line in report.summary_lines():
            print(line)
    if not report.passed:
        return 1
    if args.strict and report.skipped:
        return 3
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    handlers = {
        "mu": cmd_mu,
        "occurrences": cmd_occurrences,
        "predicates": cmd_predicates,
        "interval": cmd_interval,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except NodeBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
