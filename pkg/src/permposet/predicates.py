"""Structure predicates mirroring the block/separation/similarity
theorems, with machine-checkable witnesses.

Each predicate returns a :class:`PredicateVerdict` whose witness is a
small JSON-able dict: the lexicographically first disjoint block, the
value-smallest violating pair, or the similar groups together with the
region decomposition.  :func:`verdict_record` turns a verdict into the
line-oriented record emitted by the CLI.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .blocks import (
    IntervalBlock,
    is_separated,
    pair_has_interval_block,
    pair_has_interval_block_occ,
    regions,
    similar_groups,
)
from .perms import (
    check_occurrence,
    check_permutation,
    format_permutation,
    occurrence_letters,
    standard_form,
)


@dataclass(frozen=True)
class PredicateVerdict:
    predicate: str
    holds: bool
    witness: dict[str, Any] | None = None


def _block_witness(tau, block: IntervalBlock) -> dict[str, Any]:
    letters = tuple(tau[p - 1] for p in block.positions())
    return {
        "kind": "interval_block",
        "start": block.start,
        "end": block.end,
        "low": block.low,
        "high": block.high,
        "letters": format_permutation(letters) if len(letters) <= 9
        else ",".join(str(v) for v in letters),
    }


def thm_interval_block_occ(tau, occ) -> PredicateVerdict:
    """Does some interval block of tau avoid this occurrence entirely?

    When it holds, mu over the occurrence poset [<sigma>, tau] is zero.
    Witness: the first disjoint block by (start, end).
    """
    block = pair_has_interval_block_occ(tau, occ)
    return PredicateVerdict(
        "interval_block_occurrence", block is not None,
        _block_witness(tau, block) if block else None)


def thm_interval_block_pair(sigma, tau) -> PredicateVerdict:
    """Does some interval block of tau avoid every occurrence of sigma?

    When it holds, mu(sigma, tau) over the plain interval is zero.
    """
    block = pair_has_interval_block(sigma, tau)
    return PredicateVerdict(
        "interval_block_pair", block is not None,
        _block_witness(tau, block) if block else None)


def thm_separated(tau, occ) -> PredicateVerdict:
    """Is every same-region complement pair split by an occurrence
    letter in value?  Holding is equivalent to [<sigma>, tau] being the
    boolean lattice of rank n - k, with mu = (-1)**(n-k)."""
    ok, pair = is_separated(tau, occ)
    witness = None
    if not ok:
        witness = {"kind": "similar_pair", "pair": list(pair)}
    return PredicateVerdict("separated", ok, witness)


def thm_similar_hypothesis(tau, occ) -> PredicateVerdict:
    """At most one maximal group of similar complement letters.

    This is the hypothesis under which the interval-free part of the
    occurrence poset keeps the rank property.  The witness always
    reports the groups and the region decomposition.
    """
    groups = similar_groups(tau, occ)
    witness = {
        "kind": "similar_groups",
        "groups": [list(g) for g in groups],
        "regions": [list(r.values) for r in regions(tau, occ)],
    }
    return PredicateVerdict("similar_hypothesis", len(groups) <= 1, witness)


def cor_sign_prediction(tau, occ) -> int | None:
    """Predicted mu when the similar-group hypothesis holds and the
    occurrence pair is interval free: (-1)**(n-k).  None otherwise."""
    t = check_permutation(tau)
    pos = check_occurrence(t, occ)
    if len(similar_groups(t, pos)) > 1:
        return None
    if pair_has_interval_block_occ(t, pos) is not None:
        return None
    return -1 if (len(t) - len(pos)) % 2 else 1


def verdict_record(verdict: PredicateVerdict, sigma, tau, occ=None,
                   mu: int | None = None,
                   prediction: int | None = None) -> dict[str, Any]:
    """Flat record for line-oriented JSON output."""
    record: dict[str, Any] = {
        "predicate": verdict.predicate,
        "sigma": format_permutation(sigma),
        "tau": format_permutation(tau),
        "holds": verdict.holds,
        "witness": verdict.witness,
    }
    if occ is not None:
        record["occurrence"] = list(occ)
        record["occurrence_letters"] = list(occurrence_letters(tau, occ))
    if mu is not None:
        record["mu"] = mu
    if prediction is not None:
        record["prediction"] = prediction
    return record


def record_json(record: dict[str, Any]) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def occurrence_sigma(tau, occ):
    """Pattern realized by an occurrence (letters standardized)."""
    return standard_form(occurrence_letters(tau, occ))
