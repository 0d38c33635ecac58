"""Interval blocks, regions and the letter-level structure of a pair.

An interval block of tau is a factor (contiguous run of positions) of
length at least 2 whose set of values is a contiguous range.  The whole
word counts as a block once it has length at least 2; single letters
never do.

Relative to an occurrence of sigma in tau, the complement letters fall
into regions: maximal runs of positions containing no occurrence
letter.  Two complement letters are similar when they share a region
and no occurrence letter lies strictly between them in value.  These
notions drive the structural predicates in :mod:`permposet.predicates`.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import NamedTuple

from .perms import (
    Perm,
    Positions,
    check_occurrence,
    check_permutation,
    occurrence_letters,
    occurrences,
)


class IntervalBlock(NamedTuple):
    """A factor tau(start..end) whose values form the range low..high.

    Positions and values are 1-based and inclusive on both ends.
    """

    start: int
    end: int
    low: int
    high: int

    def positions(self) -> range:
        return range(self.start, self.end + 1)

    def position_mask(self) -> int:
        return ((1 << self.end) - 1) ^ ((1 << (self.start - 1)) - 1)


class Region(NamedTuple):
    """A maximal run of complement positions, with the letters on it."""

    positions: Positions
    values: tuple[int, ...]


def interval_blocks(tau) -> list[IntervalBlock]:
    """All interval blocks of tau, sorted by (start, end).

    The simple permutation 2413 has no block besides the whole word:

    >>> interval_blocks((2, 4, 1, 3))
    [IntervalBlock(start=1, end=4, low=1, high=4)]
    >>> [b[:2] for b in interval_blocks((7, 1, 3, 4, 2, 8, 6, 5))]
    [(1, 8), (2, 5), (3, 4), (3, 5), (7, 8)]
    """
    t = check_permutation(tau)
    n = len(t)
    found = []
    for i in range(n):
        lo = hi = t[i]
        for j in range(i + 1, n):
            v = t[j]
            if v < lo:
                lo = v
            elif v > hi:
                hi = v
            if hi - lo == j - i:
                found.append(IntervalBlock(i + 1, j + 1, lo, hi))
    found.sort(key=lambda b: (b.start, b.end))
    return found


def proper_blocks(tau) -> list[IntervalBlock]:
    """Interval blocks other than the whole word."""
    n = len(tau)
    return [b for b in interval_blocks(tau) if b.end - b.start + 1 < n]


def _occ_mask(occ) -> int:
    mask = 0
    for p in occ:
        mask |= 1 << (p - 1)
    return mask


def blocks_disjoint_from(tau, position_mask: int) -> list[IntervalBlock]:
    """Blocks of tau sharing no position with ``position_mask``.

    The whole-word block is never disjoint from a nonempty mask, so only
    proper blocks can appear.
    """
    return [b for b in interval_blocks(tau)
            if b.position_mask() & position_mask == 0]


def pair_has_interval_block_occ(tau, occ) -> IntervalBlock | None:
    """First (by start, end) block of tau disjoint from the given
    occurrence, or None.  This is the occurrence-level notion: the pair
    (<sigma>, tau) has an interval block iff some block avoids every
    occurrence position."""
    t = check_permutation(tau)
    pos = check_occurrence(t, occ)
    hits = blocks_disjoint_from(t, _occ_mask(pos))
    return hits[0] if hits else None


def pair_has_interval_block(sigma, tau) -> IntervalBlock | None:
    """First block of tau disjoint from every occurrence of sigma, or None.

    A block is disjoint from every occurrence exactly when it avoids the
    union of all occurrence positions, so one union mask settles it.
    """
    t = check_permutation(tau)
    union = 0
    for occ in occurrences(sigma, t):
        union |= _occ_mask(occ)
    if union == 0:
        raise ValueError("sigma does not occur in tau")
    hits = blocks_disjoint_from(t, union)
    return hits[0] if hits else None


def regions(tau, occ) -> list[Region]:
    """Maximal runs of complement positions, in position order.

    >>> [r.values for r in regions((3, 5, 7, 1, 2, 8, 4, 6, 9), (4, 6, 7))]
    [(3, 5, 7), (2,), (6, 9)]
    """
    t = check_permutation(tau)
    pos = set(check_occurrence(t, occ))
    out: list[Region] = []
    run: list[int] = []
    for p in range(1, len(t) + 1):
        if p in pos:
            if run:
                out.append(Region(tuple(run), tuple(t[q - 1] for q in run)))
                run = []
        else:
            run.append(p)
    if run:
        out.append(Region(tuple(run), tuple(t[q - 1] for q in run)))
    return out


def similar_groups(tau, occ) -> list[tuple[int, ...]]:
    """Maximal groups of pairwise similar complement letters, by value.

    Each group is a tuple of at least two values from a single region
    such that no occurrence letter separates consecutive group members
    in value.  Similarity is transitive inside a region, so the groups
    are value runs split at occurrence letters.
    """
    t = check_permutation(tau)
    occ_vals = sorted(occurrence_letters(t, check_occurrence(t, occ)))

    def split(values: tuple[int, ...]) -> list[tuple[int, ...]]:
        ordered = sorted(values)
        groups = []
        run = [ordered[0]] if ordered else []
        for v in ordered[1:]:
            # an occurrence letter strictly between run[-1] and v?
            if bisect_left(occ_vals, v) > bisect_right(occ_vals, run[-1]):
                if len(run) >= 2:
                    groups.append(tuple(run))
                run = [v]
            else:
                run.append(v)
        if len(run) >= 2:
            groups.append(tuple(run))
        return groups

    out = []
    for region in regions(t, occ):
        out.extend(split(region.values))
    out.sort()
    return out


def is_separated(tau, occ) -> tuple[bool, tuple[int, int] | None]:
    """Whether every same-region pair of complement letters has an
    occurrence letter strictly between them in value.

    Returns (verdict, witness); the witness is the value-smallest
    violating pair, or None when separated.  Implemented straight from
    the quantifiers (all pairs, all regions); the run-based
    :func:`similar_groups` view is kept independent so the two can be
    checked against each other.
    """
    t = check_permutation(tau)
    occ_vals = sorted(occurrence_letters(t, check_occurrence(t, occ)))
    worst: tuple[int, int] | None = None
    for region in regions(t, occ):
        vals = region.values
        for i in range(len(vals)):
            for j in range(len(vals)):
                x, y = vals[i], vals[j]
                if x >= y:
                    continue
                if bisect_left(occ_vals, y) == bisect_right(occ_vals, x):
                    if worst is None or (x, y) < worst:
                        worst = (x, y)
    return worst is None, worst
