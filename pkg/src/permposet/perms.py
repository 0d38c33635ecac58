"""Permutation words, pattern containment and occurrences.

Conventions used across the package:

* A permutation of length n is a tuple of ints in one-line (word)
  notation containing each value 1..n exactly once, e.g. ``(2, 4, 1, 3)``
  for the word 2413.
* Positions are 1-based in every public signature and in all printed
  output, matching the combinatorics convention.  Bit masks over
  positions use bit ``p - 1`` for position ``p``.
* An occurrence of ``sigma`` in ``tau`` is the strictly increasing tuple
  of positions in ``tau`` whose letters are order isomorphic to
  ``sigma``.  The letters themselves are recovered with
  :func:`occurrence_letters`.

Text form: permutations of length at most 9 are written as plain digit
strings (``634521``); longer ones are comma separated
(``2,5,1,7,3,10,4,6,9,8``).  :func:`parse_permutation` accepts both and
decides by the presence of a comma.
"""

from __future__ import annotations

from bisect import bisect_left
from collections.abc import Iterable, Sequence

Perm = tuple[int, ...]
Positions = tuple[int, ...]


def standard_form(word: Iterable[int]) -> Perm:
    """Relabel distinct integers onto 1..k preserving relative order.

    >>> standard_form((3, 6, 1, 5))
    (2, 4, 1, 3)
    >>> standard_form((4, 7, 2, 5))
    (2, 4, 1, 3)
    """
    letters = tuple(word)
    if not letters:
        raise ValueError("cannot standardize an empty word")
    ranked = sorted(letters)
    if any(a == b for a, b in zip(ranked, ranked[1:])):
        raise ValueError(f"duplicate letters in {letters!r}")
    rank = {v: i + 1 for i, v in enumerate(ranked)}
    return tuple(rank[v] for v in letters)


def is_permutation(word: Sequence[int]) -> bool:
    """True if ``word`` uses exactly the values 1..len(word)."""
    n = len(word)
    return n > 0 and sorted(word) == list(range(1, n + 1))


def check_permutation(word: Sequence[int]) -> Perm:
    """Return ``word`` as a tuple, raising ValueError if not canonical."""
    p = tuple(word)
    if not is_permutation(p):
        raise ValueError(f"not a permutation of 1..{len(p)}: {p!r}")
    return p


def parse_permutation(text: str) -> Perm:
    """Parse the text form (digit string or comma separated)."""
    text = text.strip()
    if not text:
        raise ValueError("empty permutation text")
    if "," in text:
        try:
            word = tuple(int(part) for part in text.split(","))
        except ValueError:
            raise ValueError(f"bad permutation text {text!r}") from None
    else:
        if not text.isdigit():
            raise ValueError(f"bad permutation text {text!r}")
        word = tuple(int(ch) for ch in text)
    return check_permutation(word)


def format_permutation(perm: Sequence[int]) -> str:
    """Inverse of :func:`parse_permutation`.

    >>> format_permutation((6, 3, 4, 5, 2, 1))
    '634521'
    >>> format_permutation((2, 5, 1, 7, 3, 10, 4, 6, 9, 8))
    '2,5,1,7,3,10,4,6,9,8'
    """
    if len(perm) <= 9:
        return "".join(str(v) for v in perm)
    return ",".join(str(v) for v in perm)


def format_marked(perm: Sequence[int], marked: Iterable[int]) -> str:
    """Text form with the letters at the 1-based ``marked`` positions
    bracketed, e.g. ``[6]3[4]5[2][1]``."""
    marks = set(marked)
    parts = [f"[{v}]" if i + 1 in marks else str(v) for i, v in enumerate(perm)]
    joiner = "" if len(perm) <= 9 else ","
    return joiner.join(parts)


def occurrence_letters(tau: Sequence[int], occ: Sequence[int]) -> Perm:
    """Letters of ``tau`` at the 1-based positions ``occ``."""
    return tuple(tau[p - 1] for p in occ)


def check_occurrence(tau: Sequence[int], occ: Sequence[int],
                     sigma: Sequence[int] | None = None) -> Positions:
    """Validate an occurrence: strictly increasing positions inside tau,
    and (when ``sigma`` is given) letters order isomorphic to sigma."""
    pos = tuple(occ)
    n = len(tau)
    if not pos:
        raise ValueError("empty occurrence")
    if any(p < 1 or p > n for p in pos):
        raise ValueError(f"occurrence positions {pos!r} outside 1..{n}")
    if any(a >= b for a, b in zip(pos, pos[1:])):
        raise ValueError(f"occurrence positions {pos!r} not increasing")
    if sigma is not None:
        if standard_form(occurrence_letters(tau, pos)) != tuple(sigma):
            raise ValueError(
                f"positions {pos!r} are not an occurrence of "
                f"{format_permutation(sigma)} in {format_permutation(tau)}")
    return pos


def occurrences(sigma: Sequence[int], tau: Sequence[int]) -> list[Positions]:
    """All occurrences of ``sigma`` in ``tau`` as 1-based position tuples,
    in lexicographic order.

    >>> occurrences((1, 2, 4, 3), (7, 4, 1, 3, 6, 8, 2, 5))
    [(3, 4, 5, 8), (3, 4, 6, 8)]
    """
    k, n = len(sigma), len(tau)
    if k == 0:
        raise ValueError("sigma must be nonempty")
    out: list[Positions] = []
    if k > n:
        return out
    chosen_pos: list[int] = []
    chosen_val: list[int] = []

    def walk(j: int, start: int) -> None:
        if j == k:
            out.append(tuple(p + 1 for p in chosen_pos))
            return
        # The next letter must sit strictly between the already chosen
        # letters that flank sigma[j] in value.
        s = sigma[j]
        lo, hi = 0, n + 1
        for i in range(j):
            if sigma[i] < s:
                if chosen_val[i] > lo:
                    lo = chosen_val[i]
            elif chosen_val[i] < hi:
                hi = chosen_val[i]
        for p in range(start, n - (k - j) + 1):
            v = tau[p]
            if lo < v < hi:
                chosen_pos.append(p)
                chosen_val.append(v)
                walk(j + 1, p + 1)
                chosen_pos.pop()
                chosen_val.pop()

    walk(0, 0)
    return out


def contains(sigma: Sequence[int], tau: Sequence[int]) -> bool:
    """Pattern containment sigma <= tau (early exit on first witness)."""
    k, n = len(sigma), len(tau)
    if k > n:
        return False
    if k == n:
        return tuple(sigma) == tuple(tau)
    chosen_val: list[int] = []

    def walk(j: int, start: int) -> bool:
        if j == k:
            return True
        s = sigma[j]
        lo, hi = 0, n + 1
        for i in range(j):
            if sigma[i] < s:
                if chosen_val[i] > lo:
                    lo = chosen_val[i]
            elif chosen_val[i] < hi:
                hi = chosen_val[i]
        for p in range(start, n - (k - j) + 1):
            v = tau[p]
            if lo < v < hi:
                chosen_val.append(v)
                if walk(j + 1, p + 1):
                    return True
                chosen_val.pop()
        return False

    return walk(0, 0)


def count_occurrences(sigma: Sequence[int], tau: Sequence[int]) -> int:
    """Number of occurrences of sigma in tau."""
    return len(occurrences(sigma, tau))


def delete_letters(perm: Sequence[int], positions: Iterable[int]) -> Perm:
    """Delete the letters at the given 1-based positions and standardize.

    >>> delete_letters((2, 3, 5, 4, 1), {4})
    (2, 3, 4, 1)
    >>> delete_letters((6, 3, 4, 5, 2, 1), {2})
    (5, 3, 4, 2, 1)
    """
    p = check_permutation(perm)
    drop = sorted(set(positions))
    n = len(p)
    if not drop:
        return p
    if any(i < 1 or i > n for i in drop):
        raise ValueError(f"positions {drop!r} outside 1..{n}")
    if len(drop) == n:
        raise ValueError("cannot delete every letter")
    dropped_vals = sorted(p[i - 1] for i in drop)
    dropset = set(drop)
    return tuple(v - bisect_left(dropped_vals, v)
                 for i, v in enumerate(p) if i + 1 not in dropset)


def complement_entries(tau: Sequence[int],
                       occ: Sequence[int]) -> tuple[tuple[int, int], ...]:
    """The complement C = tau minus the occurrence, as (position, value)
    pairs in position order.

    >>> complement_entries((6, 3, 4, 5, 2, 1), (1, 3, 5))
    ((2, 3), (4, 5), (6, 1))
    """
    t = check_permutation(tau)
    pos = set(check_occurrence(t, occ))
    return tuple((i + 1, v) for i, v in enumerate(t) if i + 1 not in pos)


def extend_occurrence(tau: Sequence[int], occ: Sequence[int],
                      extra_values: Iterable[int]) -> Positions:
    """Extend an occurrence by letters of the complement, given by value.

    Returns the enlarged, still increasing position tuple.

    >>> extend_occurrence((7, 4, 1, 3, 6, 8, 2, 5), (3, 4, 5, 8), {2})
    (3, 4, 5, 7, 8)
    """
    t = check_permutation(tau)
    pos = check_occurrence(t, occ)
    extras = set(extra_values)
    if not extras:
        return pos
    occ_vals = set(occurrence_letters(t, pos))
    bad = extras & occ_vals
    if bad:
        raise ValueError(f"values {sorted(bad)!r} already in the occurrence")
    if not extras <= set(t):
        raise ValueError(f"values {sorted(extras - set(t))!r} not in tau")
    where = {v: i + 1 for i, v in enumerate(t)}
    return tuple(sorted(set(pos) | {where[v] for v in extras}))


def pattern_summary(tau: Sequence[int], k: int) -> dict[Perm, tuple[int, int]]:
    """For every pattern of length ``k`` occurring in ``tau``, the pair
    (occurrence count, bit mask of all positions used by at least one
    occurrence).  Enumerates all k-subsets once, so it is only meant for
    small k or small tau."""
    from itertools import combinations

    n = len(tau)
    if k < 1 or k > n:
        raise ValueError(f"k={k} outside 1..{n}")
    out: dict[Perm, list[int]] = {}
    for idx in combinations(range(n), k):
        pat = standard_form(tuple(tau[i] for i in idx))
        mask = 0
        for i in idx:
            mask |= 1 << i
        entry = out.get(pat)
        if entry is None:
            out[pat] = [1, mask]
        else:
            entry[0] += 1
            entry[1] |= mask
    return {pat: (c, m) for pat, (c, m) in out.items()}


def reversed_perm(perm: Sequence[int]) -> Perm:
    """Reverse the word:  w(1)...w(n)  ->  w(n)...w(1)."""
    return tuple(reversed(perm))


def complemented_perm(perm: Sequence[int]) -> Perm:
    """Complement each value:  v -> n + 1 - v."""
    n = len(perm)
    return tuple(n + 1 - v for v in perm)


def inverted_perm(perm: Sequence[int]) -> Perm:
    """Group-theoretic inverse of the permutation."""
    n = len(perm)
    inv = [0] * n
    for i, v in enumerate(perm):
        inv[v - 1] = i + 1
    return tuple(inv)
