"""Intervals of the pattern containment poset as explicit graded DAGs.

Two families of posets are built here, both top-down by repeated
single-letter deletion with canonical dedup at each rank:

* the plain interval [sigma, tau]: all patterns between sigma and tau;
* the occurrence poset [<sigma>, tau] for a fixed occurrence: nodes are
  marked permutations (word, marked positions) reachable by deleting
  complement letters, where both the word and the marking decide
  identity.

Nodes are ordered by (rank, key) so every export is byte-stable.  The
Mobius function is evaluated bottom-up in rank order over explicit
downsets (no deep recursion); :func:`mobius_via_zeta` is an independent
cross-check that inverts the zeta matrix instead.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, NamedTuple

import numpy as np

from .blocks import interval_blocks
from .perms import (
    Perm,
    Positions,
    check_occurrence,
    check_permutation,
    contains,
    format_marked,
    format_permutation,
    occurrence_letters,
    standard_form,
)

#: bumping this invalidates persisted mu cache entries and marks reports
ENGINE_VERSION = 1

#: nodes per dag above which the zeta-matrix oracle refuses to run
ZETA_NODE_LIMIT = 4096

#: default cap on nodes generated while building a dag
DEFAULT_NODE_BUDGET = 200_000


class NodeBudgetExceeded(RuntimeError):
    """Raised when an interval build would exceed its node budget."""


class MarkedPermutation(NamedTuple):
    """A permutation word with a marked occurrence (1-based positions)."""

    word: Perm
    marked: Positions

    def text(self) -> str:
        return format_marked(self.word, self.marked)


def _delete_entry(word: Perm, i: int) -> Perm:
    """Delete index i (0-based) from a canonical word and re-rank."""
    v = word[i]
    rest = word[:i] + word[i + 1:]
    return tuple(x - 1 if x > v else x for x in rest)


class IntervalDag:
    """A graded interval, nodes sorted by (rank, key).

    ``children[i]`` lists the nodes covered by node i (one rank down);
    ``parents`` is the transpose.  ``mu`` holds mu(bottom, node) once
    :func:`mobius` has run.
    """

    def __init__(self, keys: list, ranks: list[int],
                 children: list[list[int]], kind: str):
        self.keys = keys
        self.ranks = ranks
        self.children = children
        self.kind = kind
        self.index = {k: i for i, k in enumerate(keys)}
        self.parents: list[list[int]] = [[] for _ in keys]
        for i, kids in enumerate(children):
            for j in kids:
                self.parents[j].append(i)
        self.mu: list[int] | None = None
        self._downsets: list[int] | None = None

    # -- basic shape ---------------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self.keys)

    @property
    def is_empty(self) -> bool:
        return not self.keys

    @property
    def bottom(self) -> int:
        if self.is_empty:
            raise ValueError("empty interval has no bottom")
        return 0

    @property
    def top(self) -> int:
        if self.is_empty:
            raise ValueError("empty interval has no top")
        return len(self.keys) - 1

    @property
    def grade(self) -> int:
        """Rank of the top element (n - k for [sigma, tau])."""
        return self.ranks[self.top]

    def downset_masks(self) -> list[int]:
        """Bit mask per node of its weak downset (itself included)."""
        if self._downsets is None:
            masks = [0] * len(self.keys)
            for i, kids in enumerate(self.children):
                m = 1 << i
                for j in kids:
                    m |= masks[j]
                masks[i] = m
            self._downsets = masks
        return self._downsets

    def assert_graded(self) -> None:
        """Structural gradedness: covers drop rank by one, every
        non-bottom node covers something, every non-top is covered."""
        for i, kids in enumerate(self.children):
            for j in kids:
                if self.ranks[i] != self.ranks[j] + 1:
                    raise AssertionError(f"cover {j}->{i} skips a rank")
            if self.ranks[i] > 0 and not kids:
                raise AssertionError(f"node {i} above bottom covers nothing")
            if self.ranks[i] < self.grade and not self.parents[i]:
                raise AssertionError(f"node {i} below top is uncovered")

    def mu_of(self, key) -> int:
        if self.mu is None:
            mobius(self)
        return self.mu[self.index[key]]


def _assemble(node_levels: dict[int, set], child_words: dict,
              base_len: int, kind: str) -> IntervalDag:
    """Sort nodes by (rank, key), translate child keys to indices."""
    keys = []
    for length in sorted(node_levels):
        keys.extend(sorted(node_levels[length]))
    index = {k: i for i, k in enumerate(keys)}
    ranks = []
    children: list[list[int]] = []
    for k in keys:
        length = len(k[0]) if kind == "occurrence" else len(k)
        ranks.append(length - base_len)
        kids = child_words.get(k, ())
        children.append(sorted(index[c] for c in kids if c in index))
    return IntervalDag(keys, ranks, children, kind)


def build_interval(sigma, tau,
                   node_budget: int | None = DEFAULT_NODE_BUDGET) -> IntervalDag:
    """The interval [sigma, tau] of the pattern poset.

    Returns the empty dag when sigma is not contained in tau.  Raises
    :class:`NodeBudgetExceeded` if more than ``node_budget`` distinct
    patterns are generated on the way down.
    """
    s = check_permutation(sigma)
    t = check_permutation(tau)
    k, n = len(s), len(t)
    if k > n or not contains(s, t):
        return IntervalDag([], [], [], kind="plain")
    if k == n:
        return IntervalDag([t], [0], [[]], kind="plain")

    levels: dict[int, set[Perm]] = {n: {t}}
    child_words: dict[Perm, set[Perm]] = {}
    generated = 1
    for m in range(n, k, -1):
        below: set[Perm] = set()
        for w in levels[m]:
            kids = {_delete_entry(w, i) for i in range(m)}
            child_words[w] = kids
            below |= kids
        generated += len(below)
        if node_budget is not None and generated > node_budget:
            raise NodeBudgetExceeded(
                f"interval [{format_permutation(s)}, {format_permutation(t)}] "
                f"exceeds node budget {node_budget}")
        levels[m - 1] = below

    # prune to nodes above sigma, bottom-up
    keep: dict[int, set[Perm]] = {k: {s} if s in levels[k] else set()}
    for m in range(k + 1, n + 1):
        kept_below = keep[m - 1]
        keep[m] = {w for w in levels[m]
                   if any(c in kept_below for c in child_words[w])}
    return _assemble(keep, child_words, k, kind="plain")


def build_occurrence_poset(tau, occ,
                           node_budget: int | None = DEFAULT_NODE_BUDGET,
                           ) -> IntervalDag:
    """The occurrence poset [<sigma>, tau] for the occurrence ``occ``.

    Nodes are :class:`MarkedPermutation` values obtained by deleting
    subsets of the complement, identified up to equal word and equal
    marking.  Covers delete a single complement letter.
    """
    t = check_permutation(tau)
    pos = check_occurrence(t, occ)
    n, k = len(t), len(pos)

    top = MarkedPermutation(t, pos)
    levels: dict[int, set[MarkedPermutation]] = {n: {top}}
    child_words: dict[MarkedPermutation, set[MarkedPermutation]] = {}
    generated = 1
    for m in range(n, k, -1):
        below: set[MarkedPermutation] = set()
        for node in levels[m]:
            word, marked = node
            markset = set(marked)
            kids = set()
            for p in range(1, m + 1):
                if p in markset:
                    continue
                kid_word = _delete_entry(word, p - 1)
                kid_marked = tuple(q if q < p else q - 1 for q in marked)
                kids.add(MarkedPermutation(kid_word, kid_marked))
            child_words[node] = kids
            below |= kids
        generated += len(below)
        if node_budget is not None and generated > node_budget:
            raise NodeBudgetExceeded(
                f"occurrence poset for {format_marked(t, pos)} exceeds "
                f"node budget {node_budget}")
        levels[m - 1] = below

    return _assemble(levels, child_words, k, kind="occurrence")


# -- Mobius evaluation ------------------------------------------------


def mobius(dag: IntervalDag) -> int:
    """mu(bottom, top), memoizing mu(bottom, node) for every node.

    Nodes are processed in increasing rank order; each value is minus
    the sum over the strict downset, directly from the defining
    recurrence.  The empty interval has mu = 0.
    """
    if dag.is_empty:
        return 0
    if dag.mu is None:
        masks = dag.downset_masks()
        mu = [0] * dag.node_count
        mu[0] = 1
        for i in range(1, dag.node_count):
            rest = masks[i] ^ (1 << i)
            s = 0
            while rest:
                low = rest & -rest
                s += mu[low.bit_length() - 1]
                rest ^= low
            mu[i] = -s
        dag.mu = mu
    return dag.mu[dag.top]


def mobius_via_zeta(dag: IntervalDag) -> int:
    """mu(bottom, top) by inverting the zeta matrix.

    Independent of the recursive evaluation: the zeta matrix is unit
    upper-triangular under the node order, its float inverse is rounded
    and then verified exactly, and the (bottom, top) entry is returned.
    Refuses dags above ``ZETA_NODE_LIMIT`` nodes.
    """
    if dag.is_empty:
        return 0
    v = dag.node_count
    if v > ZETA_NODE_LIMIT:
        raise NodeBudgetExceeded(
            f"zeta oracle limited to {ZETA_NODE_LIMIT} nodes, dag has {v}")
    masks = dag.downset_masks()
    nbytes = (v + 7) // 8
    rows = np.frombuffer(
        b"".join(m.to_bytes(nbytes, "little") for m in masks),
        dtype=np.uint8).reshape(v, nbytes)
    zeta = np.unpackbits(rows, axis=1, count=v, bitorder="little")
    zeta = zeta.T.astype(np.float64)  # zeta[i, j] = 1 iff i <= j
    inv = np.rint(np.linalg.inv(zeta))
    residue = zeta @ inv - np.eye(v)
    if np.max(np.abs(residue)) > 1e-6:
        raise ArithmeticError("zeta inversion failed to verify")
    return int(inv[dag.bottom, dag.top])


def mu_to_top_table(tau, min_len: int = 1) -> dict[Perm, int]:
    """mu(x, tau) for every pattern x of tau with len(x) >= min_len.

    Reference implementation: builds the full pattern dag of tau and
    runs the Mobius recurrence from the top downwards (the dual of
    :func:`mobius`), so one pass serves every bottom at once.
    """
    t = check_permutation(tau)
    n = len(t)
    if not 1 <= min_len <= n:
        raise ValueError(f"min_len {min_len} outside 1..{n}")
    levels: dict[int, list[Perm]] = {n: [t]}
    parent_ids: dict[Perm, list[int]] = {}
    ids: dict[Perm, int] = {t: 0}
    order: list[Perm] = [t]
    for m in range(n, min_len, -1):
        below: set[Perm] = set()
        for w in levels[m]:
            wid = ids[w]
            for i in range(m):
                kid = _delete_entry(w, i)
                below.add(kid)
                parent_ids.setdefault(kid, []).append(wid)
        levels[m - 1] = sorted(below)
        for w in levels[m - 1]:
            ids[w] = len(order)
            order.append(w)

    upset = [0] * len(order)
    nu = [0] * len(order)
    upset[0] = 1
    nu[0] = 1
    for i in range(1, len(order)):
        m = 1 << i
        s = 0
        seen = 0
        for pid in parent_ids[order[i]]:
            extra = upset[pid] & ~seen
            seen |= extra
            m |= upset[pid]
            while extra:
                low = extra & -extra
                s += nu[low.bit_length() - 1]
                extra ^= low
        upset[i] = m
        nu[i] = -s
    return dict(zip(order, nu))


def mu_to_top_table_fast(tau, min_len: int = 1) -> dict[Perm, int]:
    """Vectorized :func:`mu_to_top_table` for bulk sweeps.

    Same contract, but levels live in numpy arrays: deletions are
    produced per column, deduped with ``np.unique``, upsets are packed
    bit rows combined with ``bitwise_or.reduceat``, and each level's
    values come from one matrix product.  Verified against the
    reference implementation in the test suite.
    """
    t = check_permutation(tau)
    n = len(t)
    if not 1 <= min_len <= n:
        raise ValueError(f"min_len {min_len} outside 1..{n}")
    if min_len == n:
        return {t: 1}

    level_words = [np.array([t], dtype=np.uint8)]
    level_edges = []  # (child_index, parent_index) arrays per transition
    for m in range(n, min_len, -1):
        cur = level_words[-1]
        rows = cur.shape[0]
        pieces = []
        for i in range(m):
            sub = np.delete(cur, i, axis=1)
            vals = cur[:, i:i + 1]
            pieces.append(sub - (sub > vals))
        stacked = np.concatenate(pieces, axis=0)
        parents = np.tile(np.arange(rows), m)
        uniq, inverse = np.unique(stacked, axis=0, return_inverse=True)
        level_words.append(uniq)
        level_edges.append((inverse.ravel(), parents))

    sizes = [w.shape[0] for w in level_words]
    bases = np.concatenate(([0], np.cumsum(sizes)))
    total = int(bases[-1])
    nbytes = (total + 7) // 8
    packed = np.zeros((total, nbytes), dtype=np.uint8)
    own = np.arange(total)
    packed[own, own >> 3] |= np.uint8(1) << (own & 7).astype(np.uint8)

    for step, (child, parent) in enumerate(level_edges):
        upper_base, base = int(bases[step]), int(bases[step + 1])
        m = sizes[step + 1]
        order = np.argsort(child, kind="stable")
        rows = packed[upper_base + parent[order]]
        starts = np.searchsorted(child[order], np.arange(m))
        merged = np.bitwise_or.reduceat(rows, starts, axis=0)
        packed[base:base + m] |= merged

    nu = np.zeros(total, dtype=np.int64)
    nu[0] = 1
    for step in range(len(level_edges)):
        base, m = int(bases[step + 1]), sizes[step + 1]
        bits = np.unpackbits(packed[base:base + m], axis=1, count=total,
                             bitorder="little")
        nu[base:base + m] = -(bits @ nu)

    table: dict[Perm, int] = {}
    for level, words in enumerate(level_words):
        base = int(bases[level])
        for i in range(words.shape[0]):
            table[tuple(int(x) for x in words[i])] = int(nu[base + i])
    return table


# -- structural predicates on dags ------------------------------------


def is_boolean(dag: IntervalDag) -> bool:
    """Whether the dag is the boolean lattice of its grade.

    Structural check: 2**grade nodes, every node covers exactly rank
    many nodes and is covered by grade - rank many.
    """
    if dag.is_empty:
        return False
    r = dag.grade
    if dag.node_count != 1 << r:
        return False
    for i in range(dag.node_count):
        if len(dag.children[i]) != dag.ranks[i]:
            return False
        if len(dag.parents[i]) != r - dag.ranks[i]:
            return False
    return True


class IntervalFreeSubposet:
    """The nodes of an occurrence poset whose pair is interval free,
    with the order (and ranks) inherited from the host dag."""

    def __init__(self, host: IntervalDag, indices: tuple[int, ...]):
        self.host = host
        self.indices = indices

    @property
    def node_count(self) -> int:
        return len(self.indices)

    def keys(self) -> list:
        return [self.host.keys[i] for i in self.indices]

    def iter_ranks(self) -> Iterable[int]:
        return (self.host.ranks[i] for i in self.indices)

    def dropped(self) -> tuple[int, ...]:
        kept = set(self.indices)
        return tuple(i for i in range(self.host.node_count) if i not in kept)

    def contains_top(self) -> bool:
        return bool(self.indices) and self.indices[-1] == self.host.top


@lru_cache(maxsize=200_000)
def _proper_block_masks(word: Perm) -> tuple[int, ...]:
    n = len(word)
    return tuple(b.position_mask() for b in interval_blocks(word)
                 if b.end - b.start + 1 < n)


def _node_is_interval_free(node: MarkedPermutation) -> bool:
    mark = 0
    for p in node.marked:
        mark |= 1 << (p - 1)
    return all(m & mark for m in _proper_block_masks(node.word))


def interval_free_subposet(dag: IntervalDag) -> IntervalFreeSubposet:
    """Restrict an occurrence poset to its interval-free pairs.

    The bottom (everything marked) is always kept; the top survives
    exactly when the pair (<sigma>, tau) itself is interval free.
    """
    if dag.kind != "occurrence":
        raise ValueError("interval-free subposet needs an occurrence poset")
    kept = tuple(i for i, key in enumerate(dag.keys)
                 if _node_is_interval_free(key))
    return IntervalFreeSubposet(dag, kept)


def subposet_mobius(sub: IntervalFreeSubposet) -> dict[int, int]:
    """Mobius values from the bottom inside the induced subposet.

    The order on the kept nodes is inherited from the host dag, so the
    strict downset of a member is the host downset intersected with the
    member set.  Returns ``{host_index: mu}`` for every kept node; the
    host bottom is always kept and gets 1.
    """
    host = sub.host
    masks = host.downset_masks()
    member_bits = 0
    for i in sub.indices:
        member_bits |= 1 << i
    mu: dict[int, int] = {}
    for i in sub.indices:
        below = masks[i] & member_bits & ~(1 << i)
        if not below:
            mu[i] = 1
            continue
        total = 0
        while below:
            low = below & -below
            total += mu[low.bit_length() - 1]
            below ^= low
        mu[i] = -total
    return mu


def is_rank_property(obj) -> bool:
    """Equal counts of even-rank and odd-rank elements.

    Accepts a dag or an :class:`IntervalFreeSubposet`; ranks are always
    taken in the ambient graded poset.
    """
    ranks = obj.iter_ranks() if hasattr(obj, "iter_ranks") else obj.ranks
    balance = 0
    for r in ranks:
        balance += 1 if r % 2 == 0 else -1
    return balance == 0


# -- export ------------------------------------------------------------


def to_dot(dag: IntervalDag, name: str = "interval") -> str:
    """Deterministic DOT export; nodes carry mu as an attribute and
    marked letters are bracketed.  Edges point from bottom to top."""
    if not dag.is_empty and dag.mu is None:
        mobius(dag)
    lines = [f"digraph {name} {{"]
    for i, key in enumerate(dag.keys):
        if dag.kind == "occurrence":
            label = key.text()
        else:
            label = format_permutation(key)
        lines.append(f'  n{i} [label="{label}", mu={dag.mu[i]}];')
    edges = sorted((j, i) for i, kids in enumerate(dag.children)
                   for j in kids)
    for j, i in edges:
        lines.append(f"  n{j} -> n{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"
