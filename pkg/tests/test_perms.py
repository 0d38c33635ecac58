"""Word-level basics: parsing, containment, occurrences, deletions.

Frozen values in here were produced by the brute-force checkers defined
alongside the tests (subset enumeration with itertools), never by the
functions under test.
"""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permposet.perms import (
    complement_entries,
    complemented_perm,
    contains,
    count_occurrences,
    delete_letters,
    extend_occurrence,
    format_marked,
    format_permutation,
    inverted_perm,
    occurrence_letters,
    occurrences,
    parse_permutation,
    pattern_summary,
    reversed_perm,
    standard_form,
)


def brute_occurrences(sigma, tau):
    """Filter every |sigma|-subset of positions; the oracle for the
    pruned backtracking search."""
    k, n = len(sigma), len(tau)
    out = []
    for idx in itertools.combinations(range(n), k):
        if standard_form(tau[i] for i in idx) == tuple(sigma):
            out.append(tuple(i + 1 for i in idx))
    return out


def all_perms(n):
    return itertools.permutations(range(1, n + 1))


# -- text form ----------------------------------------------------------


def test_parse_compact_and_comma_forms():
    assert parse_permutation("3412") == (3, 4, 1, 2)
    assert parse_permutation("2,5,1,7,3,10,4,6,9,8") == (2, 5, 1, 7, 3, 10, 4, 6, 9, 8)
    assert parse_permutation(" 1 ") == (1,)
    # comma form is legal for short words too
    assert parse_permutation("2,1") == (2, 1)


def test_format_switches_to_commas_above_nine():
    assert format_permutation((6, 3, 4, 5, 2, 1)) == "634521"
    assert format_permutation(tuple(range(1, 10))) == "123456789"
    assert format_permutation(tuple(range(1, 11))) == "1,2,3,4,5,6,7,8,9,10"


@pytest.mark.parametrize("bad", ["", "  ", "0", "12a", "11", "132x", "1,2,2", "1,,2", "10"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ValueError):
        parse_permutation(bad)


def test_round_trip_small_exhaustive():
    for n in range(1, 6):
        for p in all_perms(n):
            assert parse_permutation(format_permutation(p)) == p


@given(st.integers(min_value=1, max_value=50).flatmap(
    lambda n: st.permutations(list(range(1, n + 1)))))
@settings(max_examples=300, deadline=None)
def test_round_trip_randomized(word):
    p = tuple(word)
    assert parse_permutation(format_permutation(p)) == p
    # a permutation is its own standard form
    assert standard_form(p) == p


def test_format_marked():
    assert format_marked((6, 3, 4, 5, 2, 1), (1, 3, 5)) == "[6]3[4]5[2]1"
    assert format_marked((6, 3, 4, 5, 2, 1), (1, 3, 5, 6)) == "[6]3[4]5[2][1]"
    long = format_marked((2, 5, 1, 7, 3, 10, 4, 6, 9, 8), (6,))
    assert long == "2,5,1,7,3,[10],4,6,9,8"


# -- standardization ----------------------------------------------------


def test_standard_form():
    assert standard_form((3, 6, 1, 5)) == (2, 4, 1, 3)
    assert standard_form((10, 2, 30)) == (2, 1, 3)
    with pytest.raises(ValueError):
        standard_form(())
    with pytest.raises(ValueError):
        standard_form((1, 2, 1))


# -- containment and occurrences ----------------------------------------


def test_occurrences_known_values():
    assert occurrences((1, 2, 4, 3), (7, 4, 1, 3, 6, 8, 2, 5)) == [
        (3, 4, 5, 8),
        (3, 4, 6, 8),
    ]
    tau = parse_permutation("74136825")
    hits = occurrences(parse_permutation("1243"), tau)
    assert [occurrence_letters(tau, o) for o in hits] == [
        (1, 3, 6, 5),
        (1, 3, 8, 5),
    ]


def test_occurrence_counts_known_values():
    assert count_occurrences((2, 3, 1), (2, 3, 5, 4, 1)) == 5
    assert count_occurrences((1, 2, 3), (2, 4, 6, 1, 5, 3)) == 2
    assert count_occurrences((1,), (3, 1, 2)) == 3
    assert count_occurrences((2, 1), (1, 2)) == 0


def test_occurrences_match_brute_force():
    for n in range(1, 6):
        for tau in all_perms(n):
            for k in range(1, n + 1):
                for sigma in all_perms(k):
                    assert occurrences(sigma, tau) == brute_occurrences(sigma, tau), (
                        sigma,
                        tau,
                    )


def test_contains_agrees_with_occurrences():
    for n in range(1, 6):
        for tau in all_perms(n):
            for k in range(1, n + 1):
                for sigma in all_perms(k):
                    assert contains(sigma, tau) == bool(occurrences(sigma, tau))


def test_contains_trivia():
    assert contains((1,), (5, 3, 1, 2, 4))
    assert not contains((1, 2, 3, 4), (3, 2, 1))
    assert contains((2, 4, 1, 3), (2, 4, 1, 3))
    assert not contains((2, 4, 1, 3), (3, 1, 4, 2))


def test_pattern_summary_matches_occurrences():
    for n in range(1, 6):
        for tau in all_perms(n):
            for k in range(1, n + 1):
                summary = pattern_summary(tau, k)
                seen = set()
                for sigma in set(map(standard_form, itertools.combinations(tau, k))):
                    occs = occurrences(sigma, tau)
                    union = 0
                    for occ in occs:
                        for p in occ:
                            union |= 1 << (p - 1)
                    assert summary[sigma] == (len(occs), union)
                    seen.add(sigma)
                assert seen == set(summary)


def test_pattern_summary_rejects_bad_length():
    with pytest.raises(ValueError):
        pattern_summary((2, 1), 0)
    with pytest.raises(ValueError):
        pattern_summary((2, 1), 3)


# -- deletions and extensions -------------------------------------------


def test_delete_letters():
    assert delete_letters((2, 3, 5, 4, 1), {4}) == (2, 3, 4, 1)
    assert delete_letters((6, 3, 4, 5, 2, 1), {2}) == (5, 3, 4, 2, 1)
    assert delete_letters((1, 2, 3), ()) == (1, 2, 3)
    assert delete_letters((4, 2, 1, 3), {1, 3}) == (1, 2)


def test_delete_letters_against_standard_form():
    for n in range(1, 7):
        for tau in all_perms(n):
            for r in range(n):
                for drop in itertools.combinations(range(1, n + 1), r):
                    kept = [tau[i] for i in range(n) if i + 1 not in drop]
                    assert delete_letters(tau, drop) == standard_form(kept)


def test_delete_letters_errors():
    with pytest.raises(ValueError):
        delete_letters((2, 1), {3})
    with pytest.raises(ValueError):
        delete_letters((2, 1), {1, 2})


def test_complement_entries():
    assert complement_entries((6, 3, 4, 5, 2, 1), (1, 3, 5)) == (
        (2, 3),
        (4, 5),
        (6, 1),
    )


def test_extend_occurrence():
    tau = (7, 4, 1, 3, 6, 8, 2, 5)
    assert extend_occurrence(tau, (3, 4, 5, 8), {2}) == (3, 4, 5, 7, 8)
    assert extend_occurrence(tau, (3, 4, 5, 8), ()) == (3, 4, 5, 8)
    with pytest.raises(ValueError):
        extend_occurrence(tau, (3, 4, 5, 8), {6})  # letter already marked
    with pytest.raises(ValueError):
        extend_occurrence(tau, (3, 4, 5, 8), {9})  # not a letter of tau


# -- elementary symmetries ----------------------------------------------


def test_symmetry_helpers():
    assert reversed_perm((2, 4, 1, 3)) == (3, 1, 4, 2)
    assert complemented_perm((2, 4, 1, 3)) == (3, 1, 4, 2)
    assert inverted_perm((2, 4, 1, 3)) == (3, 1, 4, 2)
    assert inverted_perm((3, 1, 2)) == (2, 3, 1)
    for p in all_perms(5):
        assert reversed_perm(reversed_perm(p)) == p
        assert complemented_perm(complemented_perm(p)) == p
        assert inverted_perm(inverted_perm(p)) == p
