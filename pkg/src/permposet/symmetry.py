"""The order-8 symmetry group generated by reverse, complement, inverse.

Pattern containment, occurrence counts, interval blocks and mu are all
invariant under these maps, so sweeps only need one representative per
orbit.  Group elements are written in the normal form

    reverse**a . complement**b . inverse**c        (a, b, c in {0, 1})

applied right to left: inverse first, then complement, then reverse.
The operations-applied label of an image lists the basic maps in that
application order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .perms import Perm, complemented_perm, inverted_perm, reversed_perm

#: the eight (a, b, c) exponent triples in a fixed order
_ELEMENTS = tuple((a, b, c) for c in (0, 1) for b in (0, 1) for a in (0, 1))


def apply_symmetry(perm: Perm, element: tuple[int, int, int]) -> Perm:
    """Apply reverse**a . complement**b . inverse**c to a permutation."""
    a, b, c = element
    img = tuple(perm)
    if c:
        img = inverted_perm(img)
    if b:
        img = complemented_perm(img)
    if a:
        img = reversed_perm(img)
    return img


def element_ops(element: tuple[int, int, int]) -> tuple[str, ...]:
    """Basic operations of a group element, in application order."""
    a, b, c = element
    ops = []
    if c:
        ops.append("inverse")
    if b:
        ops.append("complement")
    if a:
        ops.append("reverse")
    return tuple(ops)


def symmetry_images(perm: Perm) -> list[tuple[tuple[int, int, int], Perm]]:
    """All eight (element, image) pairs, in fixed element order."""
    return [(el, apply_symmetry(perm, el)) for el in _ELEMENTS]


def orbit(perm: Perm) -> set[Perm]:
    return {img for _, img in symmetry_images(perm)}


def canonical_form(perm: Perm) -> tuple[Perm, tuple[str, ...]]:
    """Lexicographically least image and the operations reaching it."""
    best_el, best = min(symmetry_images(perm), key=lambda pair: pair[1])
    return best, element_ops(best_el)


def is_orbit_min(perm: Perm) -> bool:
    """True when perm is the lex-least member of its orbit.

    Spelled out with early exits because the big sweeps call this for
    every permutation of S_n.
    """
    n1 = len(perm) + 1
    c = tuple(n1 - v for v in perm)
    if c < perm:
        return False
    r = perm[::-1]
    if r < perm:
        return False
    if c[::-1] < perm:
        return False
    inv = [0] * len(perm)
    for i, v in enumerate(perm):
        inv[v - 1] = i + 1
    inv = tuple(inv)
    if inv < perm:
        return False
    ic = tuple(n1 - v for v in inv)
    if ic < perm:
        return False
    if inv[::-1] < perm:
        return False
    if ic[::-1] < perm:
        return False
    return True


def pair_orbit(sigma: Perm, tau: Perm) -> set[tuple[Perm, Perm]]:
    """Joint images of a containment pair under all eight symmetries."""
    return {(apply_symmetry(sigma, el), apply_symmetry(tau, el))
            for el in _ELEMENTS}


def pair_canonical(sigma: Perm, tau: Perm) -> tuple[Perm, Perm]:
    """Least joint image, ordered by (tau image, sigma image)."""
    best = min(pair_orbit(sigma, tau), key=lambda st: (st[1], st[0]))
    return best


@dataclass(frozen=True)
class SymmetryClass:
    """An orbit of the symmetry group, named by its least member."""

    representative: Perm
    operations: tuple[str, ...]  # maps the first-seen member to the rep
    size: int


def symmetry_reduce(perms: Iterable[Perm]) -> Iterator[SymmetryClass]:
    """Collapse a permutation stream to one class per orbit.

    Each class is emitted when its first member arrives, labeled with
    the operations carrying that member to the representative.
    """
    seen: set[Perm] = set()
    for perm in perms:
        if perm in seen:
            continue
        members = orbit(perm)
        seen |= members
        rep, ops = canonical_form(perm)
        yield SymmetryClass(rep, ops, len(members))
