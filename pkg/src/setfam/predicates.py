# these predicates are attached to SetFamily as methods in __init__, so the
# first argument plays the role of `self`.
from itertools import combinations
from typing import Optional, Tuple

import logging

from .exceptions import UsageError
from .family import DiversityResult, KSet, SetFamily
from .utils import lowest_bit

logger = logging.getLogger("setfam")


def is_intersecting(fam: SetFamily) -> bool:
    """
    True iff every two members share an element.
    The empty family and singletons are intersecting.
    """
    masks = fam.masks
    return all(f & g for f, g in combinations(masks, 2))


def is_cross_intersecting(a_fam: SetFamily, b_fam: SetFamily) -> bool:
    """
    True iff every member of `a_fam` meets every member of `b_fam`.
    Uniformities may differ; the universes must agree.
    """
    if a_fam.n != b_fam.n:
        raise UsageError(
            f"Families live on different universes: "
            f"[{a_fam.n}] and [{b_fam.n}]."
        )
    b_masks = b_fam.masks
    return all(a & b for a in a_fam.masks for b in b_masks)


def degrees(fam: SetFamily) -> list:
    # degrees[e - 1] = number of members containing e
    counts = [0] * fam.n
    for mask in fam.masks:
        while mask:
            low = mask & -mask
            counts[low.bit_length() - 1] += 1
            mask ^= low
    return counts


def diversity(fam: SetFamily) -> DiversityResult:
    """
    Max degree, diversity |F| - max degree, and the smallest element
    attaining the max degree. The empty family has (0, 0, None).
    """
    if len(fam) == 0:
        return DiversityResult(delta=0, gamma=0, witness=None)
    counts = degrees(fam)
    delta = max(counts)
    witness = counts.index(delta) + 1
    return DiversityResult(
        delta=delta, gamma=len(fam) - delta, witness=witness
    )


def common_element(fam: SetFamily) -> Optional[int]:
    """Smallest element lying in every member; None if non-trivial."""
    if len(fam) == 0:
        raise UsageError(
            "common_element() needs a nonempty family; the empty family "
            "has no witness."
        )
    shared = fam.universe.full_mask
    for mask in fam.masks:
        shared &= mask
    if not shared:
        return None
    return lowest_bit(shared) + 1


def is_trivial(fam: SetFamily) -> bool:
    return len(fam) == 0 or common_element(fam) is not None


def restrict(fam: SetFamily, i: int) -> Tuple[SetFamily, SetFamily]:
    """
    Split `fam` at element i into F(i) = {F - {i} : i in F} and
    F(not i) = {F : i not in F}. Both keep the labels of [n]; element i
    simply never occurs in either.
    """
    if not 1 <= i <= fam.n:
        raise UsageError(f"Element {i} is not in [{fam.n}].")
    if fam.k == 0:
        raise UsageError("Cannot restrict a family of empty sets.")
    bit = 1 << (i - 1)
    with_i = [m ^ bit for m in fam.masks if m & bit]
    without_i = [m for m in fam.masks if not m & bit]
    return (
        SetFamily(fam.n, fam.k - 1, tuple(KSet(m, fam.n) for m in with_i)),
        SetFamily(fam.n, fam.k, tuple(KSet(m, fam.n) for m in without_i)),
    )
