import logging
from math import comb
from typing import Iterable

from .exceptions import UsageError
from .family import KSet, SetFamily, Universe, layer

logger = logging.getLogger("setfam")


def _check_point(n: int, i: int, name: str = "i"):
    if not 1 <= i <= n:
        raise UsageError(f"Element {name}={i} is not in [{n}].")


def _as_kset(n: int, s) -> KSet:
    if isinstance(s, KSet):
        if s.n != n:
            raise UsageError(f"Set {s} lives on [{s.n}], expected [{n}].")
        return s
    return KSet.from_elements(n, s)


def star(n: int, k: int, i: int) -> SetFamily:
    """All k-subsets of [n] containing i."""
    Universe(n)
    _check_point(n, i)
    bit = 1 << (i - 1)
    return SetFamily.from_masks(n, k, (m for m in layer(n, k) if m & bit))


def dual_masks(masks: Iterable[int], n: int, m: int) -> tuple:
    # m-sets of [n] meeting every given mask, canonical order
    masks = tuple(masks)
    return tuple(
        cand for cand in layer(n, m) if all(cand & f for f in masks)
    )


def dual_family(fam: SetFamily, m: int) -> SetFamily:
    """
    The family of all m-sets meeting every member of `fam`; this is the
    unique largest family cross-intersecting with `fam` in layer m.
    """
    if not 0 <= m <= fam.n:
        raise UsageError(f"Uniformity m={m} is outside 0 <= m <= n={fam.n}.")
    return SetFamily.from_masks(fam.n, m, dual_masks(fam.masks, fam.n, m))


def hilton_milner_family(n: int, k: int, i: int, S) -> SetFamily:
    """
    H(i, S) = {S} together with every k-set that contains i and meets S.
    For n > 2k it is the largest non-trivial intersecting family, of size
    C(n-1, k-1) - C(n-k-1, k-1) + 1.
    """
    Universe(n)
    _check_point(n, i)
    S = _as_kset(n, S)
    if S.k != k:
        raise UsageError(f"S={S} must have exactly k={k} elements.")
    if i in S:
        raise UsageError(f"Element i={i} must not belong to S={S}.")
    if n <= 2 * k:
        raise UsageError(
            f"Hilton-Milner families need n > 2k, got n={n}, k={k}."
        )
    bit = 1 << (i - 1)
    masks = [m for m in layer(n, k) if m & bit and m & S.mask]
    masks.append(S.mask)
    fam = SetFamily.from_masks(n, k, masks)
    logger.debug(f"Built H({i}, {S}) with {len(fam)} members.")
    return fam


def hilton_milner_size(n: int, k: int) -> int:
    return comb(n - 1, k - 1) - comb(n - k - 1, k - 1) + 1


def i_family(n: int, k: int, i: int, j: int, S) -> SetFamily:
    """
    I(i, j, S) = {S} together with every k-set containing both i and j.
    Subfamilies of H(i, S) that contain S and are still trivial (all sets
    through i also pass through j) live inside this family.
    """
    Universe(n)
    _check_point(n, i)
    _check_point(n, j, "j")
    S = _as_kset(n, S)
    if S.k != k:
        raise UsageError(f"S={S} must have exactly k={k} elements.")
    if i in S:
        raise UsageError(f"Element i={i} must not belong to S={S}.")
    if j not in S:
        raise UsageError(f"Element j={j} must belong to S={S}.")
    both = (1 << (i - 1)) | (1 << (j - 1))
    masks = [m for m in layer(n, k) if m & both == both]
    masks.append(S.mask)
    return SetFamily.from_masks(n, k, masks)
