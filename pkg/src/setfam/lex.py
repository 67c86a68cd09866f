"""Lexicographic order on k-sets and its initial segments L^(k)(m).

F precedes G when min(F - G) < min(G - F); e.g. {1,10} before {2,3}.
"""
import logging
from functools import cmp_to_key
from itertools import combinations, islice
from math import comb

from .exceptions import UsageError
from .family import KSet, SetFamily, Universe
from .utils import lowest_bit, mask_from_elements

logger = logging.getLogger("setfam")


def lex_compare(first: KSet, second: KSet) -> int:
    """Return -1, 0 or 1 as `first` precedes, equals or follows `second`."""
    if first.n != second.n:
        raise UsageError(
            f"Cannot compare sets over [{first.n}] and [{second.n}]."
        )
    if first.k != second.k:
        raise UsageError(
            f"Cannot compare a {first.k}-set with a {second.k}-set."
        )
    only_first = first.mask & ~second.mask
    only_second = second.mask & ~first.mask
    if not only_first:
        return 0
    return -1 if lowest_bit(only_first) < lowest_bit(only_second) else 1


lex_key = cmp_to_key(lex_compare)


def lex_first(n: int, k: int, m: int) -> SetFamily:
    """The first m k-subsets of [n] in lexicographic order."""
    Universe(n)
    if not 0 <= k <= n:
        raise UsageError(f"Uniformity k={k} is outside 0 <= k <= n={n}.")
    total = comb(n, k)
    if not 0 <= m <= total:
        raise UsageError(
            f"Segment length m={m} is outside 0 <= m <= C({n},{k})={total}."
        )
    # combinations() walks sorted tuples, which is exactly lex order
    segment = islice(combinations(range(1, n + 1), k), m)
    return SetFamily.from_masks(n, k, (mask_from_elements(c) for c in segment))


def lex_sorted(fam: SetFamily) -> list:
    return sorted(fam.members, key=lex_key)
