import os
import logging
from typing import Iterable, Tuple

logger = logging.getLogger("setfam")


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lowest_bit(mask: int) -> int:
    # index of the least significant set bit, mask must be nonzero
    return (mask & -mask).bit_length() - 1


def mask_from_elements(elements: Iterable[int]) -> int:
    # 1-based labels in, bit (e - 1) out
    mask = 0
    for e in elements:
        mask |= 1 << (e - 1)
    return mask


def elements_from_mask(mask: int) -> Tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def default_threads() -> int:
    try:
        threads = int(os.environ.get("SETFAM_THREADS", "1"))
    except ValueError:
        logger.warning(
            "Could not parse SETFAM_THREADS. Falling back to 1 thread."
        )
        return 1
    return max(1, threads)
