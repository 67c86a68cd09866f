"""
Vectorised scans over every subfamily of a layer.

A subfamily of a layer with m sets is an m-bit integer (bit j <=> the j-th
set of the layer in canonical order). Scans walk all 2^m such integers in
numpy chunks; per-set bookkeeping is expressed as bitmasks over these
indices so each test is a handful of array-wide AND operations.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterator, List, Sequence, Tuple

import numpy as np
from tqdm.auto import tqdm

logger = logging.getLogger("setfam")

CHUNK_BITS = 18

_BYTE_POPCOUNT = np.array([bin(i).count("1") for i in range(256)], np.uint8)
_ONE = np.uint64(1)


def popcount_array(values: np.ndarray) -> np.ndarray:
    values = np.ascontiguousarray(values, dtype=np.uint64)
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(values).astype(np.int64)
    as_bytes = values.view(np.uint8).reshape(values.shape + (8,))
    return _BYTE_POPCOUNT[as_bytes].sum(axis=-1, dtype=np.int64)


def chunk_bounds(
    num_bits: int, chunk_bits: int = CHUNK_BITS
) -> List[Tuple[int, int]]:
    total = 1 << num_bits
    step = 1 << min(num_bits, chunk_bits)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def run_chunks(
    num_bits: int,
    work: Callable[[np.ndarray], object],
    threads: int = 1,
    progress: bool = False,
    desc: str = "Scanning subfamilies",
) -> Iterator[object]:
    """
    Apply `work` to every chunk of the integers 0 .. 2^num_bits - 1 and
    yield the results in chunk order. With threads > 1 chunks run on a
    thread pool; numpy releases the GIL inside the array operations.
    """
    bounds = chunk_bounds(num_bits)

    def job(bound):
        lo, hi = bound
        return work(np.arange(lo, hi, dtype=np.uint64))

    bar = tqdm(total=len(bounds), desc=desc, disable=not progress)
    try:
        if threads > 1 and len(bounds) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                for result in pool.map(job, bounds):
                    bar.update(1)
                    yield result
        else:
            for bound in bounds:
                result = job(bound)
                bar.update(1)
                yield result
    finally:
        bar.close()


def index_masks(
    masks: Sequence[int], predicate: Callable[[int], bool]
) -> int:
    # bitmask of the indices j with predicate(masks[j])
    out = 0
    for j, mask in enumerate(masks):
        if predicate(mask):
            out |= 1 << j
    return out


def lower_conflicts(masks: Sequence[int]) -> List[int]:
    # for set j: indices i < j whose set is disjoint from set j
    return [
        index_masks(masks[:j], lambda other, me=me: not other & me)
        for j, me in enumerate(masks)
    ]


def has_bit(families: np.ndarray, j: int) -> np.ndarray:
    return ((families >> np.uint64(j)) & _ONE).astype(bool)


def meets_nothing_in(families: np.ndarray, index_mask: int) -> np.ndarray:
    # True where the subfamily avoids every index in index_mask
    return (families & np.uint64(index_mask)) == 0


def intersecting_flags(
    families: np.ndarray, conflicts: Sequence[int]
) -> np.ndarray:
    ok = np.ones(families.shape, dtype=bool)
    for j, conflict in enumerate(conflicts):
        if not conflict:
            continue
        ok &= ~(has_bit(families, j) & ~meets_nothing_in(families, conflict))
    return ok


def max_degree_array(
    families: np.ndarray, stars: Sequence[int]
) -> np.ndarray:
    # stars[e] = index mask of the sets containing element e
    delta = np.zeros(families.shape, dtype=np.int64)
    for star in stars:
        if star:
            np.maximum(
                delta,
                popcount_array(families & np.uint64(star)),
                out=delta,
            )
    return delta
