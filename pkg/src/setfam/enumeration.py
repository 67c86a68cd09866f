import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterator, List, Optional, Tuple

import networkx as nx
import numpy as np

from .constructions import dual_masks, hilton_milner_family
from .exceptions import FeasibilityError, UsageError
from .family import SetFamily, Universe, layer
from .kneser import count_independent_sets, intersection_graph, kneser_graph
from .lex import lex_first
from .predicates import common_element
from .scan import (
    index_masks,
    intersecting_flags,
    lower_conflicts,
    max_degree_array,
    meets_nothing_in,
    popcount_array,
    run_chunks,
)
from .utils import default_threads

logger = logging.getLogger("setfam")

# caps on the layer size C(n, k) for each exact method
BRUTEFORCE_CAP = 25
KNESER_CAP = 40
CROSS_CAP = 20
CROSS_B_CAP = 126
MAXIMAL_CAP = 40


def _check_layer(n: int, k: int, name: str = "k"):
    Universe(n)
    if not 1 <= k <= n:
        raise UsageError(
            f"Uniformity {name}={k} is outside 1 <= {name} <= n={n}."
        )


def _check_cap(size: int, cap: int, label: str):
    if size > cap:
        raise FeasibilityError(
            f"{label}={size} exceeds the exact-enumeration cap "
            f"{label.split('=')[0]} <= {cap}.",
            cap=cap,
            size=size,
        )


def _resolve_threads(threads: Optional[int]) -> int:
    return default_threads() if threads is None else max(1, threads)


@dataclass
class DiversityProfile:
    """I(n, k, t) for every diversity t."""

    n: int
    k: int
    entries: Dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def __getitem__(self, t: int) -> int:
        return self.entries.get(t, 0)

    def at_least(self, t: int) -> int:
        return sum(v for d, v in self.entries.items() if d >= t)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "I": str(self.total),
            "profile": {
                str(t): str(v) for t, v in sorted(self.entries.items())
            },
        }


@dataclass
class CrossPairProfile:
    """CI(n, a, b, t) for every t = |A|."""

    n: int
    a: int
    b: int
    entries: Dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def __getitem__(self, t: int) -> int:
        return self.entries.get(t, 0)

    def in_range(self, lo: int, hi: int) -> int:
        """CI(n, a, b, [lo, hi])."""
        return sum(v for t, v in self.entries.items() if lo <= t <= hi)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "a": self.a,
            "b": self.b,
            "CI": str(self.total),
            "profile": {
                str(t): str(v) for t, v in sorted(self.entries.items())
            },
        }


@dataclass
class MaximalFamilyList:
    n: int
    k: int
    families: List[SetFamily] = field(default_factory=list)

    def __len__(self):
        return len(self.families)

    def __iter__(self) -> Iterator[SetFamily]:
        return iter(self.families)

    def __getitem__(self, idx):
        return self.families[idx]

    def nontrivial(self) -> List[SetFamily]:
        return [f for f in self.families if common_element(f) is None]

    def largest_size(self, nontrivial: bool = False) -> int:
        pool = self.nontrivial() if nontrivial else self.families
        return max((len(f) for f in pool), default=0)


def count_intersecting_bruteforce(
    n: int, k: int, threads: Optional[int] = None, progress: bool = False
) -> int:
    """I(n, k) by scanning all 2^C(n,k) subfamilies, the empty one included."""
    _check_layer(n, k)
    masks = layer(n, k)
    _check_cap(len(masks), BRUTEFORCE_CAP, f"C(n,k)=C({n},{k})")
    conflicts = lower_conflicts(masks)

    def work(families):
        return int(np.count_nonzero(intersecting_flags(families, conflicts)))

    total = sum(
        run_chunks(
            len(masks),
            work,
            threads=_resolve_threads(threads),
            progress=progress,
            desc=f"I({n},{k})",
        )
    )
    logger.info(f"Counted I({n},{k}) = {total} by brute force.")
    return total


def count_intersecting_via_kneser(
    n: int, k: int, pivot: str = "max_degree", threads: Optional[int] = None
) -> int:
    """I(n, k) as the number of independent sets of KG(n, k)."""
    _check_layer(n, k)
    size = comb(n, k)
    if size > KNESER_CAP:
        raise FeasibilityError(
            f"C(n,k)=C({n},{k})={size} exceeds the exact-enumeration caps "
            f"C(n,k) <= {KNESER_CAP} (kneser) and "
            f"C(n,k) <= {BRUTEFORCE_CAP} (bruteforce).",
            cap=KNESER_CAP,
            size=size,
        )
    total = count_independent_sets(
        kneser_graph(n, k), pivot=pivot, threads=_resolve_threads(threads)
    )
    logger.info(f"Counted I({n},{k}) = {total} on the Kneser graph.")
    return total


def count_intersecting(n: int, k: int, threads: Optional[int] = None) -> int:
    return count_intersecting_via_kneser(n, k, threads=threads)


def diversity_profile(
    n: int, k: int, threads: Optional[int] = None, progress: bool = False
) -> DiversityProfile:
    """I(n, k, t) for all t, by the same exhaustive scan as the brute force."""
    _check_layer(n, k)
    masks = layer(n, k)
    _check_cap(len(masks), BRUTEFORCE_CAP, f"C(n,k)=C({n},{k})")
    conflicts = lower_conflicts(masks)
    stars = [
        index_masks(masks, lambda m, bit=1 << e: bool(m & bit))
        for e in range(n)
    ]

    def work(families):
        ok = intersecting_flags(families, conflicts)
        families = families[ok]
        gamma = popcount_array(families) - max_degree_array(families, stars)
        return np.bincount(gamma, minlength=1)

    entries: Dict[int, int] = {}
    for hist in run_chunks(
        len(masks),
        work,
        threads=_resolve_threads(threads),
        progress=progress,
        desc=f"profile({n},{k})",
    ):
        for t, count in enumerate(hist.tolist()):
            if count:
                entries[t] = entries.get(t, 0) + count
    profile = DiversityProfile(n, k, dict(sorted(entries.items())))
    logger.info(
        f"Diversity profile of ({n},{k}): I = {profile.total}, "
        f"non-trivial = {profile.at_least(1)}."
    )
    return profile


def diversity_ratio(n: int, k: int) -> Tuple[int, int, Optional[Fraction]]:
    """(I(n,k,1), I(n,k,2), their ratio) at an exhaustively feasible size."""
    profile = diversity_profile(n, k)
    one, two = profile[1], profile[2]
    return one, two, (Fraction(two, one) if one else None)


def _cross_tables(n: int, a: int, b: int):
    a_masks, b_masks = layer(n, a), layer(n, b)
    # for each b-set, the a-indices it is disjoint from
    missed_by_b = [
        index_masks(a_masks, lambda m, me=me: not m & me) for me in b_masks
    ]
    return a_masks, b_masks, missed_by_b


def count_cross_pairs(
    n: int,
    a: int,
    b: int,
    threads: Optional[int] = None,
    progress: bool = False,
) -> CrossPairProfile:
    """
    CI(n, a, b, t) for all t. For each A the compatible B form the full
    power set of the b-sets meeting every member of A, so A contributes
    2^(that number) pairs.
    """
    _check_layer(n, a, "a")
    _check_layer(n, b, "b")
    _check_cap(comb(n, a), CROSS_CAP, f"C(n,a)=C({n},{a})")
    _check_cap(comb(n, b), CROSS_B_CAP, f"C(n,b)=C({n},{b})")
    a_masks, b_masks, missed_by_b = _cross_tables(n, a, b)
    width = len(b_masks) + 1

    def work(families):
        compatible = np.zeros(families.shape, dtype=np.int64)
        for missed in missed_by_b:
            compatible += meets_nothing_in(families, missed)
        sizes = popcount_array(families)
        return np.bincount(
            sizes * width + compatible, minlength=(len(a_masks) + 1) * width
        )

    hist = None
    for part in run_chunks(
        len(a_masks),
        work,
        threads=_resolve_threads(threads),
        progress=progress,
        desc=f"CI({n},{a},{b})",
    ):
        hist = part if hist is None else hist + part
    entries: Dict[int, int] = {}
    for index, count in enumerate(hist.tolist()):
        if count:
            t, free = divmod(index, width)
            entries[t] = entries.get(t, 0) + (count << free)
    profile = CrossPairProfile(n, a, b, dict(sorted(entries.items())))
    logger.info(f"Counted CI({n},{a},{b}) = {profile.total}.")
    return profile


def enumerate_maximal_intersecting(n: int, k: int) -> MaximalFamilyList:
    """
    All maximal intersecting families in the k-th layer: the maximal
    cliques of the intersection graph (maximal independent sets of the
    Kneser graph), found by networkx's pivoting Bron-Kerbosch.
    """
    _check_layer(n, k)
    _check_cap(comb(n, k), MAXIMAL_CAP, f"C(n,k)=C({n},{k})")
    G = intersection_graph(n, k)
    masks = layer(n, k)
    families = [
        SetFamily.from_masks(n, k, (masks[v] for v in clique))
        for clique in nx.find_cliques(G)
    ]
    families.sort(key=lambda f: f.masks)
    logger.info(
        f"Found {len(families)} maximal intersecting families "
        f"in ([{n}] choose {k})."
    )
    return MaximalFamilyList(n, k, families)


def _family_from_index(n: int, k: int, masks, index: int) -> SetFamily:
    return SetFamily.from_masks(
        n, k, (m for j, m in enumerate(masks) if index >> j & 1)
    )


def enumerate_maximal_cross_pairs(
    n: int, a: int, b: int
) -> List[Tuple[SetFamily, SetFamily]]:
    """
    All pairs (A', B') with A' = {A : A meets every B in B'} and
    B' = {B : B meets every A in A'}. The degenerate pairs (full, empty)
    and (empty, full) are included.
    """
    _check_layer(n, a, "a")
    _check_layer(n, b, "b")
    a_masks, b_masks, missed_by_b = _cross_tables(n, a, b)
    _check_cap(len(a_masks), CROSS_CAP, f"C(n,a)=C({n},{a})")
    _check_cap(len(b_masks), CROSS_CAP, f"C(n,b)=C({n},{b})")
    # for each a-set, the b-indices it is disjoint from
    missed_by_a = [
        index_masks(b_masks, lambda m, me=me: not m & me) for me in a_masks
    ]

    def work(families):
        dual = np.zeros(families.shape, dtype=np.uint64)
        for j, missed in enumerate(missed_by_b):
            hit = meets_nothing_in(families, missed).astype(np.uint64)
            dual |= hit << np.uint64(j)
        closure = np.zeros(families.shape, dtype=np.uint64)
        for i, missed in enumerate(missed_by_a):
            hit = meets_nothing_in(dual, missed).astype(np.uint64)
            closure |= hit << np.uint64(i)
        fixed = closure == families
        return list(zip(families[fixed].tolist(), dual[fixed].tolist()))

    pairs = []
    desc = f"maximal pairs({n},{a},{b})"
    for found in run_chunks(len(a_masks), work, desc=desc):
        for a_index, b_index in found:
            pairs.append(
                (
                    _family_from_index(n, a, a_masks, a_index),
                    _family_from_index(n, b, b_masks, b_index),
                )
            )
    logger.info(
        f"Found {len(pairs)} maximal cross-intersecting pairs "
        f"for ({n},{a},{b})."
    )
    return pairs


def minimal_generating_family(
    a_fam: SetFamily, b_fam: SetFamily
) -> SetFamily:
    """
    An inclusion-minimal M inside A' whose dual {B : B meets every M} is
    exactly B'. Members are tried for deletion in canonical order, each
    dropped as soon as the dual is unchanged without it.
    """
    if a_fam.n != b_fam.n:
        raise UsageError(
            f"Families live on different universes: "
            f"[{a_fam.n}] and [{b_fam.n}]."
        )
    n = a_fam.n
    target = b_fam.masks
    if dual_masks(a_fam.masks, n, b_fam.k) != target or dual_masks(
        target, n, a_fam.k
    ) != a_fam.masks:
        raise UsageError(
            "minimal_generating_family() needs a mutually maximal "
            "cross-intersecting pair."
        )
    kept = list(a_fam.masks)
    for mask in a_fam.masks:
        trial = [m for m in kept if m != mask]
        if dual_masks(trial, n, b_fam.k) == target:
            kept = trial
    logger.debug(
        f"Reduced a generating family from {len(a_fam)} to {len(kept)} sets."
    )
    return SetFamily.from_masks(n, a_fam.k, kept)


def max_compatible_B(n: int, a: int, b: int, t: int) -> int:
    """
    max |B| over cross-intersecting pairs with |A| = t. By Kruskal-Katona
    the optimum is attained by A = L^(a)(t), so this is the number of
    b-sets meeting every member of that lex segment.
    """
    _check_layer(n, a, "a")
    _check_layer(n, b, "b")
    if n < a + b:
        raise UsageError(
            f"max_compatible_B needs n >= a + b, got n={n}, a={a}, b={b}."
        )
    if not 0 <= t <= comb(n, a):
        raise UsageError(f"t={t} is outside 0 <= t <= C({n},{a}).")
    return len(dual_masks(lex_first(n, a, t).masks, n, b))


def count_nontrivial_subfamilies(n: int, k: int, i: int, S) -> int:
    """
    Exact number of non-trivial subfamilies of H(i, S) that contain S.
    Only elements of S can be common to such a subfamily, so it is
    non-trivial iff for every j in S some chosen set avoids j.
    """
    H = hilton_milner_family(n, k, i, S)
    s_mask = next(m for m in H.masks if not m >> (i - 1) & 1)
    others = [m for m in H.masks if m != s_mask]
    _check_cap(len(others), BRUTEFORCE_CAP, f"|H(i,S)|-1={len(others)}")
    avoiders = []
    rest = s_mask
    while rest:
        low = rest & -rest
        rest ^= low
        avoiders.append(index_masks(others, lambda m, low=low: not m & low))

    def work(families):
        ok = np.ones(families.shape, dtype=bool)
        for avoid in avoiders:
            ok &= ~meets_nothing_in(families, avoid)
        return int(np.count_nonzero(ok))

    return sum(run_chunks(len(others), work, desc="non-trivial subfamilies"))


def random_cross_intersecting_pair(
    n: int, a: int, b: int, rng: np.random.Generator
) -> Tuple[SetFamily, SetFamily]:
    """
    A random nonempty A (at most 2n sets), then a random nonempty
    subfamily of the b-sets meeting all of A. Sets are dropped from the
    end of A until at least one b-set meets all of it; a single a-set
    always has a partner.
    """
    a_masks = layer(n, a)
    size = int(rng.integers(1, min(len(a_masks), 2 * n) + 1))
    order = [int(i) for i in rng.permutation(len(a_masks))[:size]]
    dual = dual_masks([a_masks[i] for i in order], n, b)
    while not dual and len(order) > 1:
        order.pop()
        dual = dual_masks([a_masks[i] for i in order], n, b)
    a_fam = SetFamily.from_masks(n, a, (a_masks[i] for i in order))
    keep = rng.random()
    kept = [m for m in dual if rng.random() < keep]
    if not kept and dual:
        kept = [dual[int(rng.integers(0, len(dual)))]]
    return a_fam, SetFamily.from_masks(n, b, kept)
