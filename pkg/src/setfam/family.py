import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

from .exceptions import UsageError
from .utils import popcount, mask_from_elements, elements_from_mask

# set up logging
from .logger import setup_logger

setup_logger()
logger = logging.getLogger("setfam")

# one machine word per set
MAX_UNIVERSE = 30


def _check_n(n):
    if isinstance(n, bool) or not isinstance(n, int):
        raise UsageError(f"Universe size must be an integer, got {n!r}.")
    if not 1 <= n <= MAX_UNIVERSE:
        raise UsageError(
            f"Universe size n={n} is outside the supported range "
            f"1 <= n <= {MAX_UNIVERSE}."
        )


@dataclass(frozen=True)
class Universe:
    n: int

    def __post_init__(self):
        _check_n(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def __iter__(self) -> Iterator[int]:
        return iter(range(1, self.n + 1))

    def __len__(self):
        return self.n


@dataclass(frozen=True)
class KSet:
    """A subset of [n] stored as an n-bit mask; element e is bit e-1."""

    mask: int
    n: int

    def __post_init__(self):
        _check_n(self.n)
        if self.mask < 0 or self.mask >> self.n:
            raise UsageError(
                f"Mask {self.mask:#x} has bits outside [{self.n}]."
            )

    @classmethod
    def from_elements(cls, n: int, elements: Iterable[int]) -> "KSet":
        elements = list(elements)
        for e in elements:
            if isinstance(e, bool) or not isinstance(e, int):
                raise UsageError(f"Set elements must be integers, got {e!r}.")
            if not 1 <= e <= n:
                raise UsageError(f"Element {e} is not in [{n}].")
        if len(set(elements)) != len(elements):
            raise UsageError(f"Set {elements} has repeated elements.")
        return cls(mask_from_elements(elements), n)

    @property
    def k(self) -> int:
        return popcount(self.mask)

    @property
    def elements(self) -> Tuple[int, ...]:
        return elements_from_mask(self.mask)

    def isdisjoint(self, other: "KSet") -> bool:
        return self.mask & other.mask == 0

    def __contains__(self, element: int) -> bool:
        return 1 <= element <= self.n and bool(self.mask >> (element - 1) & 1)

    def __len__(self):
        return self.k

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return "{" + ",".join(str(e) for e in self.elements) + "}"


@lru_cache(maxsize=None)
def layer(n: int, k: int) -> Tuple[int, ...]:
    """All k-subsets of [n] as masks, in canonical (increasing mask) order."""
    _check_n(n)
    if k < 0 or k > n:
        return ()
    masks = [
        mask_from_elements(c) for c in combinations(range(1, n + 1), k)
    ]
    return tuple(sorted(masks))


SetLike = Union[KSet, Sequence[int]]


@dataclass(frozen=True)
class SetFamily:
    n: int
    k: int
    members: Tuple[KSet, ...] = ()

    def __post_init__(self):
        _check_n(self.n)
        if isinstance(self.k, bool) or not isinstance(self.k, int):
            raise UsageError(f"Uniformity must be an integer, got {self.k!r}.")
        if not 0 <= self.k <= self.n:
            raise UsageError(
                f"Uniformity k={self.k} is outside 0 <= k <= n={self.n}."
            )
        members = tuple(self.members)
        for member in members:
            if member.n != self.n:
                raise UsageError(
                    f"Member {member} lives on [{member.n}], "
                    f"family universe is [{self.n}]."
                )
            if member.k != self.k:
                raise UsageError(
                    f"Member {member} has {member.k} elements, "
                    f"family is {self.k}-uniform."
                )
        members = tuple(sorted(members, key=lambda s: s.mask))
        for prev, cur in zip(members, members[1:]):
            if prev.mask == cur.mask:
                raise UsageError(f"Family contains {cur} twice.")
        object.__setattr__(self, "members", members)

    @classmethod
    def from_masks(cls, n: int, k: int, masks: Iterable[int]) -> "SetFamily":
        return cls(n, k, tuple(KSet(m, n) for m in set(masks)))

    @classmethod
    def from_sets(
        cls, n: int, k: int, sets: Iterable[Iterable[int]]
    ) -> "SetFamily":
        kept = {}
        for s in sets:
            kset = KSet.from_elements(n, s)
            kept[kset.mask] = kset
        return cls(n, k, tuple(kept.values()))

    @classmethod
    def from_dict(cls, data: dict) -> "SetFamily":
        try:
            n, k, sets = data["n"], data["k"], data["sets"]
        except (KeyError, TypeError):
            raise UsageError(
                'A family must be an object with keys "n", "k" and "sets".'
            )
        return cls.from_sets(n, k, sets)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "sets": [list(m.elements) for m in self.members],
        }

    @property
    def universe(self) -> Universe:
        return Universe(self.n)

    @property
    def masks(self) -> Tuple[int, ...]:
        return tuple(m.mask for m in self.members)

    def mask_set(self) -> frozenset:
        return frozenset(self.masks)

    def __len__(self):
        return len(self.members)

    def __iter__(self) -> Iterator[KSet]:
        return iter(self.members)

    def __contains__(self, item: SetLike) -> bool:
        if isinstance(item, KSet):
            mask = item.mask if item.n == self.n else -1
        else:
            mask = mask_from_elements(item)
        return any(m.mask == mask for m in self.members)

    def __repr__(self):
        inner = ", ".join(repr(m) for m in self.members)
        return f"SetFamily(n={self.n}, k={self.k}, [{inner}])"


@dataclass(frozen=True)
class DiversityResult:
    delta: int
    gamma: int
    witness: Optional[int] = None
