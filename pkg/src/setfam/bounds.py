"""
Executable forms of the classical extremal bounds for intersecting and
cross-intersecting families, each paired with a checker that measures the
bound against exhaustively enumerated families.
"""
import logging
import json
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from .enumeration import (
    count_cross_pairs,
    enumerate_maximal_cross_pairs,
    enumerate_maximal_intersecting,
    max_compatible_B,
    minimal_generating_family,
    random_cross_intersecting_pair,
)
from .constructions import dual_masks
from .exceptions import UsageError, ValidationError
from .family import KSet, SetFamily, Universe
from .lex import lex_first
from .numerics import (
    Real,
    binom_real,
    ceil_with_slack,
    floor_with_slack,
    solve_lovasz_x,
    working_context,
)
from .predicates import (
    diversity,
    is_cross_intersecting,
    is_intersecting,
)

logger = logging.getLogger("setfam")

Value = Union[int, Fraction, Decimal]


def format_value(value) -> Optional[str]:
    # exact integers as decimal strings, rationals as "p/q"
    if value is None:
        return None
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass
class BoundReport:
    """
    One bound evaluated at one parameter point. `witness_value` is the
    observed quantity the bound is compared against (a family size, a
    count, or the left-hand side of an audited inequality).
    """

    name: str
    parameters: Dict[str, object]
    bound_value: Value
    witness_value: Optional[Value] = None
    satisfied: Optional[bool] = None
    note: Optional[str] = None
    relation: str = "<="

    def __post_init__(self):
        if self.satisfied is None:
            if self.witness_value is None:
                self.satisfied = True
            elif self.relation == "=":
                self.satisfied = self.witness_value == self.bound_value
            else:
                self.satisfied = self.witness_value <= self.bound_value

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "params": {
                k: v if isinstance(v, int) else format_value(v)
                for k, v in self.parameters.items()
            },
            "bound": format_value(self.bound_value),
            "witness": format_value(self.witness_value),
            "satisfied": self.satisfied,
        }
        if self.relation != "<=":
            out["relation"] = self.relation
        if self.note:
            out["note"] = self.note
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


@dataclass
class SetPairSystem:
    n: int
    pairs: List[Tuple[KSet, KSet]] = field(default_factory=list)

    def __post_init__(self):
        Universe(self.n)
        for index, (A, B) in enumerate(self.pairs, start=1):
            if A.n != self.n or B.n != self.n:
                raise UsageError(
                    f"Pair {index} does not live on [{self.n}]."
                )

    @classmethod
    def from_sets(cls, n: int, pairs) -> "SetPairSystem":
        return cls(
            n,
            [
                (KSet.from_elements(n, A), KSet.from_elements(n, B))
                for A, B in pairs
            ],
        )

    @classmethod
    def from_dict(cls, data: dict) -> "SetPairSystem":
        try:
            n, pairs = data["n"], data["pairs"]
        except (KeyError, TypeError):
            raise UsageError(
                'A set-pair system must have keys "n" and "pairs".'
            )
        system = cls.from_sets(n, pairs)
        for key in ("a", "b"):
            if not len(system) or key not in data:
                continue
            if getattr(system, key) != data[key]:
                raise UsageError(
                    f"Declared {key}={data[key]} does not match the pairs."
                )
        return system

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "a": self.a if self.pairs else None,
            "b": self.b if self.pairs else None,
            "pairs": [[list(A.elements), list(B.elements)] for A, B in self],
        }

    def _uniformity(self, side: int) -> int:
        sizes = {pair[side].k for pair in self.pairs}
        if len(sizes) > 1:
            label = "A" if side == 0 else "B"
            raise UsageError(
                f"The {label}-sets have mixed sizes {sorted(sizes)}."
            )
        return sizes.pop() if sizes else 0

    @property
    def a(self) -> int:
        return self._uniformity(0)

    @property
    def b(self) -> int:
        return self._uniformity(1)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


def _check_positive(**values):
    for name, value in values.items():
        if isinstance(value, bool) or not isinstance(value, int):
            raise UsageError(f"{name} must be an integer, got {value!r}.")
        if value < 1:
            raise UsageError(f"{name} must be positive, got {name}={value}.")


def as_real(value) -> Real:
    """
    Normalise a real parameter. ints, Fractions and Decimals pass through;
    floats and rational strings such as "2.5" or "5/2" become Fractions.
    """
    if isinstance(value, bool):
        raise UsageError(f"Expected a real number, got {value!r}.")
    if isinstance(value, (int, Fraction, Decimal)):
        return value
    if isinstance(value, float):
        return Fraction(value)
    try:
        value = Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"Cannot read {value!r} as a real number.")
    return value.numerator if value.denominator == 1 else value


# Erdos-Ko-Rado and Hilton-Milner


def ekr_bound(n: int, k: int) -> int:
    """Maximum size of an intersecting family of k-subsets of [n]."""
    _check_positive(n=n, k=k)
    if n < 2 * k:
        raise UsageError(f"The EKR bound needs n >= 2k, got n={n}, k={k}.")
    return comb(n - 1, k - 1)


def hm_bound(n: int, k: int) -> int:
    """Maximum size of a non-trivial intersecting family."""
    _check_positive(n=n, k=k)
    if n <= 2 * k:
        raise UsageError(
            f"The Hilton-Milner bound needs n > 2k, got n={n}, k={k}."
        )
    return comb(n - 1, k - 1) - comb(n - k - 1, k - 1) + 1


def ekr_check(n: int, k: int) -> List[BoundReport]:
    """
    Largest maximal intersecting family against ekr_bound, and for n > 2k
    the largest non-trivial one against hm_bound.
    """
    families = enumerate_maximal_intersecting(n, k)
    reports = [
        BoundReport(
            "ekr",
            {"n": n, "k": k},
            ekr_bound(n, k),
            families.largest_size(),
        )
    ]
    if n > 2 * k:
        reports.append(
            BoundReport(
                "hm",
                {"n": n, "k": k},
                hm_bound(n, k),
                families.largest_size(nontrivial=True),
            )
        )
    return reports


# Bollobas set-pair inequality


def complement_system(a: int, b: int) -> SetPairSystem:
    """Every a-subset A of [a+b] paired with its complement."""
    _check_positive(a=a, b=b)
    n = a + b
    full = (1 << n) - 1
    pairs = []
    for combo in combinations(range(1, n + 1), a):
        A = KSet.from_elements(n, combo)
        pairs.append((A, KSet(full & ~A.mask, n)))
    return SetPairSystem(n, pairs)


def bollobas_verify(system: SetPairSystem) -> BoundReport:
    a, b = system.a, system.b
    for i, (A, _) in enumerate(system.pairs):
        for j, (_, B) in enumerate(system.pairs):
            disjoint = A.isdisjoint(B)
            if i == j and not disjoint:
                raise ValidationError(
                    f"A_{i + 1}={A} and B_{i + 1}={B} must be disjoint.",
                    pair=(i + 1, j + 1),
                )
            if i != j and disjoint:
                raise ValidationError(
                    f"A_{i + 1}={A} and B_{j + 1}={B} must intersect.",
                    pair=(i + 1, j + 1),
                )
    return BoundReport(
        "bollobas",
        {"n": system.n, "a": a, "b": b},
        comb(a + b, a),
        len(system),
    )


# Kruskal-Katona and Lovasz


def kk_compress_check(a_fam: SetFamily, b_fam: SetFamily) -> bool:
    """
    Replace both families by lexicographic initial segments of the same
    sizes and report whether the segments still cross-intersect.
    """
    if not is_cross_intersecting(a_fam, b_fam):
        raise UsageError(
            "kk_compress_check() needs a cross-intersecting pair."
        )
    n = a_fam.n
    return is_cross_intersecting(
        lex_first(n, a_fam.k, len(a_fam)),
        lex_first(n, b_fam.k, len(b_fam)),
    )


@dataclass
class PropertySuiteResult:
    cases: int
    seed: int
    failures: List[Tuple[SetFamily, SetFamily]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def kk_property_suite(
    cases: int = 1000, seed: int = 0, max_n: int = 8
) -> PropertySuiteResult:
    """
    kk_compress_check on `cases` seeded random cross-intersecting pairs.
    Every draw has a + b <= n and both families nonempty, so the pairs do
    not cross-intersect for free.
    """
    if max_n < 2:
        raise UsageError(f"max_n must be at least 2, got {max_n}.")
    rng = np.random.default_rng(seed)
    result = PropertySuiteResult(cases=cases, seed=seed)
    for _ in range(cases):
        n = int(rng.integers(2, max_n + 1))
        a = int(rng.integers(1, n))
        b = int(rng.integers(1, n - a + 1))
        a_fam, b_fam = random_cross_intersecting_pair(n, a, b, rng)
        if not kk_compress_check(a_fam, b_fam):
            result.failures.append((a_fam, b_fam))
    logger.info(
        f"Kruskal-Katona compression held on "
        f"{cases - len(result.failures)}/{cases} random pairs."
    )
    return result


def _check_cross_params(n: int, a: int, b: int):
    _check_positive(n=n, a=a, b=b)
    Universe(n)
    if a > n or b > n:
        raise UsageError(f"Need a, b <= n, got n={n}, a={a}, b={b}.")


def lovasz_bound(n: int, a: int, b: int, m: int) -> int:
    """
    Upper bound on |B| for B cross-intersecting with some A of size m:
    C(n, b) - C(x, b) where C(x, n - a) = m.
    """
    _check_cross_params(n, a, b)
    if n < a + b:
        raise UsageError(
            f"The Lovasz bound needs n >= a + b, got n={n}, a={a}, b={b}."
        )
    x = solve_lovasz_x(m, n - a)
    with working_context(comb(n, b)):
        value = comb(n, b) - binom_real(x, b)
    return floor_with_slack(value)


def lovasz_check(n: int, a: int, b: int) -> List[BoundReport]:
    reports = []
    for t in range(1, comb(n, a) + 1):
        x = solve_lovasz_x(t, n - a)
        reports.append(
            BoundReport(
                "lovasz",
                {"n": n, "a": a, "b": b, "t": t},
                lovasz_bound(n, a, b, t),
                max_compatible_B(n, a, b, t),
                note="integer x" if isinstance(x, int) else None,
            )
        )
    return reports


# Frankl-Tokushige / Kupavskii-Zakharov


def _check_alpha(n: int, a: int, b: int, alpha: Real):
    _check_cross_params(n, a, b)
    if n <= a + b:
        raise UsageError(f"Need n > a + b, got n={n}, a={a}, b={b}.")
    if not 1 <= alpha <= a:
        raise UsageError(f"alpha={alpha} is outside 1 <= alpha <= a={a}.")


def ft_kz_value(n: int, a: int, b: int, alpha) -> Real:
    """C(n, b) + C(n - alpha, a - alpha) - C(n - alpha, b), unfloored."""
    alpha = as_real(alpha)
    _check_alpha(n, a, b, alpha)
    with working_context(comb(n, b)):
        return (
            comb(n, b)
            + binom_real(n - alpha, n - a)
            - binom_real(n - alpha, b)
        )


def ft_kz_bound(n: int, a: int, b: int, alpha) -> int:
    """Upper bound on |A| + |B| inside the window of ft_kz_window."""
    return floor_with_slack(ft_kz_value(n, a, b, alpha))


def ft_kz_window(n: int, a: int, b: int, alpha) -> Tuple[int, int]:
    """Integer sizes t with C(n - alpha, n - a) <= t <= C(n-a+b-1, n-a)."""
    alpha = as_real(alpha)
    _check_alpha(n, a, b, alpha)
    with working_context():
        low = ceil_with_slack(binom_real(n - alpha, n - a))
    high = comb(n - a + b - 1, n - a)
    return low, min(high, comb(n, a))


def ft_kz_check(n: int, a: int, b: int, alpha) -> BoundReport:
    """
    Exhaustive maximum of |A| + |B| over cross-intersecting pairs with |A|
    in the window, using the exact max_compatible_B profile.
    """
    low, high = ft_kz_window(n, a, b, alpha)
    params = {"n": n, "a": a, "b": b, "alpha": as_real(alpha)}
    bound = ft_kz_bound(n, a, b, alpha)
    if low > high:
        logger.warning(
            f"The size window [{low}, {high}] is empty at "
            f"n={n}, a={a}, b={b}, alpha={alpha}; nothing to check."
        )
        return BoundReport("ftkz", params, bound, note="empty window")
    best = max(
        t + max_compatible_B(n, a, b, t) for t in range(low, high + 1)
    )
    return BoundReport(
        "ftkz", params, bound, best, note=f"window [{low}, {high}]"
    )


# Frankl's diversity bound


def _check_u(n: int, k: int, u: Real):
    _check_positive(n=n, k=k)
    if n <= 2 * k:
        raise UsageError(f"Need n > 2k, got n={n}, k={k}.")
    if not 3 <= u <= k:
        raise UsageError(f"u={u} is outside 3 <= u <= k={k}.")


def frankl_diversity_threshold(n: int, k: int, u) -> Real:
    """C(n - u - 1, k - u), the diversity that triggers the size cap."""
    u = as_real(u)
    _check_u(n, k, u)
    with working_context():
        return binom_real(n - u - 1, n - k - 1)


def frankl_diversity_bound(n: int, k: int, u) -> int:
    u = as_real(u)
    _check_u(n, k, u)
    with working_context(comb(n - 1, k - 1)):
        value = (
            comb(n - 1, k - 1)
            + binom_real(n - u - 1, n - k - 1)
            - binom_real(n - u - 1, k - 1)
        )
    return floor_with_slack(value)


def frankl_diversity_check(n: int, k: int, u) -> BoundReport:
    """
    Diversity never drops when sets are added, so a family reaching the
    threshold lies in a maximal family that also reaches it; the maximum
    over maximal families is therefore the maximum over all families.
    """
    threshold = frankl_diversity_threshold(n, k, u)
    best = 0
    for fam in enumerate_maximal_intersecting(n, k):
        if diversity(fam).gamma >= threshold and len(fam) > best:
            best = len(fam)
    return BoundReport(
        "frankl",
        {"n": n, "k": k, "u": as_real(u)},
        frankl_diversity_bound(n, k, u),
        best,
        note=f"diversity threshold {format_value(threshold)}",
    )


# Counting maximal objects and the cross-pair decomposition


def maximal_pairs_bound(n: int, a: int, b: int) -> int:
    """[C(n,a) C(n,b)]^C(a+b,a) bounds the number of maximal cross pairs."""
    _check_cross_params(n, a, b)
    return (comb(n, a) * comb(n, b)) ** comb(a + b, a)


def maximal_families_bound(n: int, k: int) -> int:
    _check_positive(n=n, k=k)
    return comb(n, k) ** comb(2 * k - 1, k - 1)


def maximal_pairs_check(n: int, a: int, b: int) -> BoundReport:
    pairs = enumerate_maximal_cross_pairs(n, a, b)
    return BoundReport(
        "maximal_pairs",
        {"n": n, "a": a, "b": b},
        maximal_pairs_bound(n, a, b),
        len(pairs),
    )


def maximal_families_check(n: int, k: int) -> BoundReport:
    return BoundReport(
        "maximal_families",
        {"n": n, "k": k},
        maximal_families_bound(n, k),
        len(enumerate_maximal_intersecting(n, k)),
    )


def generating_family_check(n: int, a: int, b: int) -> BoundReport:
    """
    For every maximal cross pair (A', B'), a minimal generating family of
    B' inside A' has at most C(a+b, a) members and regenerates B'.
    """
    largest = 0
    for a_fam, b_fam in enumerate_maximal_cross_pairs(n, a, b):
        gen = minimal_generating_family(a_fam, b_fam)
        if dual_masks(gen.masks, n, b) != b_fam.masks:
            raise ValidationError(
                f"Generating family {gen.masks} does not regenerate B'."
            )
        largest = max(largest, len(gen))
    return BoundReport(
        "lemma1", {"n": n, "a": a, "b": b}, comb(a + b, a), largest
    )


def cross_ekr_check(n: int, a: int) -> BoundReport:
    """
    For cross-intersecting A, B of a-sets, min(|A|, |B|) <= C(n-1, a-1).
    Maximal pairs dominate every pair, so they are enough.
    """
    _check_positive(n=n, a=a)
    if n < 2 * a:
        raise UsageError(f"Need n >= 2a, got n={n}, a={a}.")
    pairs = enumerate_maximal_cross_pairs(n, a, a)
    worst = max(min(len(A), len(B)) for A, B in pairs)
    return BoundReport(
        "cross_ekr", {"n": n, "a": a}, comb(n - 1, a - 1), worst
    )


def ci_decomposition_check(n: int, a: int, b: int) -> List[BoundReport]:
    """
    With c = b >= a and T = C(n-a+b-1, n-a): for b > a every pair has
    |A| <= T, so CI = CI(0) + CI([1,T]); for a = b the count is sandwiched
    by 2 CI(0) - 1 <= CI <= 2 (CI(0) + CI([1,T])).
    """
    _check_cross_params(n, a, b)
    if a > b:
        a, b = b, a
    profile = count_cross_pairs(n, a, b)
    T = comb(n - a + b - 1, n - a)
    zero, middle = profile[0], profile.in_range(1, T)
    params = {"n": n, "a": a, "b": b, "T": T}
    if a < b:
        return [
            BoundReport(
                "ci_decomposition",
                params,
                zero + middle,
                profile.total,
                relation="=",
            )
        ]
    return [
        BoundReport(
            "ci_decomposition.lower", params, profile.total, 2 * zero - 1
        ),
        BoundReport(
            "ci_decomposition.upper",
            params,
            2 * (zero + middle),
            profile.total,
        ),
    ]


def max_compatible_report(n: int, a: int, b: int, t: int) -> BoundReport:
    return BoundReport(
        "maxb",
        {"n": n, "a": a, "b": b, "t": t},
        max_compatible_B(n, a, b, t),
    )


def witness_report(
    name: str, params: Dict[str, object], bound: Value, fam: SetFamily
) -> BoundReport:
    """A user-supplied intersecting family measured against a size bound."""
    if not is_intersecting(fam):
        raise ValidationError("The witness family is not intersecting.")
    return BoundReport(name, params, bound, len(fam))

