"""Closed-form values and bounds for the game chromatic number of
K_{r1,...,rk}, each reported together with its applicability conditions.

The exact-value table covers every shape without singletons (and the two
small-k rows); shapes with a singleton and k >= 3 are exactly the open
territory, so the table answers "not applicable" there and the solver is
the only authority.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import Partition

EXACT = "exact"
UPPER = "upper"
LOWER = "lower"


@dataclass(frozen=True)
class BoundReport:
    """One bound (or exact value) with its provenance and applicability."""

    source: str  # table1 | dunn | cor_a1 | cor_a2 | cor_a3 | cor_b1_main | cor_b1_2 | cor_b1_3
    kind: str  # exact | upper | lower
    value: Optional[int]
    applicable: bool
    reason: str = field(default="", compare=False)

    def to_dict(self) -> dict:
        d = {
            "source": self.source,
            "kind": self.kind,
            "value": self.value,
            "applicable": self.applicable,
        }
        if not self.applicable:
            d["reason"] = self.reason
        return d


def ceil_half_sum(partition: Partition) -> int:
    """Sum over parts of ceil(r_i / 2)."""
    return sum((r + 1) // 2 for r in partition.sizes)


def table1_chi_g(partition: Partition) -> Optional[int]:
    """Exact game chromatic number per the summary table; None when the
    shape has a singleton with k >= 3 (no formula is known there)."""
    sizes = partition.sizes
    k = partition.k
    if k == 1:
        return 1
    if k == 2:
        return 2 if sizes[1] == 1 else 3
    smallest = sizes[-1]
    if smallest == 1:
        return None
    has_triple = 3 in sizes
    if smallest == 2:
        if partition.n % 2 == 0:
            return 2 * k - 2 if has_triple else 2 * k - 1
        cap = ceil_half_sum(partition)
        return min(2 * k - 2, cap) if has_triple else min(2 * k - 1, cap)
    if smallest == 3:
        return 2 * k - 2
    return 2 * k - 1


def table1_report(partition: Partition) -> BoundReport:
    value = table1_chi_g(partition)
    if value is None:
        return BoundReport(
            "table1", EXACT, None, False, "singleton present with k >= 3"
        )
    return BoundReport("table1", EXACT, value, True)


def dunn_uniform(k: int, r: int) -> int:
    """Exact value for the uniform shape K_{r,...,r} (k parts of size r).

    The size-3 exception applies to any k >= 3: three-vertex parts are the
    one shape that lets the first player close a part she opened with only
    two colors spent, saving one color overall. (Parts of size >= 4 do not:
    the opponent always gets a second, fresh-colored move in them.)
    """
    if k < 1 or r < 1:
        raise ValueError("k and r must be positive")
    if k == 1:
        return 1
    if r == 3 and k >= 3:
        return 2 * k - 2
    return 2 * k - 1


def _dunn_report(partition: Partition) -> BoundReport:
    sizes = partition.sizes
    k = partition.k
    if len(set(sizes)) != 1:
        return BoundReport("dunn", EXACT, None, False, "parts are not all equal")
    r = sizes[0]
    if r == 1 and k >= 2:
        # K_{1,...,1} is a complete graph; the uniform formula's domain
        # excludes all-singleton shapes (a partition is taken with minimum k).
        return BoundReport(
            "dunn", EXACT, None, False, "all-singleton shape is outside the formula's domain"
        )
    return BoundReport("dunn", EXACT, dunn_uniform(k, r), True)


def bounds(partition: Partition) -> list[BoundReport]:
    """Every bound with its side conditions evaluated for this shape."""
    sizes = partition.sizes
    k = partition.k
    n = partition.n
    smallest = sizes[-1]
    has_triple = 3 in sizes
    cap = ceil_half_sum(partition)
    even = n % 2 == 0

    reports = [table1_report(partition), _dunn_report(partition)]

    reports.append(BoundReport("cor_a1", UPPER, 2 * k - 1, True))

    if k >= 3 and has_triple:
        reports.append(BoundReport("cor_a2", UPPER, 2 * k - 2, True))
    else:
        reason = "needs k >= 3" if k < 3 else "no part of size exactly 3"
        reports.append(BoundReport("cor_a2", UPPER, None, False, reason))

    if n % 2 == 1:
        reports.append(BoundReport("cor_a3", UPPER, cap, True))
    else:
        reports.append(BoundReport("cor_a3", UPPER, None, False, "n is even"))

    if smallest >= 4:
        reports.append(BoundReport("cor_b1_main", LOWER, 2 * k - 1, True))
    else:
        reports.append(
            BoundReport("cor_b1_main", LOWER, None, False, "smallest part is below 4")
        )

    if k >= 3 and smallest >= 2 and not has_triple:
        value = 2 * k - 1 if even else min(2 * k - 1, cap)
        reports.append(BoundReport("cor_b1_2", LOWER, value, True))
    else:
        if k < 3:
            reason = "needs k >= 3"
        elif smallest < 2:
            reason = "singleton present"
        else:
            reason = "a part of size exactly 3 is present"
        reports.append(BoundReport("cor_b1_2", LOWER, None, False, reason))

    # The size-3 counterpart additionally needs no singletons: with one
    # present the bound is simply false (e.g. three colors finish K_{3,3,1}).
    if k >= 3 and has_triple and smallest >= 2:
        value = 2 * k - 2 if even else min(2 * k - 2, cap)
        reports.append(BoundReport("cor_b1_3", LOWER, value, True))
    else:
        if k < 3:
            reason = "needs k >= 3"
        elif not has_triple:
            reason = "no part of size exactly 3"
        else:
            reason = "singleton present"
        reports.append(BoundReport("cor_b1_3", LOWER, None, False, reason))

    return reports


def best_bounds(partition: Partition) -> tuple[Optional[int], Optional[int]]:
    """(max applicable lower bound, min applicable upper bound)."""
    lower = [r.value for r in bounds(partition) if r.applicable and r.kind == LOWER]
    upper = [r.value for r in bounds(partition) if r.applicable and r.kind == UPPER]
    return (max(lower) if lower else None, min(upper) if upper else None)
