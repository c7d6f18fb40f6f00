"""The claimed fast k-matching count and its pre-interchange form.

fast_count evaluates, in exact rational arithmetic,

    1/(k!(n-k)!2^k) * sum_{l=1..k} (n-l)! g'_k(l) * B(ground set)

where B sums f(pi) * prod over blocks of power_sum(degrees, |block|) over
set partitions of the ground set.  Which ground set is the contested part:

* index_convention="corrected" partitions {1..l}, so B varies with l (the
  dimensionally consistent reading of the substitution step);
* index_convention="paper" partitions {1..k} for every l, exactly as the
  final display states, so B is a single k-dependent bracket.

Together with the contested g' base row (gmode), this gives four variants.
None of them is asserted correct here; the harness compares each against
brute-force ground truth and records verdicts.

lemma7_eval is the same quantity before the summation interchange and
power-sum factorization: fully nested j-tuple and p-tuple sums, kept
literal so the interchange itself can be checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod
from typing import Sequence

from .coeffs import GMODES, compute_f, compute_gprime
from .errors import CapacityError
from .exact import factorial
from .graph import Graph, degree_vector
from .partitions import SetPartition, enumerate_partitions

INDEX_CONVENTIONS = ("paper", "corrected")

MAX_FAST_K = 12  # Bell-number guard
MAX_LEMMA7_N = 5


@dataclass(frozen=True)
class FastCountOptions:
    """The two contested conventions, always explicit, never compile-time."""

    gmode: str = "corrected"
    index_convention: str = "corrected"

    def __post_init__(self) -> None:
        if self.gmode not in GMODES:
            raise ValueError(f"unknown gmode {self.gmode!r}, expected one of {GMODES}")
        if self.index_convention not in INDEX_CONVENTIONS:
            raise ValueError(
                f"unknown index_convention {self.index_convention!r}, "
                f"expected one of {INDEX_CONVENTIONS}"
            )


@dataclass(frozen=True)
class CountResult:
    """Exact output of fast_count; never rounded, integrality flagged."""

    value: Fraction
    is_integral: bool
    n: int
    k: int
    options: FastCountOptions


def power_sum(d: Sequence[int], e: int) -> int:
    """Sum over vertices p of d[p]**e."""
    if e < 1:
        raise ValueError(f"exponent must be positive, got {e}")
    return sum(x**e for x in d)


def partition_product(d: Sequence[int], pi: SetPartition) -> int:
    """Product over blocks B of pi of power_sum(d, |B|)."""
    return prod(power_sum(d, len(b)) for b in pi.blocks)


def fast_count(g: Graph, k: int, options: FastCountOptions | None = None) -> CountResult:
    """Evaluate the claimed formula exactly under the chosen conventions.

    Power sums are precomputed once per exponent, so the cost is one degree
    pass plus one product per set partition of the ground set(s).  When
    k > n the claimed count is 0 by convention (no k-matching can exist and
    the (n-k)! prefactor is undefined).
    """
    if options is None:
        options = FastCountOptions()
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if k > MAX_FAST_K:
        raise CapacityError(f"partition table refused: k={k} > {MAX_FAST_K}")
    n = g.n
    if k > n:
        return CountResult(Fraction(0), True, n, k, options)
    d = degree_vector(g)
    sums = {e: power_sum(d, e) for e in range(1, k + 1)}
    gp = compute_gprime(k, options.gmode)
    ftab = compute_f(k)
    by_m: dict[int, list[tuple[int, tuple[int, ...]]]] = {m: [] for m in range(1, k + 1)}
    for pi, fv in ftab.values.items():
        by_m[pi.m].append((fv, tuple(len(b) for b in pi.blocks)))

    def bracket(m: int) -> int:
        return sum(fv * prod(sums[sz] for sz in sizes) for fv, sizes in by_m[m])

    if options.index_convention == "paper":
        total = bracket(k) * sum(factorial(n - l) * gp[l] for l in range(1, k + 1))
    else:
        total = sum(factorial(n - l) * gp[l] * bracket(l) for l in range(1, k + 1))
    value = Fraction(total, factorial(k) * factorial(n - k) * 2**k)
    return CountResult(value, value.denominator == 1, n, k, options)


def lemma7_eval(g: Graph, k: int, options: FastCountOptions | None = None) -> Fraction:
    """The partition-expanded form before the summation interchange, literal.

    For each l the j-tuple and the per-partition p-tuple are fully nested
    explicit sums over {1..n}^m and {1..n}^q; the ground set m follows the
    chosen index convention (m=l corrected, m=k paper).
    """
    if options is None:
        options = FastCountOptions()
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    n = g.n
    if n > MAX_LEMMA7_N:
        raise CapacityError(f"nested tuple sum refused: n={n} > {MAX_LEMMA7_N}")
    if k > n:
        return Fraction(0)
    adj = g.adj
    gp = compute_gprime(k, options.gmode)
    ftab = compute_f(k)
    total = 0
    for l in range(1, k + 1):
        m = k if options.index_convention == "paper" else l
        parts = [
            (
                ftab[pi],
                len(pi.blocks),
                [(i - 1, h) for h, b in enumerate(pi.blocks) for i in b],
            )
            for pi in enumerate_partitions(m)
        ]
        s_l = 0
        for jt in product(range(n), repeat=m):
            for fv, q, pairs in parts:
                inner = 0
                for pt in product(range(n), repeat=q):
                    term = 1
                    for i, h in pairs:
                        if not adj[jt[i]][pt[h]]:
                            term = 0
                            break
                    inner += term
                s_l += fv * inner
        total += factorial(n - l) * gp[l] * s_l
    return Fraction(total, factorial(k) * factorial(n - k) * 2**k)
