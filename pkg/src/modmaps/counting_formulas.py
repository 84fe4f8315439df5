"""Exact arbitrary-precision evaluation of the closed counting formulas.

Everything here is integer/rational arithmetic; no floating point anywhere.
The counts are:

* ``tutte_rooted_all(n)``       rooted planar maps with n edges (all maps);
* ``mullin_rooted_trivalent(e)`` rooted planar trivalent maps with e edges;
* ``n_rooted(mu)``              torsion-free genus-0 subgroups of index mu
                                (equals the trivalent rooted count at mu/2
                                edges; 0 unless 6 divides mu);
* ``n_classes(mu)``             their conjugacy classes (unrooted trivalent
                                maps, via the divisor/rotation sum);
* ``liskovets_unrooted_all(n)`` a recursion for unrooted planar maps with n
                                edges, shipped verbatim but EXPERIMENTAL: it
                                disagrees with the hand count of 2-edge maps
                                and goes non-integral at n=4, so it must
                                never be treated as ground truth.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import List

#: Hand-enumerated unrooted planar maps with 2 edges (loop-loop nested,
#: loop-loop disjoint, loop+link, double link / path); the experimental
#: general-maps recursion returns 5 for the same count, which is one reason
#: it is quarantined.
UNROOTED_ALL_MAPS_2_EDGES_BY_HAND = 4


class NonIntegralResult(ArithmeticError):
    """An allegedly integer-valued formula produced a non-integer.

    For n_classes this signals a transcription bug and must never fire when
    6 | mu; for the experimental general-maps recursion it fires at n=4.
    """


class ExperimentalFormula(ValueError):
    """An experimental (unverified) formula was called without opting in."""


_fact = lru_cache(maxsize=None)(math.factorial)


def totient(n: int) -> int:
    """Euler's totient function phi(n) for n >= 1."""
    if n < 1:
        raise ValueError(f"totient requires n >= 1, got {n}")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if m > 1:
        result -= result // m
    return result


def _proper_divisors(n: int) -> List[int]:
    """All divisors t of n with t < n, ascending."""
    small = [t for t in range(1, math.isqrt(n) + 1) if n % t == 0]
    large = [n // t for t in reversed(small) if n // t != t]
    divs = small + large
    return divs[:-1] if divs and divs[-1] == n else divs


def _exact_int(value: Fraction, context: str) -> int:
    """Collapse an exact rational to int, refusing non-integers."""
    if value.denominator != 1:
        raise NonIntegralResult(f"{context} evaluated to non-integer {value}")
    return int(value)


def tutte_rooted_all(n: int) -> int:
    """Rooted planar maps with n edges: 2 * 3^n * (2n)! / (n! (n+2)!)."""
    if n < 0:
        raise ValueError(f"edge count must be >= 0, got {n}")
    return _exact_int(
        Fraction(2 * 3 ** n * _fact(2 * n), _fact(n) * _fact(n + 2)),
        f"tutte_rooted_all({n})",
    )


def mullin_rooted_trivalent(edges: int) -> int:
    """Rooted planar trivalent maps with the given number of edges.

    Such a map has 2p vertices and 3p edges; the count is piecewise on the
    parity of p, using integer factorials only. By convention the value is
    1 at edges=0 (the empty map) and 0 for negative arguments or arguments
    not divisible by 3.
    """
    if edges < 0 or edges % 3 != 0:
        return 0
    p = edges // 3
    if p == 0:
        return 1
    if p % 2 == 0:
        value = Fraction(
            _fact(3 * p // 2) * 2 ** (3 * p),
            _fact(p + 1) * _fact((p + 2) // 2),
        )
    else:
        value = Fraction(
            3 * _fact(3 * p + 1) * _fact((p + 1) // 2) * 2 ** p,
            _fact((3 * p + 3) // 2) * _fact(p + 2) * _fact(p),
        )
    return _exact_int(value, f"mullin_rooted_trivalent({edges})")


def mullin_vertex_form(p: int) -> int:
    """Rooted planar trivalent maps with 2p vertices (hence 3p edges)."""
    if p < 1:
        raise ValueError(f"vertex parameter must be >= 1, got {p}")
    return mullin_rooted_trivalent(3 * p)


def n_rooted(mu: int) -> int:
    """Torsion-free genus-0 subgroups of index mu (rooted count N).

    N(mu) = 0 unless 6 | mu; N(0) = 1 and N(k) = 0 for k < 0 by convention.
    For 6 | mu the subgroup corresponds to a rooted trivalent planar map
    with mu/2 edges, so N(mu) is the trivalent rooted count there.
    """
    if mu < 0:
        return 0
    if mu == 0:
        return 1
    if mu % 6 != 0:
        return 0
    return mullin_rooted_trivalent(mu // 2)


def n_classes(mu: int) -> int:
    """Conjugacy classes of torsion-free genus-0 subgroups of index mu (N+).

    N+(6) = 2; for 6 | mu, mu > 6 the count is assembled from the rooted
    count, a divisor sum over rotation orders, and two quotient-map
    correction branches (period-3 and period-2), all in exact rational
    arithmetic with a final integrality assertion. 0 when 6 does not
    divide mu.

    Raises:
        NonIntegralResult: if the exact rational total is not a nonnegative
            integer (would indicate a transcription bug; it never fires).
    """
    if mu <= 0 or mu % 6 != 0:
        return 0
    if mu == 6:
        return 2
    p = mu // 6

    rotation_sum = sum(
        totient(p // t) * (t + 2) * (t + 1) * mullin_rooted_trivalent(3 * t)
        for t in _proper_divisors(p)
    )
    total = Fraction(
        mullin_rooted_trivalent(3 * p) + Fraction(rotation_sum, 2), 6 * p
    )

    if p % 3 == 1:
        period3 = (p - 2) * mullin_rooted_trivalent(p - 4)
    elif p % 3 == 2:
        period3 = Fraction(p + 4, 3) * mullin_rooted_trivalent(p - 2)
    else:
        period3 = 0
    total += Fraction(2, 3) * period3

    if p % 2 == 1:
        period2 = (p + 3) * mullin_rooted_trivalent((3 * p - 3) // 2)
    else:
        period2 = (3 * p - 2) * mullin_rooted_trivalent((3 * p - 6) // 2)
    total += Fraction(period2, 4)

    value = _exact_int(total, f"n_classes({mu})")
    if value < 0:
        raise NonIntegralResult(f"n_classes({mu}) evaluated to negative {value}")
    return value


def liskovets_unrooted_all(n: int, *, experimental: bool = False) -> int:
    """EXPERIMENTAL: unrooted planar maps with n edges, all maps.

    Evaluates the displayed recursion verbatim:

        M+(n) = (1/2n) [ M'(n) + sum_{t|n, t<n} phi(n/t)(t+2)(t+1) M'(t) ]
                + (n+3)/4 * M'((n-1)/2)   if n odd
                + (n-3)/4 * M'((n-2)/2)   if n even

    with M'(0) = 1. The recursion is unverified: it yields 5 at n=2 where a
    hand census of the four 2-edge unrooted maps gives 4, and it is
    non-integral at n=4. Callers must opt in with experimental=True, and any
    surfaced value must carry an "unverified" marker.

    Raises:
        ExperimentalFormula: if called without experimental=True.
        NonIntegralResult: when the recursion goes non-integral (e.g. n=4).
    """
    if not experimental:
        raise ExperimentalFormula(
            "liskovets_unrooted_all is unverified; pass experimental=True "
            "and treat the result as unverified"
        )
    if n < 1:
        raise ValueError(f"edge count must be >= 1, got {n}")
    bracket = tutte_rooted_all(n) + sum(
        totient(n // t) * (t + 2) * (t + 1) * tutte_rooted_all(t)
        for t in _proper_divisors(n)
    )
    total = Fraction(bracket, 2 * n)
    if n % 2 == 1:
        total += Fraction(n + 3, 4) * tutte_rooted_all((n - 1) // 2)
    else:
        total += Fraction(n - 3, 4) * tutte_rooted_all((n - 2) // 2)
    return _exact_int(total, f"liskovets_unrooted_all({n})")
