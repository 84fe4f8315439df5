"""The pair (phi, psi) as a finite-index modular subgroup.

A subgroup of index mu in the modular group corresponds to a pair of
permutations (phi, psi) of the mu cosets with phi^2 = psi^3 = identity and
<phi, psi> transitive; coset 0 is the distinguished element (the subgroup
itself). This module validates pairs, computes their signature
(mu; g, e2, e3, h) and cusp split, and implements the torsion/genus
predicates plus the orientation-reversing mirror.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Tuple

from .perm_core import (
    Permutation,
    compose,
    cycle_type,
    fixed_points,
    identity,
    inverse,
    is_transitive,
)


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------

class PairError(ValueError):
    """A candidate (phi, psi) pair is not a valid coset pair."""


class DegreeMismatch(PairError):
    """phi and psi act on sets of different sizes."""


class NotInvolution(PairError):
    """phi^2 is not the identity."""


class NotOrderThree(PairError):
    """psi^3 is not the identity."""


class NotTransitive(PairError):
    """<phi, psi> does not act transitively on the cosets."""


class NonIntegralGenus(RuntimeError):
    """The genus equation produced a non-integral or negative genus.

    This cannot happen for a valid coset pair; it signals an internal bug,
    not a user error.
    """


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CuspSplit:
    """The multiset of cusp widths, stored sorted descending.

    The widths are the cycle lengths of phi*psi; they sum to the index mu
    and there are h of them.
    """

    widths: Tuple[int, ...]

    def __post_init__(self) -> None:
        if any(w < 1 for w in self.widths):
            raise ValueError(f"cusp widths must be positive: {self.widths!r}")
        if tuple(sorted(self.widths, reverse=True)) != self.widths:
            raise ValueError(f"cusp widths must be sorted descending: {self.widths!r}")

    @staticmethod
    def of(widths: Iterable[int]) -> "CuspSplit":
        """Build a CuspSplit from widths in any order."""
        return CuspSplit(tuple(sorted(widths, reverse=True)))

    @property
    def mu(self) -> int:
        return sum(self.widths)

    @property
    def h(self) -> int:
        return len(self.widths)

    def __str__(self) -> str:
        return "-".join(map(str, self.widths))


@dataclass(frozen=True)
class Signature:
    """The signature (mu; g, e2, e3, h) of a subgroup.

    mu is the index, g the genus, e2/e3 the numbers of order-2/order-3
    elliptic classes, and h the parabolic class number (cusp count). The
    genus always satisfies g = 1 + mu/12 - e2/4 - e3/3 - h/2 exactly.
    """

    mu: int
    g: int
    e2: int
    e3: int
    h: int

    def __post_init__(self) -> None:
        expected = genus_from_counts(self.mu, self.e2, self.e3, self.h)
        if expected != self.g:
            raise ValueError(
                f"inconsistent signature: genus relation gives g={expected}, "
                f"got g={self.g}"
            )
        if self.g < 0:
            raise ValueError("genus must be nonnegative")


@dataclass(frozen=True)
class CosetPair:
    """A validated permutation pair (phi, psi) of index mu.

    Invariants (enforced on construction): phi^2 = psi^3 = identity and
    <phi, psi> transitive on {0, ..., mu-1}.
    """

    mu: int
    phi: Permutation = field(repr=False)
    psi: Permutation = field(repr=False)

    def __post_init__(self) -> None:
        if self.phi.degree != self.psi.degree:
            raise DegreeMismatch(
                f"phi degree {self.phi.degree} != psi degree {self.psi.degree}"
            )
        if self.mu != self.phi.degree:
            raise DegreeMismatch(f"mu={self.mu} != degree {self.phi.degree}")
        if compose(self.phi, self.phi) != identity(self.mu):
            raise NotInvolution("phi^2 is not the identity")
        psi2 = compose(self.psi, self.psi)
        if compose(psi2, self.psi) != identity(self.mu):
            raise NotOrderThree("psi^3 is not the identity")
        if not is_transitive(self.phi, self.psi):
            raise NotTransitive("<phi, psi> is not transitive")

    def __repr__(self) -> str:
        return (f"CosetPair(mu={self.mu}, phi={self.phi.images!r}, "
                f"psi={self.psi.images!r})")


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def validate(phi: Permutation, psi: Permutation) -> CosetPair:
    """Check the pair conditions and return a validated CosetPair.

    Args:
        phi: candidate involution.
        psi: candidate order-3 permutation of the same degree.

    Returns:
        The validated CosetPair of index mu = degree.

    Raises:
        DegreeMismatch: the degrees differ.
        NotInvolution: phi^2 != identity.
        NotOrderThree: psi^3 != identity.
        NotTransitive: <phi, psi> has more than one orbit.
    """
    if phi.degree != psi.degree:
        raise DegreeMismatch(f"phi degree {phi.degree} != psi degree {psi.degree}")
    return CosetPair(phi.degree, phi, psi)


def genus_from_counts(mu: int, e2: int, e3: int, h: int) -> int:
    """Solve the genus relation g = 1 + mu/12 - e2/4 - e3/3 - h/2 exactly.

    Raises:
        NonIntegralGenus: if g is not a nonnegative integer (impossible for
            counts coming from a valid pair; never silently rounded).
    """
    g = 1 + Fraction(mu, 12) - Fraction(e2, 4) - Fraction(e3, 3) - Fraction(h, 2)
    if g.denominator != 1 or g < 0:
        raise NonIntegralGenus(
            f"genus relation gave g={g} for (mu={mu}, e2={e2}, e3={e3}, h={h})"
        )
    return int(g)


def signature(pair: CosetPair) -> Signature:
    """Compute the signature (mu; g, e2, e3, h) of a validated pair.

    e2/e3 are the fixed-point counts of phi/psi, h is the number of cycles
    of phi*psi, and g is solved from the genus relation with exact rational
    arithmetic.
    """
    e2 = fixed_points(pair.phi).count
    e3 = fixed_points(pair.psi).count
    h = len(cycle_type(compose(pair.phi, pair.psi)))
    g = genus_from_counts(pair.mu, e2, e3, h)
    return Signature(pair.mu, g, e2, e3, h)


def cusp_split(pair: CosetPair) -> CuspSplit:
    """Return the cycle type of phi*psi sorted descending (the cusp widths)."""
    return CuspSplit(cycle_type(compose(pair.phi, pair.psi)))


def is_torsion_free(pair: CosetPair) -> bool:
    """True iff phi and psi are both fixed-point-free (e2 = e3 = 0)."""
    return (fixed_points(pair.phi).count == 0
            and fixed_points(pair.psi).count == 0)


def is_genus(pair: CosetPair, g: int) -> bool:
    """True iff the pair's signature genus equals g."""
    return signature(pair).g == g


def mirror(pair: CosetPair) -> CosetPair:
    """Return the orientation-reversed pair (phi, psi^{-1}).

    This is the mirror image of the associated map; applying it twice gives
    back the original pair exactly.
    """
    return CosetPair(pair.mu, pair.phi, inverse(pair.psi))
