"""Shared fixtures and independent brute-force oracles.

The oracles deliberately avoid the library's search and canonicalization
code paths: they enumerate labeled pairs with itertools and quotient by
explicit conjugation, so agreement with the package is meaningful.
"""

from itertools import permutations
from math import factorial
from typing import Dict, Iterable, List, Optional, Set, Tuple

import pytest

from modmaps.perm_core import Permutation
from modmaps.subgroup_model import CosetPair, PairError, is_genus, validate

Images = Tuple[int, ...]


# ---------------------------------------------------------------------------
# Known small pairs
# ---------------------------------------------------------------------------

@pytest.fixture
def pair_all_width_two() -> CosetPair:
    """Index 6, torsion-free, genus 0, cusp split 2-2-2 (aut order 6)."""
    return validate(
        Permutation.parse("(0 3)(1 5)(2 4)", 6),
        Permutation.parse("(0 1 2)(3 4 5)", 6),
    )


@pytest.fixture
def pair_width_four() -> CosetPair:
    """Index 6, torsion-free, genus 0, cusp split 4-1-1 (aut order 2)."""
    return validate(
        Permutation.parse("(0 1)(2 3)(4 5)", 6),
        Permutation.parse("(0 1 2)(3 4 5)", 6),
    )


@pytest.fixture
def pair_torus() -> CosetPair:
    """Index 6, torsion-free, genus 1, single cusp of width 6."""
    return validate(
        Permutation.parse("(0 1)(2 3)(4 5)", 6),
        Permutation.parse("(0 2 4)(1 3 5)", 6),
    )


@pytest.fixture
def pair_with_torsion() -> CosetPair:
    """Index 4, e2 = 2, e3 = 1: phi has fixed points, psi has one."""
    return validate(
        Permutation.parse("(0 1)", 4),
        Permutation.parse("(1 2 3)", 4),
    )


# ---------------------------------------------------------------------------
# Brute-force enumeration oracle (independent of the search kernel)
# ---------------------------------------------------------------------------

def involutions(n: int, fixed_point_free: bool) -> List[Images]:
    out = []
    for p in permutations(range(n)):
        if all(p[p[i]] == i for i in range(n)):
            if fixed_point_free and any(p[i] == i for i in range(n)):
                continue
            out.append(p)
    return out


def order_three_perms(n: int, fixed_point_free: bool) -> List[Images]:
    out = []
    for p in permutations(range(n)):
        if all(p[p[p[i]]] == i for i in range(n)):
            if fixed_point_free and any(p[i] == i for i in range(n)):
                continue
            out.append(p)
    return out


def labeled_pairs_brute(
    mu: int,
    torsion_free: bool = True,
    genus: Optional[int] = None,
) -> List[CosetPair]:
    """Every labeled transitive pair at index mu matching the filter."""
    assert mu <= 7, "brute force is only meant for tiny degrees"
    pairs = []
    for phi in involutions(mu, torsion_free):
        p = Permutation(phi)
        for psi in order_three_perms(mu, torsion_free):
            try:
                pair = validate(p, Permutation(psi))
            except PairError:
                continue
            if genus is not None and not is_genus(pair, genus):
                continue
            pairs.append(pair)
    return pairs


def _conjugate_images(images: Images, lam: Images, lam_inv: Images) -> Images:
    """Images of lam . p . lam^{-1} computed from raw image tuples."""
    return tuple(lam[images[lam_inv[i]]] for i in range(len(images)))


def _with_inverses(relabelings: Iterable[Images]) -> List[Tuple[Images, Images]]:
    out = []
    for lam in relabelings:
        lam_inv = [0] * len(lam)
        for i, v in enumerate(lam):
            lam_inv[v] = i
        out.append((lam, tuple(lam_inv)))
    return out


def orbit_key(pair: CosetPair, relabelings: Iterable[Images]) -> bytes:
    """Minimum packed form of the pair over the given conjugators."""
    phi, psi = pair.phi.images, pair.psi.images
    best = None
    for lam, lam_inv in _with_inverses(relabelings):
        packed = bytes(_conjugate_images(phi, lam, lam_inv)) + bytes(
            _conjugate_images(psi, lam, lam_inv)
        )
        if best is None or packed < best:
            best = packed
    assert best is not None
    return best


def base_fixing_relabelings(mu: int) -> List[Images]:
    """All permutations of the cosets that fix coset 0."""
    return [(0,) + tuple(v + 1 for v in rest)
            for rest in permutations(range(mu - 1))]


def rooted_orbit_keys(
    mu: int, torsion_free: bool = True, genus: Optional[int] = None
) -> Set[bytes]:
    """Orbit keys of the labeled pairs under relabelings fixing coset 0.

    One key per rooted class; also asserts the relabeling action is free,
    i.e. the labeled count is exactly (mu-1)! per rooted class.
    """
    labeled = labeled_pairs_brute(mu, torsion_free, genus)
    pairs = _with_inverses(base_fixing_relabelings(mu))
    keys: Dict[bytes, int] = {}
    for pair in labeled:
        phi, psi = pair.phi.images, pair.psi.images
        best = None
        for lam, lam_inv in pairs:
            packed = bytes(_conjugate_images(phi, lam, lam_inv)) + bytes(
                _conjugate_images(psi, lam, lam_inv)
            )
            if best is None or packed < best:
                best = packed
        assert best is not None
        keys[best] = keys.get(best, 0) + 1
    for key, count in keys.items():
        assert count == factorial(mu - 1), (
            f"relabeling action not free on orbit {key.hex()}"
        )
    return set(keys)


def conjugacy_orbit_keys(
    mu: int, torsion_free: bool = True, genus: Optional[int] = None
) -> Set[bytes]:
    """Orbit keys of the labeled pairs under all relabelings of cosets.

    Computed by first reducing to the rooted orbit keys (one labeled pair
    per rooted class) and then minimizing those over the full symmetric
    group, which keeps the brute force tractable.
    """
    rooted = rooted_orbit_keys(mu, torsion_free, genus)
    relabelings = list(permutations(range(mu)))
    out = set()
    for key in rooted:
        pair = CosetPair(mu, Permutation(key[:mu]), Permutation(key[mu:]))
        out.add(orbit_key(pair, relabelings))
    return out
