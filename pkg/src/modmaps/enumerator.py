"""Canonical-construction enumeration of pairs and conjugacy reduction.

``enumerate_rooted`` emits each rooted equivalence class [phi, psi]_{x1}
of a given index exactly once (the backtracking kernel only ever produces
self-canonical labelings), and ``conjugacy_reduce`` groups rooted classes
into conjugacy classes via the minimal canonical key over all base
elements, which also yields automorphism orders and chirality.

The hot search loop lives in a compiled Cython kernel when available, with
a line-parallel pure-Python fallback; selection happens at import time and
can be forced to the fallback by setting MODMAPS_PURE_PYTHON=1.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from .perm_core import Permutation
from .subgroup_model import CosetPair, CuspSplit, is_genus, mirror

if os.environ.get("MODMAPS_PURE_PYTHON"):
    from . import _kernel_py as _backend
else:
    try:
        from . import _kernel as _backend  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _backend


def backend_name() -> str:
    """Name of the selected search kernel: "cython" or "python"."""
    return _backend.KERNEL_NAME


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchFilter:
    """Which family of pairs to enumerate.

    Attributes:
        torsion_free: require phi and psi fixed-point-free.
        genus: if set, require this signature genus.
        cusp_split: if set, require exactly this cycle type of phi*psi;
            its widths must sum to the target index.
    """

    torsion_free: bool = True
    genus: Optional[int] = None
    cusp_split: Optional[CuspSplit] = None


@dataclass(frozen=True)
class RootedClass:
    """A rooted equivalence class, represented by its canonical labeling.

    The pair's labeling equals the relabeling produced by
    canonical_form(pair, 0); this is checked on construction.
    """

    pair: CosetPair

    def __post_init__(self) -> None:
        if self.key != canonical_form(self.pair, 0)[0]:
            raise ValueError("pair is not in canonical root labeling")

    @property
    def key(self) -> bytes:
        """Canonical key at the root: packed phi images + psi images."""
        return _pack_pair(self.pair)


@dataclass(frozen=True)
class ConjClass:
    """A conjugacy class of pairs (subgroups up to conjugacy).

    Attributes:
        representative: canonical representative; its labeling realizes the
            minimal canonical key over all bases, so the key of the
            representative at base 0 equals canonical_key.
        canonical_key: identical for any two conjugate pairs and distinct
            otherwise.
        aut_order: number of bases attaining the minimal key (the order of
            the automorphism group = centralizer); divides mu.
        chiral: True iff the mirror pair lies in a different conjugacy
            class.
    """

    representative: CosetPair = field(repr=False)
    canonical_key: bytes
    aut_order: int
    chiral: bool

    def __post_init__(self) -> None:
        if self.representative.mu % self.aut_order != 0:
            raise ValueError("aut_order must divide mu")


def class_size(c: ConjClass) -> int:
    """Number of rooted classes in the conjugacy class: mu / aut_order."""
    return c.representative.mu // c.aut_order


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------

def _pack_pair(pair: CosetPair) -> bytes:
    if pair.mu > 255:
        raise ValueError(f"degree {pair.mu} exceeds the byte-packing limit of 255")
    return bytes(pair.phi.images) + bytes(pair.psi.images)


def canonical_form(pair: CosetPair, base: int) -> Tuple[bytes, Permutation]:
    """Deterministic relabeling of a pair from a base element.

    Label 0 goes to the base; elements are then discovered breadth-first by
    applying the generators in the fixed order (phi, psi, psi^2) to
    already-labeled elements in label order, assigning fresh labels in
    discovery order. Two pairs admit a conjugation lambda with
    lambda(base1) = base2 iff their keys at those bases are equal.

    Args:
        pair: a valid coset pair.
        base: element to receive label 0 (0 <= base < mu).

    Returns:
        (key, relabeling): the key is the packed image arrays of the
        relabeled (phi, psi); the relabeling maps old labels to new ones.
    """
    mu = pair.mu
    if not 0 <= base < mu:
        raise ValueError(f"base {base} out of range for degree {mu}")
    if mu > 255:
        raise ValueError(f"degree {mu} exceeds the byte-packing limit of 255")
    phi = pair.phi.images
    psi = pair.psi.images
    label = [-1] * mu
    order = [base]
    label[base] = 0
    fresh = 1
    idx = 0
    while idx < len(order):
        x = order[idx]
        idx += 1
        for y in (phi[x], psi[x], psi[psi[x]]):
            if label[y] < 0:
                label[y] = fresh
                order.append(y)
                fresh += 1
    new_phi = bytearray(mu)
    new_psi = bytearray(mu)
    for x in range(mu):
        new_phi[label[x]] = label[phi[x]]
        new_psi[label[x]] = label[psi[x]]
    return bytes(new_phi) + bytes(new_psi), Permutation(label)


def min_canonical_key(pair: CosetPair) -> Tuple[bytes, int, int]:
    """Minimal canonical key over all bases.

    Returns:
        (key, aut_order, best_base): the minimal key, the number of bases
        attaining it, and the smallest such base.
    """
    best: Optional[bytes] = None
    count = 0
    best_base = 0
    for b in range(pair.mu):
        key, _ = canonical_form(pair, b)
        if best is None or key < best:
            best, count, best_base = key, 1, b
        elif key == best:
            count += 1
    assert best is not None
    return best, count, best_base


def _pair_from_packed(mu: int, phi_bytes: bytes, psi_bytes: bytes) -> CosetPair:
    return CosetPair(mu, Permutation(phi_bytes), Permutation(psi_bytes))


# ---------------------------------------------------------------------------
# Kernel parameterization
# ---------------------------------------------------------------------------

def _kernel_params(
    mu: int, filt: SearchFilter
) -> Optional[Tuple[bool, int, Optional[List[int]]]]:
    """Translate a filter into kernel arguments.

    Returns None when the filter is provably unsatisfiable at this index
    (e.g. a cusp-split length inconsistent with the genus target), in which
    case the enumeration is empty.
    """
    target_h = -1
    split_counts: Optional[List[int]] = None
    if filt.cusp_split is not None:
        widths = filt.cusp_split.widths
        if sum(widths) != mu:
            raise ValueError(
                f"cusp split {widths} sums to {sum(widths)}, not the index {mu}"
            )
        split_counts = [0] * (mu + 1)
        for w in widths:
            split_counts[w] += 1
        target_h = len(widths)
    if filt.torsion_free and filt.genus is not None:
        if mu % 6 != 0:
            return None
        h = mu // 6 + 2 - 2 * filt.genus
        if h < 1:
            return None
        if target_h >= 0 and h != target_h:
            return None  # split shape contradicts the genus target
        target_h = h
    return filt.torsion_free, target_h, split_counts


def _needs_post_filter(filt: SearchFilter) -> bool:
    """Genus with torsion allowed cannot be pinned in-kernel (e2, e3 vary)."""
    return filt.genus is not None and not filt.torsion_free


def _post_filter(
    mu: int, filt: SearchFilter, raw: Iterable[Tuple[bytes, bytes]]
) -> List[Tuple[bytes, bytes]]:
    if not _needs_post_filter(filt):
        return list(raw)
    genus = filt.genus
    assert genus is not None
    return [
        (pb, sb)
        for pb, sb in raw
        if is_genus(_pair_from_packed(mu, pb, sb), genus)
    ]


def _run_task(args: Tuple[int, bool, int, Optional[List[int]], Tuple[int, ...]]):
    """Worker entry point: explore one decision-prefix partition."""
    mu, torsion_free, target_h, split_counts, prefix = args
    solutions, _ = _backend.search(mu, torsion_free, target_h, split_counts,
                                   prefix, -1)
    return solutions


def enumerate_raw(
    mu: int, filt: SearchFilter = SearchFilter(), jobs: int = 1
) -> List[Tuple[bytes, bytes]]:
    """All matching self-canonical pairs as packed image arrays.

    Output is sorted ascending by canonical key (phi bytes + psi bytes) and
    is byte-identical for any worker count: with jobs > 1 the search tree
    is split at a fixed decision depth into prefix tasks whose results are
    merged and sorted.
    """
    if mu < 1:
        raise ValueError(f"index must be >= 1, got {mu}")
    params = _kernel_params(mu, filt)
    if params is None:
        return []
    torsion_free, target_h, split_counts = params
    if jobs <= 1:
        raw, _ = _backend.search(mu, torsion_free, target_h, split_counts)
        raw = _post_filter(mu, filt, raw)
        raw.sort()
        return raw

    # Split the treetop at an adaptive decision depth: re-expand until the
    # partitions outnumber the workers comfortably or the tree runs out.
    depth = 2
    shallow, tasks = _backend.search(mu, torsion_free, target_h, split_counts,
                                     (), depth)
    while len(tasks) < 4 * jobs and depth <= 10:
        depth += 2
        more_shallow, more_tasks = _backend.search(
            mu, torsion_free, target_h, split_counts, (), depth)
        if len(more_tasks) == len(tasks) and len(more_shallow) == len(shallow):
            break  # no further branching below the current depth
        shallow, tasks = more_shallow, more_tasks

    results: List[Tuple[bytes, bytes]] = list(shallow)
    if tasks:
        work = [(mu, torsion_free, target_h, split_counts, t) for t in tasks]
        chunk = max(1, len(work) // (4 * jobs))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for batch in pool.map(_run_task, work, chunksize=chunk):
                results.extend(batch)
    results = _post_filter(mu, filt, results)
    results.sort()
    return results


# ---------------------------------------------------------------------------
# Public enumeration API
# ---------------------------------------------------------------------------

def enumerate_rooted(
    mu: int, filt: SearchFilter = SearchFilter(), jobs: int = 1
) -> Iterator[RootedClass]:
    """Emit exactly one RootedClass per rooted equivalence class of index mu
    matching the filter, in ascending canonical-key order.

    The stream is empty (not an error) when no pair satisfies the filter,
    e.g. for a torsion-free filter with 6 not dividing mu.
    """
    for phi_bytes, psi_bytes in enumerate_raw(mu, filt, jobs):
        yield RootedClass(_pair_from_packed(mu, phi_bytes, psi_bytes))


def conjugacy_reduce(rooted: Iterable[RootedClass]) -> List[ConjClass]:
    """Group rooted classes from one enumeration into conjugacy classes.

    For each rooted class the minimal canonical key over all mu bases is
    the class invariant; the number of bases attaining it is the
    automorphism order, and chirality is decided by comparing against the
    mirror pair's minimal key. Output is sorted by canonical key.
    """
    groups: Dict[bytes, List[object]] = {}
    for rc in rooted:
        mu = rc.pair.mu
        key, aut, _ = min_canonical_key(rc.pair)
        entry = groups.get(key)
        if entry is None:
            rep = CosetPair(mu, Permutation(key[:mu]), Permutation(key[mu:]))
            groups[key] = [rep, aut, 1]
        else:
            if entry[1] != aut:
                raise AssertionError(
                    "conjugate rooted classes disagree on automorphism order"
                )
            entry[2] += 1

    out: List[ConjClass] = []
    for key in sorted(groups):
        rep, aut, members = groups[key]
        assert isinstance(rep, CosetPair) and isinstance(aut, int)
        if members * aut != rep.mu:
            raise AssertionError(
                f"class with key {key.hex()} has {members} rootings but "
                f"aut_order {aut} at index {rep.mu}"
            )
        mirror_key, _, _ = min_canonical_key(mirror(rep))
        out.append(ConjClass(
            representative=rep,
            canonical_key=key,
            aut_order=aut,
            chiral=mirror_key != key,
        ))
    return out


def enumerate_classes(
    mu: int, filt: SearchFilter = SearchFilter(), jobs: int = 1
) -> List[ConjClass]:
    """Convenience composition of enumerate_rooted and conjugacy_reduce."""
    return conjugacy_reduce(enumerate_rooted(mu, filt, jobs))
