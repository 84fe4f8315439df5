"""Exact permutation arithmetic on dense 0-based image arrays.

A permutation of degree n is stored as the tuple of images of 0..n-1; all
values are immutable and all operations are pure, so they are safe to share
between concurrent workers.

Convention (fixed project-wide): ``compose(p, q)`` applies the right factor
first, i.e. ``compose(p, q)(i) == p(q(i))``.
"""

from __future__ import annotations

from typing import Iterable, List, NamedTuple, Sequence, Tuple


class Permutation:
    """An immutable bijection on {0, ..., n-1} stored as an image array.

    Args:
        images: the image of each index, so position i maps to images[i].

    Raises:
        ValueError: if images is empty or is not a bijection on its range.
    """

    __slots__ = ("images",)

    images: Tuple[int, ...]

    def __init__(self, images: Iterable[int]):
        imgs = tuple(images)
        n = len(imgs)
        if n < 1:
            raise ValueError("permutation degree must be >= 1")
        seen = [False] * n
        for v in imgs:
            if not isinstance(v, int) or not 0 <= v < n or seen[v]:
                raise ValueError(f"images {imgs!r} are not a bijection on 0..{n - 1}")
            seen[v] = True
        object.__setattr__(self, "images", imgs)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        """The size n of the underlying set {0, ..., n-1}."""
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Permutation):
            return self.images == other.images
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation.parse({format_cycles(self)!r}, degree={self.degree})"

    @staticmethod
    def parse(text: str, degree: int) -> "Permutation":
        """Parse cycle notation; see parse_cycles."""
        return parse_cycles(text, degree)

    def __str__(self) -> str:
        return format_cycles(self)


class FixedPoints(NamedTuple):
    """Count and sorted list of the indices fixed by a permutation."""

    count: int
    indices: Tuple[int, ...]


def identity(n: int) -> Permutation:
    """Return the identity permutation of degree n."""
    return Permutation(range(n))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return the product applying q first, then p.

    Args:
        p: outer (left) factor.
        q: inner (right) factor, applied first.

    Returns:
        The permutation r with r(i) = p(q(i)).

    Raises:
        ValueError: if the degrees differ.
    """
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} != {q.degree}")
    pi = p.images
    return Permutation(pi[v] for v in q.images)


def inverse(p: Permutation) -> Permutation:
    """Return the inverse permutation."""
    inv = [0] * p.degree
    for i, v in enumerate(p.images):
        inv[v] = i
    return Permutation(inv)


def cycle_type(p: Permutation) -> Tuple[int, ...]:
    """Return the multiset of cycle lengths of p, sorted descending.

    The parts sum to the degree; fixed points contribute parts equal to 1.
    """
    n = p.degree
    seen = [False] * n
    lengths: List[int] = []
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = p.images[j]
            length += 1
        lengths.append(length)
    lengths.sort(reverse=True)
    return tuple(lengths)


def fixed_points(p: Permutation) -> FixedPoints:
    """Return the count and the indices i with p(i) = i."""
    idx = tuple(i for i, v in enumerate(p.images) if v == i)
    return FixedPoints(len(idx), idx)


def is_transitive(p: Permutation, q: Permutation) -> bool:
    """Return True iff <p, q> has a single orbit on {0, ..., n-1}.

    Implemented as a breadth-first search over the union of the edges
    i -> p(i) and i -> q(i) starting from 0; because p and q are bijections
    this reaches exactly the orbit of 0.

    Raises:
        ValueError: if the degrees differ.
    """
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} != {q.degree}")
    n = p.degree
    seen = [False] * n
    seen[0] = True
    stack = [0]
    reached = 1
    while stack:
        i = stack.pop()
        for j in (p.images[i], q.images[i]):
            if not seen[j]:
                seen[j] = True
                reached += 1
                stack.append(j)
    return reached == n


# ---------------------------------------------------------------------------
# Cycle notation
# ---------------------------------------------------------------------------

def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse textual cycle notation like "(0 1)(2 3)(4 5)".

    Elements inside a cycle are separated by whitespace and/or commas;
    singleton cycles may be omitted (every index not mentioned is fixed).
    "()" or an empty/blank string denotes the identity.

    Args:
        text: the cycle notation.
        degree: the degree of the resulting permutation (cannot be inferred
            because singletons are omitted).

    Returns:
        The permutation of the given degree described by the cycles.

    Raises:
        ValueError: on malformed text, out-of-range indices, or repeats.
    """
    images = list(range(degree))
    hit = [False] * degree
    body = text.strip()
    pos = 0
    while pos < len(body):
        ch = body[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch != "(":
            raise ValueError(f"expected '(' at position {pos} in {text!r}")
        end = body.find(")", pos)
        if end < 0:
            raise ValueError(f"unclosed cycle in {text!r}")
        parts = body[pos + 1:end].replace(",", " ").split()
        pos = end + 1
        if not parts:
            continue  # "()" is the identity contribution
        cycle: List[int] = []
        for token in parts:
            try:
                v = int(token)
            except ValueError:
                raise ValueError(f"non-integer element {token!r} in {text!r}") from None
            if not 0 <= v < degree:
                raise ValueError(f"element {v} out of range for degree {degree}")
            if hit[v]:
                raise ValueError(f"element {v} repeated in {text!r}")
            hit[v] = True
            cycle.append(v)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            images[a] = b
    return Permutation(images)


def format_cycles(p: Permutation) -> str:
    """Format p in cycle notation, omitting singleton cycles.

    Cycles are written lowest-first and ordered by their lowest element, so
    output is deterministic; the identity formats as "()".
    """
    n = p.degree
    seen = [False] * n
    out: List[str] = []
    for start in range(n):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        j = p.images[start]
        while j != start:
            seen[j] = True
            cycle.append(j)
            j = p.images[j]
        if len(cycle) > 1:
            out.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(out) if out else "()"


def orbit_partition(p: Permutation) -> Tuple[Tuple[int, ...], ...]:
    """Return the cycles of p as tuples, each starting at its lowest element,
    ordered by lowest element (singletons included)."""
    n = p.degree
    seen = [False] * n
    orbits: List[Tuple[int, ...]] = []
    for start in range(n):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        j = p.images[start]
        while j != start:
            seen[j] = True
            cycle.append(j)
            j = p.images[j]
        orbits.append(tuple(cycle))
    return tuple(orbits)


def conjugate(p: Permutation, lam: Permutation) -> Permutation:
    """Return lam . p . lam^{-1}, the relabeling of p along lam.

    Raises:
        ValueError: if the degrees differ.
    """
    if p.degree != lam.degree:
        raise ValueError(f"degree mismatch: {p.degree} != {lam.degree}")
    out = [0] * p.degree
    li = lam.images
    for i, v in enumerate(p.images):
        out[li[i]] = li[v]
    return Permutation(out)
