"""Trivalent combinatorial maps and Schreier graphs of a pair.

A torsion-free pair (phi, psi) is a rotation system: the darts are the mu
cosets, psi is the counter-clockwise dart order at each vertex (all cycles
of length 3) and phi is the edge involution (all cycles of length 2).
Faces are the cycles of phi*psi, so face degrees reproduce the cusp split
and Euler's relation reproduces the signature genus. The Schreier graph is
the two-colored coset graph of any (possibly torsioned) pair and stores
both permutations losslessly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple, Union

from .perm_core import Permutation, compose, cycle_type, fixed_points, orbit_partition
from .subgroup_model import CosetPair, CuspSplit


class HasTorsion(ValueError):
    """The pair has elliptic elements, so it is not a trivalent map."""


@dataclass(frozen=True)
class TrivalentMap:
    """A trivalent map as a rotation system on darts 0..mu-1.

    Attributes:
        vertex_rotation: psi; counter-clockwise dart order at each vertex
            (every cycle has length 3).
        edge_involution: phi; swaps the two darts of each edge (every cycle
            has length 2).
        root_dart: the distinguished dart for rooted maps, or None for the
            unrooted view.
    """

    vertex_rotation: Permutation
    edge_involution: Permutation
    root_dart: Union[int, None] = 0

    def __post_init__(self) -> None:
        if self.vertex_rotation.degree != self.edge_involution.degree:
            raise ValueError("rotation and involution degrees differ")
        if any(n != 3 for n in cycle_type(self.vertex_rotation)):
            raise ValueError("vertex rotation must consist of 3-cycles")
        if any(n != 2 for n in cycle_type(self.edge_involution)):
            raise ValueError("edge involution must consist of 2-cycles")
        if self.root_dart is not None and not 0 <= self.root_dart < self.degree:
            raise ValueError(f"root dart {self.root_dart} out of range")

    @property
    def degree(self) -> int:
        """Number of darts (= index mu of the originating pair)."""
        return self.vertex_rotation.degree

    @property
    def vertices(self) -> Tuple[Tuple[int, ...], ...]:
        """psi-orbits (each of size 3), ordered by smallest dart."""
        return orbit_partition(self.vertex_rotation)

    @property
    def edges(self) -> Tuple[Tuple[int, ...], ...]:
        """phi-orbits (each of size 2), ordered by smallest dart."""
        return orbit_partition(self.edge_involution)


@dataclass(frozen=True)
class SchreierGraph:
    """Two-colored coset graph: blue pairing edges and red 3-cycle arcs.

    Attributes:
        nodes: number of nodes (the cosets 0..nodes-1).
        blue_pairs: unordered pairs {i, phi(i)} with i < phi(i); fixed
            points of phi have no blue pair.
        red_arcs: directed arcs i -> psi(i) for every node i.
    """

    nodes: int
    blue_pairs: Tuple[Tuple[int, int], ...]
    red_arcs: Tuple[Tuple[int, int], ...]


def to_map(pair: CosetPair) -> TrivalentMap:
    """View a torsion-free pair as a rooted trivalent map (root dart 0).

    Vertices are the psi-orbits (mu/3 of them), edges the phi-orbits
    (mu/2), faces the cycles of phi*psi (h).

    Raises:
        HasTorsion: if phi or psi has a fixed point.
    """
    if fixed_points(pair.phi).count != 0:
        raise HasTorsion("phi has fixed points (order-2 elliptic elements)")
    if fixed_points(pair.psi).count != 0:
        raise HasTorsion("psi has fixed points (order-3 elliptic elements)")
    return TrivalentMap(vertex_rotation=pair.psi, edge_involution=pair.phi,
                        root_dart=0)


def face_degrees(m: TrivalentMap) -> CuspSplit:
    """Degrees of the faces (cycles of edge_involution*vertex_rotation),
    sorted descending; equals the cusp split of the originating pair."""
    product = compose(m.edge_involution, m.vertex_rotation)
    return CuspSplit(cycle_type(product))


def euler_genus(m: TrivalentMap) -> int:
    """Genus from Euler's relation V - E + F = 2 - 2g.

    The relation always yields a nonnegative integer for a valid rotation
    system; this is asserted, never rounded.
    """
    v = len(m.vertices)
    e = len(m.edges)
    f = len(face_degrees(m).widths)
    euler = v - e + f
    if euler % 2 != 0 or euler > 2:
        raise AssertionError(f"impossible Euler characteristic {euler}")
    return (2 - euler) // 2


def to_schreier(pair: CosetPair) -> SchreierGraph:
    """Build the Schreier graph of a pair (torsion allowed)."""
    phi = pair.phi.images
    psi = pair.psi.images
    blue = tuple((i, phi[i]) for i in range(pair.mu) if i < phi[i])
    red = tuple((i, psi[i]) for i in range(pair.mu))
    return SchreierGraph(nodes=pair.mu, blue_pairs=blue, red_arcs=red)


def from_schreier(g: SchreierGraph) -> CosetPair:
    """Reconstruct the exact pair stored in a Schreier graph."""
    phi = list(range(g.nodes))
    for i, j in g.blue_pairs:
        phi[i] = j
        phi[j] = i
    psi = [0] * g.nodes
    for i, j in g.red_arcs:
        psi[i] = j
    return CosetPair(g.nodes, Permutation(phi), Permutation(psi))


# ---------------------------------------------------------------------------
# DOT export
# ---------------------------------------------------------------------------

def export_dot(obj: Union[SchreierGraph, TrivalentMap]) -> str:
    """Render a Schreier graph or trivalent map as DOT text.

    Output is byte-deterministic given the input. Schreier graphs become a
    digraph with nodes "x0".. , blue undirected pairing edges (color=blue,
    dir=none) and red directed arcs (color=red); maps become a graph with
    vertex nodes "v0".. , one edge per dart pair, and a comment per vertex
    listing its rotation (counter-clockwise dart order).
    """
    if isinstance(obj, SchreierGraph):
        return _schreier_dot(obj)
    if isinstance(obj, TrivalentMap):
        return _map_dot(obj)
    raise TypeError(f"cannot export {type(obj).__name__} as DOT")


def _schreier_dot(g: SchreierGraph) -> str:
    lines: List[str] = ["digraph schreier {"]
    for i in range(g.nodes):
        lines.append(f'  x{i} [label="x{i}"];')
    for i, j in g.blue_pairs:
        lines.append(f"  x{i} -> x{j} [color=blue, dir=none];")
    for i, j in g.red_arcs:
        lines.append(f"  x{i} -> x{j} [color=red];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _map_dot(m: TrivalentMap) -> str:
    vertices = m.vertices
    vertex_of = {}
    for k, orbit in enumerate(vertices):
        for dart in orbit:
            vertex_of[dart] = k
    lines: List[str] = ["graph trivalent_map {"]
    for k, orbit in enumerate(vertices):
        rotation = " ".join(map(str, orbit))
        lines.append(f"  // v{k} rotation: ({rotation})")
        lines.append(f'  v{k} [label="v{k}"];')
    for a, b in m.edges:
        lines.append(f"  v{vertex_of[a]} -- v{vertex_of[b]} [label=\"{a}|{b}\"];")
    if m.root_dart is not None:
        lines.append(f"  // root dart {m.root_dart} at v{vertex_of[m.root_dart]}")
    lines.append("}")
    return "\n".join(lines) + "\n"
