"""Pure-Python backtracking kernel enumerating self-canonical pairs.

This is the portable fallback for the compiled kernel in ``_kernel.pyx``;
the two implementations are intentionally line-parallel and must explore
candidates in exactly the same order, because parallel runs replay decision
prefixes produced by one process inside another.

The search builds (phi, psi) with phi^2 = psi^3 = 1 directly in canonical
labeling: elements are processed in label order, the phi image first and
then the whole psi 3-cycle, and any image not seen before must receive the
next fresh label (breadth-first discovery order from element 0 under the
generator order phi, psi, psi^2). Every complete assignment is therefore
transitive and self-canonical, so each rooted equivalence class is emitted
exactly once, with no deduplication memory.

Optional pruning tracks the partial product lambda = phi(psi(.)) as a set
of disjoint open paths and closed cycles: if the filter pins the final
number h of lambda-cycles (the face count / cusp count), branches whose
achievable cycle-count range excludes h are cut, and with a cusp-split
target every closed cycle length must be available in the remaining width
multiset.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

KERNEL_NAME = "python"

Solution = Tuple[bytes, bytes]


def search(
    mu: int,
    torsion_free: bool,
    target_h: int = -1,
    split_counts: Optional[Sequence[int]] = None,
    prefix: Tuple[int, ...] = (),
    split_depth: int = -1,
) -> Tuple[List[Solution], List[Tuple[int, ...]]]:
    """Enumerate self-canonical pairs of degree mu.

    Args:
        mu: degree (index); must be 1..255 so images pack into bytes.
        torsion_free: disallow fixed points of phi and psi.
        target_h: exact number of cycles the product phi*psi must have, or
            -1 to leave it unconstrained.
        split_counts: optional multiset of required cycle lengths for
            phi*psi, as a count-per-length array of size mu+1 (requires
            target_h == number of widths).
        prefix: decision ordinals to replay before free exploration; used
            to run one partition of the search tree.
        split_depth: if >= 0, do not explore past this decision depth;
            instead collect each available choice there as a task prefix.

    Returns:
        (solutions, tasks): solutions as (phi_bytes, psi_bytes) image
        arrays in discovery order (callers sort), and task prefixes (empty
        unless split_depth >= 0).
    """
    solutions: List[Solution] = []
    tasks: List[Tuple[int, ...]] = []
    if mu < 1:
        return solutions, tasks
    if mu > 255:
        raise ValueError(f"degree {mu} exceeds the byte-packing limit of 255")
    if torsion_free and mu % 6 != 0:
        return solutions, tasks
    if split_counts is not None and len(split_counts) != mu + 1:
        raise ValueError("split_counts must have length mu + 1")

    phi = [-1] * mu
    psi = [-1] * mu
    psi_inv = [-1] * mu

    track = target_h >= 0
    # Partial lambda = phi(psi(.)) path structure; pstart is valid at path
    # ends, pend at path starts, plen (node count) is keyed at path starts.
    lnext = [-1] * mu
    lprev = [-1] * mu
    pstart = list(range(mu))
    pend = list(range(mu))
    plen = [1] * mu
    remaining = list(split_counts) if split_counts is not None else None

    allow_fixed = not torsion_free
    n_prefix = len(prefix)
    recording = split_depth >= 0
    choice_path: List[int] = []

    next_fresh = 1
    closed = 0
    paths = mu
    depth = 0

    # Per-branch trail of lambda edges for undo; kinds: 0 = merged two
    # paths, 1 = closed a cycle, 2 = closed a cycle and consumed a width.
    trail_u = [0] * (mu + 1)
    trail_v = [0] * (mu + 1)
    trail_k = [0] * (mu + 1)
    n_trail = 0

    def add_edge(u: int, v: int) -> bool:
        """Record lambda(u) = v; False if the pruning bounds are violated."""
        nonlocal closed, paths, n_trail
        lnext[u] = v
        lprev[v] = u
        s = pstart[u]
        kind = 0
        if s == v:
            closed += 1
            paths -= 1
            kind = 1
            if remaining is not None:
                length = plen[v]
                if remaining[length] == 0:
                    trail_u[n_trail] = u
                    trail_v[n_trail] = v
                    trail_k[n_trail] = 1
                    n_trail += 1
                    return False
                remaining[length] -= 1
                kind = 2
        else:
            e = pend[v]
            pend[s] = e
            pstart[e] = s
            plen[s] += plen[v]
            paths -= 1
        trail_u[n_trail] = u
        trail_v[n_trail] = v
        trail_k[n_trail] = kind
        n_trail += 1
        if closed + (1 if paths else 0) > target_h:
            return False
        if closed + paths < target_h:
            return False
        return True

    def undo_trail(mark: int) -> None:
        """Roll the lambda path structure back to a trail mark."""
        nonlocal closed, paths, n_trail
        while n_trail > mark:
            n_trail -= 1
            u = trail_u[n_trail]
            v = trail_v[n_trail]
            kind = trail_k[n_trail]
            lnext[u] = -1
            lprev[v] = -1
            if kind == 0:
                s = pstart[u]
                e = pend[v]
                pend[s] = u
                pstart[e] = v
                plen[s] -= plen[v]
                paths += 1
            else:
                closed -= 1
                paths += 1
                if kind == 2:
                    remaining[plen[v]] += 1

    def process(i: int) -> None:
        """Handle element i: ensure phi[i], then the psi cycle, then i+1."""
        if i == mu:
            solutions.append((bytes(phi), bytes(psi)))
            return
        if i >= next_fresh:
            return  # the orbit of 0 closed early: not transitive
        phi_step(i)

    def phi_step(i: int) -> None:
        """Decision point for phi[i]: fixed point, earlier partner, fresh."""
        if phi[i] >= 0:
            psi_step(i)
            return
        nonlocal depth
        d = depth
        want = prefix[d] if d < n_prefix else -1
        split_here = split_depth == d
        c = 0
        if allow_fixed:
            if split_here:
                tasks.append(tuple(choice_path) + (c,))
            elif want < 0 or want == c:
                try_phi(i, i, d, c)
            c += 1
        nf = next_fresh
        for j in range(i + 1, nf):
            if phi[j] < 0:
                if split_here:
                    tasks.append(tuple(choice_path) + (c,))
                elif want < 0 or want == c:
                    try_phi(i, j, d, c)
                c += 1
        if nf < mu:
            if split_here:
                tasks.append(tuple(choice_path) + (c,))
            elif want < 0 or want == c:
                try_phi(i, nf, d, c)

    def try_phi(i: int, j: int, d: int, c: int) -> None:
        """Apply phi[i] = j (j == i meaning a fixed point), recurse, undo."""
        nonlocal depth, next_fresh
        mark = n_trail
        grew = False
        if j == i:
            phi[i] = i
        else:
            phi[i] = j
            phi[j] = i
            if j == next_fresh:
                next_fresh += 1
                grew = True
        ok = True
        if track:
            # New lambda edges: psi^{-1}(x) -> phi(x) for each new phi value.
            for x, y in (((i, i),) if j == i else ((i, j), (j, i))):
                u = psi_inv[x]
                if u >= 0 and not add_edge(u, y):
                    ok = False
                    break
        if ok:
            depth = d + 1
            if recording:
                choice_path.append(c)
            psi_step(i)
            if recording:
                choice_path.pop()
            depth = d
        undo_trail(mark)
        phi[i] = -1
        if j != i:
            phi[j] = -1
            if grew:
                next_fresh -= 1

    def psi_step(i: int) -> None:
        """Decision point for the psi cycle at i: (i), or (i a b)."""
        if psi[i] >= 0:
            process(i + 1)
            return
        nonlocal depth
        d = depth
        want = prefix[d] if d < n_prefix else -1
        split_here = split_depth == d
        c = 0
        if allow_fixed:
            if split_here:
                tasks.append(tuple(choice_path) + (c,))
            elif want < 0 or want == c:
                try_psi(i, i, i, d, c)
            c += 1
        nf = next_fresh
        for a in range(i + 1, nf):
            if psi[a] < 0:
                for b in range(i + 1, nf):
                    if b != a and psi[b] < 0:
                        if split_here:
                            tasks.append(tuple(choice_path) + (c,))
                        elif want < 0 or want == c:
                            try_psi(i, a, b, d, c)
                        c += 1
                if nf < mu:
                    if split_here:
                        tasks.append(tuple(choice_path) + (c,))
                    elif want < 0 or want == c:
                        try_psi(i, a, nf, d, c)
                    c += 1
        if nf < mu:
            for b in range(i + 1, nf):
                if psi[b] < 0:
                    if split_here:
                        tasks.append(tuple(choice_path) + (c,))
                    elif want < 0 or want == c:
                        try_psi(i, nf, b, d, c)
                    c += 1
            if nf + 1 < mu:
                if split_here:
                    tasks.append(tuple(choice_path) + (c,))
                elif want < 0 or want == c:
                    try_psi(i, nf, nf + 1, d, c)

    def try_psi(i: int, a: int, b: int, d: int, c: int) -> None:
        """Apply psi cycle (i a b) (or fixed point if a == i), recurse, undo."""
        nonlocal depth, next_fresh
        mark = n_trail
        if a == i:
            psi[i] = i
            psi_inv[i] = i
            delta = 0
            trips = ((i, i),)
        else:
            nf0 = next_fresh
            delta = (1 if a >= nf0 else 0) + (1 if b >= nf0 else 0)
            psi[i] = a
            psi[a] = b
            psi[b] = i
            psi_inv[a] = i
            psi_inv[b] = a
            psi_inv[i] = b
            next_fresh = nf0 + delta
            trips = ((i, a), (a, b), (b, i))
        ok = True
        if track:
            # New lambda edges: src -> phi(psi(src)) where psi(src) = dst.
            for src, dst in trips:
                y = phi[dst]
                if y >= 0 and not add_edge(src, y):
                    ok = False
                    break
        if ok:
            depth = d + 1
            if recording:
                choice_path.append(c)
            process(i + 1)
            if recording:
                choice_path.pop()
            depth = d
        undo_trail(mark)
        if a == i:
            psi[i] = -1
            psi_inv[i] = -1
        else:
            psi[i] = -1
            psi[a] = -1
            psi[b] = -1
            psi_inv[a] = -1
            psi_inv[b] = -1
            psi_inv[i] = -1
            next_fresh -= delta

    process(0)
    return solutions, tasks
