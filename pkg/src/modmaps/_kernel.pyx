# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backtracking kernel enumerating self-canonical pairs.

Line-parallel with ``_kernel_py.py`` (the portable fallback); both must
explore candidates in exactly the same order because parallel runs replay
decision prefixes produced by one backend inside another. See the fallback
module for the full algorithm description.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize
from cpython.mem cimport PyMem_Free, PyMem_Malloc

KERNEL_NAME = "cython"


cdef class _Searcher:
    cdef int mu, target_h, split_depth, n_prefix
    cdef bint torsion_free, track, allow_fixed, recording, has_split
    cdef int next_fresh, closed, paths, depth, n_trail
    cdef int *phi
    cdef int *psi
    cdef int *psi_inv
    cdef int *lnext
    cdef int *lprev
    cdef int *pstart
    cdef int *pend
    cdef int *plen
    cdef int *remaining
    cdef int *trail_u
    cdef int *trail_v
    cdef int *trail_k
    cdef int *prefix
    cdef unsigned char *scratch
    cdef list solutions
    cdef list tasks
    cdef list choice_path

    def __cinit__(self, int mu, bint torsion_free, int target_h,
                  split_counts, prefix, int split_depth):
        cdef int i
        cdef Py_ssize_t n_ints
        self.mu = mu
        self.torsion_free = torsion_free
        self.allow_fixed = not torsion_free
        self.target_h = target_h
        self.track = target_h >= 0
        self.split_depth = split_depth
        self.recording = split_depth >= 0
        self.has_split = split_counts is not None
        self.n_prefix = len(prefix)
        self.next_fresh = 1
        self.closed = 0
        self.paths = mu
        self.depth = 0
        self.n_trail = 0
        self.solutions = []
        self.tasks = []
        self.choice_path = []
        n_ints = 8 * mu + 4 * (mu + 1) + self.n_prefix
        self.phi = <int *> PyMem_Malloc(n_ints * sizeof(int))
        self.scratch = <unsigned char *> PyMem_Malloc(mu)
        if self.phi == NULL or self.scratch == NULL:
            raise MemoryError()
        self.psi = self.phi + mu
        self.psi_inv = self.psi + mu
        self.lnext = self.psi_inv + mu
        self.lprev = self.lnext + mu
        self.pstart = self.lprev + mu
        self.pend = self.pstart + mu
        self.plen = self.pend + mu
        self.remaining = self.plen + mu
        self.trail_u = self.remaining + (mu + 1)
        self.trail_v = self.trail_u + (mu + 1)
        self.trail_k = self.trail_v + (mu + 1)
        self.prefix = self.trail_k + (mu + 1)
        for i in range(mu):
            self.phi[i] = -1
            self.psi[i] = -1
            self.psi_inv[i] = -1
            self.lnext[i] = -1
            self.lprev[i] = -1
            self.pstart[i] = i
            self.pend[i] = i
            self.plen[i] = 1
        for i in range(mu + 1):
            self.remaining[i] = split_counts[i] if self.has_split else 0
        for i in range(self.n_prefix):
            self.prefix[i] = prefix[i]

    def __dealloc__(self):
        PyMem_Free(self.phi)
        PyMem_Free(self.scratch)

    cdef bytes pack(self, int *arr):
        cdef int k
        for k in range(self.mu):
            self.scratch[k] = <unsigned char> arr[k]
        return PyBytes_FromStringAndSize(<char *> self.scratch, self.mu)

    cdef bint add_edge(self, int u, int v):
        cdef int s, e, kind, length
        self.lnext[u] = v
        self.lprev[v] = u
        s = self.pstart[u]
        kind = 0
        if s == v:
            self.closed += 1
            self.paths -= 1
            kind = 1
            if self.has_split:
                length = self.plen[v]
                if self.remaining[length] == 0:
                    self.trail_u[self.n_trail] = u
                    self.trail_v[self.n_trail] = v
                    self.trail_k[self.n_trail] = 1
                    self.n_trail += 1
                    return False
                self.remaining[length] -= 1
                kind = 2
        else:
            e = self.pend[v]
            self.pend[s] = e
            self.pstart[e] = s
            self.plen[s] += self.plen[v]
            self.paths -= 1
        self.trail_u[self.n_trail] = u
        self.trail_v[self.n_trail] = v
        self.trail_k[self.n_trail] = kind
        self.n_trail += 1
        if self.closed + (1 if self.paths else 0) > self.target_h:
            return False
        if self.closed + self.paths < self.target_h:
            return False
        return True

    cdef void undo_trail(self, int mark):
        cdef int u, v, kind, s, e
        while self.n_trail > mark:
            self.n_trail -= 1
            u = self.trail_u[self.n_trail]
            v = self.trail_v[self.n_trail]
            kind = self.trail_k[self.n_trail]
            self.lnext[u] = -1
            self.lprev[v] = -1
            if kind == 0:
                s = self.pstart[u]
                e = self.pend[v]
                self.pend[s] = u
                self.pstart[e] = v
                self.plen[s] -= self.plen[v]
                self.paths += 1
            else:
                self.closed -= 1
                self.paths += 1
                if kind == 2:
                    self.remaining[self.plen[v]] += 1

    cdef void process(self, int i):
        if i == self.mu:
            self.solutions.append((self.pack(self.phi), self.pack(self.psi)))
            return
        if i >= self.next_fresh:
            return  # the orbit of 0 closed early: not transitive
        self.phi_step(i)

    cdef void phi_step(self, int i):
        cdef int d, want, c, j, nf
        cdef bint split_here
        if self.phi[i] >= 0:
            self.psi_step(i)
            return
        d = self.depth
        want = self.prefix[d] if d < self.n_prefix else -1
        split_here = self.split_depth == d
        c = 0
        if self.allow_fixed:
            if split_here:
                self.tasks.append(tuple(self.choice_path) + (c,))
            elif want < 0 or want == c:
                self.try_phi(i, i, d, c)
            c += 1
        nf = self.next_fresh
        for j in range(i + 1, nf):
            if self.phi[j] < 0:
                if split_here:
                    self.tasks.append(tuple(self.choice_path) + (c,))
                elif want < 0 or want == c:
                    self.try_phi(i, j, d, c)
                c += 1
        if nf < self.mu:
            if split_here:
                self.tasks.append(tuple(self.choice_path) + (c,))
            elif want < 0 or want == c:
                self.try_phi(i, nf, d, c)

    cdef void try_phi(self, int i, int j, int d, int c):
        cdef int mark, u
        cdef bint grew, ok
        mark = self.n_trail
        grew = False
        if j == i:
            self.phi[i] = i
        else:
            self.phi[i] = j
            self.phi[j] = i
            if j == self.next_fresh:
                self.next_fresh += 1
                grew = True
        ok = True
        if self.track:
            # New lambda edges: psi^{-1}(x) -> phi(x) for each new phi value.
            if j == i:
                u = self.psi_inv[i]
                if u >= 0 and not self.add_edge(u, i):
                    ok = False
            else:
                u = self.psi_inv[i]
                if u >= 0 and not self.add_edge(u, j):
                    ok = False
                if ok:
                    u = self.psi_inv[j]
                    if u >= 0 and not self.add_edge(u, i):
                        ok = False
        if ok:
            self.depth = d + 1
            if self.recording:
                self.choice_path.append(c)
            self.psi_step(i)
            if self.recording:
                self.choice_path.pop()
            self.depth = d
        self.undo_trail(mark)
        self.phi[i] = -1
        if j != i:
            self.phi[j] = -1
            if grew:
                self.next_fresh -= 1

    cdef void psi_step(self, int i):
        cdef int d, want, c, a, b, nf
        cdef bint split_here
        if self.psi[i] >= 0:
            self.process(i + 1)
            return
        d = self.depth
        want = self.prefix[d] if d < self.n_prefix else -1
        split_here = self.split_depth == d
        c = 0
        if self.allow_fixed:
            if split_here:
                self.tasks.append(tuple(self.choice_path) + (c,))
            elif want < 0 or want == c:
                self.try_psi(i, i, i, d, c)
            c += 1
        nf = self.next_fresh
        for a in range(i + 1, nf):
            if self.psi[a] < 0:
                for b in range(i + 1, nf):
                    if b != a and self.psi[b] < 0:
                        if split_here:
                            self.tasks.append(tuple(self.choice_path) + (c,))
                        elif want < 0 or want == c:
                            self.try_psi(i, a, b, d, c)
                        c += 1
                if nf < self.mu:
                    if split_here:
                        self.tasks.append(tuple(self.choice_path) + (c,))
                    elif want < 0 or want == c:
                        self.try_psi(i, a, nf, d, c)
                    c += 1
        if nf < self.mu:
            for b in range(i + 1, nf):
                if self.psi[b] < 0:
                    if split_here:
                        self.tasks.append(tuple(self.choice_path) + (c,))
                    elif want < 0 or want == c:
                        self.try_psi(i, nf, b, d, c)
                    c += 1
            if nf + 1 < self.mu:
                if split_here:
                    self.tasks.append(tuple(self.choice_path) + (c,))
                elif want < 0 or want == c:
                    self.try_psi(i, nf, nf + 1, d, c)

    cdef void try_psi(self, int i, int a, int b, int d, int c):
        cdef int mark, delta, nf0, y
        cdef bint ok
        mark = self.n_trail
        if a == i:
            self.psi[i] = i
            self.psi_inv[i] = i
            delta = 0
        else:
            nf0 = self.next_fresh
            delta = (1 if a >= nf0 else 0) + (1 if b >= nf0 else 0)
            self.psi[i] = a
            self.psi[a] = b
            self.psi[b] = i
            self.psi_inv[a] = i
            self.psi_inv[b] = a
            self.psi_inv[i] = b
            self.next_fresh = nf0 + delta
        ok = True
        if self.track:
            # New lambda edges: src -> phi(psi(src)) where psi(src) = dst.
            if a == i:
                y = self.phi[i]
                if y >= 0 and not self.add_edge(i, y):
                    ok = False
            else:
                y = self.phi[a]
                if y >= 0 and not self.add_edge(i, y):
                    ok = False
                if ok:
                    y = self.phi[b]
                    if y >= 0 and not self.add_edge(a, y):
                        ok = False
                if ok:
                    y = self.phi[i]
                    if y >= 0 and not self.add_edge(b, y):
                        ok = False
        if ok:
            self.depth = d + 1
            if self.recording:
                self.choice_path.append(c)
            self.process(i + 1)
            if self.recording:
                self.choice_path.pop()
            self.depth = d
        self.undo_trail(mark)
        if a == i:
            self.psi[i] = -1
            self.psi_inv[i] = -1
        else:
            self.psi[i] = -1
            self.psi[a] = -1
            self.psi[b] = -1
            self.psi_inv[a] = -1
            self.psi_inv[b] = -1
            self.psi_inv[i] = -1
            self.next_fresh -= delta

    cdef run(self):
        self.process(0)
        return self.solutions, self.tasks


def search(int mu, bint torsion_free, int target_h=-1, split_counts=None,
           prefix=(), int split_depth=-1):
    """Enumerate self-canonical pairs of degree mu; see the fallback kernel
    for full parameter documentation. Returns (solutions, tasks)."""
    if mu < 1:
        return [], []
    if mu > 255:
        raise ValueError(f"degree {mu} exceeds the byte-packing limit of 255")
    if torsion_free and mu % 6 != 0:
        return [], []
    counts = None
    if split_counts is not None:
        counts = list(split_counts)
        if len(counts) != mu + 1:
            raise ValueError("split_counts must have length mu + 1")
    cdef _Searcher searcher = _Searcher(mu, torsion_free, target_h, counts,
                                        tuple(prefix), split_depth)
    return searcher.run()
