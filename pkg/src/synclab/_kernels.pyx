# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: power-set BFS and table canonicalisation.

Mirrors ``synclab._pykernels`` call for call.
"""

from libc.stdint cimport uint8_t, uint64_t
from libc.stdlib cimport free, malloc
from libc.string cimport memset


cdef inline uint64_t _image(uint64_t s, const uint64_t *lut, int nchunks) nogil:
    cdef uint64_t r = 0
    cdef int c
    for c in range(nchunks):
        r |= lut[c * 256 + ((s >> (8 * c)) & 255)]
    return r


def shortest_sync(table, int n, int k, subset_limit):
    """Breadth-first search from the full set to the first singleton.

    Returns ``(length, letters, explored)``; ``length == -1`` when no
    singleton is reachable.
    """
    if n > 40 or pow(2, <object>n) > subset_limit:
        raise ValueError(f"2^{n} subsets exceed the limit {subset_limit}")
    if n == 1:
        return 0, [], 1
    cdef int nchunks = (n + 7) // 8
    cdef uint64_t size = (<uint64_t>1) << n
    cdef uint64_t full = size - 1
    cdef uint64_t *luts = <uint64_t *>malloc(k * nchunks * 256 * sizeof(uint64_t))
    cdef uint64_t *parent = <uint64_t *>malloc(size * sizeof(uint64_t))
    cdef uint64_t *queue = <uint64_t *>malloc(size * sizeof(uint64_t))
    cdef uint8_t *via = <uint8_t *>malloc(size * sizeof(uint8_t))
    if luts == NULL or parent == NULL or queue == NULL or via == NULL:
        free(luts); free(parent); free(queue); free(via)
        raise MemoryError()
    cdef int a, c, v, bit, st
    cdef uint64_t s, r, head = 0, tail = 0, explored = 1
    cdef uint64_t *lut
    cdef long found = -1
    try:
        for a in range(k):
            for c in range(nchunks):
                lut = luts + (a * nchunks + c) * 256
                lut[0] = 0
                for v in range(1, 256):
                    bit = 0
                    while not (v >> bit) & 1:
                        bit += 1
                    st = c * 8 + bit
                    lut[v] = lut[v & (v - 1)]
                    if st < n:
                        lut[v] |= (<uint64_t>1) << table[st * k + a]
        memset(via, 255, size)
        via[full] = 254
        queue[tail] = full
        tail += 1
        with nogil:
            while head < tail and found < 0:
                s = queue[head]
                head += 1
                for a in range(k):
                    r = _image(s, luts + a * nchunks * 256, nchunks)
                    if via[r] != 255:
                        continue
                    via[r] = <uint8_t>a
                    parent[r] = s
                    explored += 1
                    if r & (r - 1) == 0:
                        found = <long>r
                        break
                    queue[tail] = r
                    tail += 1
        if found < 0:
            return -1, [], explored
        word = []
        r = <uint64_t>found
        while r != full:
            word.append(via[r])
            r = parent[r]
        word.reverse()
        return len(word), word, explored
    finally:
        free(luts); free(parent); free(queue); free(via)


cdef int _compare_relabeled(const int *rel, const int *perm, const int *ref, int n, int k) nogil:
    """Sign of (relabeled table under letter perm) minus ref, lexicographically."""
    cdef int q, b, v, w
    for q in range(n):
        for b in range(k):
            v = rel[q * k + perm[b]]
            w = ref[q * k + b]
            if v != w:
                return -1 if v < w else 1
    return 0


cdef class _Perms:
    cdef int *data
    cdef int count
    cdef int width

    def __cinit__(self, perms, int width):
        self.count = len(perms)
        self.width = width
        self.data = <int *>malloc(max(1, self.count * width) * sizeof(int))
        if self.data == NULL:
            raise MemoryError()
        cdef int i, j
        for i in range(self.count):
            for j in range(width):
                self.data[i * width + j] = perms[i][j]

    def __dealloc__(self):
        free(self.data)


cdef object _scan(table, int n, int k, state_perms, letter_perms, bint stop_early):
    cdef int nk = n * k
    cdef _Perms sp = _Perms(state_perms, n)
    cdef _Perms lp = _Perms(letter_perms, k)
    cdef int *orig = <int *>malloc(nk * sizeof(int))
    cdef int *best = <int *>malloc(nk * sizeof(int))
    cdef int *rel = <int *>malloc(nk * sizeof(int))
    cdef int i, j, q, a, b
    cdef int *sigma
    cdef int *perm
    cdef bint smaller = False
    try:
        for i in range(nk):
            orig[i] = table[i]
            best[i] = orig[i]
        with nogil:
            for i in range(sp.count):
                sigma = sp.data + i * n
                for q in range(n):
                    for a in range(k):
                        rel[sigma[q] * k + a] = sigma[orig[q * k + a]]
                for j in range(lp.count):
                    perm = lp.data + j * k
                    if _compare_relabeled(rel, perm, best, n, k) < 0:
                        smaller = True
                        if stop_early:
                            break
                        for q in range(n):
                            for b in range(k):
                                best[q * k + b] = rel[q * k + perm[b]]
                if smaller and stop_early:
                    break
        if stop_early:
            return not smaller
        return tuple(best[i] for i in range(nk))
    finally:
        free(orig); free(best); free(rel)


def canonical_table(table, int n, int k, state_perms, letter_perms):
    """Lexicographically least table over all state and letter relabelings."""
    return _scan(table, n, k, state_perms, letter_perms, False)


def is_canonical(table, int n, int k, state_perms, letter_perms):
    return _scan(table, n, k, state_perms, letter_perms, True)
