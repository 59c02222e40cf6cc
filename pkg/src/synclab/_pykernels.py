"""Pure-Python versions of the hot kernels.

Signatures and results match ``synclab._kernels`` exactly, including the
``explored`` counter, so either backend can serve as the other's oracle.
"""

from __future__ import annotations

from collections import deque


def _image_tables(table, n, k):
    """Per letter and byte chunk, the image mask of every byte value."""
    nchunks = (n + 7) // 8
    luts = []
    for a in range(k):
        per_letter = []
        for c in range(nchunks):
            lut = [0] * 256
            for v in range(1, 256):
                low = v & -v
                bit = low.bit_length() - 1
                s = c * 8 + bit
                img = (1 << table[s * k + a]) if s < n else 0
                lut[v] = lut[v ^ low] | img
            per_letter.append(lut)
        luts.append(per_letter)
    return luts


def shortest_sync(table, n, k, subset_limit):
    """Breadth-first search from the full set to the first singleton.

    Returns ``(length, letters, explored)``; ``length == -1`` when no
    singleton is reachable.
    """
    if (1 << n) > subset_limit:
        raise ValueError(f"2^{n} subsets exceed the limit {subset_limit}")
    full = (1 << n) - 1
    if n == 1:
        return 0, [], 1
    luts = _image_tables(table, n, k)
    nchunks = (n + 7) // 8
    parent = {full: None}
    todo = deque([full])
    while todo:
        s = todo.popleft()
        for a in range(k):
            lut = luts[a]
            r = 0
            for c in range(nchunks):
                r |= lut[c][(s >> (8 * c)) & 255]
            if r in parent:
                continue
            parent[r] = (s, a)
            if r & (r - 1) == 0:
                word = []
                while parent[r] is not None:
                    r, letter = parent[r]
                    word.append(letter)
                word.reverse()
                return len(word), word, len(parent)
            todo.append(r)
    return -1, [], len(parent)


def _relabeled(table, n, k, sigma):
    rel = [0] * (n * k)
    for q in range(n):
        base = sigma[q] * k
        for a in range(k):
            rel[base + a] = sigma[table[q * k + a]]
    return rel


def canonical_table(table, n, k, state_perms, letter_perms):
    """Lexicographically least table over all state and letter relabelings."""
    best = list(table)
    nk = n * k
    for sigma in state_perms:
        rel = _relabeled(table, n, k, sigma)
        for p in letter_perms:
            for idx in range(nk):
                q, b = divmod(idx, k)
                v = rel[q * k + p[b]]
                if v != best[idx]:
                    if v < best[idx]:
                        best = [rel[(i // k) * k + p[i % k]] for i in range(nk)]
                    break
    return tuple(best)


def is_canonical(table, n, k, state_perms, letter_perms):
    nk = n * k
    for sigma in state_perms:
        rel = _relabeled(table, n, k, sigma)
        for p in letter_perms:
            for idx in range(nk):
                q, b = divmod(idx, k)
                v = rel[q * k + p[b]]
                if v != table[idx]:
                    if v < table[idx]:
                        return False
                    break
    return True
