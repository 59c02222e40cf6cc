"""Ground-truth reset-word oracles and exhaustive automaton enumeration."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from synclab import kernels
from synclab.dfa import Dfa, Word, apply_word_set, is_strongly_connected

DEFAULT_SUBSET_LIMIT = 1 << 22
DEFAULT_BUDGET = 10**7
FILTERS = ("all", "strongly_connected", "synchronizing", "both")


@dataclass(frozen=True)
class OracleResult:
    length: int | None
    witness: Word | None
    explored: int

    @property
    def synchronizing(self) -> bool:
        return self.length is not None


def shortest_sync_word(dfa: Dfa, subset_limit: int = DEFAULT_SUBSET_LIMIT, impl=None) -> OracleResult:
    """Exact shortest reset word by BFS on the power-set automaton.

    Letters are tried in alphabet order, so the witness is the first
    shortest word in BFS discovery order.  Raises ``ValueError`` when
    2**n exceeds ``subset_limit``.
    """
    length, word, explored = kernels.shortest_sync(dfa.flat(), dfa.n, dfa.k, subset_limit, impl=impl)
    if length < 0:
        return OracleResult(None, None, explored)
    return OracleResult(length, tuple(word), explored)


def pair_merge_table(dfa: Dfa) -> dict[tuple[int, int], tuple[int, int]]:
    """For each mergeable pair p < q: (distance to merge, first letter to read).

    Computed by reverse BFS on the pair graph from pairs merged by one letter.
    """
    n, k = dfa.n, dfa.k
    preimage = [[[] for _ in range(n)] for _ in range(k)]
    for q, row in enumerate(dfa.delta):
        for a, t in enumerate(row):
            preimage[a][t].append(q)
    table: dict[tuple[int, int], tuple[int, int]] = {}
    todo: deque[tuple[int, int]] = deque()
    for p in range(n):
        for q in range(p + 1, n):
            for a in range(k):
                if dfa.delta[p][a] == dfa.delta[q][a]:
                    table[p, q] = (1, a)
                    todo.append((p, q))
                    break
    while todo:
        s, t = todo.popleft()
        d = table[s, t][0]
        for a in range(k):
            for p in preimage[a][s]:
                for q in preimage[a][t]:
                    key = (p, q) if p < q else (q, p)
                    if p != q and key not in table:
                        table[key] = (d + 1, a)
                        todo.append(key)
    return table


def greedy_sync_word(dfa: Dfa) -> Word | None:
    """Pair-merging heuristic: repeatedly merge the closest pair of the current set.

    Returns a reset word (usually not shortest) or ``None`` when some pair
    can never be merged.
    """
    table = pair_merge_table(dfa)
    current = set(range(dfa.n))
    word: list[int] = []
    while len(current) > 1:
        members = sorted(current)
        best = None
        for i, p in enumerate(members):
            for q in members[i + 1 :]:
                entry = table.get((p, q))
                if entry is not None and (best is None or entry[0] < best[0]):
                    best = (entry[0], p, q)
        if best is None:
            return None
        _, p, q = best
        piece = []
        while p != q:
            a = table[min(p, q), max(p, q)][1]
            piece.append(a)
            p, q = dfa.delta[p][a], dfa.delta[q][a]
        word.extend(piece)
        current = set(apply_word_set(dfa, current, piece))
    return tuple(word)


def canonical_form(dfa: Dfa) -> Dfa:
    """Least isomorphic copy under state relabeling and letter permutation."""
    flat = kernels.canonical_table(dfa.flat(), dfa.n, dfa.k)
    k = dfa.k
    return Dfa(dfa.n, k, tuple(tuple(flat[q * k : (q + 1) * k]) for q in range(dfa.n)))


def is_canonical(dfa: Dfa) -> bool:
    return kernels.is_canonical(dfa.flat(), dfa.n, dfa.k)


def _passes(dfa: Dfa, filter: str, subset_limit: int) -> bool:
    if filter in ("strongly_connected", "both") and not is_strongly_connected(dfa):
        return False
    if filter in ("synchronizing", "both"):
        return shortest_sync_word(dfa, subset_limit).synchronizing
    return True


def table_count(n: int, k: int) -> int:
    return n ** (n * k)


def enumerate_dfas(
    n: int,
    k: int,
    filter: str = "all",
    canonical: bool = False,
    budget: int = DEFAULT_BUDGET,
    prefix: tuple[int, ...] = (),
    subset_limit: int = DEFAULT_SUBSET_LIMIT,
) -> Iterator[Dfa]:
    """Yield every n-state, k-letter table in lexicographic order that passes ``filter``.

    With ``canonical=True`` only the lexicographically least member of each
    isomorphism class is yielded.  ``prefix`` pins the leading table entries,
    which is how parallel workers split the space.
    """
    if filter not in FILTERS:
        raise ValueError(f"unknown filter {filter!r}; expected one of {FILTERS}")
    if table_count(n, k) > budget:
        raise ValueError(f"{n}^{n * k} tables exceed the enumeration budget {budget}")
    free = n * k - len(prefix)
    for tail in product(range(n), repeat=free):
        flat = prefix + tail
        if canonical and not kernels.is_canonical(flat, n, k):
            continue
        dfa = Dfa(n, k, tuple(flat[q * k : (q + 1) * k] for q in range(n)))
        if _passes(dfa, filter, subset_limit):
            yield dfa
