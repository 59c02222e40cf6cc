"""Complete deterministic automata, their text format, and word action.

States and letters are 0-indexed.  A word is a plain tuple of letter
indices; the empty tuple acts as the identity.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Sequence

Word = tuple[int, ...]

_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


class DfaFormatError(ValueError):
    """Malformed automaton text; ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Dfa:
    n: int
    k: int
    delta: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError(f"need n >= 1 and k >= 1, got n={self.n}, k={self.k}")
        delta = tuple(tuple(int(t) for t in row) for row in self.delta)
        if len(delta) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(delta)}")
        for q, row in enumerate(delta):
            if len(row) != self.k:
                raise ValueError(f"state {q}: expected {self.k} targets, got {len(row)}")
            for t in row:
                if not 0 <= t < self.n:
                    raise ValueError(f"state {q}: target {t} out of range for n={self.n}")
        object.__setattr__(self, "delta", delta)

    @classmethod
    def from_letters(cls, *maps: Sequence[int]) -> "Dfa":
        """Build from one image vector per letter, e.g. ``Dfa.from_letters(a, b)``."""
        n = len(maps[0])
        return cls(n, len(maps), tuple(tuple(m[q] for m in maps) for q in range(n)))

    def letter_map(self, a: int) -> tuple[int, ...]:
        return tuple(row[a] for row in self.delta)

    def flat(self) -> tuple[int, ...]:
        """Row-major transition table, ``flat()[q*k + a] == delta[q][a]``."""
        return tuple(t for row in self.delta for t in row)

    def __str__(self) -> str:
        return serialize_dfa(self)


def parse_dfa(text: str) -> Dfa:
    header = None
    rows: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 3 or fields[0] != "dfa":
                raise DfaFormatError(lineno, f"expected header 'dfa <n> <k>', got {line!r}")
            try:
                n, k = int(fields[1]), int(fields[2])
            except ValueError:
                raise DfaFormatError(lineno, f"non-integer size in header {line!r}") from None
            if n < 1 or k < 1:
                raise DfaFormatError(lineno, "state count and alphabet size must be positive")
            header = (n, k)
            continue
        n, k = header
        if len(rows) == n:
            raise DfaFormatError(lineno, f"too many rows, expected {n}")
        if len(fields) != k:
            raise DfaFormatError(lineno, f"expected {k} targets, got {len(fields)}")
        try:
            targets = tuple(int(f) for f in fields)
        except ValueError:
            raise DfaFormatError(lineno, f"non-integer target in {line!r}") from None
        for t in targets:
            if not 0 <= t < n:
                raise DfaFormatError(lineno, f"target {t} out of range for n={n}")
        rows.append(targets)
    if header is None:
        raise DfaFormatError(1, "missing header 'dfa <n> <k>'")
    if len(rows) != header[0]:
        raise DfaFormatError(
            len(text.splitlines()) + 1, f"expected {header[0]} rows, got {len(rows)}"
        )
    return Dfa(header[0], header[1], tuple(rows))


def serialize_dfa(dfa: Dfa) -> str:
    lines = [f"dfa {dfa.n} {dfa.k}"]
    lines.extend(" ".join(str(t) for t in row) for row in dfa.delta)
    return "\n".join(lines) + "\n"


def format_word(w: Iterable[int], k: int) -> str:
    """Render a word as letters 'a'..'z', or as ``w:0,1,...`` when k > 26."""
    w = tuple(w)
    if k <= len(_ALPHABET):
        return "".join(_ALPHABET[a] for a in w)
    return "w:" + ",".join(str(a) for a in w)


def parse_word(text: str, k: int | None = None) -> Word:
    if text.startswith("w:"):
        body = text[2:]
        w = tuple(int(x) for x in body.split(",")) if body else ()
    else:
        try:
            w = tuple(_ALPHABET.index(ch) for ch in text)
        except ValueError:
            raise ValueError(f"bad word {text!r}") from None
    if k is not None and any(not 0 <= a < k for a in w):
        raise ValueError(f"word {text!r} uses letters outside alphabet of size {k}")
    return w


def apply_word(dfa: Dfa, q: int, w: Iterable[int]) -> int:
    delta = dfa.delta
    for a in w:
        q = delta[q][a]
    return q


def apply_word_set(dfa: Dfa, states: Iterable[int], w: Iterable[int]) -> frozenset[int]:
    current = frozenset(states)
    delta = dfa.delta
    for a in w:
        current = frozenset(delta[q][a] for q in current)
    return current


def is_synchronizing_word(dfa: Dfa, w: Iterable[int]) -> bool:
    return len(apply_word_set(dfa, range(dfa.n), w)) == 1


def _reaches_all(adj: list[list[int]]) -> bool:
    seen = {0}
    todo = deque([0])
    while todo:
        q = todo.popleft()
        for t in adj[q]:
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return len(seen) == len(adj)


def is_strongly_connected(dfa: Dfa) -> bool:
    forward = [list(row) for row in dfa.delta]
    backward: list[list[int]] = [[] for _ in range(dfa.n)]
    for q, row in enumerate(dfa.delta):
        for t in row:
            backward[t].append(q)
    return _reaches_all(forward) and _reaches_all(backward)


def cerny_family(n: int) -> Dfa:
    """The n-state Černý automaton: 'a' rotates q -> q+1, 'b' sends 0 to 1."""
    if n < 2:
        raise ValueError(f"Černý automaton needs n >= 2, got {n}")
    return Dfa(n, 2, tuple(((q + 1) % n, 1 if q == 0 else q) for q in range(n)))


@dataclass(frozen=True)
class SporadicExample:
    name: str
    source: str
    dfa: Dfa
    expected_length: int


def _load_example(text: str) -> SporadicExample:
    meta = {}
    for line in text.splitlines():
        if line.startswith("#") and ":" in line:
            key, _, value = line[1:].partition(":")
            meta[key.strip()] = value.strip()
    return SporadicExample(meta["name"], meta.get("source", ""), parse_dfa(text), int(meta["expected"]))


def sporadic_examples() -> list[SporadicExample]:
    """Known extremal automata: small Černý members plus the sporadic tables.

    Tables live as text files under ``synclab/data/sporadic``; tests check
    every expected length against the exact oracle.
    """
    out = [
        SporadicExample(f"cerny_{n}", "Černý (1964)", cerny_family(n), (n - 1) ** 2)
        for n in (3, 4)
    ]
    folder = resources.files("synclab") / "data" / "sporadic"
    for entry in sorted(folder.iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".dfa"):
            out.append(_load_example(entry.read_text()))
    return out
