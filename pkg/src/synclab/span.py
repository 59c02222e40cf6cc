"""Exact linear spans of row-monomial matrices and the ascending chain.

Matrices are flattened row-major into 0/1 vectors of length n*n.  The
basis is kept in reduced echelon form with primitive integer rows and
positive pivots, so membership tests are exact and no fractions are
ever materialised.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce
from itertools import product
from math import gcd
from typing import Sequence

from synclab.dfa import Dfa, Word, format_word, is_synchronizing_word, serialize_dfa
from synclab.matrix import RowMonoMatrix, identity, matrix_of_word, mat_mul, rank


def flatten(m: RowMonoMatrix) -> list[int]:
    n = m.n
    v = [0] * (n * n)
    for i, j in enumerate(m.img):
        v[i * n + j] = 1
    return v


def _primitive(v: list[int]) -> list[int]:
    g = reduce(gcd, v, 0)
    lead = next(x for x in v if x)
    if lead < 0:
        g = -g
    return v if g == 1 else [x // g for x in v]


class SpanBasis:
    """Reduced echelon basis of a span of flattened n x n matrices.

    ``rows[i]`` has its pivot at ``pivots[i]`` (strictly increasing) and is
    zero at every other pivot column.  ``provenance[i]`` is the word whose
    insertion created row ``i``; later insertions may rescale and reduce it.
    """

    def __init__(self, n: int):
        self.n = n
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []
        self.provenance: list[Word | None] = []

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def residual(self, v: Sequence[int]) -> list[int]:
        """``v`` reduced against the basis, up to a positive scalar."""
        r = list(v)
        for p, row in zip(self.pivots, self.rows):
            c = r[p]
            if c:
                d = row[p]
                r = [d * x - c * y for x, y in zip(r, row)]
        return r

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.residual(v))

    def insert_vector(self, v: Sequence[int], word: Word | None = None) -> bool:
        if len(v) != self.n * self.n:
            raise ValueError(f"vector length {len(v)} != {self.n * self.n}")
        r = self.residual(v)
        if not any(r):
            return False
        r = _primitive(r)
        p = next(i for i, x in enumerate(r) if x)
        d = r[p]
        for i, row in enumerate(self.rows):
            c = row[p]
            if c:
                self.rows[i] = _primitive([d * x - c * y for x, y in zip(row, r)])
        at = next((i for i, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(at, r)
        self.pivots.insert(at, p)
        self.provenance.insert(at, word)
        return True


def try_insert(basis: SpanBasis, m: RowMonoMatrix, word: Word | None = None) -> bool:
    if m.n != basis.n:
        raise ValueError(f"dimension mismatch: matrix {m.n}, basis {basis.n}")
    return basis.insert_vector(flatten(m), word)


def span_dimension(matrices) -> int:
    matrices = list(matrices)
    if not matrices:
        return 0
    basis = SpanBasis(matrices[0].n)
    for m in matrices:
        try_insert(basis, m)
    return basis.dimension


def canonical_basis(n: int, k: int) -> list[RowMonoMatrix]:
    """The n(k-1) matrices V[i][j] followed by K, in n columns.

    Column ``k-1`` plays the role of the distinguished last column: V[i][j]
    has its unit at (i, j) for j < k-1 and every other row points to
    column k-1; K sends every row to column k-1.
    """
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got n={n}, k={k}")
    last = k - 1
    out = []
    for i in range(n):
        for j in range(last):
            img = [last] * n
            img[i] = j
            out.append(RowMonoMatrix(tuple(img)))
    out.append(RowMonoMatrix((last,) * n))
    return out


def span_dimension_of_all(n: int, k: int, limit: int = 10**6) -> int:
    """Dimension spanned by every row-monomial matrix with columns in range(k)."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    if k**n > limit:
        raise ValueError(f"{k}^{n} matrices exceed the enumeration limit {limit}")
    basis = SpanBasis(n)
    for img in product(range(k), repeat=n):
        try_insert(basis, RowMonoMatrix(img))
    return basis.dimension


@dataclass(frozen=True)
class ChainStep:
    word: Word
    parent: int
    letter: int
    img: tuple[int, ...]
    rank: int
    dimension: int


@dataclass
class ChainCertificate:
    dfa: Dfa
    steps: list[ChainStep] = field(default_factory=list)
    outcome: str = "exhausted"
    sync_word: Word | None = None
    strategy: str = "insertion"
    notice: str | None = None

    def words(self) -> list[Word]:
        """Generator words: the empty word first, then one per step."""
        return [()] + [s.word for s in self.steps]

    def to_dict(self) -> dict:
        k = self.dfa.k
        out = {
            "automaton": serialize_dfa(self.dfa),
            "strategy": self.strategy,
            "steps": [
                {
                    "word": format_word(s.word, k),
                    "parent": s.parent,
                    "letter": format_word((s.letter,), k),
                    "img": list(s.img),
                    "rank": s.rank,
                    "dimension": s.dimension,
                }
                for s in self.steps
            ],
            "outcome": self.outcome,
            "sync_word": None if self.sync_word is None else format_word(self.sync_word, k),
        }
        if self.notice:
            out["notice"] = self.notice
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def chain_extend(
    dfa: Dfa,
    basis: SpanBasis,
    frontier: Sequence[tuple[Word, RowMonoMatrix]],
) -> tuple[Word, int, RowMonoMatrix] | None:
    """First (u, letter) in generator-then-letter order whose matrix leaves the span.

    On success the new matrix has already been inserted into ``basis``.
    """
    letters = [matrix_of_word(dfa, (a,)) for a in range(dfa.k)]
    for u, mu in frontier:
        for a, ma in enumerate(letters):
            m = mat_mul(mu, ma)
            if try_insert(basis, m, u + (a,)):
                return u, a, m
    return None


def degenerate_notice(dfa: Dfa) -> str | None:
    reasons = []
    if dfa.n <= 2:
        reasons.append(f"n={dfa.n} <= 2")
    if dfa.k == 1:
        reasons.append("single-letter alphabet")
    for a in range(dfa.k):
        if len(set(dfa.letter_map(a))) == 1:
            reasons.append(f"letter {format_word((a,), dfa.k)} is constant")
    return "degenerate instance: " + ", ".join(reasons) if reasons else None


def run_chain(dfa: Dfa, step_limit: int | None = None, strategy: str = "insertion") -> ChainCertificate:
    """Grow W_0 = span{identity} one matrix M_{u a} at a time until rank 1 appears.

    ``strategy="insertion"`` scans generators oldest first; ``"shortest"``
    scans them by word length (ties by age).  Letters are always scanned in
    alphabet order.  A pair found inside the span stays inside it, so a
    per-generator cursor gives the same first hit as a full rescan.
    """
    if strategy not in ("insertion", "shortest"):
        raise ValueError(f"unknown strategy {strategy!r}")
    n = dfa.n
    if step_limit is None:
        step_limit = n * (n - 1) + 1
    cert = ChainCertificate(dfa, strategy=strategy, notice=degenerate_notice(dfa))
    basis = SpanBasis(n)
    start = identity(n)
    try_insert(basis, start, ())
    if rank(start) == 1:
        cert.outcome, cert.sync_word = "synchronized", ()
        return cert
    letters = [matrix_of_word(dfa, (a,)) for a in range(dfa.k)]
    gens: list[tuple[Word, RowMonoMatrix]] = [((), start)]
    # next untried letter for each generator
    cursor = [0]
    while True:
        if len(cert.steps) >= step_limit:
            cert.outcome = "step_limit"
            return cert
        order = range(len(gens))
        if strategy == "shortest":
            order = sorted(order, key=lambda g: (len(gens[g][0]), g))
        hit = None
        for g in order:
            u, mu = gens[g]
            while cursor[g] < dfa.k:
                a = cursor[g]
                cursor[g] += 1
                m = mat_mul(mu, letters[a])
                if try_insert(basis, m, u + (a,)):
                    hit = (g, a, m)
                    break
            if hit:
                break
        if hit is None:
            cert.outcome = "exhausted"
            return cert
        g, a, m = hit
        word = gens[g][0] + (a,)
        r = rank(m)
        cert.steps.append(ChainStep(word, g, a, m.img, r, basis.dimension))
        gens.append((word, m))
        cursor.append(0)
        if r == 1:
            cert.outcome, cert.sync_word = "synchronized", word
            return cert


def verify_certificate(cert: ChainCertificate) -> list[str]:
    """Replay a certificate; returns a list of problems (empty when sound)."""
    problems = []
    dfa = cert.dfa
    words = cert.words()
    basis = SpanBasis(dfa.n)
    try_insert(basis, identity(dfa.n))
    for j, s in enumerate(cert.steps, start=1):
        if not 0 <= s.parent < j or s.word != words[s.parent] + (s.letter,):
            problems.append(f"step {j}: word is not parent word plus one letter")
        m = matrix_of_word(dfa, s.word)
        if m.img != s.img:
            problems.append(f"step {j}: stored matrix differs from replay")
        if s.rank != rank(m):
            problems.append(f"step {j}: stored rank {s.rank} != {rank(m)}")
        if not try_insert(basis, m) or basis.dimension != s.dimension or s.dimension != j + 1:
            problems.append(f"step {j}: dimension does not grow by one")
    if cert.outcome == "synchronized":
        if cert.sync_word is None or not is_synchronizing_word(dfa, cert.sync_word):
            problems.append("claimed synchronizing word does not synchronize")
    if len(cert.steps) > dfa.n * (dfa.n - 1):
        problems.append(f"{len(cert.steps)} steps exceed n(n-1)")
    return problems
