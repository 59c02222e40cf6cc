"""Row-monomial matrices of words, stored as image vectors.

``RowMonoMatrix(img)`` stands for the n x n 0/1 matrix whose row ``i`` has
its single unit in column ``img[i]``.  Dense grids are only materialised
for rank audits.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from synclab.dfa import Dfa, apply_word


@dataclass(frozen=True)
class RowMonoMatrix:
    img: tuple[int, ...]

    def __post_init__(self):
        img = tuple(int(j) for j in self.img)
        n = len(img)
        if any(not 0 <= j < n for j in img):
            raise ValueError(f"image {img} has entries outside [0, {n})")
        object.__setattr__(self, "img", img)

    @property
    def n(self) -> int:
        return len(self.img)

    def __matmul__(self, other: "RowMonoMatrix") -> "RowMonoMatrix":
        return mat_mul(self, other)

    def dense(self) -> list[list[int]]:
        return [[1 if j == c else 0 for j in range(self.n)] for c in self.img]

    def is_permutation(self) -> bool:
        return len(set(self.img)) == self.n

    def column_counts(self) -> Counter:
        """Number of units in each nonzero column."""
        return Counter(self.img)

    def render(self) -> str:
        return "\n".join(f"row {i} -> col {j}" for i, j in enumerate(self.img))

    def to_json(self) -> list[int]:
        return list(self.img)


def identity(n: int) -> RowMonoMatrix:
    return RowMonoMatrix(tuple(range(n)))


def matrix_of_word(dfa: Dfa, w: Iterable[int]) -> RowMonoMatrix:
    w = tuple(w)
    return RowMonoMatrix(tuple(apply_word(dfa, q, w) for q in range(dfa.n)))


def mat_mul(x: RowMonoMatrix, y: RowMonoMatrix) -> RowMonoMatrix:
    if x.n != y.n:
        raise ValueError(f"dimension mismatch: {x.n} vs {y.n}")
    yi = y.img
    return RowMonoMatrix(tuple(yi[j] for j in x.img))


def nonzero_columns(m: RowMonoMatrix) -> frozenset[int]:
    return frozenset(m.img)


def rank(m: RowMonoMatrix) -> int:
    """Rank of the matrix, which is the number of nonzero columns."""
    return len(set(m.img))


def dense_rank(rows: Sequence[Sequence[int]]) -> int:
    """Exact rank of an integer matrix by Gaussian elimination over Q."""
    work = [[Fraction(x) for x in row] for row in rows]
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(r + 1, len(work)):
            if work[i][c] != 0:
                f = work[i][c] / work[r][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return r


def merged_columns(mu: RowMonoMatrix, ma: RowMonoMatrix) -> dict[int, list[int]]:
    """For M_u M_a, map each nonzero column j to the columns of M_u folded into it.

    Column ``c`` of ``M_u`` lands in column ``ma.img[c]`` of the product, so a
    column of the product is the sum of one or more distinct columns of ``M_u``.
    """
    out: dict[int, list[int]] = {}
    for c in sorted(set(mu.img)):
        out.setdefault(ma.img[c], []).append(c)
    return out


def prefixes_meet_sync_column(dfa: Dfa, s: Sequence[int]) -> tuple[bool, int | None]:
    """Check that every prefix matrix of a synchronizing word hits its target column.

    Returns ``(holds, first_failing_prefix_length)``.  ``s`` must synchronize
    ``dfa``.
    """
    target = matrix_of_word(dfa, s).img
    if len(set(target)) != 1:
        raise ValueError("word is not synchronizing")
    col = target[0]
    for i in range(len(s) + 1):
        if col not in nonzero_columns(matrix_of_word(dfa, s[:i])):
            return False, i
    return True, None
