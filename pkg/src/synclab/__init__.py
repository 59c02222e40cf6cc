"""Synchronizing automata lab."""

from synclab.dfa import (
    Dfa,
    DfaFormatError,
    apply_word,
    apply_word_set,
    cerny_family,
    format_word,
    is_strongly_connected,
    parse_dfa,
    parse_word,
    serialize_dfa,
    sporadic_examples,
)
from synclab.matrix import RowMonoMatrix, mat_mul, matrix_of_word, nonzero_columns, rank

__all__ = [
    "Dfa",
    "DfaFormatError",
    "RowMonoMatrix",
    "apply_word",
    "apply_word_set",
    "cerny_family",
    "format_word",
    "is_strongly_connected",
    "mat_mul",
    "matrix_of_word",
    "nonzero_columns",
    "parse_dfa",
    "parse_word",
    "rank",
    "serialize_dfa",
    "sporadic_examples",
]
