"""Claim auditor and extremal census.

Each audited claim is a function of a population scope and a seeded RNG,
and produces an ``AuditReport``.  Every recorded violation carries the
automaton in text form plus the words involved, and can be re-checked in
isolation with ``replay_violation``.
"""

from __future__ import annotations

import csv
import io
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Callable

from synclab.dfa import (
    Dfa,
    cerny_family,
    format_word,
    is_strongly_connected,
    is_synchronizing_word,
    parse_dfa,
    parse_word,
    serialize_dfa,
    sporadic_examples,
)
from synclab.matrix import (
    RowMonoMatrix,
    dense_rank,
    mat_mul,
    matrix_of_word,
    merged_columns,
    nonzero_columns,
    prefixes_meet_sync_column,
    rank,
)
from synclab.oracle import (
    DEFAULT_BUDGET,
    enumerate_dfas,
    shortest_sync_word,
    table_count,
)
from synclab.span import (
    SpanBasis,
    canonical_basis,
    flatten,
    run_chain,
    span_dimension,
    span_dimension_of_all,
    try_insert,
    verify_certificate,
)

NOTES = [
    "The starting space W_0 is spanned by the identity matrix (matrix of the empty word, "
    "rank n); a matrix with n units in one row is not row-monomial, so that description "
    "is read as 'rank n'.",
    "Column counts under an invertible left factor are compared column by column with the "
    "same column index: M_a M_u permutes the rows of M_u, so each column keeps its count.",
    "'At most n independent matrices with one common nonzero column' is tested in the "
    "stronger reading: the n constant maps (one per target column) span exactly n dimensions.",
    "The prefix property of synchronizing words is audited on oracle witnesses only, which "
    "are minimal; other minimal words of the same length are not examined.",
    "Chain word lengths are compared against both (n-1)^2 and (n-2)^2; neither bound is asserted.",
]


@dataclass
class AuditScope:
    sample_states: tuple[int, int] = (2, 6)
    sample_letters: tuple[int, int] = (1, 3)
    trials: int = 1000
    exhaustive: tuple[int, int] = (3, 2)
    cerny_states: tuple[int, int] = (3, 8)
    dim_max_n: int = 5
    ceiling_automata: int = 10
    ceiling_states: int = 6
    ceiling_words: int = 1000
    claims: tuple[str, ...] | None = None


@dataclass
class AuditReport:
    claim: str
    population: str
    trials: int
    violations: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        if self.violations:
            return "fail"
        return "pass" if self.trials else "not-applicable"

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "population": self.population,
            "trials": self.trials,
            "verdict": self.verdict,
            "violations": self.violations,
            "details": self.details,
        }


def random_dfa(rng: random.Random, n: int, k: int) -> Dfa:
    return Dfa(n, k, tuple(tuple(rng.randrange(n) for _ in range(k)) for _ in range(n)))


def random_word(rng: random.Random, k: int, max_len: int) -> tuple[int, ...]:
    return tuple(rng.randrange(k) for _ in range(rng.randint(0, max_len)))


def _sample_dfa(rng: random.Random, scope: AuditScope, min_letters: int = 1) -> Dfa:
    n = rng.randint(*scope.sample_states)
    k = rng.randint(max(min_letters, scope.sample_letters[0]), max(min_letters, scope.sample_letters[1]))
    return random_dfa(rng, n, k)


def _with_permutation_letter(rng: random.Random, dfa: Dfa) -> Dfa:
    """Replace letter 0 by a random permutation of the states."""
    perm = list(range(dfa.n))
    rng.shuffle(perm)
    return Dfa(dfa.n, dfa.k, tuple((perm[q],) + row[1:] for q, row in enumerate(dfa.delta)))


def _violation(dfa: Dfa, words, **extra) -> dict:
    out = {"automaton": serialize_dfa(dfa), "words": [format_word(w, dfa.k) for w in words]}
    out.update(extra)
    return out


def _unpack(v: dict) -> tuple[Dfa, list[tuple[int, ...]]]:
    dfa = parse_dfa(v["automaton"])
    return dfa, [parse_word(w, dfa.k) for w in v["words"]]


def _exhaustive_label(scope: AuditScope) -> str:
    n, k = scope.exhaustive
    return f"exhaustive n={n} k={k}, all {table_count(n, k)} tables"


@lru_cache(maxsize=4)
def _exhaustive_population(n: int, k: int) -> tuple:
    """(dfa, oracle result, strongly connected) for every table."""
    out = []
    for dfa in enumerate_dfas(n, k, budget=DEFAULT_BUDGET):
        out.append((dfa, shortest_sync_word(dfa), is_strongly_connected(dfa)))
    return tuple(out)


@lru_cache(maxsize=4)
def _exhaustive_chains(n: int, k: int) -> tuple:
    return tuple(run_chain(dfa) for dfa, res, _ in _exhaustive_population(n, k) if res.synchronizing)


# --- matrix laws -----------------------------------------------------------


def _check_homomorphism(dfa, u, v):
    return mat_mul(matrix_of_word(dfa, u), matrix_of_word(dfa, v)) == matrix_of_word(dfa, u + v)


def _check_rank(dfa, u):
    m = matrix_of_word(dfa, u)
    return dense_rank(m.dense()) == rank(m) == len(nonzero_columns(m))


def _check_left(dfa, u, a):
    return nonzero_columns(matrix_of_word(dfa, a + u)) <= nonzero_columns(matrix_of_word(dfa, u))


def _check_right(dfa, u, a):
    return rank(matrix_of_word(dfa, u + a)) <= rank(matrix_of_word(dfa, u))


def _check_suffix(dfa, u, a):
    return nonzero_columns(matrix_of_word(dfa, u + a)) <= nonzero_columns(matrix_of_word(dfa, a))


def _check_invertible(dfa, u, a):
    mu, ma = matrix_of_word(dfa, u), matrix_of_word(dfa, a)
    if not ma.is_permutation():
        return True
    return (
        nonzero_columns(matrix_of_word(dfa, a + u)) == nonzero_columns(mu)
        and rank(matrix_of_word(dfa, u + a)) == rank(mu)
    )


def _check_column_merge(dfa, u, a):
    mu, ma = matrix_of_word(dfa, u), matrix_of_word(dfa, a)
    prod = matrix_of_word(dfa, u + a).dense()
    du = mu.dense()
    merged = merged_columns(mu, ma)
    n = dfa.n
    for j in range(n):
        col = [prod[i][j] for i in range(n)]
        sources = merged.get(j, [])
        if len(set(sources)) != len(sources):
            return False
        rebuilt = [sum(du[i][c] for c in sources) for i in range(n)]
        if col != rebuilt:
            return False
        if any(col) != bool(sources):
            return False
    return True


def _check_column_counts(dfa, u, a):
    ma = matrix_of_word(dfa, a)
    if not ma.is_permutation():
        return True
    return matrix_of_word(dfa, a + u).column_counts() == matrix_of_word(dfa, u).column_counts()


# claim id -> (check, takes a letter, letter 0 forced to a permutation)
_MATRIX_LAWS: dict[str, tuple[Callable, bool, bool]] = {
    "homomorphism": (_check_homomorphism, False, False),
    "lemma_1_rank": (_check_rank, False, False),
    "lemma_1_left_containment": (_check_left, True, False),
    "lemma_1_right_monotone": (_check_right, True, False),
    "lemma_1_suffix_containment": (_check_suffix, True, False),
    "lemma_1_invertible": (_check_invertible, True, True),
    "remark_4_column_merge": (_check_column_merge, True, False),
    "cor_3_column_counts": (_check_column_counts, True, True),
}


def _audit_matrix_law(claim: str, scope: AuditScope, rng: random.Random) -> AuditReport:
    check, with_letter, permutation = _MATRIX_LAWS[claim]
    lo, hi = scope.sample_states
    report = AuditReport(
        claim,
        f"sampled: {scope.trials} random automata, n in [{lo}, {hi}], words of length <= 3n",
        scope.trials,
    )
    for _ in range(scope.trials):
        dfa = _sample_dfa(rng, scope)
        if permutation:
            dfa = _with_permutation_letter(rng, dfa)
        u = random_word(rng, dfa.k, 3 * dfa.n)
        if claim == "homomorphism":
            v = random_word(rng, dfa.k, 3 * dfa.n)
            ok, words = check(dfa, u, v), [u, v]
        elif with_letter:
            a = (0,) if permutation else (rng.randrange(dfa.k),)
            ok, words = check(dfa, u, a), [u, a]
        else:
            ok, words = check(dfa, u), [u]
        if not ok:
            report.violations.append(_violation(dfa, words))
    return report


def _replay_matrix_law(claim: str, v: dict) -> bool:
    dfa, words = _unpack(v)
    return not _MATRIX_LAWS[claim][0](dfa, *words)


# --- spans -----------------------------------------------------------------


def _dim_expected(n: int, k: int) -> int:
    return 1 if k == 1 else n * (k - 1) + 1


def _audit_dim_formula(scope, rng):
    report = AuditReport("dim_formula", f"exhaustive: all row-monomial n x k matrices, 1 <= k <= n <= {scope.dim_max_n}", 0)
    table = {}
    for n in range(1, scope.dim_max_n + 1):
        for k in range(1, n + 1):
            d = span_dimension_of_all(n, k)
            table[f"{n},{k}"] = d
            report.trials += 1
            if d != _dim_expected(n, k):
                report.violations.append({"automaton": None, "words": [], "n": n, "k": k, "dimension": d})
    report.details["dimensions"] = table
    return report


def _replay_dim_formula(v):
    return span_dimension_of_all(v["n"], v["k"]) != _dim_expected(v["n"], v["k"])


def _canonical_basis_problems(n: int, k: int, rng: random.Random) -> list[str]:
    basis_mats = canonical_basis(n, k)
    problems = []
    if span_dimension(basis_mats) != len(basis_mats):
        problems.append("canonical matrices are dependent")
    basis = SpanBasis(n)
    for m in basis_mats:
        try_insert(basis, m)
    for img in product(range(k), repeat=n):
        if not basis.contains(flatten(RowMonoMatrix(img))):
            problems.append(f"matrix {list(img)} outside the canonical span")
            break
    removable = list(range(len(basis_mats) - 1))
    for idx in rng.sample(removable, min(len(removable), 4)):
        rest = basis_mats[:idx] + basis_mats[idx + 1 :]
        sub = SpanBasis(n)
        for m in rest:
            try_insert(sub, m)
        if sub.contains(flatten(basis_mats[idx])):
            problems.append(f"removing element {idx} keeps it in the span")
    return problems


def _audit_canonical_basis(scope, rng):
    report = AuditReport(
        "canonical_basis",
        f"exhaustive: 2 <= k <= n <= {scope.dim_max_n}, removal spot-checks of up to 4 elements each",
        0,
    )
    for n in range(2, scope.dim_max_n + 1):
        for k in range(2, n + 1):
            report.trials += 1
            problems = _canonical_basis_problems(n, k, random.Random(f"{n},{k}"))
            if problems:
                report.violations.append({"automaton": None, "words": [], "n": n, "k": k, "problems": problems})
    return report


def _replay_canonical_basis(v):
    return bool(_canonical_basis_problems(v["n"], v["k"], random.Random(f"{v['n']},{v['k']}")))


def _audit_ambient_ceiling(scope, rng):
    n = scope.ceiling_states
    ceiling = n * (n - 1) + 1
    report = AuditReport(
        "ambient_ceiling",
        f"sampled: {scope.ceiling_automata} random automata with n={n}, "
        f"{scope.ceiling_words} random words each (length <= 3n)",
        0,
    )
    dims = []
    for _ in range(scope.ceiling_automata):
        dfa = random_dfa(rng, n, rng.randint(2, 3))
        basis = SpanBasis(n)
        for _ in range(scope.ceiling_words):
            w = random_word(rng, dfa.k, 3 * n)
            try_insert(basis, matrix_of_word(dfa, w), w)
            report.trials += 1
        dims.append(basis.dimension)
        if basis.dimension > ceiling:
            words = [w for w in basis.provenance if w is not None]
            report.violations.append(_violation(dfa, words, dimension=basis.dimension))
    report.details = {"ceiling": ceiling, "dimensions": dims, "max_dimension": max(dims, default=0)}
    return report


def _replay_ambient_ceiling(v):
    dfa, words = _unpack(v)
    return span_dimension(matrix_of_word(dfa, w) for w in words) > dfa.n * (dfa.n - 1) + 1


def _audit_two_column(scope, rng):
    report = AuditReport(
        "two_column_ceiling",
        f"exhaustive: every column pair, all 2^n matrices on it, n <= {scope.dim_max_n}",
        0,
    )
    seen = {}
    for n in range(2, scope.dim_max_n + 1):
        for c1, c2 in combinations(range(n), 2):
            d = span_dimension(RowMonoMatrix(img) for img in product((c1, c2), repeat=n))
            report.trials += 1
            seen[str(n)] = max(seen.get(str(n), 0), d)
            if d > n + 1:
                report.violations.append({"automaton": None, "words": [], "n": n, "columns": [c1, c2], "dimension": d})
    report.details["max_dimension"] = seen
    return report


def _replay_two_column(v):
    c1, c2 = v["columns"]
    return span_dimension(RowMonoMatrix(img) for img in product((c1, c2), repeat=v["n"])) > v["n"] + 1


def _audit_constant_maps(scope, rng):
    report = AuditReport("constant_maps", f"exhaustive: the n constant maps, n <= {scope.dim_max_n}", 0)
    for n in range(1, scope.dim_max_n + 1):
        d = span_dimension(RowMonoMatrix((c,) * n) for c in range(n))
        report.trials += 1
        if d != n:
            report.violations.append({"automaton": None, "words": [], "n": n, "dimension": d})
    return report


def _replay_constant_maps(v):
    n = v["n"]
    return span_dimension(RowMonoMatrix((c,) * n) for c in range(n)) != n


# --- oracle-backed claims --------------------------------------------------


def _audit_prefix_column(scope, rng):
    n, k = scope.exhaustive
    report = AuditReport(
        "cor_1_prefix",
        f"{_exhaustive_label(scope)} (synchronizing), plus {scope.trials} sampled automata; "
        "s = oracle witness (minimal)",
        0,
    )
    population = [dfa for dfa, res, _ in _exhaustive_population(n, k) if res.synchronizing]
    for _ in range(scope.trials):
        population.append(_sample_dfa(rng, scope))
    for dfa in population:
        res = shortest_sync_word(dfa)
        if not res.synchronizing:
            continue
        report.trials += 1
        holds, at = prefixes_meet_sync_column(dfa, res.witness)
        if not holds:
            report.violations.append(_violation(dfa, [res.witness, res.witness[:at]]))
    return report


def _replay_prefix_column(v):
    dfa, (s, prefix) = _unpack(v)
    res = shortest_sync_word(dfa)
    if not is_synchronizing_word(dfa, s) or len(s) != res.length:
        return False
    col = matrix_of_word(dfa, s).img[0]
    return col not in nonzero_columns(matrix_of_word(dfa, prefix))


def _bound_population(scope, rng):
    n, k = scope.exhaustive
    out = [(dfa, res) for dfa, res, _ in _exhaustive_population(n, k) if res.synchronizing]
    for _ in range(scope.trials):
        dfa = _sample_dfa(rng, scope, min_letters=2)
        res = shortest_sync_word(dfa)
        if res.synchronizing:
            out.append((dfa, res))
    return out


def _audit_length_bound(claim, bound, scope, rng):
    report = AuditReport(
        claim,
        f"{_exhaustive_label(scope)} (synchronizing), plus synchronizing automata among "
        f"{scope.trials} sampled",
        0,
    )
    worst = Fraction(0)
    for dfa, res in _bound_population(scope, rng):
        report.trials += 1
        b = bound(dfa.n)
        if b:
            worst = max(worst, Fraction(res.length, b))
        if res.length > b:
            report.violations.append(_violation(dfa, [res.witness], bound=b))
    report.details["max_length_over_bound"] = str(worst)
    return report


def _cerny_bound(n):
    return (n - 1) ** 2


def _frankl_bound(n):
    return (n**3 - n) // 6


def _replay_length_bound(bound):
    def replay(v):
        dfa, _ = _unpack(v)
        res = shortest_sync_word(dfa)
        return res.synchronizing and res.length > bound(dfa.n)

    return replay


def _audit_cerny_length(scope, rng):
    lo, hi = scope.cerny_states
    report = AuditReport("cerny_length", f"Černý automata, n in [{lo}, {hi}]", 0)
    lengths = {}
    for n in range(lo, hi + 1):
        dfa = cerny_family(n)
        res = shortest_sync_word(dfa)
        lengths[str(n)] = res.length
        report.trials += 1
        if res.length != (n - 1) ** 2:
            report.violations.append(_violation(dfa, [res.witness or ()], length=res.length))
    report.details["lengths"] = lengths
    return report


def _audit_sporadic(scope, rng):
    report = AuditReport("sporadic_length", "bundled extremal examples", 0)
    for ex in sporadic_examples():
        res = shortest_sync_word(ex.dfa)
        report.trials += 1
        report.details[ex.name] = res.length
        if res.length != ex.expected_length:
            report.violations.append(_violation(ex.dfa, [res.witness or ()], expected=ex.expected_length))
    return report


def _replay_exact_length(v):
    dfa, _ = _unpack(v)
    expected = v.get("expected", (dfa.n - 1) ** 2)
    return shortest_sync_word(dfa).length != expected


# --- the chain -------------------------------------------------------------


def closed_generators(dfa: Dfa, words) -> bool:
    """True when every generator extended by any letter stays in the generators' span."""
    basis = SpanBasis(dfa.n)
    for w in words:
        try_insert(basis, matrix_of_word(dfa, w))
    for w in words:
        for a in range(dfa.k):
            if not basis.contains(flatten(matrix_of_word(dfa, w + (a,)))):
                return False
    return True


def _chain_population(scope):
    n, k = scope.exhaustive
    chains = list(_exhaustive_chains(n, k))
    lo, hi = scope.cerny_states
    chains += [run_chain(cerny_family(m)) for m in range(lo, hi + 1)]
    chains += [run_chain(ex.dfa) for ex in sporadic_examples()]
    return chains


def _audit_extension_lemma(scope, rng):
    n, k = scope.exhaustive
    report = AuditReport(
        "lemma_2_extension",
        f"{_exhaustive_label(scope)} (strongly connected and synchronizing)",
        0,
    )
    outcomes = {}
    for cert, (dfa, res, sc) in zip(
        _exhaustive_chains(n, k), [p for p in _exhaustive_population(n, k) if p[1].synchronizing]
    ):
        if not sc:
            continue
        report.trials += 1
        outcomes[cert.outcome] = outcomes.get(cert.outcome, 0) + 1
        if cert.outcome != "synchronized":
            report.violations.append(
                _violation(
                    dfa,
                    cert.words(),
                    outcome=cert.outcome,
                    dimension=cert.steps[-1].dimension if cert.steps else 1,
                    ranks=[s.rank for s in cert.steps],
                )
            )
    report.details["outcomes"] = outcomes
    return report


def _replay_extension_lemma(v):
    """Confirmed when the generators are independent, all of rank > 1, closed under letters."""
    dfa, words = _unpack(v)
    if dfa.n < 2 or shortest_sync_word(dfa).length is None or not is_strongly_connected(dfa):
        return False
    mats = [matrix_of_word(dfa, w) for w in words]
    return (
        span_dimension(mats) == len(mats)
        and all(rank(m) > 1 for m in mats)
        and closed_generators(dfa, words)
    )


def _audit_chain_soundness(scope, rng):
    report = AuditReport(
        "chain_length",
        f"{_exhaustive_label(scope)} (synchronizing), Černý automata, bundled examples",
        0,
    )
    longest = 0
    for cert in _chain_population(scope):
        report.trials += 1
        longest = max(longest, len(cert.steps))
        problems = verify_certificate(cert)
        if problems:
            report.violations.append(_violation(cert.dfa, cert.words(), problems=problems))
    report.details["max_steps"] = longest
    return report


def _replay_chain_soundness(v):
    dfa, _ = _unpack(v)
    return bool(verify_certificate(run_chain(dfa)))


def _audit_chain_words(scope, rng):
    report = AuditReport(
        "chain_word",
        f"{_exhaustive_label(scope)} (synchronizing), Černý automata, bundled examples; "
        "synchronized outcomes only",
        0,
    )
    ratio = Fraction(0)
    over_cerny = over_shifted = 0
    outcomes: dict[str, int] = {}
    for cert in _chain_population(scope):
        outcomes[cert.outcome] = outcomes.get(cert.outcome, 0) + 1
        if cert.outcome != "synchronized":
            continue
        report.trials += 1
        dfa, w = cert.dfa, cert.sync_word
        if not is_synchronizing_word(dfa, w):
            report.violations.append(_violation(dfa, [w]))
            continue
        best = shortest_sync_word(dfa).length
        if best:
            ratio = max(ratio, Fraction(len(w), best))
        over_cerny += len(w) > (dfa.n - 1) ** 2
        over_shifted += len(w) > (dfa.n - 2) ** 2
    report.details = {
        "outcomes": outcomes,
        "max_chain_over_oracle": str(ratio),
        "max_chain_over_oracle_float": round(float(ratio), 6),
        "longer_than_(n-1)^2": over_cerny,
        "longer_than_(n-2)^2": over_shifted,
    }
    return report


def _replay_chain_word(v):
    dfa, (w,) = _unpack(v)
    return not is_synchronizing_word(dfa, w)


CLAIMS: dict[str, tuple[Callable, Callable]] = {
    **{
        c: (
            (lambda c: lambda scope, rng: _audit_matrix_law(c, scope, rng))(c),
            (lambda c: lambda v: _replay_matrix_law(c, v))(c),
        )
        for c in _MATRIX_LAWS
    },
    "cor_1_prefix": (_audit_prefix_column, _replay_prefix_column),
    "dim_formula": (_audit_dim_formula, _replay_dim_formula),
    "canonical_basis": (_audit_canonical_basis, _replay_canonical_basis),
    "ambient_ceiling": (_audit_ambient_ceiling, _replay_ambient_ceiling),
    "two_column_ceiling": (_audit_two_column, _replay_two_column),
    "constant_maps": (_audit_constant_maps, _replay_constant_maps),
    "lemma_2_extension": (_audit_extension_lemma, _replay_extension_lemma),
    "chain_length": (_audit_chain_soundness, _replay_chain_soundness),
    "chain_word": (_audit_chain_words, _replay_chain_word),
    "thm_1_bound": (
        lambda scope, rng: _audit_length_bound("thm_1_bound", _cerny_bound, scope, rng),
        _replay_length_bound(_cerny_bound),
    ),
    "frankl_bound": (
        lambda scope, rng: _audit_length_bound("frankl_bound", _frankl_bound, scope, rng),
        _replay_length_bound(_frankl_bound),
    ),
    "cerny_length": (_audit_cerny_length, _replay_exact_length),
    "sporadic_length": (_audit_sporadic, _replay_exact_length),
}


def audit_claims(scope: AuditScope | None = None, seed: int = 0) -> list[AuditReport]:
    """Run every selected claim; each claim gets its own RNG derived from ``seed``."""
    scope = scope or AuditScope()
    names = scope.claims or tuple(CLAIMS)
    unknown = [c for c in names if c not in CLAIMS]
    if unknown:
        raise ValueError(f"unknown claims: {', '.join(unknown)}")
    return [CLAIMS[c][0](scope, random.Random(f"{seed}:{c}")) for c in names]


def replay_violation(claim: str, violation: dict) -> bool:
    """Re-check one recorded counterexample from scratch; True if it still stands."""
    return CLAIMS[claim][1](violation)


def audit_document(reports: list[AuditReport], scope: AuditScope, seed: int) -> dict:
    scope_dict = asdict(scope)
    scope_dict["claims"] = list(scope.claims) if scope.claims else None
    return {
        "kind": "audit",
        "seed": seed,
        "scope": scope_dict,
        "notes": NOTES,
        "reports": [r.to_dict() for r in reports],
    }


# --- census ----------------------------------------------------------------


def _census_rows(n: int, k: int, prefix: tuple[int, ...], budget: int) -> list[dict]:
    rows = []
    bound = (n - 1) ** 2
    for dfa in enumerate_dfas(n, k, canonical=True, prefix=prefix, budget=budget):
        res = shortest_sync_word(dfa)
        if not res.synchronizing:
            continue
        cert = run_chain(dfa)
        rows.append(
            {
                "automaton": serialize_dfa(dfa),
                "strongly_connected": is_strongly_connected(dfa),
                "oracle_length": res.length,
                "oracle_witness": format_word(res.witness, k),
                "chain_outcome": cert.outcome,
                "chain_steps": len(cert.steps),
                "chain_length": None if cert.sync_word is None else len(cert.sync_word),
                "cerny_bound": bound,
            }
        )
    return rows


# counts of extremal automata over all alphabet sizes reported by Don and Zantema
REFERENCE_COUNTS = {3: 15, 4: 12}


def extremal_census(n: int, k: int, workers: int = 1, budget: int = DEFAULT_BUDGET) -> dict:
    """Exhaustive census of canonical synchronizing automata with n states and k letters."""
    total = table_count(n, k)
    if total > budget:
        raise ValueError(f"{n}^{n * k} tables exceed the enumeration budget {budget}")
    # one independent slice per value of the first table entry
    prefixes = [(p,) for p in range(n)]
    args = ([n] * n, [k] * n, prefixes, [budget] * n)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_census_rows, *args))
    else:
        parts = list(map(_census_rows, *args))
    rows = sorted((r for part in parts for r in part), key=lambda r: parse_dfa(r["automaton"]).flat())
    bound = (n - 1) ** 2
    extremal = [r for r in rows if r["oracle_length"] == bound]
    ratios = [
        Fraction(r["chain_length"], r["oracle_length"])
        for r in rows
        if r["chain_length"] is not None and r["oracle_length"]
    ]
    outcomes: dict[str, int] = {}
    for r in rows:
        outcomes[r["chain_outcome"]] = outcomes.get(r["chain_outcome"], 0) + 1
    return {
        "kind": "census",
        "n": n,
        "k": k,
        "tables": total,
        "synchronizing_classes": len(rows),
        "strongly_connected_synchronizing_classes": sum(r["strongly_connected"] for r in rows),
        "max_oracle_length": max((r["oracle_length"] for r in rows), default=None),
        "cerny_bound": bound,
        "extremal_count": len(extremal),
        "extremal_strongly_connected_count": sum(r["strongly_connected"] for r in extremal),
        "extremal": [r["automaton"] for r in extremal],
        "reference": {
            "count": REFERENCE_COUNTS.get(n),
            "comparable": False,
            "note": "published count covers every alphabet size and omits automata that are "
            "extensions by redundant letters; this census fixes k and counts all classes",
        },
        "chain_outcomes": outcomes,
        "max_chain_over_oracle": str(max(ratios, default=Fraction(0))),
        "rows": rows,
    }


# --- text / csv renderings -------------------------------------------------


def reports_csv(reports: list[AuditReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["claim", "population", "trials", "violations", "verdict"])
    for r in reports:
        w.writerow([r.claim, r.population, r.trials, len(r.violations), r.verdict])
    return buf.getvalue()


def census_csv(census: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = ["automaton", "strongly_connected", "oracle_length", "oracle_witness",
            "chain_outcome", "chain_steps", "chain_length", "cerny_bound"]
    w.writerow(cols)
    for r in census["rows"]:
        w.writerow(["" if r[c] is None else r[c] for c in cols])
    return buf.getvalue()


def to_json(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
