import itertools
import random

import pytest
from hypothesis import given, settings

from strategies import dfas
from synclab import Dfa, apply_word_set, cerny_family, is_strongly_connected
from synclab.kernels import available_backends, canonical_table, is_canonical
from synclab.oracle import (
    canonical_form,
    enumerate_dfas,
    greedy_sync_word,
    pair_merge_table,
    shortest_sync_word,
)


def brute_shortest(dfa, max_len):
    """Independent oracle: try every word in order of length."""
    for length in range(max_len + 1):
        for w in itertools.product(range(dfa.k), repeat=length):
            if len(apply_word_set(dfa, range(dfa.n), w)) == 1:
                return length
    return None


def relabel(dfa, sigma, pi):
    delta = [[0] * dfa.k for _ in range(dfa.n)]
    for q in range(dfa.n):
        for a in range(dfa.k):
            delta[sigma[q]][pi[a]] = sigma[dfa.delta[q][a]]
    return Dfa(dfa.n, dfa.k, tuple(map(tuple, delta)))


def orbit_count(n, k):
    """Independent oracle: number of isomorphism classes by explicit orbits."""
    seen = set()
    classes = 0
    for flat in itertools.product(range(n), repeat=n * k):
        dfa = Dfa(n, k, tuple(flat[q * k : (q + 1) * k] for q in range(n)))
        if dfa in seen:
            continue
        classes += 1
        for sigma in itertools.permutations(range(n)):
            for pi in itertools.permutations(range(k)):
                seen.add(relabel(dfa, sigma, pi))
    return classes


def test_cerny_lengths(c3, c4):
    assert shortest_sync_word(c3).length == 4 == brute_shortest(c3, 6)
    assert shortest_sync_word(c4).length == 9 == brute_shortest(c4, 10)


def test_cerny_witness(c3):
    res = shortest_sync_word(c3)
    assert res.witness == (1, 0, 0, 1)
    assert res.explored == 5


def test_permutation_automaton_not_synchronizing():
    res = shortest_sync_word(Dfa(2, 1, ((1,), (0,))))
    assert res.length is None and res.witness is None
    assert not res.synchronizing


def test_single_state():
    res = shortest_sync_word(Dfa(1, 2, ((0, 0),)))
    assert res.length == 0 and res.witness == ()


def test_subset_limit():
    with pytest.raises(ValueError):
        shortest_sync_word(cerny_family(12), subset_limit=1000)


def test_oracle_exhaustive_n3_against_brute_force():
    for dfa in enumerate_dfas(3, 2):
        res = shortest_sync_word(dfa)
        assert res.length == brute_shortest(dfa, 4)
        if res.synchronizing:
            assert len(apply_word_set(dfa, range(3), res.witness)) == 1
            assert len(res.witness) == res.length


def test_backends_agree(backend):
    rng = random.Random(5)
    for _ in range(300):
        n, k = rng.randint(1, 7), rng.randint(1, 3)
        dfa = Dfa(n, k, tuple(tuple(rng.randrange(n) for _ in range(k)) for _ in range(n)))
        assert shortest_sync_word(dfa, impl=backend) == shortest_sync_word(dfa)
        flat = dfa.flat()
        assert canonical_table(flat, n, k, impl=backend) == canonical_table(flat, n, k)
        assert is_canonical(flat, n, k, impl=backend) == (canonical_table(flat, n, k) == flat)


def test_backends_agree_wide_state_sets(backend):
    # more than 8 states exercises the multi-byte image tables
    for n in (9, 13, 17):
        dfa = cerny_family(n)
        assert shortest_sync_word(dfa, impl=backend).length == (n - 1) ** 2


def test_greedy(c3):
    w = greedy_sync_word(c3)
    assert len(apply_word_set(c3, range(3), w)) == 1
    assert len(w) >= 4
    assert greedy_sync_word(Dfa(2, 1, ((1,), (0,)))) is None
    assert greedy_sync_word(Dfa(1, 1, ((0,),))) == ()


def test_pair_merge_table_distances(c3):
    table = pair_merge_table(c3)
    for (p, q), (d, _) in table.items():
        best = None
        for length in range(1, d + 1):
            if any(
                len(apply_word_set(c3, {p, q}, w)) == 1 for w in itertools.product(range(2), repeat=length)
            ):
                best = length
                break
        assert best == d


@settings(max_examples=80, deadline=None)
@given(dfas(max_n=6))
def test_oracle_not_longer_than_greedy(dfa):
    res = shortest_sync_word(dfa)
    w = greedy_sync_word(dfa)
    assert (w is None) == (res.length is None)
    if w is not None:
        assert len(apply_word_set(dfa, range(dfa.n), w)) == 1
        assert res.length <= len(w)


@settings(max_examples=80, deadline=None)
@given(dfas(max_n=6))
def test_witness_one_shorter_fails(dfa):
    res = shortest_sync_word(dfa)
    if res.synchronizing and res.length > 0:
        assert len(apply_word_set(dfa, range(dfa.n), res.witness)) == 1
        if dfa.n <= 4:
            assert brute_shortest(dfa, res.length - 1) is None


def test_enumerate_counts():
    assert len(list(enumerate_dfas(1, 1))) == 1
    assert len(list(enumerate_dfas(2, 1))) == 4
    both = list(enumerate_dfas(2, 2, filter="both"))
    assert both
    for dfa in both:
        assert is_strongly_connected(dfa) and shortest_sync_word(dfa).synchronizing
    assert len(list(enumerate_dfas(3, 2))) == 729


def test_enumerate_filters_consistent():
    every = list(enumerate_dfas(3, 1))
    sc = [d for d in every if is_strongly_connected(d)]
    sync = [d for d in every if shortest_sync_word(d).synchronizing]
    assert list(enumerate_dfas(3, 1, filter="strongly_connected")) == sc
    assert list(enumerate_dfas(3, 1, filter="synchronizing")) == sync
    assert list(enumerate_dfas(3, 1, filter="both")) == [d for d in sc if d in sync]


def test_enumerate_budget_and_filter_errors():
    with pytest.raises(ValueError):
        list(enumerate_dfas(5, 2, budget=1000))
    with pytest.raises(ValueError):
        list(enumerate_dfas(2, 1, filter="nope"))


@pytest.mark.parametrize("n,k", [(2, 1), (2, 2), (3, 1), (2, 3), (3, 2)])
def test_canonical_enumeration_matches_orbits(n, k):
    reps = list(enumerate_dfas(n, k, canonical=True))
    assert len(reps) == orbit_count(n, k)
    for dfa in reps:
        assert canonical_form(dfa) == dfa


def test_canonical_form_is_isomorphism_invariant():
    rng = random.Random(9)
    for _ in range(50):
        dfa = Dfa(4, 2, tuple(tuple(rng.randrange(4) for _ in range(2)) for _ in range(4)))
        sigma = list(range(4))
        rng.shuffle(sigma)
        other = relabel(dfa, sigma, rng.choice([(0, 1), (1, 0)]))
        assert canonical_form(other) == canonical_form(dfa)
        assert canonical_form(dfa).flat() <= dfa.flat()


def test_prefix_partition_covers_space():
    parts = [list(enumerate_dfas(2, 2, prefix=(p,))) for p in range(2)]
    assert [d for part in parts for d in part] == list(enumerate_dfas(2, 2))


def test_backend_listing():
    assert "python" in available_backends()
