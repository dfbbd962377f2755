import itertools

import pytest
from hypothesis import given, strategies as st

from demazure_lpp import weyl


def s(word, n):
    return weyl.word_to_perm(word, n)


def act_oracle(w, alpha):
    out = [0] * len(alpha)
    for k, v in enumerate(alpha):
        out[w[k] - 1] = v
    return tuple(out)


def inversions(w):
    return sum(1 for a, b in itertools.combinations(range(len(w)), 2) if w[a] > w[b])


def plain_product(word, n):
    w = list(range(1, n + 1))
    for i in reversed(word):
        # left multiplication by s_i swaps the values i and i+1
        w = [i + 1 if v == i else i if v == i + 1 else v for v in w]
    return tuple(w)


def bruhat_by_subwords(u, v):
    """u <= v iff u is the product of a reduced subword of a reduced word of v."""
    n = len(v)
    word = weyl.reduced_word(v)
    for mask in itertools.product((0, 1), repeat=len(word)):
        sub = [a for a, keep in zip(word, mask) if keep]
        w = plain_product(sub, n)
        if w == tuple(u) and inversions(w) == len(sub):
            return True
    return False


def partitions(n, top):
    return [p for p in itertools.product(range(top + 1), repeat=n) if list(p) == sorted(p, reverse=True)]


# -- bubble sort ---------------------------------------------------------------------------


def test_bubble_sort_examples():
    assert weyl.bubble_sort(2, (3, 2, 2, 1)) == (3, 2, 2, 1)
    assert weyl.bubble_sort(1, (3, 2, 2, 1)) == (2, 3, 2, 1)
    assert weyl.bubble_sort(1, (0, 0)) == (0, 0)


@pytest.mark.parametrize("i", [0, 4, -1])
def test_bubble_sort_rejects_bad_index(i):
    with pytest.raises(IndexError):
        weyl.bubble_sort(i, (3, 2, 2, 1))


def test_apply_pi_word_examples():
    assert weyl.apply_pi_word([2, 2, 1, 2], (3, 2, 2, 1)) == (2, 2, 3, 1)
    assert weyl.apply_pi_word([], (4, 1, 0)) == (4, 1, 0)
    assert weyl.apply_pi_word([1, 2, 1], (2, 1, 0)) == (0, 1, 2)


def test_minimal_rep_word_examples():
    assert weyl.minimal_rep_word([2, 2, 1, 2], (3, 2, 2, 1)) == [2, 1]
    assert weyl.minimal_rep_word([], (2, 1, 0)) == []


def test_minimal_rep_word_against_brute_force():
    lam = (2, 1, 0, 0)
    word = [1, 2, 1, 2]
    target = weyl.apply_pi_word(word, lam)
    best = min(inversions(w) for w in itertools.permutations(range(1, 5)) if act_oracle(w, lam) == target)
    got = weyl.minimal_rep_word(word, lam)
    assert len(got) == best
    assert act_oracle(plain_product(got, 4), lam) == target


@given(st.lists(st.integers(1, 3), max_size=8), st.sampled_from(partitions(4, 3)))
def test_minimal_rep_word_is_reduced_and_minimal(word, lam):
    got = weyl.minimal_rep_word(word, lam)
    w = plain_product(got, 4)
    assert inversions(w) == len(got)
    assert act_oracle(w, lam) == weyl.apply_pi_word(word, lam)
    assert weyl.is_minimal_rep(w, lam)


def test_bubble_operators_are_idempotent_and_braid():
    for n in range(2, 5):
        for alpha in itertools.product(range(4), repeat=n):
            for i in range(1, n):
                once = weyl.bubble_sort(i, alpha)
                assert weyl.bubble_sort(i, once) == once
                if i + 1 < n:
                    assert weyl.apply_pi_word([i, i + 1, i], alpha) == weyl.apply_pi_word([i + 1, i, i + 1], alpha)
                for j in range(i + 2, n):
                    assert weyl.apply_pi_word([i, j], alpha) == weyl.apply_pi_word([j, i], alpha)


# -- permutations ----------------------------------------------------------------------------


def test_act_matches_convention():
    w = (2, 3, 1)
    for alpha in itertools.product(range(3), repeat=3):
        assert weyl.act(w, alpha) == act_oracle(w, alpha)


def test_word_to_perm_matches_left_multiplication():
    for word in itertools.product(range(1, 4), repeat=4):
        assert weyl.word_to_perm(word, 4) == plain_product(word, 4)


def test_length_and_reduced_word():
    for w in itertools.permutations(range(1, 6)):
        word = weyl.reduced_word(w)
        assert weyl.length(w) == inversions(w) == len(word)
        assert plain_product(word, 5) == w


def test_all_reduced_words_count_for_longest_s4():
    # the longest element of S_4 has 16 reduced words
    words = list(weyl.all_reduced_words(weyl.longest(4)))
    assert len(words) == 16
    assert all(plain_product(w, 4) == weyl.longest(4) for w in words)


def test_reduced_words_act_like_bubble_sort_on_partitions():
    for n in range(1, 6):
        lams = partitions(n, 3)
        for w in weyl.all_permutations(n):
            for word in weyl.all_reduced_words(w):
                for lam in lams:
                    assert weyl.apply_pi_word(word, lam) == act_oracle(w, lam)


def test_rank_limit_is_checked():
    with pytest.raises(weyl.RankError):
        weyl.check_rank(weyl.MAX_RANK + 1)


# -- Demazure product ------------------------------------------------------------------------


def test_demazure_product_examples():
    assert weyl.demazure_product([1, 2, 1, 2], 3) == s([1, 2, 1], 3)
    assert weyl.demazure_product([], 3) == weyl.identity(3)
    assert weyl.demazure_product([1, 1, 1], 3) == s([1], 3)


def demazure_product_oracle(word, n):
    w = weyl.identity(n)
    for i in word:
        candidate = weyl.right_multiply(w, i)
        if inversions(candidate) > inversions(w):
            w = candidate
    return w


def monoid_rewrites(word):
    """Words reached by one application of a defining relation of the 0-Hecke monoid."""
    out = []
    for k in range(len(word)):
        out.append(word[:k] + [word[k]] + word[k:])
        if k + 1 < len(word) and word[k] == word[k + 1]:
            out.append(word[:k] + word[k + 1:])
        if k + 1 < len(word) and abs(word[k] - word[k + 1]) > 1:
            out.append(word[:k] + [word[k + 1], word[k]] + word[k + 2:])
        if k + 2 < len(word) and word[k] == word[k + 2] and abs(word[k] - word[k + 1]) == 1:
            out.append(word[:k] + [word[k + 1], word[k], word[k + 1]] + word[k + 3:])
    return out


@given(st.lists(st.integers(1, 4), max_size=10))
def test_demazure_product_respects_monoid_relations(word):
    value = weyl.demazure_product(word, 5)
    assert value == demazure_product_oracle(word, 5)
    for other in monoid_rewrites(word):
        assert weyl.demazure_product(other, 5) == value


# -- parabolic projection --------------------------------------------------------------------


def test_parabolic_project_examples():
    sigma = s([1, 2, 3, 1, 2], 4)
    assert weyl.parabolic_project(sigma, {1, 2}) == s([1, 2, 1], 4) == s([2, 1, 2], 4)
    assert weyl.parabolic_project(weyl.identity(4), {1, 2}) == weyl.identity(4)
    assert weyl.parabolic_project(weyl.longest(4), {1, 2}) == weyl.longest(3) + (4,)


def generator_subsets(n):
    gens = range(1, n)
    return [set(c) for r in range(n) for c in itertools.combinations(gens, r)]


def test_parabolic_project_independent_of_reduced_word():
    for n in range(1, 5):
        for sigma in weyl.all_permutations(n):
            for gens in generator_subsets(n):
                results = {weyl.demazure_product([a for a in word if a in gens], n)
                           for word in weyl.all_reduced_words(sigma)}
                assert results == {weyl.parabolic_project(sigma, gens)}


def test_parabolic_projection_is_unique_maximum_below():
    for n in range(1, 5):
        for p in range(1, n + 1):
            parabolic = [w for w in weyl.all_permutations(n) if w[p:] == tuple(range(p + 1, n + 1))]
            for sigma in weyl.all_permutations(n):
                top = weyl.parabolic_project(sigma, range(1, p))
                below = {v for v in parabolic if weyl.bruhat_leq(v, sigma)}
                assert top in below
                assert below == {v for v in parabolic if weyl.bruhat_leq(v, top)}


# -- Bruhat order ---------------------------------------------------------------------------


def test_bruhat_examples():
    sigma = s([1, 2, 3, 1, 2], 4)
    assert weyl.bruhat_leq(weyl.identity(4), sigma)
    assert weyl.bruhat_leq(s([1, 2, 1], 4), sigma)
    assert not weyl.bruhat_leq(sigma, s([1, 2, 1], 4))


@pytest.mark.parametrize("n", [3, 4])
def test_bruhat_matches_subword_criterion(n):
    perms = list(weyl.all_permutations(n))
    for u in perms:
        for v in perms:
            assert weyl.bruhat_leq(u, v) == bruhat_by_subwords(u, v), (u, v)


# -- orbits --------------------------------------------------------------------------------


def minimal_rep_oracle(mu):
    lam = tuple(sorted(mu, reverse=True))
    n = len(mu)
    reps = [w for w in itertools.permutations(range(1, n + 1)) if act_oracle(w, lam) == tuple(mu)]
    return lam, min(reps, key=inversions)


def test_orbit_data_examples():
    assert weyl.orbit_data((2, 1, 2, 3)) == minimal_rep_oracle((2, 1, 2, 3))
    assert weyl.orbit_data((3, 1, 1, 0)) == ((3, 1, 1, 0), weyl.identity(4))
    lam, sigma = weyl.orbit_data((0, 0, 2, 3, 1))
    assert lam == (3, 2, 1, 0, 0)
    displayed = s([2, 1, 3, 2, 4, 3, 1], 5)
    assert act_oracle(displayed, lam) == (0, 0, 2, 3, 1)
    assert sigma == minimal_rep_oracle((0, 0, 2, 3, 1))[1]
    assert weyl.bruhat_leq(sigma, displayed)


def test_orbit_data_exhaustive_small():
    for n in range(1, 5):
        for mu in itertools.product(range(3), repeat=n):
            assert weyl.orbit_data(mu) == minimal_rep_oracle(mu)


def test_length_change_trichotomy():
    for n in range(2, 5):
        for lam in partitions(n, 2):
            for sigma in weyl.all_permutations(n):
                if not weyl.is_minimal_rep(sigma, lam):
                    continue
                mu = act_oracle(sigma, lam)
                for i in range(1, n):
                    moved = weyl.left_multiply(i, sigma)
                    longer = inversions(moved) == inversions(sigma) + 1
                    in_reps = weyl.is_minimal_rep(moved, lam)
                    assert (mu[i - 1] > mu[i]) == (longer and in_reps)
                    assert (mu[i - 1] == mu[i]) == (not in_reps)
                    assert (mu[i - 1] < mu[i]) == (inversions(moved) == inversions(sigma) - 1)


def test_weight_bruhat_matches_permutation_bruhat():
    lam = (2, 1, 1, 0)
    reps = {act_oracle(w, lam): w for w in weyl.all_permutations(4) if weyl.is_minimal_rep(w, lam)}
    for mu, u in reps.items():
        for nu, v in reps.items():
            assert weyl.weight_bruhat_leq(nu, mu) == weyl.bruhat_leq(v, u)


def test_orbit_is_sorted_by_length():
    lam = (2, 1, 0)
    orb = weyl.orbit(lam)
    assert len(orb) == 6
    assert orb[0] == lam and orb[-1] == (0, 1, 2)
    assert [weyl.weight_length(m) for m in orb] == sorted(weyl.weight_length(m) for m in orb)
