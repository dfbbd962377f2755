"""Type A Weyl group machinery on integer weights.

Permutations are one-line tuples ``(w(1), ..., w(n))``.  A permutation acts on
a weight by moving entries: ``(w . a)[w(k)] = a[k]``, so the simple
transposition ``s_i`` swaps positions ``i`` and ``i + 1``.  Words are lists of
1-based generator indices and a word ``[j1, ..., jl]`` stands for the product
``s_j1 ... s_jl``; acting on a weight, the rightmost letter goes first.

>>> apply_pi_word([2, 2, 1, 2], (3, 2, 2, 1))
(2, 2, 3, 1)
>>> minimal_rep_word([2, 2, 1, 2], (3, 2, 2, 1))
[2, 1]
>>> reduced_word(parabolic_project(word_to_perm([1, 2, 3, 1, 2], 4), {1, 2}))
[1, 2, 1]
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations as _permutations
from typing import Iterable, Iterator, Sequence

Weight = tuple[int, ...]
Permutation = tuple[int, ...]

# Exhaustive features (enumerating S_n, generating crystals) refuse larger ranks.
MAX_RANK = 16


class RankError(ValueError):
    pass


def check_rank(n: int) -> None:
    if n < 1:
        raise RankError(f"rank must be positive, got {n}")
    if n > MAX_RANK:
        raise RankError(f"rank {n} exceeds the configured limit MAX_RANK={MAX_RANK}")


def as_weight(alpha: Iterable[int]) -> Weight:
    """Validate and freeze a weak composition."""
    out = tuple(int(a) for a in alpha)
    if not out:
        raise ValueError("a weight needs at least one entry")
    if any(a < 0 for a in out):
        raise ValueError(f"weights have nonnegative entries, got {out}")
    return out


def is_partition(alpha: Sequence[int]) -> bool:
    return all(alpha[k] >= alpha[k + 1] for k in range(len(alpha) - 1))


def sort_weight(alpha: Sequence[int]) -> Weight:
    return tuple(sorted(alpha, reverse=True))


def _check_index(i: int, n: int) -> None:
    if not 1 <= i < n:
        raise IndexError(f"generator index {i} out of range for rank {n}")


# -- weights -----------------------------------------------------------------


def swap(i: int, alpha: Sequence[int]) -> Weight:
    """``s_i . alpha``: exchange entries ``i`` and ``i + 1``."""
    _check_index(i, len(alpha))
    out = list(alpha)
    out[i - 1], out[i] = out[i], out[i - 1]
    return tuple(out)


def bubble_sort(i: int, alpha: Sequence[int]) -> Weight:
    """Swap entries ``i``, ``i + 1`` only when that moves the larger one right."""
    _check_index(i, len(alpha))
    if alpha[i - 1] > alpha[i]:
        return swap(i, alpha)
    return tuple(alpha)


def apply_pi_word(word: Sequence[int], alpha: Sequence[int]) -> Weight:
    out = tuple(alpha)
    for i in reversed(word):
        out = bubble_sort(i, out)
    return out


def apply_word(word: Sequence[int], alpha: Sequence[int]) -> Weight:
    """Plain Weyl group action of the word (rightmost letter first)."""
    out = tuple(alpha)
    for i in reversed(word):
        out = swap(i, out)
    return out


def minimal_rep_word(word: Sequence[int], lam: Sequence[int]) -> list[int]:
    """Drop the letters of ``word`` that act trivially on ``lam``.

    The surviving letters form a reduced word of the shortest permutation
    sending ``lam`` to ``apply_pi_word(word, lam)``.
    """
    current = tuple(lam)
    kept: list[int] = []
    for j in reversed(word):
        _check_index(j, len(current))
        if current[j - 1] > current[j]:
            kept.append(j)
            current = swap(j, current)
    kept.reverse()
    return kept


# -- permutations ------------------------------------------------------------


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def longest(n: int) -> Permutation:
    return tuple(range(n, 0, -1))


def as_permutation(one_line: Iterable[int]) -> Permutation:
    out = tuple(int(v) for v in one_line)
    if sorted(out) != list(range(1, len(out) + 1)):
        raise ValueError(f"not a permutation of 1..{len(out)}: {out}")
    return out


def compose(u: Sequence[int], v: Sequence[int]) -> Permutation:
    """``u v``, meaning apply ``v`` first."""
    return tuple(u[v[k] - 1] for k in range(len(v)))


def inverse(w: Sequence[int]) -> Permutation:
    out = [0] * len(w)
    for k, value in enumerate(w, start=1):
        out[value - 1] = k
    return tuple(out)


def act(w: Sequence[int], alpha: Sequence[int]) -> Weight:
    if len(w) != len(alpha):
        raise ValueError("permutation and weight sizes differ")
    out = [0] * len(alpha)
    for k, a in enumerate(alpha):
        out[w[k] - 1] = a
    return tuple(out)


def length(w: Sequence[int]) -> int:
    n = len(w)
    return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])


def right_multiply(w: Sequence[int], i: int) -> Permutation:
    """``w s_i``: swap positions ``i`` and ``i + 1`` of the one-line notation."""
    _check_index(i, len(w))
    out = list(w)
    out[i - 1], out[i] = out[i], out[i - 1]
    return tuple(out)


def left_multiply(i: int, w: Sequence[int]) -> Permutation:
    """``s_i w``: swap the values ``i`` and ``i + 1``."""
    _check_index(i, len(w))
    return tuple(i + 1 if v == i else i if v == i + 1 else v for v in w)


def word_to_perm(word: Sequence[int], n: int) -> Permutation:
    w = identity(n)
    for i in word:
        w = right_multiply(w, i)
    return w


def reduced_word(w: Sequence[int]) -> list[int]:
    """Canonical reduced word: peel off the leftmost right descent repeatedly."""
    w = tuple(w)
    letters: list[int] = []
    while True:
        for k in range(len(w) - 1):
            if w[k] > w[k + 1]:
                letters.append(k + 1)
                w = right_multiply(w, k + 1)
                break
        else:
            break
    letters.reverse()
    return letters


def is_reduced(word: Sequence[int], n: int) -> bool:
    return length(word_to_perm(word, n)) == len(word)


def all_reduced_words(w: Sequence[int]) -> Iterator[list[int]]:
    """Every reduced word of ``w`` (exponentially many; for tests and small n)."""
    w = tuple(w)
    if length(w) == 0:
        yield []
        return
    for k in range(len(w) - 1):
        if w[k] > w[k + 1]:
            for prefix in all_reduced_words(right_multiply(w, k + 1)):
                yield prefix + [k + 1]


def all_permutations(n: int) -> Iterator[Permutation]:
    check_rank(n)
    return (tuple(p) for p in _permutations(range(1, n + 1)))


def demazure_product(word: Sequence[int], n: int) -> Permutation:
    """Evaluate a word in the 0-Hecke monoid, where ``s * s = s``."""
    w = identity(n)
    for i in word:
        _check_index(i, n)
        if w[i - 1] < w[i]:
            w = right_multiply(w, i)
    return w


def parabolic_project(sigma: Sequence[int], generators: Iterable[int]) -> Permutation:
    """Largest element of the parabolic subgroup below ``sigma`` in Bruhat order."""
    keep = set(generators)
    letters = [i for i in reduced_word(sigma) if i in keep]
    return demazure_product(letters, len(sigma))


def bruhat_leq(u: Sequence[int], v: Sequence[int]) -> bool:
    """Strong Bruhat order, by the lifting property on right descents of ``v``."""
    if len(u) != len(v):
        raise ValueError("permutations of different sizes")
    u, v = tuple(u), tuple(v)
    while True:
        for k in range(len(v) - 1):
            if v[k] > v[k + 1]:
                v = right_multiply(v, k + 1)
                if u[k] > u[k + 1]:
                    u = right_multiply(u, k + 1)
                break
        else:
            return all(u[k] == k + 1 for k in range(len(u)))


# -- orbits and cosets -------------------------------------------------------


def orbit_data(mu: Sequence[int]) -> tuple[Weight, Permutation]:
    """Return ``(lam, sigma)`` with ``lam`` sorted and ``sigma`` the shortest
    permutation satisfying ``act(sigma, lam) == mu``."""
    mu = as_weight(mu)
    order = sorted(range(len(mu)), key=lambda k: (-mu[k], k))
    lam = tuple(mu[k] for k in order)
    return lam, tuple(k + 1 for k in order)


def is_minimal_rep(sigma: Sequence[int], lam: Sequence[int]) -> bool:
    """True when ``sigma`` is the shortest element of its coset ``sigma S_lam``."""
    return all(sigma[k] < sigma[k + 1] for k in range(len(lam) - 1) if lam[k] == lam[k + 1])


def orbit(lam: Sequence[int]) -> list[Weight]:
    """Distinct rearrangements of ``lam``, sorted by coset-representative length."""
    return sorted(_orbit(tuple(lam)), key=lambda mu: (weight_length(mu), mu))


@lru_cache(maxsize=256)
def _orbit(lam: Weight) -> frozenset[Weight]:
    check_rank(len(lam))
    return frozenset(_distinct_arrangements(lam))


def _distinct_arrangements(values: Weight) -> Iterator[Weight]:
    if not values:
        yield ()
        return
    for v in sorted(set(values)):
        rest = list(values)
        rest.remove(v)
        for tail in _distinct_arrangements(tuple(rest)):
            yield (v,) + tail


def weight_length(mu: Sequence[int]) -> int:
    """Length of the minimal permutation sorting ``mu``: pairs ``a < b`` with ``mu_a < mu_b``."""
    n = len(mu)
    return sum(1 for a in range(n) for b in range(a + 1, n) if mu[a] < mu[b])


def weight_bruhat_leq(nu: Sequence[int], mu: Sequence[int]) -> bool:
    """Bruhat order on one orbit, through minimal coset representatives."""
    lam, u = orbit_data(nu)
    lam2, v = orbit_data(mu)
    if lam != lam2:
        raise ValueError("weights lie in different orbits")
    return bruhat_leq(u, v)
