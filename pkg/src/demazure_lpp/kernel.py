"""Restricted Cauchy kernels: shapes, the weight mu-tilde, and identity checkers.

Shapes live in matrix coordinates ``(i, j)``, row ``i`` counted from the top.
A partition ``lam`` drawn in French convention inside an ``n x n`` grid puts its
bottom row (part ``lam_1``) in matrix row ``n`` and its ``k``-th row in matrix
row ``n - k + 1``, all rows left-justified.

Pivots for augmented staircases are given as ``(row, column)`` of the French
diagram, row 1 being the bottom row.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from . import crystal, weyl
from .crystal import Tableau
from .polynomial import (
    SparsePolynomial,
    apply_operator_word,
    demazure_atom,
    demazure_char,
    embed,
    kernel_expansion,
    reverse_variables,
    sorted_terms,
    swap_families,
)
from .rsk import as_matrix, rsk, rsk_inverse

DEFAULT_DEGREE_CAP = 5


# -- shapes ------------------------------------------------------------------------


@dataclass(frozen=True)
class ShapeDiagram:
    n: int
    cells: frozenset[tuple[int, int]]
    kind: str = "custom"
    params: tuple = ()

    def __post_init__(self):
        for i, j in self.cells:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"cell {(i, j)} outside the {self.n} x {self.n} grid")

    @property
    def rows(self) -> int:
        return max((i for i, _ in self.cells), default=0)

    @property
    def cols(self) -> int:
        return max((j for _, j in self.cells), default=0)

    def supports(self, A) -> bool:
        A = as_matrix(A)
        return all(v == 0 or (i + 1, j + 1) in self.cells for i, row in enumerate(A) for j, v in enumerate(row))

    def transpose(self) -> "ShapeDiagram":
        return ShapeDiagram(self.n, frozenset((j, i) for i, j in self.cells), f"{self.kind}-transposed", self.params)

    def describe(self) -> dict:
        return {"kind": self.kind, "n": self.n, "params": _jsonable(self.params), "cells": sorted(map(list, self.cells))}


def _jsonable(obj):
    if isinstance(obj, (tuple, list)):
        return [_jsonable(v) for v in obj]
    return obj


def staircase(n: int) -> ShapeDiagram:
    return ShapeDiagram(n, frozenset((i, j) for i in range(1, n + 1) for j in range(1, i + 1)), "staircase", (n,))


def truncated_partition(n: int, p: int, q: int) -> tuple[int, ...]:
    """``(q^{n-q+1}, q-1, ..., n-p+1)``, a partition with ``p`` parts."""
    if not (1 <= p <= q <= n and n - p + 1 <= q):
        raise ValueError(f"need 1 <= p <= q <= n and n-p+1 <= q, got n={n}, p={p}, q={q}")
    return (q,) * (n - q + 1) + tuple(range(q - 1, n - p, -1))


def truncated(n: int, p: int, q: int) -> ShapeDiagram:
    truncated_partition(n, p, q)
    cells = frozenset((i, j) for i in range(n - p + 1, n + 1) for j in range(1, q + 1) if j <= i)
    return ShapeDiagram(n, cells, "truncated", (n, p, q))


def from_partition(lam: Sequence[int], n: int, pivot: tuple[int, int] | None = None) -> ShapeDiagram:
    lam = tuple(v for v in lam if v)
    if not weyl.is_partition(lam):
        raise ValueError(f"{lam} is not a partition")
    if len(lam) > n or (lam and lam[0] > n):
        raise ValueError(f"{lam} does not fit in an {n} x {n} grid")
    cells = frozenset((n - k, j) for k, part in enumerate(lam) for j in range(1, part + 1))
    if pivot is None:
        pivot = default_pivot(lam)
    return ShapeDiagram(n, cells, "augmented", (lam, tuple(pivot)))


def rectangle(m: int, k: int) -> ShapeDiagram:
    n = max(m, k)
    return ShapeDiagram(n, frozenset((i, j) for i in range(1, m + 1) for j in range(1, k + 1)), "rectangle", (m, k))


# -- augmented staircases --------------------------------------------------------------


def largest_staircase(lam: Sequence[int]) -> int:
    """Largest ``m`` with ``(m, m-1, ..., 1)`` inside ``lam``."""
    lam = list(lam)
    m = 0
    while all(k < len(lam) and lam[k] >= m + 1 - k for k in range(m + 1)):
        m += 1
    return m


def pivots(lam: Sequence[int]) -> list[tuple[int, int]]:
    """Boxes of the staircase one size up that ``lam`` misses, as French ``(row, col)``."""
    m = largest_staircase(lam)
    part = lambda r: lam[r - 1] if r <= len(lam) else 0  # noqa: E731
    return [(r, m + 2 - r) for r in range(1, m + 2) if m + 2 - r > part(r)]


def default_pivot(lam: Sequence[int]) -> tuple[int, int]:
    return pivots(lam)[0]


@dataclass(frozen=True)
class ReadingWords:
    nw_word: tuple[int, ...]
    se_word: tuple[int, ...]


def reading_words(lam: Sequence[int], n: int, pivot: tuple[int, int] | None = None) -> ReadingWords:
    """Words read from the parts of ``lam`` outside its largest staircase.

    Cells left of the pivot's diagonal carry ``n - (matrix row)`` and are read
    column by column from the right, each column top to bottom.  Cells to the
    right carry ``(column) - 1`` and are read row by row from the top, each row
    right to left.
    """
    lam = tuple(v for v in lam if v)
    from_partition(lam, n)
    if pivot is None:
        pivot = default_pivot(lam)
    pivot = tuple(pivot)
    if pivot not in pivots(lam):
        raise ValueError(f"pivot {pivot} is not a box of the augmented staircase outside {lam}")
    m = largest_staircase(lam)
    diag = pivot[1] - pivot[0]
    extra = [(r, c) for r, part in enumerate(lam, start=1) for c in range(1, part + 1) if r + c > m + 1]
    nw = [(r, c) for r, c in extra if c - r < diag]
    se = [(r, c) for r, c in extra if c - r > diag]
    assert len(nw) + len(se) == len(extra), "a skew cell sits on the pivot diagonal"
    # French row r is matrix row n - r + 1, so the nw label n - i equals r - 1
    nw_word = tuple(r - 1 for r, c in sorted(nw, key=lambda rc: (-rc[1], -rc[0])))
    se_word = tuple(c - 1 for r, c in sorted(se, key=lambda rc: (-rc[0], -rc[1])))
    return ReadingWords(nw_word, se_word)


def truncated_se_word(n: int, p: int, q: int) -> tuple[int, ...]:
    """Closed-form reduced word for the south-east reading of ``Lambda(p, q)``."""
    truncated_partition(n, p, q)
    word: list[int] = []
    for i in range(1, p - (n - q)):
        word += list(range(i + n - p - 1, i - 1, -1))
    for i in range(0, n - q + 1):
        word += list(range(q - 1, p - (n - q) + i - 1, -1))
    return tuple(word)


# -- mu tilde ----------------------------------------------------------------------------


def mu_tilde_def(mu: Sequence[int], n: int, q: int) -> tuple[int, ...]:
    """Weight of the y-side character paired with the atom of ``mu`` in the truncated kernel."""
    mu = weyl.as_weight(mu)
    p = len(mu)
    if not 1 <= p <= q <= n:
        raise ValueError(f"need 1 <= p <= q <= n, got p={p}, q={q}, n={n}")
    lam, tau = weyl.orbit_data(mu)
    tau_n = tau + tuple(range(p + 1, n + 1))
    sigma = weyl.compose(weyl.longest(n), tau_n)
    projected = weyl.parabolic_project(sigma, range(1, q))
    return weyl.act(projected, lam + (0,) * (n - p))


def mu_tilde_fast(mu: Sequence[int], n: int, p: int, q: int) -> tuple[int, ...]:
    """Same weight via a scan of ``(mu_p, ..., mu_1)`` keeping running maxima."""
    mu = weyl.as_weight(mu)
    if len(mu) != p:
        raise ValueError(f"mu has {len(mu)} entries, expected p={p}")
    if not (n - q + 1 <= p <= q <= n and p >= 1):
        raise ValueError(f"need n-q+1 <= p <= q <= n, got n={n}, p={p}, q={q}")
    reversed_mu = list(reversed(mu))
    alpha = [0] * (p + 1)
    for i in range(p, 0, -1):
        remaining = list(reversed_mu)
        for j in range(i + 1, p + 1):
            pos = len(remaining) - 1 - remaining[::-1].index(alpha[j])
            del remaining[pos]
        k = min(i, n - q + 1)
        alpha[i] = max(remaining[-k:])
    return (0,) * (q - p) + tuple(alpha[1:]) + (0,) * (n - q)


# -- identity checks -----------------------------------------------------------------------


def compositions(parts: int, total: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions with ``parts`` entries summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(parts - 1, total - first):
            yield (first,) + rest


def weights_up_to(parts: int, degree_cap: int) -> list[tuple[int, ...]]:
    return [mu for d in range(degree_cap + 1) for mu in compositions(parts, d)]


@dataclass
class VerificationReport:
    shape: dict
    degree_cap: int
    status: str
    first_mismatch: dict | None = None
    counts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_json(self) -> dict:
        out = {"shape": self.shape, "degree_cap": self.degree_cap, "status": self.status, "counts": self.counts}
        if self.first_mismatch is not None:
            out["first_mismatch"] = self.first_mismatch
        return out


def compare_series(lhs: SparsePolynomial, rhs: SparsePolynomial) -> dict | None:
    """First monomial (low degree first) where the two sides disagree."""
    diff = lhs - rhs
    if not diff:
        return None
    x_exp, y_exp, _ = sorted_terms(diff)[-1]
    return {
        "monomial": {"x_exp": list(x_exp), "y_exp": list(y_exp)},
        "lhs": lhs.coefficient(x_exp, y_exp),
        "rhs": rhs.coefficient(x_exp, y_exp),
    }


def _sum_blocks(block_fn, args: list[tuple], n: int, jobs: int) -> SparsePolynomial:
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(block_fn, args, chunksize=max(1, len(args) // (4 * jobs))))
    else:
        parts = [block_fn(a) for a in args]
    total = SparsePolynomial.constant(n, 0)
    for part in parts:
        total = total + part
    return total


def staircase_block(args: tuple) -> SparsePolynomial:
    mu, n = args
    x_side = embed(demazure_atom(tuple(reversed(mu))), n, x_positions=range(n, 0, -1))
    return x_side * swap_families(demazure_char(mu))


def truncated_block(args: tuple) -> SparsePolynomial:
    mu, n, q = args
    p = len(mu)
    x_side = embed(demazure_atom(mu), n, x_positions=range(n, n - p, -1))
    return x_side * swap_families(demazure_char(mu_tilde_def(mu, n, q)))


def augmented_block(args: tuple) -> SparsePolynomial:
    mu, n, nw_word, se_word = args
    m = len(mu)
    # the atom sits in the reversed alphabet x_n, ..., x_1, and so do the NW operators
    x_side = apply_operator_word(nw_word, demazure_atom(tuple(reversed(mu)) + (0,) * (n - m)))
    x_side = reverse_variables(x_side)
    y_side = swap_families(demazure_char(tuple(mu) + (0,) * (n - m)))
    y_side = apply_operator_word(se_word, y_side, "y")
    return x_side * y_side


def _report(shape: ShapeDiagram, degree_cap: int, lhs: SparsePolynomial, rhs: SparsePolynomial,
            blocks: int, lascoux: bool) -> VerificationReport:
    if lascoux:
        lhs, rhs = reverse_variables(lhs), reverse_variables(rhs)
    mismatch = compare_series(lhs, rhs)
    counts = {
        "blocks": blocks,
        "lhs_terms": len(lhs),
        "rhs_terms": len(rhs),
        "matrices": sum(lhs.terms.values()),
    }
    desc = {"kind": shape.kind, "n": shape.n, "params": _jsonable(shape.params), "lascoux": lascoux}
    return VerificationReport(desc, degree_cap, "ok" if mismatch is None else "mismatch", mismatch, counts)


def verify_staircase(n: int, N: int = DEFAULT_DEGREE_CAP, lascoux: bool = False, jobs: int = 1) -> VerificationReport:
    """Kernel of the lower staircase against atoms times Demazure characters.

    With ``lascoux=True`` both sides are rewritten under ``x_i -> x_{n+1-i}``.
    """
    shape = staircase(n)
    lhs = kernel_expansion(shape.cells, n, N).poly
    mus = weights_up_to(n, N)
    rhs = _sum_blocks(staircase_block, [(mu, n) for mu in mus], n, jobs)
    return _report(shape, N, lhs, rhs, len(mus), lascoux)


def verify_truncated(n: int, p: int, q: int, N: int = DEFAULT_DEGREE_CAP, lascoux: bool = False,
                     jobs: int = 1) -> VerificationReport:
    shape = truncated(n, p, q)
    lhs = kernel_expansion(shape.cells, n, N).poly
    mus = weights_up_to(p, N)
    rhs = _sum_blocks(truncated_block, [(mu, n, q) for mu in mus], n, jobs)
    return _report(shape, N, lhs, rhs, len(mus), lascoux)


def verify_augmented(lam: Sequence[int], n: int, pivot: tuple[int, int] | None = None,
                     N: int = DEFAULT_DEGREE_CAP, lascoux: bool = False, jobs: int = 1) -> VerificationReport:
    shape = from_partition(lam, n, pivot)
    lam, pivot = shape.params
    words = reading_words(lam, n, pivot)
    m = largest_staircase(lam)
    lhs = kernel_expansion(shape.cells, n, N).poly
    mus = weights_up_to(m, N)
    rhs = _sum_blocks(augmented_block, [(mu, n, words.nw_word, words.se_word) for mu in mus], n, jobs)
    report = _report(shape, N, lhs, rhs, len(mus), lascoux)
    report.shape["nw_word"] = list(words.nw_word)
    report.shape["se_word"] = list(words.se_word)
    return report


# -- bijection witnesses ------------------------------------------------------------------------


@dataclass
class Witness:
    kind: str
    P: Tableau
    Q: Tableau
    mu: tuple[int, ...] | None
    checks: dict[str, bool]
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _lower_key_weight(P: Tableau, n: int) -> tuple[int, ...]:
    return crystal.key_minus_weight(P, n)


def find_nw_source(label: Sequence[int], m: int, nw_word: Sequence[int]) -> tuple[int, ...] | None:
    """The unique ``nu`` with zeros after position ``m`` whose formal image contains ``label``."""
    label = tuple(label)
    n = len(label)
    nonzero = sorted(v for v in label if v)
    if len(nonzero) > m:
        return None
    found = None
    for arrangement in set(itertools.permutations(nonzero + [0] * (m - len(nonzero)))):
        nu = arrangement + (0,) * (n - m)
        if label in crystal.formal_atom_apply(nw_word, nu):
            if found is not None:
                raise AssertionError(f"label {label} reached from two sources {found} and {nu}")
            found = nu
    return found


def bijection_witness(A, shape: ShapeDiagram) -> Witness:
    """Check that ``rsk(A)`` lands in the block predicted for the support shape."""
    A = as_matrix(A)
    n = shape.n
    if len(A) != n or any(len(r) != n for r in A):
        raise ValueError(f"expected an {n} x {n} matrix")
    if not shape.supports(A):
        raise ValueError("matrix is not supported on the shape")
    pair = rsk(A)
    P, Q = pair.P, pair.Q
    checks = {"round_trip": rsk_inverse(pair, n, n) == A}
    lower = _lower_key_weight(P, n)
    upper_Q = crystal.key_plus(Q, n)
    details = {"key_minus_P": lower, "key_plus_Q": upper_Q.weight(n)}

    if shape.kind == "staircase":
        mu = lower
        checks["key_order"] = crystal.key_leq(upper_Q, crystal.key_tableau(mu))
    elif shape.kind == "truncated":
        _, p, q = shape.params
        upper_iota = tuple(reversed(lower))
        iota_P = crystal.involution_iota(P, n)
        mu = upper_iota[:p]
        target = mu_tilde_def(mu, n, q)
        checks["iota_P_in_rank_p"] = iota_P.max_letter() <= p
        checks["atom_of_iota_P_in_rank_p"] = upper_iota[p:] == (0,) * (n - p)
        checks["Q_in_rank_q"] = Q.max_letter() <= q
        checks["Q_in_demazure"] = crystal.key_leq(upper_Q, crystal.key_tableau(target))
        details["mu_tilde"] = target
    elif shape.kind == "augmented":
        lam, pivot = shape.params
        words = reading_words(lam, n, pivot)
        m = largest_staircase(lam)
        upper_iota = tuple(reversed(lower))
        source = find_nw_source(upper_iota, m, words.nw_word)
        checks["nw_label_found"] = source is not None
        if source is None:
            mu = None
        else:
            mu = tuple(reversed(source[:m]))
            target = weyl.apply_pi_word(words.se_word, mu + (0,) * (n - m))
            checks["Q_in_demazure"] = crystal.key_leq(upper_Q, crystal.key_tableau(target))
            details["se_target"] = target
    else:
        raise ValueError(f"no block decomposition known for shape kind {shape.kind!r}")
    return Witness(shape.kind, P, Q, mu, checks, details)


def staircase_blocks(n: int, degree: int) -> Counter:
    """Multiset of ``(wt P, wt Q)`` over the blocks with ``|mu| = degree``."""
    out: Counter = Counter()
    for mu in compositions(n, degree):
        # iota maps the atom of sigma_0 mu onto the set of P with lower key K(mu)
        p_weights = Counter(tuple(reversed(T.weight(n))) for T in crystal.demazure_atom_set(tuple(reversed(mu))))
        q_weights = crystal.demazure_crystal(mu).weights()
        for wp, cp in p_weights.items():
            for wq, cq in q_weights.items():
                out[(wp, wq)] += cp * cq
    return out


def supported_matrices(shape: ShapeDiagram, max_entry: int | None = None, total: int | None = None) -> Iterator[tuple]:
    """Matrices on the shape, bounded entrywise or by exact entry sum."""
    cells = sorted(shape.cells)
    n = shape.n

    def build(values):
        A = [[0] * n for _ in range(n)]
        for (i, j), v in zip(cells, values):
            A[i - 1][j - 1] = v
        return tuple(map(tuple, A))

    if total is not None:
        for values in compositions(len(cells), total):
            if max_entry is None or max(values, default=0) <= max_entry:
                yield build(values)
        return
    if max_entry is None:
        raise ValueError("give an entry bound or a total")
    for values in itertools.product(range(max_entry + 1), repeat=len(cells)):
        yield build(values)


def truncated_block_sizes(n: int, p: int, q: int, N: int) -> int:
    """``sum_mu |iota(atom_p(mu))| * |B_q(mu tilde)|`` over ``|mu| <= N``."""
    total = 0
    for mu in weights_up_to(p, N):
        padded = tuple(mu) + (0,) * (n - p)
        total += len(crystal.demazure_atom_set(padded)) * len(crystal.demazure_crystal(mu_tilde_def(mu, n, q)))
    return total


@lru_cache(maxsize=None)
def count_supported(cells: frozenset, N: int) -> int:
    from math import comb

    return sum(comb(len(cells) + d - 1, d) for d in range(N + 1)) if cells else 1
