"""Last-passage percolation with geometric weights on restricted shapes.

Cell ``(i, j)`` of the shape carries an independent weight with
``P(w = k) = (1 - u_i v_j) (u_i v_j)^k``; cells off the shape are zero.  The
statistic is the percolation time of the weight matrix.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np
from scipy import stats

from . import kernel
from .kernel import ShapeDiagram
from .polynomial import apply_operator_word, demazure_atom, demazure_char, evaluate, reverse_variables, schur
from .rsk import percolation_time

SCHEMA = "demazure-lpp/1"
DEFAULT_SHARD_SIZE = 10_000


@dataclass(frozen=True)
class GeomParams:
    u: tuple[float, ...]
    v: tuple[float, ...]

    def __post_init__(self):
        u = tuple(float(x) for x in self.u)
        v = tuple(float(x) for x in self.v)
        for name, seq in (("u", u), ("v", v)):
            if not seq:
                raise ValueError(f"{name} must be nonempty")
            if any(not 0.0 <= x < 1.0 for x in seq):
                raise ValueError(f"{name} entries must lie in [0, 1), got {seq}")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    def cell_parameter(self, i: int, j: int) -> float:
        return self.u[i - 1] * self.v[j - 1]

    def swapped(self) -> "GeomParams":
        return GeomParams(self.v, self.u)


def matrix_dims(shape: ShapeDiagram) -> tuple[int, int]:
    if shape.kind == "rectangle":
        return shape.params
    return shape.n, shape.n


def _check_params(shape: ShapeDiagram, params: GeomParams) -> None:
    m, k = matrix_dims(shape)
    if len(params.u) < m or len(params.v) < k:
        raise ValueError(f"shape needs {m} u-values and {k} v-values")


@dataclass
class LawTable:
    probabilities: dict[int, float]
    tail_bound: float
    stderr: dict[int, float] | None = None
    trials: int | None = None
    meta: dict = field(default_factory=dict)

    def __getitem__(self, k: int) -> float:
        return self.probabilities.get(k, 0.0)

    @property
    def total(self) -> float:
        return math.fsum(self.probabilities.values())

    @property
    def deficit(self) -> float:
        """Mass not accounted for by the bins or the tail bound."""
        return 1.0 - self.total - self.tail_bound

    def to_json(self) -> dict:
        bins = []
        for k in sorted(self.probabilities):
            record = {"k": k, "p": float(self.probabilities[k])}
            if self.stderr is not None:
                record["stderr"] = float(self.stderr.get(k, 0.0))
            bins.append(record)
        out = {"schema": SCHEMA, "bins": bins, "tail_bound": float(self.tail_bound)}
        if self.trials is not None:
            out["trials"] = self.trials
        out.update(self.meta)
        return out


def mass_up_to(shape: ShapeDiagram, params: GeomParams, N: int) -> float:
    """``P(|A| <= N)`` for the product measure, by convolving the cell laws."""
    coeffs = [1.0] + [0.0] * N
    for i, j in shape.cells:
        t = params.cell_parameter(i, j)
        new = [0.0] * (N + 1)
        for s in range(N + 1):
            acc, power = [], 1.0
            for k in range(s + 1):
                acc.append(coeffs[s - k] * power)
                power *= t
            new[s] = (1.0 - t) * math.fsum(acc)
        coeffs = new
    return math.fsum(coeffs)


def _normalization(shape: ShapeDiagram, params: GeomParams) -> float:
    return math.prod(1.0 - params.cell_parameter(i, j) for i, j in shape.cells)


def _blocks(shape: ShapeDiagram, params: GeomParams, N: int):
    """Yield ``(k, x-side value, y-side value)`` for every term of the law's sum."""
    u, v = params.u, params.v
    if shape.kind == "rectangle":
        m, k = shape.params
        r = min(m, k)
        for lam in _partitions_up_to(r, N):
            yield lam[0] if lam else 0, evaluate(schur(lam + (0,) * (m - len(lam)), m), u[:m]), \
                evaluate(schur(lam + (0,) * (k - len(lam)), k), v[:k])
        return
    n = shape.n
    rev_u = tuple(reversed(u[:n]))
    if shape.kind == "staircase":
        for mu in kernel.weights_up_to(n, N):
            yield max(mu), evaluate(demazure_atom(tuple(reversed(mu))), rev_u), evaluate(demazure_char(mu), v[:n])
    elif shape.kind == "truncated":
        _, p, q = shape.params
        for mu in kernel.weights_up_to(p, N):
            yield max(mu), evaluate(demazure_atom(mu), rev_u[:p]), \
                evaluate(demazure_char(kernel.mu_tilde_def(mu, n, q)), v[:n])
    elif shape.kind == "augmented":
        lam, pivot = shape.params
        words = kernel.reading_words(lam, n, pivot)
        m = kernel.largest_staircase(lam)
        for mu in kernel.weights_up_to(m, N):
            x_side = apply_operator_word(words.nw_word, demazure_atom(tuple(reversed(mu)) + (0,) * (n - m)))
            y_side = apply_operator_word(words.se_word, demazure_char(tuple(mu) + (0,) * (n - m)))
            yield max(mu), evaluate(reverse_variables(x_side), u[:n]), evaluate(y_side, v[:n])
    else:
        raise ValueError(f"no exact law for shape kind {shape.kind!r}")


def _partitions_up_to(parts: int, N: int) -> list[tuple[int, ...]]:
    out = []

    def rec(prefix: tuple[int, ...], budget: int, cap: int):
        out.append(prefix)
        if len(prefix) == parts:
            return
        for v in range(min(cap, budget), 0, -1):
            rec(prefix + (v,), budget - v, v)

    rec((), N, N)
    return out


def exact_law(shape: ShapeDiagram, params: GeomParams, k_max: int | None = None,
              N: int = 14) -> LawTable:
    """Law of the percolation time from the character expansion, truncated at ``|mu| <= N``."""
    _check_params(shape, params)
    if k_max is None:
        k_max = N
    bins: dict[int, list[float]] = {k: [] for k in range(k_max + 1)}
    for k, x_val, y_val in _blocks(shape, params, N):
        if k <= k_max:
            bins[k].append(x_val * y_val)
    norm = _normalization(shape, params)
    probabilities = {k: norm * math.fsum(terms) for k, terms in bins.items()}
    tail = max(0.0, 1.0 - mass_up_to(shape, params, N))
    return LawTable(probabilities, tail, meta={"method": "exact", "degree_cap": N})


def brute_force_law(shape: ShapeDiagram, params: GeomParams, E: int, exact: bool = False) -> LawTable:
    """Enumerate every supported matrix with entries at most ``E``.

    With ``exact=True`` the probabilities are computed as fractions of the
    binary values of the parameters and converted at the end.
    """
    _check_params(shape, params)
    m, k = matrix_dims(shape)
    cells = sorted(shape.cells)
    num = Fraction if exact else float
    cell_laws = []
    for i, j in cells:
        t = num(params.u[i - 1]) * num(params.v[j - 1])
        cell_laws.append([(1 - t) * t**a for a in range(E + 1)])
    acc: dict[int, list] = {}
    for values in product(range(E + 1), repeat=len(cells)):
        A = [[0] * k for _ in range(m)]
        prob = 1 if exact else 1.0
        for (i, j), a, law in zip(cells, values, cell_laws):
            A[i - 1][j - 1] = a
            prob *= law[a]
        acc.setdefault(percolation_time(A), []).append(prob)
    if exact:
        probabilities = {key: float(sum(vals, Fraction(0))) for key, vals in acc.items()}
    else:
        probabilities = {key: math.fsum(vals) for key, vals in acc.items()}
    kept = math.prod(1.0 - params.cell_parameter(i, j) ** (E + 1) for i, j in cells)
    return LawTable(probabilities, max(0.0, 1.0 - kept), meta={"method": "brute_force", "entry_cap": E})


# -- sampling ---------------------------------------------------------------------------


def _generator(seed: int, shard: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(shard,))))


def _draw(shape: ShapeDiagram, params: GeomParams, rng: np.random.Generator, size: int) -> np.ndarray:
    m, k = matrix_dims(shape)
    out = np.zeros((size, m, k), dtype=np.int64)
    for i, j in sorted(shape.cells):
        t = params.cell_parameter(i, j)
        if t > 0:
            out[:, i - 1, j - 1] = rng.geometric(1.0 - t, size=size) - 1
    return out


def sample(shape: ShapeDiagram, params: GeomParams, seed: int) -> tuple[tuple[int, ...], ...]:
    _check_params(shape, params)
    A = _draw(shape, params, _generator(seed, 0), 1)[0]
    return tuple(tuple(int(v) for v in row) for row in A)


def percolation_batch(samples: np.ndarray) -> np.ndarray:
    """Percolation times of a stack of matrices, vectorized over the first axis."""
    size, m, k = samples.shape
    above = np.zeros((size, k), dtype=np.int64)
    for i in range(m):
        current = np.zeros((size, k), dtype=np.int64)
        right = np.zeros(size, dtype=np.int64)
        for j in reversed(range(k)):
            right = samples[:, i, j] + np.maximum(above[:, j], right)
            current[:, j] = right
        above = current
    return above[:, 0]


def _shard_counts(args) -> np.ndarray:
    shape, params, seed, shard, size = args
    times = percolation_batch(_draw(shape, params, _generator(seed, shard), size))
    return np.bincount(times)


def monte_carlo(shape: ShapeDiagram, params: GeomParams, trials: int, seed: int, jobs: int = 1,
                shard_size: int = DEFAULT_SHARD_SIZE) -> LawTable:
    """Empirical law from ``trials`` samples; shards use substreams keyed by shard index,
    so the result does not depend on ``jobs``."""
    _check_params(shape, params)
    if trials < 1:
        raise ValueError("need at least one trial")
    sizes = [shard_size] * (trials // shard_size)
    if trials % shard_size:
        sizes.append(trials % shard_size)
    tasks = [(shape, params, seed, s, size) for s, size in enumerate(sizes)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_shard_counts, tasks))
    else:
        parts = [_shard_counts(t) for t in tasks]
    width = max(len(c) for c in parts)
    counts = sum(np.pad(c, (0, width - len(c))) for c in parts)
    probabilities = {k: int(counts[k]) / trials for k in range(width) if counts[k]}
    stderr = {k: math.sqrt(p * (1 - p) / trials) for k, p in probabilities.items()}
    return LawTable(probabilities, 0.0, stderr, trials, meta={"method": "monte_carlo", "seed": seed})


def compare(exact: LawTable, empirical: LawTable, alpha: float = 0.01, max_z: float = 4.0) -> dict:
    """Bin-wise deviation and a chi-square goodness-of-fit test of ``empirical`` against ``exact``."""
    keys = sorted(set(exact.probabilities) | set(empirical.probabilities))
    deviations = {k: float(abs(empirical[k] - exact[k])) for k in keys}
    report = {
        "max_abs_deviation": max(deviations.values(), default=0.0),
        "alpha": alpha,
    }
    trials = empirical.trials
    if trials is None:
        report["passed"] = report["max_abs_deviation"] <= exact.tail_bound + empirical.tail_bound
        return report
    z_scores = []
    for k in keys:
        se = math.sqrt(exact[k] * (1 - exact[k]) / trials)
        if se > 0:
            z_scores.append(deviations[k] / se)
        elif deviations[k] > 0:
            z_scores.append(math.inf)
    observed, expected = _chi_square_bins(exact, empirical, trials)
    chi2 = float(sum((o - e) ** 2 / e for o, e in zip(observed, expected)))
    dof = len(observed) - 1
    p_value = float(stats.chi2.sf(chi2, dof)) if dof > 0 else 1.0
    max_zscore = max(z_scores, default=0.0)
    report.update(
        max_z=max_zscore,
        z_limit=max_z,
        chi2=chi2,
        dof=dof,
        p_value=p_value,
        passed=bool(p_value >= alpha and max_zscore < max_z),
    )
    return report


def _chi_square_bins(exact: LawTable, empirical: LawTable, trials: int) -> tuple[list[float], list[float]]:
    """Bins with expected count at least 5; the rest are pooled into one bin."""
    kept = [k for k in sorted(exact.probabilities) if trials * exact[k] >= 5]
    observed = [trials * empirical[k] for k in kept]
    expected = [trials * exact[k] for k in kept]
    rest_obs = trials - sum(observed)
    rest_exp = trials - sum(expected)
    if rest_exp >= 5 or not kept:
        observed.append(rest_obs)
        expected.append(rest_exp)
    else:
        smallest = min(range(len(kept)), key=lambda t: expected[t])
        observed[smallest] += rest_obs
        expected[smallest] += rest_exp
    return observed, expected


def shape_from_args(kind: str, n: int | None = None, p: int | None = None, q: int | None = None,
                    lam: Sequence[int] | None = None, m: int | None = None,
                    pivot: tuple[int, int] | None = None) -> ShapeDiagram:
    if kind == "staircase":
        return kernel.staircase(n)
    if kind == "truncated":
        return kernel.truncated(n, p, q)
    if kind == "augmented":
        return kernel.from_partition(lam, n, pivot)
    if kind == "rectangle":
        return kernel.rectangle(m if m is not None else n, n)
    raise ValueError(f"unknown shape {kind!r}")

