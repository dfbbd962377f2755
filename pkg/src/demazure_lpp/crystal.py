"""Tableau crystals of type A.

Tableaux use the French convention: ``rows[0]`` is the bottom row, columns
strictly increase going up.  The reading word reads every row from right to
left, bottom row first.  Kashiwara operators return ``None`` for the sink.

>>> T = Tableau(((1, 1, 2), (2, 2, 4), (3, 4)))
>>> "".join(map(str, row_reading(T)))
'21142243'
>>> crystal_f(1, T) is None
True
>>> crystal_f(2, T).rows[0]
(1, 1, 3)
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from . import weyl

# Crystal generation refuses graphs with more vertices than this.
MAX_CRYSTAL_SIZE = 10**6
# key_plus builds the full atom table only below this crystal size.
ATOM_TABLE_LIMIT = 20000


class CrystalSizeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Tableau:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows if len(r))
        object.__setattr__(self, "rows", rows)
        for r, row in enumerate(rows):
            if any(v < 1 for v in row):
                raise ValueError(f"letters must be positive: {row}")
            if any(row[c] > row[c + 1] for c in range(len(row) - 1)):
                raise ValueError(f"row {r} is not weakly increasing: {row}")
            if r:
                below = rows[r - 1]
                if len(row) > len(below):
                    raise ValueError("row lengths must weakly decrease upward")
                if any(row[c] <= below[c] for c in range(len(row))):
                    raise ValueError(f"column strictness fails between rows {r - 1} and {r}")

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        if not self.rows:
            return []
        return [tuple(row[c] for row in self.rows if len(row) > c) for c in range(len(self.rows[0]))]

    def weight(self, n: int) -> tuple[int, ...]:
        counts = [0] * n
        for row in self.rows:
            for v in row:
                if v > n:
                    raise ValueError(f"letter {v} exceeds rank {n}")
                counts[v - 1] += 1
        return tuple(counts)

    def max_letter(self) -> int:
        return max((row[-1] for row in self.rows), default=0)

    def __str__(self) -> str:
        return "/".join(" ".join(map(str, row)) for row in reversed(self.rows)) or "()"


def shape_of(lam: Sequence[int], n: int) -> tuple[int, ...]:
    """Pad or trim trailing zeros so that a partition has exactly ``n`` parts."""
    lam = list(lam)
    while len(lam) > n and lam[-1] == 0:
        lam.pop()
    if len(lam) > n:
        raise ValueError(f"{tuple(lam)} has more than {n} nonzero parts")
    if not weyl.is_partition(lam):
        raise ValueError(f"{tuple(lam)} is not a partition")
    return tuple(lam) + (0,) * (n - len(lam))


def highest_weight_tableau(lam: Sequence[int]) -> Tableau:
    """The Yamanouchi tableau: row ``r`` (from the bottom) filled with ``r``."""
    return Tableau(tuple((r + 1,) * part for r, part in enumerate(lam)))


def key_tableau(mu: Sequence[int]) -> Tableau:
    """Key of weight ``mu``: column ``c`` holds the letters ``k`` with ``mu_k >= c``."""
    cols = [[k + 1 for k, m in enumerate(mu) if m >= c] for c in range(1, max(mu, default=0) + 1)]
    height = len(cols[0]) if cols else 0
    return Tableau(tuple(tuple(col[r] for col in cols if len(col) > r) for r in range(height)))


def is_key(T: Tableau) -> bool:
    cols = [set(c) for c in T.columns()]
    return all(cols[c + 1] <= cols[c] for c in range(len(cols) - 1))


def key_leq(K1: Tableau, K2: Tableau) -> bool:
    """Entrywise comparison of two tableaux of the same shape."""
    if K1.shape != K2.shape:
        raise ValueError("keys of different shapes")
    return all(a <= b for r1, r2 in zip(K1.rows, K2.rows) for a, b in zip(r1, r2))


# -- reading words and brackets ------------------------------------------------


def row_reading(T: Tableau) -> list[int]:
    return [v for row in T.rows for v in reversed(row)]


def _reading_cells(T: Tableau) -> list[tuple[int, int]]:
    return [(r, c) for r, row in enumerate(T.rows) for c in reversed(range(len(row)))]


def _bracket(letters: Sequence[int], i: int) -> tuple[list[int], list[int]]:
    """Positions of unmatched ``i+1`` and unmatched ``i`` after cancelling ``i (i+1)`` pairs."""
    open_i: list[int] = []
    free_up: list[int] = []
    for pos, v in enumerate(letters):
        if v == i:
            open_i.append(pos)
        elif v == i + 1:
            if open_i:
                open_i.pop()
            else:
                free_up.append(pos)
    return free_up, open_i


def _check_i(i: int, n: int | None) -> None:
    if i < 1 or (n is not None and i >= n):
        raise IndexError(f"crystal operator index {i} out of range for rank {n}")


def _relabel(T: Tableau, positions: Iterable[int], letter: int) -> Tableau:
    cells = _reading_cells(T)
    rows = [list(r) for r in T.rows]
    for pos in positions:
        r, c = cells[pos]
        rows[r][c] = letter
    return Tableau(tuple(tuple(r) for r in rows))


def epsilon(i: int, T: Tableau, n: int | None = None) -> int:
    _check_i(i, n)
    return len(_bracket(row_reading(T), i)[0])


def phi(i: int, T: Tableau, n: int | None = None) -> int:
    _check_i(i, n)
    return len(_bracket(row_reading(T), i)[1])


def crystal_f(i: int, T: Tableau, n: int | None = None) -> Tableau | None:
    _check_i(i, n)
    _, free_i = _bracket(row_reading(T), i)
    if not free_i:
        return None
    return _relabel(T, [free_i[0]], i + 1)


def crystal_e(i: int, T: Tableau, n: int | None = None) -> Tableau | None:
    _check_i(i, n)
    free_up, _ = _bracket(row_reading(T), i)
    if not free_up:
        return None
    return _relabel(T, [free_up[-1]], i)


def weyl_action(i: int, T: Tableau, n: int | None = None) -> Tableau:
    """Reflect ``T`` inside its ``i``-string."""
    _check_i(i, n)
    free_up, free_i = _bracket(row_reading(T), i)
    a, b = len(free_up), len(free_i)
    if a > b:
        return _relabel(T, free_up[b:], i)
    if b > a:
        return _relabel(T, free_i[: b - a], i + 1)
    return T


def string_top(i: int, T: Tableau) -> Tableau:
    """``e_i`` applied as often as possible."""
    free_up, _ = _bracket(row_reading(T), i)
    return _relabel(T, free_up, i) if free_up else T


def path_from_highest(T: Tableau, n: int) -> list[int]:
    """A word ``[i1, ..., ir]`` with ``T = f_{i1} ... f_{ir}(T_lam)``."""
    word: list[int] = []
    while True:
        for i in range(1, n):
            up = crystal_e(i, T)
            if up is not None:
                word.append(i)
                T = up
                break
        else:
            return word


# -- tensor products -------------------------------------------------------------


@dataclass(frozen=True)
class TensorVertex:
    factors: tuple[Tableau, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a tensor vertex needs at least one factor")

    def __str__(self) -> str:
        return " (x) ".join(str(f) for f in self.factors)


def _tensor_target(i: int, v: TensorVertex) -> tuple[int | None, int | None]:
    """Factors acted on by ``f_i`` and ``e_i`` under the signature rule."""
    signs: list[tuple[int, int]] = []  # (factor, +1 for f-able, -1 for e-able)
    for k, b in enumerate(v.factors):
        signs += [(k, -1)] * epsilon(i, b) + [(k, +1)] * phi(i, b)
    open_plus: list[int] = []
    free_minus: list[int] = []
    for pos, (_, s) in enumerate(signs):
        if s > 0:
            open_plus.append(pos)
        elif open_plus:
            open_plus.pop()
        else:
            free_minus.append(pos)
    f_factor = signs[open_plus[0]][0] if open_plus else None
    e_factor = signs[free_minus[-1]][0] if free_minus else None
    return f_factor, e_factor


def tensor_f(i: int, v: TensorVertex, n: int | None = None) -> TensorVertex | None:
    _check_i(i, n)
    k, _ = _tensor_target(i, v)
    if k is None:
        return None
    factors = list(v.factors)
    factors[k] = crystal_f(i, factors[k])
    return TensorVertex(tuple(factors))


def tensor_e(i: int, v: TensorVertex, n: int | None = None) -> TensorVertex | None:
    _check_i(i, n)
    _, k = _tensor_target(i, v)
    if k is None:
        return None
    factors = list(v.factors)
    factors[k] = crystal_e(i, factors[k])
    return TensorVertex(tuple(factors))


def tensor_epsilon(i: int, v: TensorVertex) -> int:
    count = 0
    while v is not None:
        v = tensor_e(i, v)
        count += v is not None
    return count


def dilatation(T: Tableau, k: int, n: int) -> TensorVertex:
    """Image of ``T`` in ``B(k lam)`` sitting inside ``B(lam)^{(x) k}``."""
    if k < 1:
        raise ValueError("dilatation factor must be at least 1")
    word = path_from_highest(T, n)
    v: TensorVertex | None = TensorVertex((highest_weight_tableau(T.shape),) * k)
    for i in reversed(word):
        for _ in range(k):
            v = tensor_f(i, v)
            if v is None:
                raise AssertionError("dilatation path left the crystal")
    return v


def dilatation_factor(lam: Sequence[int], n: int) -> int:
    """lcm of the lengths, counted in arrows, of all ``i``-strings for every ``i``.

    Using only the longest string of each colour is not enough: in ``B(3,1,0)``
    that gives 3, and the middle factors of the dilatation are then not keys.
    """
    graph = generate_crystal(lam, n)
    lengths = {epsilon(i, T) + phi(i, T) for T in graph.vertices for i in range(1, n)}
    return math.lcm(*[x for x in lengths if x] or [1])


def ssyt_count(lam: Sequence[int], n: int) -> int:
    """Hook-content formula for the number of tableaux of shape ``lam`` in ``n`` letters."""
    lam = [p for p in lam if p]
    if len(lam) > n:
        return 0
    conj = [sum(1 for p in lam if p > c) for c in range(lam[0])] if lam else []
    num = den = 1
    for r, part in enumerate(lam):
        for c in range(part):
            num *= n + c - r
            den *= (part - c - 1) + (conj[c] - r - 1) + 1
    return num // den


@dataclass(frozen=True)
class CrystalSet:
    lam: tuple[int, ...]
    n: int
    vertices: frozenset[Tableau]

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[Tableau]:
        return iter(sorted(self.vertices))

    def __contains__(self, T: object) -> bool:
        return T in self.vertices

    def weights(self) -> Counter:
        return Counter(T.weight(self.n) for T in self.vertices)


@dataclass(frozen=True)
class CrystalGraph:
    lam: tuple[int, ...]
    n: int
    vertices: tuple[Tableau, ...]
    edges: dict = field(repr=False)  # (T, i) -> f_i T
    paths: dict = field(repr=False)  # T -> word with T = f_{i1} ... f_{ir} T_lam

    def to_set(self) -> CrystalSet:
        return CrystalSet(self.lam, self.n, frozenset(self.vertices))


@lru_cache(maxsize=32)
def generate_crystal(lam: tuple[int, ...], n: int) -> CrystalGraph:
    weyl.check_rank(n)
    lam = shape_of(lam, n)
    size = ssyt_count(lam, n)
    if size > MAX_CRYSTAL_SIZE:
        raise CrystalSizeError(f"B{lam} in rank {n} has {size} vertices, above {MAX_CRYSTAL_SIZE}")
    top = highest_weight_tableau(lam)
    paths = {top: ()}
    order = [top]
    edges = {}
    queue = deque([top])
    while queue:
        T = queue.popleft()
        for i in range(1, n):
            S = crystal_f(i, T)
            if S is None:
                continue
            edges[(T, i)] = S
            if S not in paths:
                paths[S] = (i,) + paths[T]
                order.append(S)
                queue.append(S)
    return CrystalGraph(lam, n, tuple(order), edges, paths)


def i_strings(graph: CrystalGraph, i: int) -> list[list[Tableau]]:
    """All ``i``-strings of the graph, each listed from its source."""
    sources = [T for T in graph.vertices if crystal_e(i, T) is None]
    out = []
    for T in sorted(sources):
        chain = [T]
        while (T := graph.edges.get((T, i))) is not None:
            chain.append(T)
        out.append(chain)
    return out


def delta(i: int, S: CrystalSet | Iterable[Tableau], n: int | None = None) -> CrystalSet:
    """Close a set of vertices under ``f_i``."""
    if isinstance(S, CrystalSet):
        lam, n, verts = S.lam, S.n, S.vertices
    else:
        verts = frozenset(S)
        if n is None:
            raise ValueError("rank required for a bare vertex collection")
        lam = shape_of(next(iter(verts)).shape, n) if verts else ()
    _check_i(i, n)
    out = set(verts)
    for T in verts:
        while (T := crystal_f(i, T)) is not None and T not in out:
            out.add(T)
    return CrystalSet(lam, n, frozenset(out))


def demazure_crystal_by_word(mu: Sequence[int]) -> CrystalSet:
    """Apply ``f_i^k`` ladders along the canonical reduced word of the minimal representative."""
    mu = weyl.as_weight(mu)
    n = len(mu)
    lam, sigma = weyl.orbit_data(mu)
    S = CrystalSet(lam, n, frozenset([highest_weight_tableau(lam)]))
    for i in reversed(weyl.reduced_word(sigma)):
        S = delta(i, S)
    return S


@lru_cache(maxsize=4096)
def demazure_crystal(mu: tuple[int, ...]) -> CrystalSet:
    """Demazure crystal of the weight ``mu``, grown one reduced-word letter at a time."""
    mu = weyl.as_weight(mu)
    for k in range(len(mu) - 1):
        if mu[k] < mu[k + 1]:
            return delta(k + 1, demazure_crystal(weyl.swap(k + 1, mu)))
    n = len(mu)
    ssyt = ssyt_count(mu, n)
    if ssyt > MAX_CRYSTAL_SIZE:
        raise CrystalSizeError(f"B{mu} has {ssyt} vertices")
    return CrystalSet(mu, n, frozenset([highest_weight_tableau(mu)]))


def in_demazure(T: Tableau, mu: Sequence[int]) -> bool:
    """Membership test: walk ``mu`` back to its sorted form, raising ``T`` along each string."""
    mu = tuple(mu)
    while True:
        for k in range(len(mu) - 1):
            if mu[k] < mu[k + 1]:
                T = string_top(k + 1, T)
                mu = weyl.swap(k + 1, mu)
                break
        else:
            return T == highest_weight_tableau(mu)


@lru_cache(maxsize=16)
def atom_table(lam: tuple[int, ...], n: int) -> dict[Tableau, tuple[int, ...]]:
    """Map every vertex of ``B(lam)`` to its atom label, building Demazure crystals bottom-up."""
    lam = shape_of(lam, n)
    size = ssyt_count(lam, n)
    if size > MAX_CRYSTAL_SIZE:
        raise CrystalSizeError(f"B{lam} in rank {n} has {size} vertices")
    table: dict[Tableau, tuple[int, ...]] = {}
    for mu in weyl.orbit(lam):
        for T in demazure_crystal(mu).vertices:
            table.setdefault(T, mu)
    return table


def demazure_atom_set(mu: Sequence[int]) -> CrystalSet:
    mu = weyl.as_weight(mu)
    lam = weyl.sort_weight(mu)
    table = atom_table(lam, len(mu))
    return CrystalSet(lam, len(mu), frozenset(T for T, label in table.items() if label == mu))


def _key_plus_weight_by_descent(T: Tableau, n: int) -> tuple[int, ...]:
    lam = shape_of(T.shape, n)
    mu = tuple(sorted(lam))
    while True:
        for a in range(n):
            for b in range(a + 1, n):
                if mu[a] < mu[b]:
                    lower = list(mu)
                    lower[a], lower[b] = mu[b], mu[a]
                    lower = tuple(lower)
                    if in_demazure(T, lower):
                        mu = lower
                        break
            else:
                continue
            break
        else:
            return mu


def key_plus_weight(T: Tableau, n: int, method: str = "auto") -> tuple[int, ...]:
    """Weight of the right key ``K_+(T)``.

    ``atoms`` looks the vertex up in the bottom-up atom table; ``descent``
    walks down Bruhat order through Demazure membership tests, which is the
    route for crystals too large to tabulate.
    """
    lam = shape_of(T.shape, n)
    if method == "auto":
        method = "atoms" if ssyt_count(lam, n) <= ATOM_TABLE_LIMIT else "descent"
    if method == "atoms":
        return atom_table(lam, n)[T]
    if method == "descent":
        return _key_plus_weight_by_descent(T, n)
    if method == "dilatation":
        v = dilatation(T, dilatation_factor(lam, n), n)
        return v.factors[0].weight(n)
    raise ValueError(f"unknown key method {method!r}")


def key_plus(T: Tableau, n: int, method: str = "auto") -> Tableau:
    return key_tableau(key_plus_weight(T, n, method))


def involution_iota(T: Tableau, n: int) -> Tableau:
    """Replay an ``f``-path of ``T`` as ``e_{n-i}`` steps from the lowest weight key."""
    word = path_from_highest(T, n)
    lam = shape_of(T.shape, n)
    S = key_tableau(tuple(reversed(lam)))
    for i in reversed(word):
        S = crystal_e(n - i, S)
        if S is None:
            raise AssertionError("involution path left the crystal")
    return S


def longest_element_action(T: Tableau, n: int) -> Tableau:
    for i in reversed(weyl.reduced_word(weyl.longest(n))):
        T = weyl_action(i, T)
    return T


def key_minus_weight(T: Tableau, n: int, method: str = "auto") -> tuple[int, ...]:
    return tuple(reversed(key_plus_weight(involution_iota(T, n), n, method)))


def key_minus(T: Tableau, n: int, method: str = "auto") -> Tableau:
    """Left key ``K_-(T) = sigma_0 . K_+(iota T)``."""
    if method == "dilatation":
        lam = shape_of(T.shape, n)
        return dilatation(T, dilatation_factor(lam, n), n).factors[-1]
    return longest_element_action(key_plus(involution_iota(T, n), n, method), n)


# -- formal atom action --------------------------------------------------------------


def delta_dot_atom(i: int, mu: Sequence[int]) -> frozenset[tuple[int, ...]]:
    mu = tuple(mu)
    if not 1 <= i < len(mu):
        raise IndexError(f"index {i} out of range for {mu}")
    if mu[i - 1] > mu[i]:
        return frozenset([mu, weyl.swap(i, mu)])
    if mu[i - 1] == mu[i]:
        return frozenset([mu])
    return frozenset()


def formal_atom_apply(word: Sequence[int], mu: Sequence[int]) -> frozenset[tuple[int, ...]]:
    """Labels reached by applying ``D_{j1} ... D_{jl}`` to the atom symbol of ``mu``."""
    current = Counter([tuple(mu)])
    for i in reversed(word):
        nxt: Counter = Counter()
        for label, mult in current.items():
            for new in delta_dot_atom(i, label):
                nxt[new] += mult
        current = nxt
    if any(m > 1 for m in current.values()):
        raise AssertionError(f"formal atom sum for {tuple(mu)} along {list(word)} has multiplicities")
    return frozenset(current)


# -- export ------------------------------------------------------------------------------


def _label(T: Tableau) -> str:
    return "".join(map(str, row_reading(T))) if T.size else "empty"


def to_dot(graph: CrystalGraph) -> str:
    ids = {T: k for k, T in enumerate(graph.vertices)}
    lines = [f'digraph "B{graph.lam}" {{']
    for T, k in ids.items():
        lines.append(f'  v{k} [label="{_label(T)}"];')
    for (T, i), S in sorted(graph.edges.items(), key=lambda e: (ids[e[0][0]], e[0][1])):
        lines.append(f'  v{ids[T]} -> v{ids[S]} [label="{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_adjacency(graph: CrystalGraph) -> dict:
    ids = {T: k for k, T in enumerate(graph.vertices)}
    return {
        "shape": list(graph.lam),
        "n": graph.n,
        "vertices": [
            {"id": k, "rows": [list(r) for r in T.rows], "reading": _label(T)} for T, k in ids.items()
        ],
        "edges": [
            {"source": ids[T], "target": ids[S], "i": i}
            for (T, i), S in sorted(graph.edges.items(), key=lambda e: (ids[e[0][0]], e[0][1]))
        ],
    }
