"""Exact sparse polynomials in two variable families and Demazure operators.

A monomial ``x^a y^b`` in ``n`` variables per family is stored as the single
tuple ``a + b`` of length ``2n``.  Coefficients are Python integers.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from . import weyl

Exponent = tuple[int, ...]

X, Y = "x", "y"


class SparsePolynomial:
    """Immutable integer polynomial in ``x_1..x_n`` and ``y_1..y_n``."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Exponent, int] | None = None):
        self.n = n
        clean: dict[Exponent, int] = {}
        for key, c in (terms or {}).items():
            if c:
                if len(key) != 2 * n:
                    raise ValueError(f"exponent {key} does not fit {n} variables per family")
                clean[tuple(key)] = clean.get(tuple(key), 0) + int(c)
        self._terms = {k: c for k, c in clean.items() if c}
        self._hash: int | None = None

    # construction

    @classmethod
    def _raw(cls, n: int, terms: dict[Exponent, int]) -> "SparsePolynomial":
        out = cls.__new__(cls)
        out.n = n
        out._terms = terms
        out._hash = None
        return out

    @classmethod
    def constant(cls, n: int, c: int = 1) -> "SparsePolynomial":
        return cls._raw(n, {(0,) * (2 * n): c} if c else {})

    @classmethod
    def monomial(cls, x_exp: Sequence[int], y_exp: Sequence[int] | None = None, coeff: int = 1) -> "SparsePolynomial":
        n = len(x_exp)
        y_exp = (0,) * n if y_exp is None else tuple(y_exp)
        if len(y_exp) != n:
            raise ValueError("x and y exponent vectors differ in length")
        if any(e < 0 for e in x_exp) or any(e < 0 for e in y_exp):
            raise ValueError("negative exponent")
        return cls._raw(n, {tuple(x_exp) + y_exp: coeff} if coeff else {})

    @classmethod
    def variable(cls, family: str, i: int, n: int) -> "SparsePolynomial":
        key = [0] * (2 * n)
        key[_offset(family, n) + i - 1] = 1
        return cls._raw(n, {tuple(key): 1})

    # inspection

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponent, Exponent, int]]:
        n = self.n
        for key, c in self._terms.items():
            yield key[:n], key[n:], c

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, x_exp: Sequence[int], y_exp: Sequence[int] | None = None) -> int:
        y_exp = (0,) * self.n if y_exp is None else tuple(y_exp)
        return self._terms.get(tuple(x_exp) + y_exp, 0)

    def degree(self) -> int:
        return max((sum(k) for k in self._terms), default=0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = SparsePolynomial.constant(self.n, other)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"SparsePolynomial(n={self.n}, {self.to_string()})"

    def to_string(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for x_exp, y_exp, c in sorted_terms(self):
            factors = [
                f"{name}{k + 1}" + (f"^{e}" if e > 1 else "")
                for name, exps in ((X, x_exp), (Y, y_exp))
                for k, e in enumerate(exps)
                if e
            ]
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # arithmetic

    def _check(self, other: "SparsePolynomial") -> None:
        if self.n != other.n:
            raise ValueError(f"variable counts differ: {self.n} vs {other.n}")

    def __add__(self, other: "SparsePolynomial | int") -> "SparsePolynomial":
        if isinstance(other, int):
            other = SparsePolynomial.constant(self.n, other)
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return SparsePolynomial._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "SparsePolynomial":
        return SparsePolynomial._raw(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "SparsePolynomial | int") -> "SparsePolynomial":
        return self + (-other)

    def __rsub__(self, other: int) -> "SparsePolynomial":
        return (-self) + other

    def __mul__(self, other: "SparsePolynomial | int") -> "SparsePolynomial":
        if isinstance(other, int):
            if not other:
                return SparsePolynomial._raw(self.n, {})
            return SparsePolynomial._raw(self.n, {k: c * other for k, c in self._terms.items()})
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "SparsePolynomial":
        out = SparsePolynomial.constant(self.n)
        for _ in range(e):
            out = out * self
        return out


def _offset(family: str, n: int) -> int:
    if family == X:
        return 0
    if family == Y:
        return n
    raise ValueError(f"unknown variable family {family!r}")


def multiply(a: SparsePolynomial, b: SparsePolynomial, degree_cap: int | None = None) -> SparsePolynomial:
    """Product of ``a`` and ``b``; with a cap, drop terms of degree above it."""
    a._check(b)
    out: dict[Exponent, int] = {}
    b_items = list(b._terms.items())
    n = a.n
    for ka, ca in a._terms.items():
        for kb, cb in b_items:
            key = tuple(p + q for p, q in zip(ka, kb))
            if degree_cap is not None and grading(key, n) > degree_cap:
                continue
            out[key] = out.get(key, 0) + ca * cb
    return SparsePolynomial._raw(n, {k: c for k, c in out.items() if c})


def grading(key: Exponent, n: int) -> int:
    """Degree used for truncation: the larger of the x- and y-degrees.

    For a kernel term ``prod (x_i y_j)^{a_ij}`` both equal the entry sum of
    the matrix, and for one-family polynomials it is the ordinary degree.
    """
    return max(sum(key[:n]), sum(key[n:]))


def truncate(p: SparsePolynomial, degree_cap: int) -> SparsePolynomial:
    return SparsePolynomial._raw(p.n, {k: c for k, c in p._terms.items() if grading(k, p.n) <= degree_cap})


class TruncatedSeries:
    """A polynomial seen as a power series known only up to ``degree_cap``."""

    __slots__ = ("poly", "degree_cap")

    def __init__(self, poly: SparsePolynomial, degree_cap: int):
        if degree_cap < 0:
            raise ValueError("degree cap must be nonnegative")
        self.poly = truncate(poly, degree_cap)
        self.degree_cap = degree_cap

    def __mul__(self, other: "TruncatedSeries | SparsePolynomial") -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            cap = min(self.degree_cap, other.degree_cap)
            other = other.poly
        else:
            cap = self.degree_cap
        return TruncatedSeries(multiply(self.poly, other, cap), cap)

    def __add__(self, other: "TruncatedSeries | SparsePolynomial") -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            cap = min(self.degree_cap, other.degree_cap)
            other = other.poly
        else:
            cap = self.degree_cap
        return TruncatedSeries(self.poly + other, cap)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.degree_cap == other.degree_cap and self.poly == other.poly

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.poly.to_string()} + O(deg {self.degree_cap + 1}))"


# -- variable manipulation ---------------------------------------------------


def embed(p: SparsePolynomial, n: int, x_positions: Sequence[int] | None = None,
          y_positions: Sequence[int] | None = None) -> SparsePolynomial:
    """Rename variables into a ring with ``n`` variables per family.

    Source variable ``x_k`` becomes target ``x_{x_positions[k-1]}`` (and the same
    for ``y``).  Omitted position lists mean ``1, 2, ...``.
    """
    m = p.n
    xs = list(x_positions) if x_positions is not None else list(range(1, m + 1))
    ys = list(y_positions) if y_positions is not None else list(range(1, m + 1))
    if len(xs) != m or len(ys) != m:
        raise ValueError("one target position is needed per source variable")
    if len(set(xs)) != m or len(set(ys)) != m or not all(1 <= t <= n for t in xs + ys):
        raise ValueError("target positions must be distinct and within range")
    out: dict[Exponent, int] = {}
    for key, c in p._terms.items():
        new = [0] * (2 * n)
        for k in range(m):
            new[xs[k] - 1] += key[k]
            new[n + ys[k] - 1] += key[m + k]
        out[tuple(new)] = out.get(tuple(new), 0) + c
    return SparsePolynomial._raw(n, out)


def swap_families(p: SparsePolynomial) -> SparsePolynomial:
    """Exchange the roles of ``x`` and ``y``."""
    n = p.n
    return SparsePolynomial._raw(n, {k[n:] + k[:n]: c for k, c in p._terms.items()})


def reverse_variables(p: SparsePolynomial, family: str = X) -> SparsePolynomial:
    """Substitute ``x_i -> x_{n+1-i}`` in one family."""
    n = p.n
    if family == X:
        return SparsePolynomial._raw(n, {k[:n][::-1] + k[n:]: c for k, c in p._terms.items()})
    _offset(family, n)
    return SparsePolynomial._raw(n, {k[:n] + k[n:][::-1]: c for k, c in p._terms.items()})


def permute_variables(p: SparsePolynomial, w: Sequence[int], family: str = X) -> SparsePolynomial:
    """Substitute ``x_k -> x_{w(k)}``."""
    n = p.n
    off = _offset(family, n)
    out = {}
    for key, c in p._terms.items():
        new = list(key)
        for k in range(n):
            new[off + w[k] - 1] = key[off + k]
        out[tuple(new)] = c
    return SparsePolynomial._raw(n, out)


def evaluate(p: SparsePolynomial, x_point: Sequence[float], y_point: Sequence[float] | None = None) -> float:
    n = p.n
    if y_point is None:
        y_point = [0.0] * n
    if len(x_point) != n or len(y_point) != n:
        raise ValueError(f"evaluation points must have length {n}")
    point = [float(v) for v in x_point] + [float(v) for v in y_point]
    return math.fsum(c * math.prod(v ** e for v, e in zip(point, key) if e) for key, c in p._terms.items())


# -- Demazure operators --------------------------------------------------------


def _ladder(a: int, b: int) -> list[tuple[int, int, int]]:
    """``(x^a y^b * x - y^a x^b * y) / (x - y)`` as ``(coeff, exp_x, exp_y)`` terms."""
    if a >= b:
        return [(1, a - k, b + k) for k in range(a - b + 1)]
    return [(-1, a + 1 + k, b - 1 - k) for k in range(b - a - 1)]


def divided_difference(i: int, p: SparsePolynomial, family: str = X) -> SparsePolynomial:
    """``(x_i P - x_{i+1} s_i P) / (x_i - x_{i+1})`` in the chosen family."""
    n = p.n
    if not 1 <= i < n:
        raise IndexError(f"operator index {i} out of range for {n} variables")
    pos = _offset(family, n) + i - 1
    out: dict[Exponent, int] = {}
    for key, c in p._terms.items():
        a, b = key[pos], key[pos + 1]
        for sign, ea, eb in _ladder(a, b):
            new = list(key)
            new[pos], new[pos + 1] = ea, eb
            new = tuple(new)
            out[new] = out.get(new, 0) + sign * c
    return SparsePolynomial._raw(n, {k: c for k, c in out.items() if c})


def atom_operator(i: int, p: SparsePolynomial, family: str = X) -> SparsePolynomial:
    return divided_difference(i, p, family) - p


def apply_operator_word(word: Sequence[int], p: SparsePolynomial, family: str = X,
                        atom: bool = False) -> SparsePolynomial:
    """Apply ``D_{j1} ... D_{jl}`` (or the primed version), rightmost first."""
    op = atom_operator if atom else divided_difference
    for i in reversed(word):
        p = op(i, p, family)
    return p


@lru_cache(maxsize=None)
def demazure_char(mu: tuple[int, ...]) -> SparsePolynomial:
    """Demazure character of ``mu`` in ``x_1..x_n`` with ``n = len(mu)``.

    A reduced word of the minimal representative is built one letter at a time:
    if ``mu_i < mu_{i+1}`` then ``kappa_mu = D_i kappa_{s_i mu}``.
    """
    mu = weyl.as_weight(mu)
    for k in range(len(mu) - 1):
        if mu[k] < mu[k + 1]:
            return divided_difference(k + 1, demazure_char(weyl.swap(k + 1, mu)))
    return SparsePolynomial.monomial(mu)


@lru_cache(maxsize=None)
def demazure_atom(mu: tuple[int, ...]) -> SparsePolynomial:
    """Demazure atom of ``mu``: same recursion with ``D'_i = D_i - 1``."""
    mu = weyl.as_weight(mu)
    for k in range(len(mu) - 1):
        if mu[k] < mu[k + 1]:
            return atom_operator(k + 1, demazure_atom(weyl.swap(k + 1, mu)))
    return SparsePolynomial.monomial(mu)


def demazure_char_by_word(mu: Sequence[int], atom: bool = False) -> SparsePolynomial:
    """Same polynomial, computed along the canonical reduced word of the orbit data."""
    lam, sigma = weyl.orbit_data(mu)
    return apply_operator_word(weyl.reduced_word(sigma), SparsePolynomial.monomial(lam), atom=atom)


def schur(lam: Sequence[int], n: int | None = None) -> SparsePolynomial:
    lam = list(lam)
    if n is None:
        n = len(lam)
    while len(lam) > n and lam[-1] == 0:
        lam.pop()
    if len(lam) > n:
        return SparsePolynomial._raw(n, {})
    lam = lam + [0] * (n - len(lam))
    if not weyl.is_partition(lam):
        raise ValueError(f"{lam} is not a partition")
    return demazure_char(tuple(reversed(lam)))


# -- kernels -------------------------------------------------------------------


def geometric_factor(i: int, j: int, n: int, degree_cap: int) -> SparsePolynomial:
    """``sum_{k <= cap} (x_i y_j)^k``."""
    terms = {}
    for k in range(degree_cap + 1):
        key = [0] * (2 * n)
        key[i - 1] = k
        key[n + j - 1] = k
        terms[tuple(key)] = 1
    return SparsePolynomial._raw(n, terms)


def kernel_expansion(cells: Iterable[tuple[int, int]], n: int, degree_cap: int) -> TruncatedSeries:
    """``prod_{(i,j) in cells} 1/(1 - x_i y_j)`` up to matrix weight ``degree_cap``."""
    series = TruncatedSeries(SparsePolynomial.constant(n), degree_cap)
    for i, j in sorted(cells):
        series = series * geometric_factor(i, j, n, degree_cap)
    return series


# -- serialization ---------------------------------------------------------------


def sorted_terms(p: SparsePolynomial) -> list[tuple[Exponent, Exponent, int]]:
    """Graded lexicographic order, highest degree first."""
    return sorted(p.items(), key=lambda t: (sum(t[0]) + sum(t[1]), t[0] + t[1]), reverse=True)


def to_json(p: SparsePolynomial) -> list[dict]:
    return [{"x_exp": list(xe), "y_exp": list(ye), "coeff": c} for xe, ye, c in sorted_terms(p)]


def from_json(records: Iterable[Mapping], n: int | None = None) -> SparsePolynomial:
    records = list(records)
    if n is None:
        if not records:
            raise ValueError("cannot infer the variable count of an empty polynomial")
        n = len(records[0]["x_exp"])
    out = SparsePolynomial(n, {})
    for r in records:
        out = out + SparsePolynomial.monomial(r["x_exp"], r["y_exp"], int(r["coeff"]))
    return out
