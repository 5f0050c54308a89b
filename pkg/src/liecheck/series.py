"""Graded series in one variable ``q`` with integer coefficients.

A series optionally carries a truncation bound ``trunc``: coefficients of
degree ``<= trunc`` are authoritative, higher ones are unknown. ``trunc=None``
marks an exact polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple


def _strip(coeffs: Sequence[int]) -> Tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _min_bound(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True)
class GradedSeries:
    coeffs: Tuple[int, ...] = ()
    trunc: Optional[int] = None

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if self.trunc is not None:
            if self.trunc < 0:
                raise ValueError("truncation bound must be nonnegative")
            coeffs = coeffs[: self.trunc + 1]
        object.__setattr__(self, "coeffs", _strip(coeffs))

    @classmethod
    def from_dict(cls, d: Dict[int, int], trunc: Optional[int] = None) -> "GradedSeries":
        if not d:
            return cls((), trunc)
        if min(d) < 0:
            raise ValueError("negative degree")
        c = [0] * (max(d) + 1)
        for k, v in d.items():
            c[k] += v
        return cls(tuple(c), trunc)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]], trunc: Optional[int] = None) -> "GradedSeries":
        return cls.from_dict({int(k): int(v) for k, v in pairs}, trunc)

    @classmethod
    def one(cls) -> "GradedSeries":
        return cls((1,))

    @classmethod
    def geometric(cls, step: int, trunc: int) -> "GradedSeries":
        """1/(1 - q^step) up to degree ``trunc``."""
        return cls(tuple(1 if k % step == 0 else 0 for k in range(trunc + 1)), trunc)

    def coefficient(self, d: int) -> int:
        if self.trunc is not None and d > self.trunc:
            raise ValueError(f"degree {d} beyond truncation bound {self.trunc}")
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else 0

    def __getitem__(self, d: int) -> int:
        return self.coefficient(d)

    @property
    def top_degree(self) -> int:
        return len(self.coeffs) - 1

    def total(self) -> int:
        return sum(self.coeffs)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def truncate(self, n: int) -> "GradedSeries":
        return GradedSeries(self.coeffs, _min_bound(self.trunc, n))

    def __add__(self, other: "GradedSeries") -> "GradedSeries":
        n = max(len(self.coeffs), len(other.coeffs))
        c = [self.coeffs[k] if k < len(self.coeffs) else 0 for k in range(n)]
        for k, v in enumerate(other.coeffs):
            c[k] += v
        return GradedSeries(tuple(c), _min_bound(self.trunc, other.trunc))

    def __neg__(self) -> "GradedSeries":
        return GradedSeries(tuple(-c for c in self.coeffs), self.trunc)

    def __sub__(self, other: "GradedSeries") -> "GradedSeries":
        return self + (-other)

    def __mul__(self, other: "GradedSeries") -> "GradedSeries":
        bound = _min_bound(self.trunc, other.trunc)
        n = len(self.coeffs) + len(other.coeffs) - 1
        if bound is not None:
            n = min(n, bound + 1)
        c = [0] * max(n, 0)
        for i, a in enumerate(self.coeffs):
            if a == 0 or i >= n:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= n:
                    break
                c[i + j] += a * b
        return GradedSeries(tuple(c), bound)

    def __pow__(self, k: int) -> "GradedSeries":
        out = GradedSeries.one().truncate(self.trunc) if self.trunc is not None else GradedSeries.one()
        for _ in range(k):
            out = out * self
        return out

    def to_pairs(self) -> List[List[int]]:
        return [[d, c] for d, c in enumerate(self.coeffs) if c]

    def __str__(self) -> str:
        terms = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mon = "" if d == 0 else ("q" if d == 1 else f"q^{d}")
            if not mon:
                terms.append(str(c))
            elif c == 1:
                terms.append(mon)
            elif c == -1:
                terms.append("-" + mon)
            else:
                terms.append(f"{c}{mon}")
        s = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        if self.trunc is not None:
            s += f" + O(q^{self.trunc + 1})"
        return s


def add(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    return a + b


def multiply(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    return a * b


def truncated_divide(a: GradedSeries, b: GradedSeries, n: int) -> GradedSeries:
    """The power series a/b up to degree ``n``; b needs a nonzero constant term."""
    b0 = b.coeffs[0] if b.coeffs else 0
    if b0 == 0:
        raise ZeroDivisionError("divisor has zero constant term")
    bound = _min_bound(n, _min_bound(a.trunc, b.trunc))
    out: List[int] = []
    for k in range(bound + 1):
        s = Fraction(a.coeffs[k] if k < len(a.coeffs) else 0)
        for j in range(1, min(k, len(b.coeffs) - 1) + 1):
            s -= b.coeffs[j] * out[k - j]
        s /= b0
        if s.denominator != 1:
            raise ValueError("quotient has non-integral coefficients")
        out.append(int(s))
    return GradedSeries(tuple(out), bound)


class Comparison(NamedTuple):
    equal: bool
    bound: Optional[int]
    clamped: bool


def compare(a: GradedSeries, b: GradedSeries) -> Comparison:
    """Compare up to the smaller truncation bound; ``clamped`` flags differing bounds."""
    bound = _min_bound(a.trunc, b.trunc)
    if bound is None:
        return Comparison(a.coeffs == b.coeffs, None, False)
    eq = all(a.coefficient(d) == b.coefficient(d) for d in range(bound + 1))
    return Comparison(eq, bound, a.trunc != b.trunc)


def equals(a: GradedSeries, b: GradedSeries) -> bool:
    return compare(a, b).equal


def coeffwise_geq(a: GradedSeries, b: GradedSeries) -> bool:
    bound = _min_bound(a.trunc, b.trunc)
    top = max(len(a.coeffs), len(b.coeffs)) - 1 if bound is None else bound
    return all(a.coefficient(d) >= b.coefficient(d) for d in range(top + 1))


def product_of_geometric(steps: Iterable[int], trunc: int) -> GradedSeries:
    """prod_i 1/(1 - q^{s_i}) up to degree ``trunc``."""
    out = GradedSeries.one().truncate(trunc)
    for s in steps:
        out = out * GradedSeries.geometric(s, trunc)
    return out


def one_minus_power(step: int) -> GradedSeries:
    c = [0] * (step + 1)
    c[0] += 1
    c[step] -= 1
    return GradedSeries(tuple(c))
