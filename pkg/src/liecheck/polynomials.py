"""Sparse multivariate polynomials as ``{exponent tuple: coefficient}`` dicts."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

Monomial = Tuple[int, ...]
Poly = Dict[Monomial, Fraction]


def monomials(nvars: int, d: int) -> List[Monomial]:
    """All exponent vectors of total degree d, graded-lex descending."""
    if nvars == 0:
        return [()] if d == 0 else []
    if nvars == 1:
        return [(d,)]
    out = []
    for a in range(d, -1, -1):
        out.extend((a,) + rest for rest in monomials(nvars - 1, d - a))
    return out


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for a, x in p.items():
        for b, y in q.items():
            m = tuple(i + j for i, j in zip(a, b))
            s = out.get(m, 0) + x * y
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def poly_add(acc: Poly, p: Poly, c=1) -> None:
    for m, x in p.items():
        s = acc.get(m, 0) + c * x
        if s:
            acc[m] = s
        else:
            acc.pop(m, None)


def linear_form(coeffs: Sequence) -> Poly:
    n = len(coeffs)
    return {tuple(int(k == i) for k in range(n)): Fraction(c) for i, c in enumerate(coeffs) if c}


def one(nvars: int) -> Poly:
    return {tuple([0] * nvars): Fraction(1)}


class PowerCache:
    """Memoized powers of a fixed list of polynomials."""

    def __init__(self, bases: Sequence[Poly], nvars: int):
        self.bases = list(bases)
        self.nvars = nvars
        self._cache: Dict[Tuple[int, int], Poly] = {}

    def power(self, i: int, k: int) -> Poly:
        key = (i, k)
        if key not in self._cache:
            self._cache[key] = one(self.nvars) if k == 0 else poly_mul(self.power(i, k - 1), self.bases[i])
        return self._cache[key]

    def substitute(self, a: Monomial) -> Poly:
        """x^a with each x_i replaced by bases[i]."""
        out = one(self.nvars)
        for i, k in enumerate(a):
            if k:
                out = poly_mul(out, self.power(i, k))
        return out


def coefficient_vector(p: Poly, index: Dict[Monomial, int]) -> Dict[int, Fraction]:
    return {index[m]: c for m, c in p.items()}
