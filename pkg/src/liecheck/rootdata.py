"""Root systems, Weyl groups and weight combinatorics.

Conventions: the Cartan matrix has entries ``cartan[i][j] = <alpha_i, alpha_j^vee>``
(Bourbaki numbering), so row ``i`` is the simple root ``alpha_i`` written in
the fundamental-weight basis. Weights are integer tuples of fundamental-weight
coordinates; roots are additionally kept in simple-root coordinates and
coroots in simple-coroot coordinates.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from functools import cached_property, lru_cache
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .series import GradedSeries

Weight = Tuple[int, ...]
IntMatrix = Tuple[Tuple[int, ...], ...]

MAX_RANK = 4


class UnsupportedType(ValueError):
    pass


def cartan_matrix(family: str, rank: int) -> IntMatrix:
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if family == "A" and n >= 1:
        for i in range(n - 1):
            link(i, i + 1)
    elif family == "B" and n >= 2:
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -2, -1)
    elif family == "C" and n >= 2:
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -1, -2)
    elif family == "D" and n >= 4:
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif family == "E" and n in (6, 7, 8):
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif family == "F" and n == 4:
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif family == "G" and n == 2:
        link(0, 1, -1, -3)
    else:
        raise UnsupportedType(f"no simple type {family}{rank}")
    return tuple(tuple(row) for row in a)


def parse_type(label: str) -> Tuple[str, int]:
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", label)
    if not m:
        raise UnsupportedType(f"bad type label {label!r}")
    return m.group(1).upper(), int(m.group(2))


def parse_weight(text: str) -> Weight:
    text = text.strip()
    if not text:
        raise ValueError("empty weight")
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"bad weight syntax {text!r}; expected e.g. '1,0,2'") from None


def format_weight(mu: Sequence[int]) -> str:
    return ",".join(str(int(x)) for x in mu)


def _mat_inverse(a: Sequence[Sequence[int]]) -> Tuple[Tuple[Fraction, ...], ...]:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                c = m[r][col]
                m[r] = [x - c * y for x, y in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


@dataclass(frozen=True)
class WeylElement:
    matrix: IntMatrix  # acts on fundamental-weight coordinates as a column vector
    length: int
    word: Tuple[int, ...]  # reduced word, leftmost letter applied last

    def act(self, mu: Sequence[int]) -> Weight:
        return tuple(sum(r * x for r, x in zip(row, mu)) for row in self.matrix)


@dataclass(frozen=True, eq=False)
class RootDatum:
    family: str
    rank: int
    cartan: IntMatrix

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    def __repr__(self) -> str:
        return f"RootDatum({self.label})"

    # -- lengths and forms -------------------------------------------------

    @cached_property
    def symmetrizer(self) -> Tuple[Fraction, ...]:
        """d_i = (alpha_i, alpha_i)/2, normalized so short roots have d = 1."""
        n, a = self.rank, self.cartan
        d: List[Optional[Fraction]] = [None] * n
        d[0] = Fraction(1)
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if a[i][j] != 0 and d[j] is None:
                    # a_ij d_j = a_ji d_i
                    d[j] = d[i] * a[j][i] / a[i][j]
                    queue.append(j)
        lo = min(d)
        return tuple(x / lo for x in d)

    @cached_property
    def cartan_inverse(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return _mat_inverse(self.cartan)

    def root_to_weight(self, c: Sequence) -> Tuple:
        """Simple-root coordinates -> fundamental-weight coordinates."""
        return tuple(sum(c[i] * self.cartan[i][j] for i in range(self.rank)) for j in range(self.rank))

    def weight_to_root(self, mu: Sequence) -> Tuple[Fraction, ...]:
        """Fundamental-weight coordinates -> (rational) simple-root coordinates."""
        inv = self.cartan_inverse
        return tuple(sum(mu[i] * inv[i][j] for i in range(self.rank)) for j in range(self.rank))

    def in_root_lattice(self, mu: Sequence[int]) -> bool:
        return all(c.denominator == 1 for c in self.weight_to_root(mu))

    @cached_property
    def scaled_gram(self) -> Tuple[Tuple[int, ...], ...]:
        """Integer multiple N (omega_i, omega_j) of the form on fundamental weights, for fast exact ratios."""
        unit = tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))
        g = [[self.inner(u, v) for v in unit] for u in unit]
        den = 1
        for row in g:
            for x in row:
                den = den * x.denominator // gcd(den, x.denominator)
        return tuple(tuple(int(x * den) for x in row) for row in g)

    def scaled_inner(self, mu: Sequence[int], nu: Sequence[int]) -> int:
        g = self.scaled_gram
        return sum(mu[i] * g[i][j] * nu[j] for i in range(self.rank) for j in range(self.rank) if mu[i] and nu[j])

    def inner(self, mu: Sequence, nu: Sequence) -> Fraction:
        """W-invariant form on weights: (omega_i, alpha_j) = d_j delta_ij."""
        c = self.weight_to_root(nu)
        return sum((Fraction(mu[j]) * c[j] * self.symmetrizer[j] for j in range(self.rank)), Fraction(0))

    # -- roots -------------------------------------------------------------

    @cached_property
    def positive_roots(self) -> Tuple[Tuple[int, ...], ...]:
        """Positive roots in simple-root coordinates, sorted by height then lexicographically."""
        n, a = self.rank, self.cartan
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        roots = set(simple)
        layer = list(simple)
        while layer:
            nxt = set()
            for beta in layer:
                for i in range(n):
                    # q = largest k with beta - k alpha_i a root
                    q = 0
                    while True:
                        cand = tuple(beta[j] - (q + 1) * (j == i) for j in range(n))
                        if cand in roots:
                            q += 1
                        else:
                            break
                    pairing = sum(beta[j] * a[j][i] for j in range(n))
                    if q - pairing > 0:
                        nxt.add(tuple(beta[j] + (j == i) for j in range(n)))
            nxt -= roots
            roots |= nxt
            layer = sorted(nxt)
        return tuple(sorted(roots, key=lambda r: (sum(r), tuple(-x for x in r))))

    @cached_property
    def positive_coroots(self) -> Tuple[Tuple[int, ...], ...]:
        """alpha^vee = sum_j c_j (d_j / d_alpha) alpha_j^vee, aligned with positive_roots."""
        out = []
        d = self.symmetrizer
        for c in self.positive_roots:
            d_alpha = self.inner(self.root_to_weight(c), self.root_to_weight(c)) / 2
            cv = [c[j] * d[j] / d_alpha for j in range(self.rank)]
            if any(x.denominator != 1 for x in cv):
                raise AssertionError("non-integral coroot")
            out.append(tuple(int(x) for x in cv))
        return tuple(out)

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    def roots(self) -> List[Tuple[int, ...]]:
        pos = list(self.positive_roots)
        return pos + [tuple(-x for x in r) for r in pos]

    def pairing(self, mu: Sequence, coroot: Sequence[int]):
        """<mu, alpha^vee> with mu in weight coordinates and alpha^vee in coroot coordinates."""
        return sum(m * c for m, c in zip(mu, coroot))

    @cached_property
    def rho(self) -> Weight:
        return tuple(1 for _ in range(self.rank))

    @cached_property
    def highest_root(self) -> Weight:
        return self.root_to_weight(self.positive_roots[-1])

    @cached_property
    def simple_roots(self) -> Tuple[Weight, ...]:
        return tuple(tuple(row) for row in self.cartan)

    def height(self, c: Sequence[int]) -> int:
        return sum(c)

    # -- Weyl group --------------------------------------------------------

    def simple_reflection(self, i: int, mu: Sequence) -> Tuple:
        return tuple(mu[k] - mu[i] * self.cartan[i][k] for k in range(self.rank))

    @cached_property
    def weyl_group(self) -> Tuple[WeylElement, ...]:
        """All elements, in order of nondecreasing length (BFS on the Cayley graph)."""
        n = self.rank
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        elems = [WeylElement(ident, 0, ())]
        seen = {self.rho}
        frontier = [elems[0]]
        while frontier:
            nxt = []
            for w in frontier:
                for i in range(n):
                    # s_i w: new row k = row_k(w) - a_ik row_i(w)
                    m = tuple(
                        tuple(w.matrix[k][l] - self.cartan[i][k] * w.matrix[i][l] for l in range(n))
                        for k in range(n)
                    )
                    el = WeylElement(m, w.length + 1, (i,) + w.word)
                    key = el.act(self.rho)
                    if key not in seen:
                        seen.add(key)
                        nxt.append(el)
            elems.extend(nxt)
            frontier = nxt
        return tuple(elems)

    @property
    def weyl_order(self) -> int:
        return len(self.weyl_group)

    @cached_property
    def longest_element(self) -> WeylElement:
        return self.weyl_group[-1]

    def is_dominant(self, mu: Sequence[int]) -> bool:
        return all(x >= 0 for x in mu)

    def dominant_conjugate(self, mu: Sequence[int]) -> Weight:
        mu = tuple(mu)
        while True:
            i = next((k for k, x in enumerate(mu) if x < 0), None)
            if i is None:
                return mu
            mu = self.simple_reflection(i, mu)

    def lowest_weight(self, hw: Sequence[int]) -> Weight:
        """w0(hw): the anti-dominant extremal weight of the module with highest weight hw."""
        return self.longest_element.act(hw)

    def weyl_orbit(self, mu: Sequence[int]) -> List[Weight]:
        start = tuple(mu)
        seen = {start}
        queue = deque([start])
        while queue:
            nu = queue.popleft()
            for i in range(self.rank):
                nxt = self.simple_reflection(i, nu)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return sorted(seen)

    def stabilizer_order(self, mu: Sequence[int]) -> int:
        return self.weyl_order // len(self.weyl_orbit(mu))

    def stabilizer(self, mu: Sequence[int]) -> List[WeylElement]:
        mu = tuple(mu)
        return [w for w in self.weyl_group if w.act(mu) == mu]

    def is_positive_root_weight(self, mu: Sequence) -> bool:
        c = self.weight_to_root(mu)
        return all(x >= 0 for x in c) and any(x > 0 for x in c)

    def length_gen_function(self, parabolic: Iterable[int] = ()) -> GradedSeries:
        """Sum of q^length over minimal-length representatives of W/W_J."""
        J = sorted(set(parabolic))
        for j in J:
            if not 0 <= j < self.rank:
                raise ValueError(f"simple index {j} out of range")
        counts: Dict[int, int] = {}
        for w in self.weyl_group:
            if all(self.is_positive_root_weight(w.act(self.simple_roots[j])) for j in J):
                counts[w.length] = counts.get(w.length, 0) + 1
        return GradedSeries.from_dict(counts)

    # -- weights -----------------------------------------------------------

    def is_minuscule(self, mu: Sequence[int]) -> bool:
        mu = tuple(mu)
        if not any(mu):
            raise ValueError("zero weight: callers branch on 'minuscule or zero' explicitly")
        if not self.is_dominant(mu):
            raise ValueError("is_minuscule expects a dominant weight")
        return all(self.pairing(mu, cv) <= 1 for cv in self.positive_coroots)

    def minuscule_weights(self) -> List[Weight]:
        out = []
        for i in range(self.rank):
            w = tuple(int(j == i) for j in range(self.rank))
            if self.is_minuscule(w):
                out.append(w)
        return out

    def dominance_leq(self, mu: Sequence[int], lam: Sequence[int]) -> bool:
        diff = self.weight_to_root([l - m for l, m in zip(lam, mu)])
        return all(c.denominator == 1 and c >= 0 for c in diff)

    def dominant_weights_below(self, lam: Sequence[int]) -> List[Weight]:
        """Dominant mu <= lam (hence mu in lam + root lattice), sorted by depth then coordinates."""
        lam = tuple(lam)
        bounds = [int(c) for c in self.weight_to_root(lam)]  # floor; dominant weights have c >= 0
        out = []
        for c in product(*(range(max(b, 0) + 1) for b in bounds)):
            shift = self.root_to_weight(c)
            mu = tuple(l - s for l, s in zip(lam, shift))
            if self.is_dominant(mu):
                out.append((sum(c), mu))
        out.sort(key=lambda t: (t[0], tuple(-x for x in t[1])))
        return [mu for _, mu in out]

    def kostant_partition(self, beta: Sequence[int]) -> int:
        """Ways to write beta (simple-root coordinates) as an N-combination of positive roots."""
        return _kostant(self.positive_roots, tuple(int(b) for b in beta))

    def weyl_dimension(self, hw: Sequence[int]) -> int:
        num = Fraction(1)
        for cv in self.positive_coroots:
            num *= Fraction(self.pairing([x + 1 for x in hw], cv), self.pairing(self.rho, cv))
        assert num.denominator == 1
        return int(num)

    def sum_coroot_pairings(self, mu: Sequence[int]) -> int:
        """<mu, 2 rho^vee> = sum over positive coroots of <mu, alpha^vee>."""
        return sum(self.pairing(mu, cv) for cv in self.positive_coroots)


@lru_cache(maxsize=None)
def _kostant(roots: Tuple[Tuple[int, ...], ...], beta: Tuple[int, ...]) -> int:
    if any(b < 0 for b in beta):
        return 0
    if not any(beta):
        return 1
    if not roots:
        return 0
    first, rest = roots[-1], roots[:-1]
    total = 0
    cur = beta
    while all(b >= 0 for b in cur):
        total += _kostant(rest, cur)
        cur = tuple(b - r for b, r in zip(cur, first))
    return total


@lru_cache(maxsize=None)
def build_root_datum(family: str, rank: Optional[int] = None) -> RootDatum:
    """Root datum of a simple type, e.g. ``build_root_datum("A", 2)`` or ``build_root_datum("G2")``."""
    if rank is None:
        family, rank = parse_type(family)
    family = family.upper()
    if rank > MAX_RANK:
        raise UnsupportedType(f"rank {rank} exceeds supported maximum {MAX_RANK}")
    return RootDatum(family, rank, cartan_matrix(family, rank))
