"""Exact rational linear algebra.

Matrices are stored column-sparse with :class:`fractions.Fraction` entries.
Heavy eliminations go through FLINT (``python-flint``); a plain Fraction
Gauss-Jordan routine is kept alongside as an independent reference path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import flint

Rat = Fraction
SparseVec = Dict[int, Fraction]
VecLike = Union[Mapping[int, Fraction], Sequence]


def rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rat(x)
    return Fraction(x)


def format_rat(x) -> str:
    """Serialize as ``"p/q"``, or ``"n"`` when the denominator is 1."""
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        p, q = s.split("/")
        return Fraction(int(p), int(q))
    return Fraction(int(s))


def as_sparse(v: VecLike) -> SparseVec:
    if isinstance(v, Mapping):
        return {i: rat(c) for i, c in v.items() if c != 0}
    return {i: rat(c) for i, c in enumerate(v) if c != 0}


def axpy(acc: SparseVec, a: Fraction, x: Mapping[int, Fraction]) -> None:
    """acc += a*x in place, dropping cancelled entries."""
    if a == 0:
        return
    for i, c in x.items():
        s = acc.get(i, 0) + a * c
        if s:
            acc[i] = s
        else:
            acc.pop(i, None)


@dataclass(frozen=True, eq=False)
class Mat:
    """Column-sparse exact matrix. No explicit zeros are stored."""

    nrows: int
    cols: Tuple[SparseVec, ...]

    @property
    def ncols(self) -> int:
        return len(self.cols)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: Optional[int] = None) -> "Mat":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols: List[SparseVec] = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, x in enumerate(row):
                if x != 0:
                    cols[j][i] = rat(x)
        return cls(nrows, tuple(cols))

    @classmethod
    def from_columns(cls, columns: Iterable[VecLike], nrows: int) -> "Mat":
        cols = tuple(as_sparse(c) for c in columns)
        for c in cols:
            if c and max(c) >= nrows:
                raise ValueError("column entry outside row range")
        return cls(nrows, cols)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "Mat":
        return cls(nrows, tuple({} for _ in range(ncols)))

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(n, tuple({j: Fraction(1)} for j in range(n)))

    def to_rows(self) -> List[List[Fraction]]:
        rows = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                rows[i][j] = x
        return rows

    def entry(self, i: int, j: int) -> Fraction:
        return self.cols[j].get(i, Fraction(0))

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def is_zero(self) -> bool:
        return not any(self.cols)

    def transpose(self) -> "Mat":
        cols: List[SparseVec] = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                cols[i][j] = x
        return Mat(self.ncols, tuple(cols))

    def apply(self, v: VecLike) -> SparseVec:
        out: SparseVec = {}
        for j, x in as_sparse(v).items():
            axpy(out, x, self.cols[j])
        return out

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        return Mat(self.nrows, tuple(self.apply(c) for c in other.cols))

    def _combine(self, other: "Mat", sign: int) -> "Mat":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            axpy(c, Fraction(sign), b)
            cols.append(c)
        return Mat(self.nrows, tuple(cols))

    def __add__(self, other: "Mat") -> "Mat":
        return self._combine(other, 1)

    def __sub__(self, other: "Mat") -> "Mat":
        return self._combine(other, -1)

    def scale(self, a) -> "Mat":
        a = rat(a)
        if a == 0:
            return Mat.zero(self.nrows, self.ncols)
        return Mat(self.nrows, tuple({i: a * x for i, x in c.items()} for c in self.cols))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.nrows == other.nrows and self.cols == other.cols

    __hash__ = None  # type: ignore[assignment]


def bracket(a: Mat, b: Mat) -> Mat:
    """Matrix commutator ab - ba."""
    return a @ b - b @ a


# ---------------------------------------------------------------------------
# FLINT bridge


def _to_fmpq_mat(columns: Sequence[Mapping[int, Fraction]], rows: Sequence[int]):
    """Dense fmpq_mat whose columns are the given sparse vectors restricted to ``rows``."""
    pos = {r: k for k, r in enumerate(rows)}
    nr, nc = len(rows), len(columns)
    entries: List = [0] * (nr * nc)
    for j, col in enumerate(columns):
        for i, x in col.items():
            k = pos[i]
            if x.denominator == 1:
                entries[k * nc + j] = x.numerator
            else:
                entries[k * nc + j] = flint.fmpq(x.numerator, x.denominator)
    return flint.fmpq_mat(nr, nc, entries)


def _support(columns: Sequence[Mapping[int, Fraction]]) -> List[int]:
    rows = set()
    for c in columns:
        rows.update(c)
    return sorted(rows)


def _from_fmpq(q) -> Fraction:
    return Fraction(int(q.p), int(q.q))


def _rref_pivots(R, rank: int) -> List[int]:
    pivots = []
    nc = R.ncols()
    j = 0
    for i in range(rank):
        while R[i, j] == 0:
            j += 1
        pivots.append(j)
        j += 1
        if j > nc:
            break
    return pivots


def _int_rank_profile(columns: Sequence[Sequence[int]]) -> List[int]:
    R, _den, rank = _int_matrix(columns).rref()
    return _rref_pivots(R, rank)


def _all_int_lists(vectors: Sequence[VecLike]) -> bool:
    return bool(vectors) and all(not isinstance(v, Mapping) and all(type(x) is int for x in v) for v in vectors)


def _int_matrix(columns: Sequence[Sequence[int]]):
    nr, nc = len(columns[0]), len(columns)
    flat = [0] * (nr * nc)
    for j, col in enumerate(columns):
        for i, x in enumerate(col):
            if x:
                flat[i * nc + j] = x
    return flint.fmpz_mat(nr, nc, flat)


def rank_profile(vectors: Sequence[VecLike]) -> List[int]:
    """Indices of the greedy maximal independent subset, scanning left to right."""
    if _all_int_lists(vectors):
        if not vectors[0]:
            return []
        return _int_rank_profile(vectors)
    cols = [as_sparse(v) for v in vectors]
    rows = _support(cols)
    if not rows:
        return []
    R, rank = _to_fmpq_mat(cols, rows).rref()
    return _rref_pivots(R, rank)


def rank_of(vectors: Sequence[VecLike]) -> int:
    if _all_int_lists(vectors):
        return _int_matrix(vectors).rank() if vectors[0] else 0
    cols = [as_sparse(v) for v in vectors]
    rows = _support(cols)
    if not rows:
        return 0
    return _to_fmpq_mat(cols, rows).rank()


def express_in_basis(basis: Sequence[VecLike], targets: Sequence[VecLike]) -> List[List[Fraction]]:
    """Coordinates of each target in terms of ``basis`` (assumed independent).

    Raises ValueError if some target is outside the span.
    """
    bcols = [as_sparse(v) for v in basis]
    tcols = [as_sparse(v) for v in targets]
    k = len(bcols)
    if not tcols:
        return []
    rows = _support(bcols + tcols)
    if not rows:
        return [[Fraction(0)] * k for _ in tcols]
    R, rank = _to_fmpq_mat(bcols + tcols, rows).rref()
    if rank != k or _rref_pivots(R, rank) != list(range(k)):
        raise ValueError("basis is dependent or a target lies outside its span")
    return [[_from_fmpq(R[i, k + t]) for i in range(k)] for t in range(len(tcols))]


def _rank_kernel_flint(m: Mat) -> Tuple[int, List[Tuple[Fraction, ...]]]:
    n = m.ncols
    rows = list(range(m.nrows))
    if n == 0:
        return 0, []
    if not rows:
        return 0, [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    R, rank = _to_fmpq_mat(m.cols, rows).rref()
    pivots = _rref_pivots(R, rank)
    return rank, _kernel_from_rref(lambda i, j: _from_fmpq(R[i, j]), pivots, n)


def _kernel_from_rref(get, pivots: List[int], n: int) -> List[Tuple[Fraction, ...]]:
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -get(i, free)
        basis.append(tuple(v))
    return basis


def _rank_kernel_python(m: Mat) -> Tuple[int, List[Tuple[Fraction, ...]]]:
    rows = m.to_rows()
    n = m.ncols
    pivots: List[int] = []
    r = 0
    for j in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][j] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][j]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][j] != 0:
                c = rows[i][j]
                rows[i] = [a - c * b for a, b in zip(rows[i], rows[r])]
        pivots.append(j)
        r += 1
    return r, _kernel_from_rref(lambda i, j: rows[i][j], pivots, n)


def rank_kernel(m: Mat, backend: str = "flint") -> Tuple[int, List[Tuple[Fraction, ...]]]:
    """Rank of ``m`` and a basis of its right kernel.

    ``backend="python"`` runs a plain Fraction Gauss-Jordan elimination.
    """
    if backend == "flint":
        return _rank_kernel_flint(m)
    if backend == "python":
        return _rank_kernel_python(m)
    raise ValueError(f"unknown backend {backend!r}")


def kernel_of_columns(columns: Sequence[VecLike], nrows: int) -> List[Tuple[Fraction, ...]]:
    """Kernel basis of the matrix with the given columns (one coefficient per column)."""
    return rank_kernel(Mat.from_columns(columns, nrows))[1]


def filtered_span_dims(vectors: Iterable[Tuple[VecLike, int]]):
    """Graded dimensions of the filtration of a span by degree.

    The coefficient at ``d`` is ``dim span{v : deg v <= d} - dim span{v : deg v <= d-1}``.
    """
    from .series import GradedSeries

    items = sorted(((deg, k, v) for k, (v, deg) in enumerate(vectors)), key=lambda t: (t[0], t[1]))
    counts: Dict[int, int] = {}
    for idx in rank_profile([v for _, _, v in items]):
        deg = items[idx][0]
        counts[deg] = counts.get(deg, 0) + 1
    return GradedSeries.from_dict(counts)
