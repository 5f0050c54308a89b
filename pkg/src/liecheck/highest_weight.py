"""Finite-dimensional irreducible modules built from their highest weight.

The module is assembled weight space by weight space, top down. Each lower
weight space is spanned by the vectors ``f_i b`` with ``b`` a basis vector one
step higher; the raising operators act on these through the straightening rule
``e_j f_i b = f_i e_j b + delta_ij <mu + alpha_i, alpha_i^vee> b``. Relations
in the irreducible quotient are exactly the radical of the contravariant
(Shapovalov) form, whose Gram matrix is carried along and whose rank is
recorded per weight space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple

from .exact import Mat, SparseVec, axpy, express_in_basis, rank_of, rank_profile
from .rootdata import RootDatum, Weight

DEFAULT_DIM_BOUND = 500


class DimensionBoundExceeded(Exception):
    def __init__(self, dim: int, bound: int):
        super().__init__(f"module dimension {dim} exceeds bound {bound}")
        self.dim = dim
        self.bound = bound


def freudenthal_multiplicities(datum: RootDatum, hw: Sequence[int]) -> Dict[Weight, int]:
    """Weight multiplicities of the irreducible module with highest weight ``hw``."""
    return dict(_freudenthal(datum, tuple(int(x) for x in hw)))


@lru_cache(maxsize=256)
def _freudenthal(datum: RootDatum, hw: Weight) -> Tuple[Tuple[Weight, int], ...]:
    if not datum.is_dominant(hw):
        raise ValueError(f"highest weight {hw} is not dominant")
    dominant = datum.dominant_weights_below(hw)
    pos = [datum.root_to_weight(c) for c in datum.positive_roots]
    rho = datum.rho
    ip = datum.scaled_inner  # a fixed multiple of the invariant form; only ratios are used
    shifted = tuple(a + b for a, b in zip(hw, rho))
    norm_top = ip(shifted, shifted)
    dom_mult: Dict[Weight, int] = {}

    def mult(nu: Weight) -> int:
        return dom_mult.get(datum.dominant_conjugate(nu), 0)

    for mu in dominant:
        if mu == hw:
            dom_mult[mu] = 1
            continue
        total = 0
        for alpha in pos:
            k = 1
            while True:
                nu = tuple(m + k * a for m, a in zip(mu, alpha))
                m_nu = mult(nu)
                if m_nu == 0:
                    break
                total += m_nu * ip(nu, alpha)
                k += 1
        mr = tuple(a + b for a, b in zip(mu, rho))
        value = Fraction(2 * total, norm_top - ip(mr, mr))
        if value.denominator != 1:
            raise AssertionError("non-integral Freudenthal multiplicity")
        dom_mult[mu] = int(value)
    out: Dict[Weight, int] = {}
    for mu, m in dom_mult.items():
        if m:
            for nu in datum.weyl_orbit(mu):
                out[nu] = m
    return tuple(sorted(out.items()))


def kostant_multiplicity(datum: RootDatum, hw: Sequence[int], mu: Sequence[int]) -> int:
    """Alternating sum over W of partition-function values."""
    shifted = tuple(a + 1 for a in hw)
    target = tuple(m + 1 for m in mu)
    total = 0
    for w in datum.weyl_group:
        diff = [a - b for a, b in zip(w.act(shifted), target)]
        c = datum.weight_to_root(diff)
        if all(x.denominator == 1 and x >= 0 for x in c):
            total += (-1) ** w.length * datum.kostant_partition([int(x) for x in c])
    return total


@dataclass(frozen=True, eq=False)
class WeightModule:
    datum: RootDatum
    highest: Weight
    weights: Tuple[Weight, ...]  # weight of each basis vector
    e: Tuple[Mat, ...]
    f: Tuple[Mat, ...]
    blocks: Dict[Weight, Tuple[int, ...]] = field(repr=False)
    gram: Dict[Weight, Tuple[Tuple[Fraction, ...], ...]] = field(repr=False)
    shapovalov_rank: Dict[Weight, int] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.weights)

    def h(self, i: int) -> Mat:
        return Mat(self.dim, tuple({k: Fraction(w[i])} if w[i] else {} for k, w in enumerate(self.weights)))

    def multiplicities(self) -> Dict[Weight, int]:
        return {mu: len(idx) for mu, idx in self.blocks.items()}

    def h_eigenvalue(self, k: int, coroot_coeffs: Sequence) -> Fraction:
        """Eigenvalue on basis vector k of the Cartan element sum_i c_i h_i."""
        return sum((Fraction(c) * w for c, w in zip(coroot_coeffs, self.weights[k])), Fraction(0))

    def __repr__(self) -> str:
        return f"WeightModule({self.datum.label}, hw={self.highest}, dim={self.dim})"


def build_irrep(datum: RootDatum, hw: Sequence[int], dim_bound: int = DEFAULT_DIM_BOUND) -> WeightModule:
    hw = tuple(int(x) for x in hw)
    if len(hw) != datum.rank:
        raise ValueError(f"weight {hw} has wrong length for {datum.label}")
    expected = freudenthal_multiplicities(datum, hw)
    dim = sum(expected.values())
    if dim > dim_bound:
        raise DimensionBoundExceeded(dim, dim_bound)
    return _build(datum, hw, expected)


def _build(datum: RootDatum, hw: Weight, expected: Mapping[Weight, int]) -> WeightModule:
    r = datum.rank
    alphas = datum.simple_roots

    def up(mu, i):
        return tuple(m + a for m, a in zip(mu, alphas[i]))

    def depth(mu):
        return sum(datum.weight_to_root([a - b for a, b in zip(hw, mu)]))

    order = sorted(expected, key=lambda mu: (depth(mu), tuple(-x for x in mu)))
    blocks: Dict[Weight, Tuple[int, ...]] = {}
    weights: List[Weight] = []
    e_cols: List[List[SparseVec]] = [[] for _ in range(r)]
    f_cols: List[List[SparseVec]] = [[] for _ in range(r)]
    gram: Dict[Weight, Tuple[Tuple[Fraction, ...], ...]] = {}
    shap: Dict[Weight, int] = {}

    def new_vector(mu):
        weights.append(mu)
        for i in range(r):
            e_cols[i].append({})
            f_cols[i].append({})
        return len(weights) - 1

    for mu in order:
        if mu == hw:
            blocks[mu] = (new_vector(mu),)
            gram[mu] = ((Fraction(1),),)
            shap[mu] = 1
            continue
        cands: List[Tuple[int, int]] = []
        for i in range(r):
            if up(mu, i) in blocks:
                cands.extend((i, k) for k in blocks[up(mu, i)])
        images: List[SparseVec] = []
        for i, k in cands:
            col: SparseVec = {}
            for j in range(r):
                for l, c in e_cols[j][k].items():
                    axpy(col, c, f_cols[i][l])
            pair = up(mu, i)[i]
            if pair:
                axpy(col, Fraction(pair), {k: Fraction(1)})
            images.append(col)
        # contravariant form: <f_i b, f_j c> = <b, e_i f_j c>
        g_rows = []
        for i1, k1 in cands:
            upper = up(mu, i1)
            pos = {t: n for n, t in enumerate(blocks[upper])}
            grow = gram[upper][pos[k1]]
            row = []
            for col in images:
                row.append(sum((grow[pos[t]] * x for t, x in col.items() if t in pos), Fraction(0)))
            g_rows.append(row)
        g_rank = rank_of(g_rows) if g_rows else 0
        chosen = rank_profile(images)
        want = expected[mu]
        if len(chosen) != want or g_rank != want:
            raise AssertionError(
                f"weight {mu}: raising-image rank {len(chosen)}, Shapovalov rank {g_rank}, Freudenthal {want}"
            )
        shap[mu] = g_rank
        new_idx = [new_vector(mu) for _ in chosen]
        blocks[mu] = tuple(new_idx)
        gram[mu] = tuple(tuple(g_rows[a][b] for b in chosen) for a in chosen)
        owner = {t: j for j in range(r) for t in blocks.get(up(mu, j), ())}
        for n, c in zip(new_idx, chosen):
            for t, x in images[c].items():
                e_cols[owner[t]][n][t] = x
        coords = express_in_basis([images[c] for c in chosen], images)
        for (i, k), xs in zip(cands, coords):
            f_cols[i][k] = {n: x for n, x in zip(new_idx, xs) if x}
    dim = len(weights)
    e = tuple(Mat(dim, tuple(cols)) for cols in e_cols)
    f = tuple(Mat(dim, tuple(cols)) for cols in f_cols)
    return WeightModule(datum, hw, tuple(weights), e, f, blocks, gram, shap)


def lowest_weight_vector(module: WeightModule) -> SparseVec:
    low = module.datum.lowest_weight(module.highest)
    (k,) = module.blocks[low]
    return {k: Fraction(1)}


def specm_and_zero_space(module: WeightModule) -> Tuple[List[Weight], int, Dict[Weight, int]]:
    """Distinct weights, dim V(0), and the per-weight dimensions."""
    mults = module.multiplicities()
    zero = tuple(0 for _ in range(module.datum.rank))
    return sorted(mults), mults.get(zero, 0), mults


def weight_vector_images(module: WeightModule, word: Sequence[int], v: Mapping[int, Fraction]) -> SparseVec:
    """Apply e_{w[0]} e_{w[1]} ... e_{w[-1]} (rightmost first) to v."""
    out = dict(v)
    for i in reversed(word):
        out = module.e[i].apply(out)
    return out


# -- independent oracle: Shapovalov form on the Verma module ---------------


def verma_shapovalov_rank(datum: RootDatum, hw: Sequence[int], depth: Sequence[int]) -> int:
    """Rank of the contravariant form on all f-words of weight hw - depth (root coordinates).

    Computed on the Verma module itself by straightening e's through f-words,
    without using any quotient. Exponential in the depth; meant for small cases.
    """
    hw = tuple(hw)
    words = _words_of_content(tuple(depth))
    if not words:
        return 0
    a = datum.cartan

    @lru_cache(maxsize=None)
    def apply_e(i: int, w: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
        # e_i f_{w0} ... f_{wk} v, moving e_i right: each f_i met contributes h_i
        out: Dict[Tuple[int, ...], int] = {}
        for p, j in enumerate(w):
            if j != i:
                continue
            rest = w[p + 1:]
            weight_right = [hw[t] - sum(a[s][t] for s in rest) for t in range(len(hw))]
            c = weight_right[i]
            if c:
                key = w[:p] + rest
                out[key] = out.get(key, 0) + c
        return tuple(sorted(out.items()))

    @lru_cache(maxsize=None)
    def pair(u: Tuple[int, ...], w: Tuple[int, ...]) -> int:
        if not u:
            return int(not w)
        total = 0
        for w2, c in apply_e(u[0], w):
            total += c * pair(u[1:], w2)
        return total

    rows = [[pair(u, w) for w in words] for u in words]
    return rank_of(rows)


def _words_of_content(content: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    if any(c < 0 for c in content):
        return []
    out: List[Tuple[int, ...]] = []

    def rec(prefix, rem):
        if not any(rem):
            out.append(tuple(prefix))
            return
        for i, c in enumerate(rem):
            if c:
                rem2 = list(rem)
                rem2[i] -= 1
                rec(prefix + [i], rem2)

    rec([], list(content))
    return out
