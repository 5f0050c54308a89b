"""Coinvariant algebras of Weyl groups and invariant theory of the adjoint action.

Polynomial functions on h* are written in the simple-root coordinates
``x_k(mu) = c_k`` where ``mu = sum c_k alpha_k``. In these coordinates the
simple reflection s_j only moves ``x_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .chevalley import LieAlgebraTable, centralizer, chevalley_for, principal_triple
from .exact import kernel_of_columns, rank_of, rank_profile
from .highest_weight import DEFAULT_DIM_BOUND
from .peterson import instance, monomials_of_degree
from .polynomials import Poly, PowerCache, coefficient_vector, linear_form, monomials, poly_mul
from .report import timed, FAIL, PASS, CheckReport
from .rootdata import RootDatum, build_root_datum
from .series import GradedSeries, coeffwise_geq, compare, product_of_geometric, truncated_divide

SHADOW_NOTE = "shadow-check: geometric statement reduced to a Hilbert-series identity"
LIE_INVARIANT_DIM_LIMIT = 10


@lru_cache(maxsize=None)
def fundamental_degrees(label: str) -> Tuple[int, ...]:
    """m_i + 1 with the exponents read off ker(ad e)."""
    L = chevalley_for(label)
    cent = centralizer(L, principal_triple(L).e)
    return tuple(m + 1 for m in cent.exponents)


# -- W-invariants on S h --------------------------------------------------------


def reflection_substitution(datum: RootDatum, j: int) -> Poly:
    """Image of x_j under s_j; every other coordinate is fixed."""
    a = datum.cartan
    return linear_form([-1 if k == j else -a[k][j] for k in range(datum.rank)])


@lru_cache(maxsize=None)
def _reflection_powers(label: str, j: int) -> PowerCache:
    datum = build_root_datum(label)
    return PowerCache([reflection_substitution(datum, j)], datum.rank)


def apply_reflection(label: str, j: int, a: Tuple[int, ...]) -> Poly:
    rest = a[:j] + (0,) + a[j + 1:]
    out: Poly = {}
    for m, c in _reflection_powers(label, j).power(0, a[j]).items():
        out[tuple(x + y for x, y in zip(m, rest))] = c
    return out


@lru_cache(maxsize=None)
def invariant_basis(label: str, parabolic: Tuple[int, ...], d: int) -> Tuple[Poly, ...]:
    """Basis of degree-d invariants of the parabolic subgroup W_J: the joint kernel of s_j - 1, j in J."""
    datum = build_root_datum(label)
    mons = monomials(datum.rank, d)
    if not parabolic:
        return tuple({m: Fraction(1)} for m in mons)
    index = {m: k for k, m in enumerate(mons)}
    n = len(mons)
    cols = []
    for a in mons:
        col: Dict[int, Fraction] = {}
        for g, j in enumerate(parabolic):
            img = dict(apply_reflection(label, j, a))
            img[a] = img.get(a, 0) - 1
            for m, c in img.items():
                if c:
                    col[g * n + index[m]] = Fraction(c)
        cols.append(col)
    kern = kernel_of_columns(cols, n * len(parabolic))
    return tuple({mons[k]: c for k, c in enumerate(v) if c} for v in kern)


def _root_coordinate_matrix(datum: RootDatum, w) -> List[List[Fraction]]:
    cols = [datum.weight_to_root(w.act(datum.simple_roots[k])) for k in range(datum.rank)]
    return [[cols[l][k] for l in range(datum.rank)] for k in range(datum.rank)]


def reynolds_invariant_dim(label: str, parabolic: Sequence[int], d: int) -> int:
    """dim S^d h^{W_J} by averaging every monomial over the materialized group W_J."""
    datum = build_root_datum(label)
    J = set(parabolic)
    probe = tuple(0 if i in J else 1 for i in range(datum.rank))
    group = datum.stabilizer(probe)
    caches = [PowerCache([linear_form(row) for row in _root_coordinate_matrix(datum, w)], datum.rank) for w in group]
    mons = monomials(datum.rank, d)
    index = {m: k for k, m in enumerate(mons)}
    averages = []
    for a in mons:
        acc: Poly = {}
        for pc in caches:
            for m, c in pc.substitute(a).items():
                s = acc.get(m, 0) + c
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        averages.append(coefficient_vector(acc, index))
    return rank_of(averages) if averages else 0


# -- parabolic coinvariants ------------------------------------------------------


@dataclass
class CoinvariantReport:
    type: str
    parabolic: Tuple[int, ...]  # J with W_lambda = <s_j : j in J>
    stabilizer_order: int
    series: GradedSeries  # dims of S h^{W_J} / m_o S h^{W_J}
    length_series: GradedSeries  # lengths of minimal coset representatives of W/W_J
    invariant_dims: Tuple[int, ...]
    ideal_dims: Tuple[int, ...]

    @property
    def passed(self) -> bool:
        return (
            compare(self.series, self.length_series).equal
            and self.series.total() * self.stabilizer_order == build_root_datum(self.type).weyl_order
            and self.series.is_palindromic()
            and self.series.is_nonnegative()
            and self.series.coefficient(0) == 1
        )


def parabolic_of(datum: RootDatum, lam: Sequence[int]) -> Tuple[int, ...]:
    """Simple reflections generating the stabilizer of the dominant conjugate of lam."""
    dom = datum.dominant_conjugate(lam)
    return tuple(i for i, x in enumerate(dom) if x == 0)


@lru_cache(maxsize=None)
def _coinvariants(label: str, parabolic: Tuple[int, ...]) -> CoinvariantReport:
    datum = build_root_datum(label)
    everything = tuple(range(datum.rank))
    # the full coinvariant algebra vanishes above the number of positive roots
    top = datum.num_positive_roots + 1
    quotient, inv_dims, ideal_dims = {}, [], []
    for d in range(top + 1):
        inv = invariant_basis(label, parabolic, d)
        index = {m: k for k, m in enumerate(monomials(datum.rank, d))}
        products = []
        for k in range(1, d + 1):
            for f in invariant_basis(label, everything, k):
                for g in invariant_basis(label, parabolic, d - k):
                    products.append(coefficient_vector(poly_mul(f, g), index))
        r = rank_of(products) if products else 0
        inv_dims.append(len(inv))
        ideal_dims.append(r)
        if len(inv) - r:
            quotient[d] = len(inv) - r
    return CoinvariantReport(
        label,
        parabolic,
        len(datum.stabilizer(tuple(0 if i in parabolic else 1 for i in range(datum.rank)))),
        GradedSeries.from_dict(quotient),
        datum.length_gen_function(parabolic),
        tuple(inv_dims),
        tuple(ideal_dims),
    )


def parabolic_coinvariant_dims(datum: RootDatum, lam: Sequence[int]) -> CoinvariantReport:
    return _coinvariants(datum.label, parabolic_of(datum, lam))


def _report(check, datum, hw, ok, **kw) -> CheckReport:
    hw = None if hw is None else tuple(hw)
    lam = None if hw is None else datum.lowest_weight(hw)
    return CheckReport(check=check, type=datum.label, verdict=PASS if ok else FAIL, highest_weight=hw, lam=lam, **kw)


@timed
def verify_borel(label: str, hw: Sequence[int]) -> CheckReport:
    """Coinvariant series of W_lambda against the length series of W/W_lambda."""
    datum = build_root_datum(label)
    rep = parabolic_coinvariant_dims(datum, hw)
    return _report(
        "borel",
        datum,
        hw,
        rep.passed,
        series_lhs=rep.series,
        series_rhs=rep.length_series,
        details={"parabolic": list(rep.parabolic), "W_lambda": rep.stabilizer_order, "W": datum.weyl_order},
    )


@timed
def verify_surjectivity_shadow(label: str, hw: Sequence[int], dim_bound: int = DEFAULT_DIM_BOUND) -> CheckReport:
    """Cyclic-module series dominates the coinvariant series coefficientwise."""
    datum = build_root_datum(label)
    cyc = instance(label, tuple(hw), dim_bound).cyclic
    rep = parabolic_coinvariant_dims(datum, hw)
    return _report(
        "surj",
        datum,
        hw,
        coeffwise_geq(cyc.series, rep.series),
        series_lhs=cyc.series,
        series_rhs=rep.series,
        details={"parabolic": list(rep.parabolic)},
    )


@timed
def verify_key_i(label: str, mu: Sequence[int], dim_bound: int = DEFAULT_DIM_BOUND) -> CheckReport:
    """Minuscule mu: cyclic series equals the coinvariant series, and dim V_mu = |W|/|W_mu|."""
    datum = build_root_datum(label)
    mu = tuple(mu)
    if not datum.is_minuscule(mu):
        raise ValueError(f"{mu} is not minuscule for {label}")
    inst = instance(label, mu, dim_bound)
    cyc = inst.cyclic
    rep = parabolic_coinvariant_dims(datum, mu)
    ok = compare(cyc.series, rep.series).equal and inst.module.dim * rep.stabilizer_order == datum.weyl_order
    return _report(
        "key1",
        datum,
        mu,
        ok,
        series_lhs=cyc.series,
        series_rhs=rep.series,
        details={"dim": inst.module.dim, "W": datum.weyl_order, "W_mu": rep.stabilizer_order},
    )


@timed
def chevalley_invariant_check(label: str, trunc: int = 20) -> CheckReport:
    """dim S^d h^W against prod 1/(1 - t^{d_i}) degree by degree."""
    datum = build_root_datum(label)
    everything = tuple(range(datum.rank))
    lhs = GradedSeries(tuple(len(invariant_basis(label, everything, d)) for d in range(trunc + 1)), trunc)
    rhs = product_of_geometric(fundamental_degrees(label), trunc)
    return _report("winv", datum, None, compare(lhs, rhs).equal, series_lhs=lhs, series_rhs=rhs,
                   details={"degrees": list(fundamental_degrees(label))})


# -- invariants of the coadjoint action ------------------------------------------------


@dataclass
class InvariantDegrees:
    dims: Dict[int, int]  # d -> dim S^d(g*)^g
    degrees: Tuple[int, ...]
    generators: List[Tuple[int, Poly]] = field(repr=False, default_factory=list)


def _check_lie_size(L: LieAlgebraTable, limit: Optional[int]) -> None:
    limit = LIE_INVARIANT_DIM_LIMIT if limit is None else limit
    if L.dim > limit:
        raise ValueError(f"dim g = {L.dim} exceeds the invariant-computation bound {limit}")


@lru_cache(maxsize=None)
def _coadjoint_derivations(L: LieAlgebraTable) -> Tuple[Dict[int, Dict[int, Fraction]], ...]:
    # x_l . b^k = -sum_m [x_l, x_m]_k b^m
    out = []
    for l in range(L.dim):
        act: Dict[int, Dict[int, Fraction]] = {}
        for m in range(L.dim):
            for k, c in L.basis_bracket(l, m).items():
                act.setdefault(k, {})[m] = -c
        out.append(act)
    return tuple(out)


@lru_cache(maxsize=None)
def lie_invariant_basis(L: LieAlgebraTable, d: int, limit: Optional[int] = None) -> Tuple[Poly, ...]:
    """Basis of S^d(g*)^g: the joint kernel of the dim g derivations on S^d(g*)."""
    _check_lie_size(L, limit)
    n = L.dim
    mons = monomials(n, d)
    index = {m: k for k, m in enumerate(mons)}
    size = len(mons)
    derivs = _coadjoint_derivations(L)
    cols = []
    for a in mons:
        col: Dict[int, Fraction] = {}
        for l, act in enumerate(derivs):
            for k, ak in enumerate(a):
                if not ak or k not in act:
                    continue
                for m, c in act[k].items():
                    b = list(a)
                    b[k] -= 1
                    b[m] += 1
                    row = l * size + index[tuple(b)]
                    s = col.get(row, 0) + ak * c
                    if s:
                        col[row] = s
                    else:
                        col.pop(row, None)
        cols.append(col)
    kern = kernel_of_columns(cols, n * size)
    return tuple({mons[k]: c for k, c in enumerate(v) if c} for v in kern)


def lie_invariants(L: LieAlgebraTable, d: int, limit: Optional[int] = None) -> int:
    return len(lie_invariant_basis(L, d, limit))


def invariant_degrees(L: LieAlgebraTable, max_degree: Optional[int] = None, limit: Optional[int] = None) -> InvariantDegrees:
    """Fundamental degrees: degrees where the invariants outgrow the subalgebra generated so far."""
    r = L.rank
    if max_degree is None:
        max_degree = 2 * r + 2
    dims: Dict[int, int] = {}
    gens: List[Tuple[int, Poly]] = []
    for d in range(1, max_degree + 1):
        basis = lie_invariant_basis(L, d, limit)
        dims[d] = len(basis)
        index = {m: k for k, m in enumerate(monomials(L.dim, d))}
        products = []
        if gens:
            for a in monomials_of_degree([g for g, _ in gens], d):
                p: Poly = {tuple([0] * L.dim): Fraction(1)}
                for (_, g), x in zip(gens, a):
                    for _ in range(x):
                        p = poly_mul(p, g)
                products.append(coefficient_vector(p, index))
        cands = [coefficient_vector(b, index) for b in basis]
        picks = [k - len(products) for k in rank_profile(products + cands) if k >= len(products)]
        gens.extend((d, basis[k]) for k in picks)
        if len(gens) == r:
            break
    return InvariantDegrees(dims, tuple(g for g, _ in gens), gens)


@timed
def nilpotent_cone_hilbert_check(L: LieAlgebraTable, N: int, limit: Optional[int] = None) -> CheckReport:
    """dims of S(g*)/(positive-degree invariants) against prod(1 - t^{d_i}) / (1 - t)^{dim g}."""
    inv = invariant_degrees(L, limit=limit)
    degrees = fundamental_degrees(L.datum.label)
    target = product_of_geometric([1] * L.dim, N)
    for d in degrees:
        target = target * GradedSeries(tuple([1] + [0] * (d - 1) + [-1]))
    quotient = []
    for d in range(N + 1):
        mons = monomials(L.dim, d)
        index = {m: k for k, m in enumerate(mons)}
        vecs = []
        for g, poly in inv.generators:
            for m in monomials(L.dim, d - g) if d >= g else []:
                vecs.append(coefficient_vector(poly_mul(poly, {m: Fraction(1)}), index))
        quotient.append(len(mons) - (rank_of(vecs) if vecs else 0))
    lhs = GradedSeries(tuple(quotient), N)
    ok = compare(lhs, target).equal and tuple(sorted(inv.degrees)) == tuple(sorted(degrees))
    return _report(
        "nilcone",
        L.datum,
        None,
        ok,
        series_lhs=lhs,
        series_rhs=target,
        details={"invariant_degrees": list(inv.degrees), "expected_degrees": list(degrees)},
        notes=[SHADOW_NOTE],
    )


@timed
def hilbert_identity_check(label: str, N: int = 30) -> CheckReport:
    """Hilb(S g) Hilb(S h) / Hilb(S h^W) = Hilb(S g) P_B with P_B the length series of W."""
    datum = build_root_datum(label)
    L = chevalley_for(label)
    degrees = fundamental_degrees(label)
    sg = product_of_geometric([1] * L.dim, N)
    sh = product_of_geometric([1] * datum.rank, N)
    shw = product_of_geometric(degrees, N)
    lhs = truncated_divide(sg * sh, shw, N)
    rhs = (sg * datum.length_gen_function()).truncate(N)
    return _report(
        "hilb4",
        datum,
        None,
        compare(lhs, rhs).equal,
        series_lhs=lhs,
        series_rhs=rhs,
        details={"dim_g": L.dim, "degrees": list(degrees)},
        notes=[SHADOW_NOTE],
    )
