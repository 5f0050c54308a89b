"""Chevalley basis, principal sl2-triple, centralizers and nilpotent conjugation.

The Lie algebra is realized inside its adjoint irreducible module (which only
needs the Cartan matrix to build). Root vectors are normalized nested
commutators ``e_alpha = [e_i, e_beta]/(p+1)``, with ``f_alpha`` sign-fixed so
that ``[e_alpha, f_alpha] = h_alpha``; this yields integral structure
constants. Basis order: ``h_1..h_r``, then ``e_alpha`` and ``f_alpha`` in the
order of :attr:`RootDatum.positive_roots`.
"""

from __future__ import annotations

import hashlib
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exact import Mat, SparseVec, as_sparse, axpy, bracket, express_in_basis, format_rat, kernel_of_columns, parse_rat, rank_of
from .highest_weight import build_irrep
from .rootdata import RootDatum, build_root_datum

CONVENTION_VERSION = 1
CACHE_ENV = "LIECHECK_CACHE_DIR"


@dataclass(frozen=True, eq=False)
class LieAlgebraTable:
    datum: RootDatum
    brackets: Dict[Tuple[int, int], SparseVec]  # (a, b) with a < b -> [b_a, b_b]

    @property
    def rank(self) -> int:
        return self.datum.rank

    @property
    def npos(self) -> int:
        return self.datum.num_positive_roots

    @property
    def dim(self) -> int:
        return self.rank + 2 * self.npos

    def h_index(self, i: int) -> int:
        return i

    def e_index(self, k: int) -> int:
        return self.rank + k

    def f_index(self, k: int) -> int:
        return self.rank + self.npos + k

    def label(self, a: int) -> str:
        r, n = self.rank, self.npos
        if a < r:
            return f"h{a + 1}"
        if a < r + n:
            return "e" + "".join(map(str, self.datum.positive_roots[a - r]))
        return "f" + "".join(map(str, self.datum.positive_roots[a - r - n]))

    @cached_property
    def root_of(self) -> Tuple[Tuple[int, ...], ...]:
        """Root (simple-root coordinates) of each basis element; zero for the Cartan."""
        r, zero = self.rank, tuple(0 for _ in range(self.rank))
        pos = self.datum.positive_roots
        return tuple([zero] * r + list(pos) + [tuple(-x for x in c) for c in pos])

    @cached_property
    def degrees(self) -> Tuple[int, ...]:
        """ad-h eigenvalue of each basis element for the principal h (twice the height)."""
        return tuple(2 * sum(c) for c in self.root_of)

    def basis_bracket(self, a: int, b: int) -> SparseVec:
        if a == b:
            return {}
        if a < b:
            return self.brackets.get((a, b), {})
        return {k: -x for k, x in self.brackets.get((b, a), {}).items()}

    def bracket(self, x, y) -> SparseVec:
        x, y = as_sparse(x), as_sparse(y)
        out: SparseVec = {}
        for a, xa in x.items():
            for b, yb in y.items():
                axpy(out, xa * yb, self.basis_bracket(a, b))
        return out

    def ad(self, x) -> Mat:
        x = as_sparse(x)
        return Mat(self.dim, tuple(self.bracket(x, {b: Fraction(1)}) for b in range(self.dim)))

    @cached_property
    def root_words(self) -> Tuple[Tuple[Tuple[int, ...], Fraction, Fraction], ...]:
        """Per positive root: (word, c_e, c_f) with e_alpha = c_e [e_w0,[e_w1,...]] and likewise for f."""
        out = []
        for k, c in enumerate(self.datum.positive_roots):
            word = _root_word(self.datum, c)
            ev = {self.e_index(word[-1]): Fraction(1)}
            fv = {self.f_index(word[-1]): Fraction(1)}
            for i in reversed(word[:-1]):
                ev = self.bracket({self.e_index(i): 1}, ev)
                fv = self.bracket({self.f_index(i): 1}, fv)
            ce = 1 / ev[self.e_index(k)]
            cf = 1 / fv[self.f_index(k)]
            assert len(ev) == 1 and len(fv) == 1
            out.append((word, ce, cf))
        return tuple(out)


def _root_word(datum: RootDatum, c: Sequence[int]) -> Tuple[int, ...]:
    """Simple indices (i0, ..., in) with e_alpha proportional to [e_i0, [e_i1, ..., e_in]]."""
    roots = set(datum.positive_roots)
    word = []
    cur = tuple(c)
    while sum(cur) > 1:
        i = next(
            i for i in range(datum.rank) if cur[i] > 0 and tuple(x - (j == i) for j, x in enumerate(cur)) in roots
        )
        word.append(i)
        cur = tuple(x - (j == i) for j, x in enumerate(cur))
    word.append(cur.index(1))
    return tuple(word)


def nested_commutator_matrix(ops: Sequence[Mat], word: Sequence[int], datum: Optional[RootDatum] = None) -> Mat:
    """Matrix of [x_{w0}, [x_{w1}, ..., x_{wn}]] for simple-generator matrices ``ops``.

    With ``datum`` given, each partial bracket must carry a root weight.
    """
    if not word:
        raise ValueError("empty bracket word")
    if datum is not None:
        roots = set(datum.positive_roots)
        acc = [0] * datum.rank
        for i in reversed(word):
            acc[i] += 1
            if tuple(acc) not in roots:
                raise ValueError(f"bracket word {tuple(word)} leaves the root system")
    m = ops[word[-1]]
    for i in reversed(word[:-1]):
        m = bracket(ops[i], m)
    return m


def _structure_from_module(datum: RootDatum) -> Dict[Tuple[int, int], SparseVec]:
    mod = build_irrep(datum, datum.highest_root, dim_bound=10**6)
    r, pos = datum.rank, datum.positive_roots
    n = len(pos)
    index = {c: k for k, c in enumerate(pos)}
    E: List[Mat] = [None] * n  # type: ignore[list-item]
    F: List[Mat] = [None] * n  # type: ignore[list-item]
    H = [mod.h(i) for i in range(r)]
    for k in range(r):
        E[k], F[k] = mod.e[k], mod.f[k]

    def coroot_matrix(k):
        m = Mat.zero(mod.dim, mod.dim)
        for i, c in enumerate(datum.positive_coroots[k]):
            if c:
                m = m + H[i].scale(c)
        return m

    for k in range(r, n):
        c = pos[k]
        i = next(i for i in range(r) if c[i] > 0 and tuple(x - (j == i) for j, x in enumerate(c)) in index)
        beta = tuple(x - (j == i) for j, x in enumerate(c))
        p = 0
        while tuple(x - (p + 1) * (j == i) for j, x in enumerate(beta)) in index:
            p += 1
        kb = index[beta]
        E[k] = bracket(E[i], E[kb]).scale(Fraction(1, p + 1))
        F[k] = bracket(F[i], F[kb]).scale(Fraction(1, p + 1))
        target = coroot_matrix(k)
        got = bracket(E[k], F[k])
        if got == target:
            continue
        if got == target.scale(-1):
            F[k] = F[k].scale(-1)
            continue
        raise AssertionError(f"sign resolution failed for root {c}")
    basis = H + E + F
    dim = len(basis)
    # coordinates of a matrix in g_gamma by one pivot entry, or by the simple-root diagonal for gamma = 0
    simple_pos = [mod.blocks[datum.simple_roots[j]][0] for j in range(r)]
    pivots = []
    for m in basis[r:]:
        j = next(j for j, col in enumerate(m.cols) if col)
        i = next(iter(m.cols[j]))
        pivots.append((i, j))
    root_of = [tuple(0 for _ in range(r))] * r + list(pos) + [tuple(-x for x in c) for c in pos]
    where = {c: r + k for k, c in enumerate(pos)}
    where.update({tuple(-x for x in c): r + n + k for k, c in enumerate(pos)})
    cartan_cols = [{j: Fraction(datum.cartan[j][i]) for j in range(r) if datum.cartan[j][i]} for i in range(r)]
    out: Dict[Tuple[int, int], SparseVec] = {}
    for a in range(dim):
        for b in range(a + 1, dim):
            x = bracket(basis[a], basis[b])
            if x.is_zero():
                continue
            gamma = tuple(u + v for u, v in zip(root_of[a], root_of[b]))
            if not any(gamma):
                diag = {j: x.entry(simple_pos[j], simple_pos[j]) for j in range(r)}
                coeffs = express_in_basis(cartan_cols, [diag])[0]
                vec = {i: c for i, c in enumerate(coeffs) if c}
                recon = Mat.zero(mod.dim, mod.dim)
                for i, c in vec.items():
                    recon = recon + H[i].scale(c)
            elif gamma in where:
                t = where[gamma]
                pi, pj = pivots[t - r]
                c = x.entry(pi, pj) / basis[t].entry(pi, pj)
                vec = {t: c}
                recon = basis[t].scale(c)
            else:
                raise AssertionError(f"bracket of weight {gamma} is nonzero")
            if recon != x:
                raise AssertionError(f"bracket [{a},{b}] not in the expected root space")
            out[(a, b)] = vec
    return out


def dump_structure_constants(L: LieAlgebraTable) -> str:
    """Plain text: one line per nonzero bracket coefficient, 'i j k p/q' for [b_i, b_j] = ... + (p/q) b_k."""
    lines = [f"# {L.datum.label} convention {CONVENTION_VERSION}"]
    for (a, b) in sorted(L.brackets):
        for k, x in sorted(L.brackets[(a, b)].items()):
            lines.append(f"{a} {b} {k} {format_rat(x)}")
    return "\n".join(lines) + "\n"


def load_structure_constants(text: str) -> Dict[Tuple[int, int], SparseVec]:
    out: Dict[Tuple[int, int], SparseVec] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        a, b, k, x = line.split()
        out.setdefault((int(a), int(b)), {})[int(k)] = parse_rat(x)
    return out


def cache_key(datum: RootDatum) -> str:
    """Content address: digest of the Cartan matrix and the basis convention."""
    text = f"v{CONVENTION_VERSION};" + ";".join(",".join(map(str, row)) for row in datum.cartan)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def cache_path(cache_dir, datum: RootDatum) -> Path:
    return Path(cache_dir) / f"structure-{datum.label}-{cache_key(datum)}.txt"


def default_cache_dir() -> Optional[str]:
    return os.environ.get(CACHE_ENV) or None


def atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def build_chevalley(datum: RootDatum, cache_dir=None) -> LieAlgebraTable:
    if cache_dir is not None:
        path = cache_path(cache_dir, datum)
        if path.exists():
            try:
                return LieAlgebraTable(datum, load_structure_constants(path.read_text()))
            except (ValueError, OSError):
                pass  # corrupt cache entries are rebuilt
    L = LieAlgebraTable(datum, _structure_from_module(datum))
    if cache_dir is not None:
        atomic_write(cache_path(cache_dir, datum), dump_structure_constants(L))
    return L


@lru_cache(maxsize=None)
def chevalley_for(label: str) -> LieAlgebraTable:
    return build_chevalley(build_root_datum(label), default_cache_dir())


# -- principal triple ------------------------------------------------------


@dataclass(frozen=True)
class PrincipalTriple:
    e: Tuple[Fraction, ...]
    h: Tuple[Fraction, ...]
    f: Tuple[Fraction, ...]

    def h_coroot_coeffs(self, rank: int) -> Tuple[Fraction, ...]:
        return self.h[:rank]


def principal_triple(L: LieAlgebraTable) -> PrincipalTriple:
    r, a = L.rank, L.datum.cartan
    e = {L.e_index(i): Fraction(1) for i in range(r)}
    # alpha_j(h) = sum_i c_i a_ji = 2
    cols = [{j: Fraction(a[j][i]) for j in range(r) if a[j][i]} for i in range(r)]
    c = express_in_basis(cols, [{j: Fraction(2) for j in range(r)}])[0]
    h = {L.h_index(i): x for i, x in enumerate(c) if x}
    # f in span{f_i} with [e, f] = h
    images = [L.bracket(e, {L.f_index(i): 1}) for i in range(r)]
    y = express_in_basis(images, [h])[0]
    f = {L.f_index(i): x for i, x in enumerate(y) if x}

    def dense(v):
        return tuple(v.get(k, Fraction(0)) for k in range(L.dim))

    triple = PrincipalTriple(dense(e), dense(h), dense(f))
    _check_triple(L, triple)
    return triple


def _check_triple(L: LieAlgebraTable, t: PrincipalTriple) -> None:
    e, h, f = as_sparse(t.e), as_sparse(t.h), as_sparse(t.f)
    if L.bracket(h, e) != {k: 2 * x for k, x in e.items()}:
        raise AssertionError("[h,e] != 2e")
    if L.bracket(h, f) != {k: -2 * x for k, x in f.items()}:
        raise AssertionError("[h,f] != -2f")
    if L.bracket(e, f) != h:
        raise AssertionError("[e,f] != h")


# -- centralizers ----------------------------------------------------------


@dataclass(frozen=True)
class Centralizer:
    basis: Tuple[SparseVec, ...]
    degrees: Optional[Tuple[int, ...]]  # ad-h degrees when the element is ad-h homogeneous

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def exponents(self) -> Tuple[int, ...]:
        if self.degrees is None:
            raise ValueError("centralizer of an inhomogeneous element carries no grading")
        return tuple(sorted(d // 2 for d in self.degrees))


def centralizer(L: LieAlgebraTable, x) -> Centralizer:
    x = as_sparse(x)
    if not x:
        return Centralizer(tuple({b: Fraction(1)} for b in range(L.dim)), tuple(L.degrees))
    degs = {L.degrees[a] for a in x}
    images = [L.bracket(x, {b: Fraction(1)}) for b in range(L.dim)]
    if len(degs) == 1:
        basis, degrees = [], []
        for d in sorted(set(L.degrees)):
            members = [b for b in range(L.dim) if L.degrees[b] == d]
            for v in kernel_of_columns([images[b] for b in members], L.dim):
                basis.append({members[k]: c for k, c in enumerate(v) if c})
                degrees.append(d)
        return Centralizer(tuple(basis), tuple(degrees))
    kern = kernel_of_columns(images, L.dim)
    return Centralizer(tuple(as_sparse(v) for v in kern), None)


def is_abelian(L: LieAlgebraTable, vectors: Sequence) -> bool:
    vs = [as_sparse(v) for v in vectors]
    return all(not L.bracket(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs)))


# -- conjugation of g^{e+h} onto the Cartan -----------------------------------

CONJUGATION_SEARCH = (Fraction(1), Fraction(1, 2), Fraction(-1), Fraction(-1, 2))


def exp_ad(L: LieAlgebraTable, x, t: Fraction, y) -> SparseVec:
    """Ad(exp(t x))(y) for nilpotent ad x: the finite sum of (t ad x)^k y / k!."""
    x = as_sparse(x)
    term = as_sparse(y)
    out = dict(term)
    k = 0
    while term:
        k += 1
        term = {i: c * t / k for i, c in L.bracket(x, term).items()}
        axpy(out, Fraction(1), term)
        if k > 2 * L.dim:
            raise AssertionError("ad x is not nilpotent")
    return out


@dataclass(frozen=True)
class CartanConjugation:
    t: Fraction
    images: Tuple[SparseVec, ...]
    filtration_dims: Tuple[int, ...]  # dims of the transported filtration pieces, k = 0, 1, ...


def conjugate_to_cartan(L: LieAlgebraTable, triple: PrincipalTriple) -> CartanConjugation:
    e, h = as_sparse(triple.e), as_sparse(triple.h)
    x = dict(e)
    axpy(x, Fraction(1), h)
    cent = centralizer(L, x)
    r = L.rank
    if cent.dim != r:
        raise AssertionError(f"dim g^(e+h) = {cent.dim}, expected {r}")
    for t in CONJUGATION_SEARCH:
        images = [exp_ad(L, e, t, v) for v in cent.basis]
        if all(all(k < r for k in im) for im in images) and rank_of(images) == r:
            break
    else:
        raise AssertionError("no parameter in the search set carries g^(e+h) onto h")
    # filtration of g^{e+h} by top ad-h degree, as dims of {x : all components of degree <= 2k}
    images_all = [L.bracket(x, {b: Fraction(1)}) for b in range(L.dim)]
    dims = []
    k = 0
    while not dims or dims[-1] < r:
        members = [b for b in range(L.dim) if L.degrees[b] <= 2 * k]
        dims.append(len(kernel_of_columns([images_all[b] for b in members], L.dim)))
        k += 1
    return CartanConjugation(t, tuple(images), tuple(dims))


def structure_report(L: LieAlgebraTable) -> Dict[str, object]:
    """Exponents from ker(ad e) with the product check against the enumerated Weyl group."""
    triple = principal_triple(L)
    cent = centralizer(L, triple.e)
    ex = cent.exponents
    prod = 1
    for m in ex:
        prod *= m + 1
    return {
        "exponents": list(ex),
        "dim_centralizer": cent.dim,
        "abelian": is_abelian(L, cent.basis),
        "weyl_order": L.datum.weyl_order,
        "product_check": prod == L.datum.weyl_order,
        "sum_check": sum(2 * m + 1 for m in ex) == L.dim,
    }


def element_matrices(L: LieAlgebraTable, module) -> List[Mat]:
    """Matrices of every basis element of L acting on a module, via nested commutators."""
    r = L.rank
    mats = [module.h(i) for i in range(r)]
    es, fs = [], []
    for word, ce, cf in L.root_words:
        es.append(nested_commutator_matrix(module.e, word).scale(ce))
        fs.append(nested_commutator_matrix(module.f, word).scale(cf))
    return mats + es + fs


def element_matrix(mats: Sequence[Mat], x) -> Mat:
    x = as_sparse(x)
    n = mats[0].nrows
    out = Mat.zero(n, n)
    for a, c in x.items():
        out = out + mats[a].scale(c)
    return out
