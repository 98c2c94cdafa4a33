"""Cup product on X̄^{**}(E) and cap product X̄_{**}(M) × X̄^{**}(E) → X̄_{**}(M).

Cochains are tables of values (``HomSpace`` vectors), chains are coordinates
on the basis of X̄_{rs}(M). Both products are computed on basic tuples and
descend to (co)homology when f takes values in K; ``verify_products`` checks
that on the total complexes.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Tuple

from tools.errors import DegreeUnderflow
from tools.linalg import sparse
from tools.linalg.echelon import EchelonBasis
from tools.report import Report
from tools.cleft.chain import build_chain_complex
from tools.cleft.cochain import build_cochain_complex
from tools.cleft.spaces import CleftSetting, parity, xbar, xbar_cochain
from tools.weak_hopf.bialgebra import leg, split_all

logger = logging.getLogger(__name__)


@dataclass
class Cochain:
    """An element of X̄^{rs}(E) as a table of values."""

    r: int
    s: int
    table: dict


@dataclass
class Chain:
    """An element of X̄_{rs}(M) in basis coordinates."""

    r: int
    s: int
    coords: dict


def nested_act(st: CleftSetting, hs: tuple, tail: tuple) -> dict:
    """h_1·(h_2·(…h_k·ā))."""
    vec = {tail: st.field.one}
    for h in reversed(hs):
        vec = sparse.apply_linear(vec, lambda k, h=h: st.bundle.m.act_tensor(st.H.e(h), k))
    return vec


def unit_cochain(st: CleftSetting) -> Cochain:
    """1_E in X̄^{00}(E)."""
    space = xbar_cochain(st, 0, 0)
    return Cochain(0, 0, space.from_values(lambda key: st.E.one()))


def cup(st: CleftSetting, beta: Cochain, beta2: Cochain) -> Cochain:
    """β·β′ in X̄^{r+r′, s+s′}(E)."""
    H, b, E, F = st.H, st.bundle, st.E, st.field
    r, s, r2, s2 = beta.r, beta.s, beta2.r, beta2.s
    ev1 = xbar_cochain(st, r, s).evaluator(beta.table)
    ev2 = xbar_cochain(st, r2, s2).evaluator(beta2.table)
    s_all = s + s2
    sign = parity(F, r2 * s)

    def value(key: tuple) -> dict:
        first, rest = key[:s], key[s:s_all]
        a1, a2 = key[s_all:s_all + r], key[s_all + r:]
        out = {}
        for legs, c in split_all(H, rest, 4):
            v1 = ev1({first + k: v for k, v in nested_act(st, leg(legs, 1), a1).items()})
            if not v1:
                continue
            v2 = ev2({leg(legs, 3) + a2: F.one})
            if not v2:
                continue
            term = E.prod(b.gamma_times_inv(leg(legs, 0)), v1, b.gamma_times(leg(legs, 2)), v2)
            sparse.axpy(out, term, sign * c)
        return out

    target = xbar_cochain(st, r + r2, s_all)
    return Cochain(r + r2, s_all, target.from_values(value))


def cap(st: CleftSetting, ste: CleftSetting, y: Chain, beta: Cochain) -> Chain:
    """y∗β in X̄_{r−r′, s−s′}(M); ``ste`` is the setting of E over the same bundle."""
    r, s, r2, s2 = y.r, y.s, beta.r, beta.s
    if r < r2 or s < s2:
        raise DegreeUnderflow(f"cannot cap X̄_{r},{s} with X̄^{r2},{s2}")
    H, b, E, F = st.H, st.bundle, st.E, st.field
    ev = xbar_cochain(ste, r2, s2).evaluator(beta.table)
    sign = parity(F, r * s2 + r2 * s2)
    src, dst = xbar(st, r, s), xbar(st, r - r2, s - s2)
    out = {}
    for key, c in src.lift_vector(y.coords).items():
        hs, m, tail = key[:s], key[s], key[s + 1:]
        first, rest = hs[:s2], hs[s2:]
        for legs, d in split_all(H, rest, 4):
            value = ev({first + k: v for k, v in nested_act(st, leg(legs, 1), tail[:r2]).items()})
            if not value:
                continue
            x = E.prod(b.gamma_times_inv(leg(legs, 0)), value, b.gamma_times(leg(legs, 2)))
            for k, e in st.m_right(m, x).items():
                sparse.add_term(out, leg(legs, 3) + (k,) + tail[r2:], sign * c * d * e)
    return Chain(r - r2, s - s2, dst.project(out))


# total complexes

def _pieces(offsets: Dict[Tuple[int, int], int], dims: Dict[Tuple[int, int], int], n: int, vec: dict):
    for (r, s), off in offsets.items():
        if r + s != n:
            continue
        part = {i - off: c for i, c in vec.items() if off <= i < off + dims[(r, s)]}
        if part:
            yield r, s, part


def _embed(offsets, key, coords: dict) -> dict:
    off = offsets[key]
    return {off + i: c for i, c in coords.items()}


@dataclass
class ProductSetting:
    """Total cochain complex of X̄^*(E) and total chain complex of X̄_*(E), with the tools to move between them."""

    st: CleftSetting
    n_max: int

    def __post_init__(self):
        st = self.st
        st.require_k_valued("cup and cap products")
        cc = build_cochain_complex(st, self.n_max)
        self.co_dims = cc.dims
        self.cochains, self.co_offsets, _ = cc.total()
        chain = build_chain_complex(st, self.n_max)
        self.ch_dims = dict(chain.double.dims)
        tot = chain.total()
        self.chains, self.ch_offsets = tot.complex, tot.offsets

    def cup_total(self, x: dict, n: int, y: dict, m: int) -> dict:
        out = {}
        for (r, s, cx), (r2, s2, cy) in product(list(_pieces(self.co_offsets, self.co_dims, n, x)),
                                                  list(_pieces(self.co_offsets, self.co_dims, m, y))):
            beta = Cochain(r, s, xbar_cochain(self.st, r, s).vector(cx))
            beta2 = Cochain(r2, s2, xbar_cochain(self.st, r2, s2).vector(cy))
            res = cup(self.st, beta, beta2)
            coords = xbar_cochain(self.st, res.r, res.s).coordinates(res.table)
            sparse.axpy(out, _embed(self.co_offsets, (res.r, res.s), coords))
        return out

    def cap_total(self, y: dict, n: int, x: dict, m: int) -> dict:
        out = {}
        for (r, s, cy), (r2, s2, cx) in product(list(_pieces(self.ch_offsets, self.ch_dims, n, y)),
                                                  list(_pieces(self.co_offsets, self.co_dims, m, x))):
            if r < r2 or s < s2:
                continue
            beta = Cochain(r2, s2, xbar_cochain(self.st, r2, s2).vector(cx))
            res = cap(self.st, self.st, Chain(r, s, cy), beta)
            sparse.axpy(out, _embed(self.ch_offsets, (res.r, res.s), res.coords))
        return out

    def unit(self) -> dict:
        u = unit_cochain(self.st)
        return _embed(self.co_offsets, (0, 0), xbar_cochain(self.st, 0, 0).coordinates(u.table))

    def cocycles(self, n: int) -> List[dict]:
        return self.cochains.d(n).kernel()

    def coboundaries(self, n: int) -> EchelonBasis:
        return EchelonBasis(self.st.field, self.cochains.incoming(n).columns)

    def cycles(self, n: int) -> List[dict]:
        return self.chains.d(n).kernel()

    def boundaries(self, n: int) -> EchelonBasis:
        return EchelonBasis(self.st.field, self.chains.incoming(n).columns)


def verify_products(st: CleftSetting, n_max: int = 2, with_cup: bool = True, with_cap: bool = True) -> Report:
    """Cup and cap descend to classes, with unit 1_E and (y∗β)∗β′ = y∗(β·β′), in total degrees ≤ n_max."""
    if st.M.dim != st.E.dim:
        raise ValueError("products are checked with M = E")
    report = Report(f"cup and cap on {st.bundle.name}")
    ps = ProductSetting(st, n_max)
    degrees = range(n_max + 1)
    pairs = [(n, m) for n in degrees for m in degrees if n + m <= n_max]
    Z = {n: ps.cocycles(n) for n in degrees}

    def closed():
        for n, m in pairs:
            for (i, z), (j, w) in product(enumerate(Z[n]), enumerate(Z[m])):
                if ps.cochains.d(n + m).apply(ps.cup_total(z, n, w, m)):
                    yield (n, m, i, j)

    def coboundary():
        for n, m in pairs:
            if m == 0:
                continue
            image = ps.coboundaries(n + m)
            d = ps.cochains.d(m - 1)
            for (i, z), j in product(enumerate(Z[n]), range(ps.cochains.dim(m - 1))):
                dy = d.column(j)
                if not image.contains(ps.cup_total(z, n, dy, m)) or not image.contains(ps.cup_total(dy, m, z, n)):
                    yield (n, m, i, j)

    def unit():
        u = ps.unit()
        for n in degrees:
            image = ps.coboundaries(n)
            for i, z in enumerate(Z[n]):
                if not image.contains(sparse.sub(ps.cup_total(z, n, u, 0), z)):
                    yield ("right", n, i)
                if not image.contains(sparse.sub(ps.cup_total(u, 0, z, n), z)):
                    yield ("left", n, i)

    if with_cup:
        report.check("cocycle·cocycle is a cocycle", closed())
        report.check("cocycle·coboundary is a coboundary", coboundary())
        report.check("1_E is a unit for · on classes", unit())
    report.info["cocycles"] = {n: len(Z[n]) for n in degrees}
    if not with_cap:
        return report

    C = {n: ps.cycles(n) for n in degrees}

    def cap_closed():
        for n in degrees:
            for m in range(n + 1):
                for (i, y), (j, z) in product(enumerate(C[n]), enumerate(Z[m])):
                    if ps.chains.d(n - m).apply(ps.cap_total(y, n, z, m)):
                        yield (n, m, i, j)

    def cap_unit():
        u = ps.unit()
        for n in degrees:
            image = ps.boundaries(n)
            for i, y in enumerate(C[n]):
                if not image.contains(sparse.sub(ps.cap_total(y, n, u, 0), y)):
                    yield (n, i)

    def associative():
        for n in degrees:
            for m1, m2 in pairs:
                if m1 + m2 > n:
                    continue
                image = ps.boundaries(n - m1 - m2)
                for y, z1, z2 in product(C[n], Z[m1], Z[m2]):
                    lhs = ps.cap_total(ps.cap_total(y, n, z1, m1), n - m1, z2, m2)
                    rhs = ps.cap_total(y, n, ps.cup_total(z1, m1, z2, m2), m1 + m2)
                    if not image.contains(sparse.sub(lhs, rhs)):
                        yield (n, m1, m2)

    report.check("cycle∗cocycle is a cycle", cap_closed())
    report.check("y∗1_E = y on classes", cap_unit())
    report.check("(y∗β)∗β′ = y∗(β·β′) on classes", associative())
    report.info["cycles"] = {n: len(C[n]) for n in degrees}
    return report
