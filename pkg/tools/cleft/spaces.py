"""Presented spaces of the simplified complexes of a cleft extension E = A ×_ρ^f H.

Homology, on basic tuples:

    X̄_{rs}(M) = H̄^{⊗_{H^L} s} ⊗_{H^L} (M ⊗ Ā^{⊗r} ⊗)    keys (h_1..h_s, m, a_1..a_r)
    X̂_{rs}(M) = M ⊗_A Ẽ^{⊗_A s} ⊗ Ā^{⊗r} ⊗                keys (m, x_1..x_s, a_1..a_r)

Cohomology, as constrained Hom spaces:

    X̄^{rs}(M) = Hom_{(K, K⊗H^L)}(H̄^{⊗_{H^L} s} ⊗_k Ā^{⊗r}, M)
    X̂^{rs}(M) = Hom_{(A,K)}(Ẽ^{⊗_A s} ⊗ Ā^{⊗r}, M)

Powers of Ā (and of Ē in the canonical complexes) are taken over K, and the
closing "⊗" means cyclic K-coinvariants: [λ·m ⊗ x] = [m ⊗ x·λ]. H^L acts on a
block through the right: l·[m ⊗ ā] = [m·γ(S(l)) ⊗ ā].
"""

import logging
from dataclasses import dataclass, field
from hashlib import sha256
from typing import Callable, Dict, List, Sequence

from tools.crossed.bundle import CrossedProductBundle
from tools.crossed.cocycle import is_valued_in
from tools.crossed.measure import StableSubalgebra
from tools.errors import UnsupportedCocycle
from tools.hopf_homology.resolution import BarTail, hbar_slot
from tools.linalg import sparse
from tools.relative.hom import HomSpace
from tools.relative.presented import PresentedSpace, RelationFamily, Slot, balance
from tools.relative.tensor import Bimodule
from tools.weak_hopf.structure import StructureAlgebra

logger = logging.getLogger(__name__)


def parity(F, k: int):
    return F.one if k % 2 == 0 else -F.one


@dataclass
class Coefficients:
    """A K-algebra R (A or E) used through its normalized bar R/K.

    Attributes:
        ring (StructureAlgebra): R.
        images (list): e_x mapped into E, where the coefficient bimodule lives.
        lams (list): a basis of K in R-coordinates.
        lams_E (list): the same basis inside E.
    """

    name: str
    ring: StructureAlgebra
    images: List[dict]
    lams: List[dict]
    lams_E: List[dict]

    def __post_init__(self):
        self.slot = Slot(self.name, self.ring.field, self.ring.dim, self.lams)

    def mul(self, x: dict, y: dict) -> dict:
        return self.ring.mul(x, y)

    def e(self, x: int) -> dict:
        return self.ring.basis_vector(x)


@dataclass
class CleftSetting:
    """A cleft extension with a stable subalgebra K and an E-bimodule M.

    Every complex of the package is built from one setting; spaces and
    memoized tensors are cached on it.
    """

    bundle: CrossedProductBundle
    K: StableSubalgebra
    M: Bimodule
    _cache: Dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.M.base is not self.bundle.E:
            raise ValueError(f"{self.M.name} is not a bimodule over {self.bundle.name}")
        b = self.bundle
        basis = list(self.K.basis)
        self.abar = Coefficients("Ā", b.A, list(b.j_table), basis, [b.j(l) for l in basis])
        lams_E = [b.j(l) for l in basis]
        self.ebar = Coefficients("Ē", b.E, [b.E.basis_vector(i) for i in range(b.dim)], lams_E, lams_E)
        self.etilde = Slot("Ẽ", self.field, b.dim, b.j_table)
        self.m_slot = Slot(self.M.name, self.field, self.M.dim)

    @property
    def field(self):
        return self.bundle.field

    @property
    def H(self):
        return self.bundle.H

    @property
    def A(self):
        return self.bundle.A

    @property
    def E(self) -> StructureAlgebra:
        return self.bundle.E

    @property
    def k_valued(self) -> bool:
        return is_valued_in(self.bundle.pair.f, self.K)

    def require_k_valued(self, what: str):
        if not self.k_valued:
            raise UnsupportedCocycle(
                f"{what} needs a cocycle with values in K; the higher differentials for general f are not available"
            )

    # E-bimodule M on basis indices
    def m_right(self, m: int, x: dict) -> dict:
        return self.M.rmul({m: self.field.one}, x)

    def m_left(self, x: dict, m: int) -> dict:
        return self.M.lmul(x, {m: self.field.one})

    def update_signature(self) -> str:
        def flat(d: dict) -> list:
            return sorted((k, str(v)) for k, v in d.items())

        tables = [flat(d) for side in (self.M.left, self.M.right) for d in side.action.flat]
        payload = self.bundle.update_signature() + repr([flat(x) for x in self.K.basis]) + repr(tables)
        self.signature = sha256(payload.encode("utf-8")).hexdigest()
        return self.signature

    def cached(self, key, build: Callable):
        out = self._cache.get(key)
        if out is None:
            out = self._cache[key] = build()
        return out


def cyclic(name: str, first: int, last: int, first_slot: Slot, last_slot: Slot, scalars: Sequence,
           left_on_first: Callable[[object, int], dict], right_on_last: Callable[[int, object], dict]) -> RelationFamily:
    """t·m ⊗ … ⊗ x − m ⊗ … ⊗ x·t: the closing ⊗ of a cyclic tensor."""

    def generator():
        for t in scalars:
            if first == last:
                for m in first_slot.reps:
                    rel = {}
                    for i, c in left_on_first(t, m).items():
                        sparse.add_term(rel, (i,), c)
                    for i, c in right_on_last(m, t).items():
                        sparse.add_term(rel, (i,), -c)
                    yield rel
                continue
            for m in first_slot.reps:
                tm = left_on_first(t, m)
                for x in last_slot.reps:
                    rel = {}
                    for i, c in tm.items():
                        sparse.add_term(rel, (i, x), c)
                    for j, c in right_on_last(x, t).items():
                        sparse.add_term(rel, (m, j), -c)
                    yield rel

    positions = (first,) if first == last else (first, last)
    return RelationFamily(name, positions, generator)


def ring_chain(st: CleftSetting, R: Coefficients, offset: int, r: int) -> List[RelationFamily]:
    """⊗_K between consecutive R̄ slots at offset..offset+r−1."""
    lam_idx = range(len(R.lams))
    return [
        balance(f"⊗_K {R.name}{i}", offset + i, R.slot, R.slot, lam_idx,
                lambda x, t: R.mul(R.e(x), R.lams[t]), lambda t, y: R.mul(R.lams[t], R.e(y)))
        for i in range(r - 1)
    ]


def block_families(st: CleftSetting, R: Coefficients, r: int, offset: int) -> List[RelationFamily]:
    """Relations of M ⊗ R̄^{⊗r} ⊗ placed with M at ``offset``."""
    lam_idx = range(len(R.lams))
    fams = []
    if r:
        fams.append(balance(f"⊗_K M{R.name}", offset, st.m_slot, R.slot, lam_idx,
                            lambda m, t: st.m_right(m, R.lams_E[t]), lambda t, y: R.mul(R.lams[t], R.e(y))))
        fams.extend(ring_chain(st, R, offset + 1, r))
        fams.append(cyclic("cyclic ⊗", offset, offset + r, st.m_slot, R.slot, lam_idx,
                           lambda t, m: st.m_left(R.lams_E[t], m), lambda x, t: R.mul(R.e(x), R.lams[t])))
    else:
        fams.append(cyclic("cyclic ⊗", offset, offset, st.m_slot, st.m_slot, lam_idx,
                           lambda t, m: st.m_left(R.lams_E[t], m), lambda m, t: st.m_right(m, R.lams_E[t])))
    return fams


def hl_families(st: CleftSetting, s: int, next_slot: Slot = None,
                next_act: Callable[[dict, int], dict] = None) -> List[RelationFamily]:
    """⊗_{H^L} between the s slots of H̄, and between the last one and ``next_slot``."""
    H = st.H
    hbar = hbar_slot(H)
    hl = H.hl_basis
    fams = [
        balance(f"⊗_H^L {k}", k, hbar, hbar, hl,
                lambda x, l: H.mul(H.e(x), l), lambda l, y: H.mul(l, H.e(y)))
        for k in range(s - 1)
    ]
    if s and next_slot is not None:
        fams.append(balance(f"⊗_H^L {s - 1}", s - 1, hbar, next_slot, hl,
                            lambda x, l: H.mul(H.e(x), l), next_act))
    return fams


def hochschild_space(st: CleftSetting, R: Coefficients, r: int) -> PresentedSpace:
    """M ⊗ R̄^{⊗_K r} ⊗."""
    return st.cached(("block", R.name, r), lambda: PresentedSpace(
        f"{st.M.name}⊗{R.name}^{r}⊗", st.field, [st.m_slot] + [R.slot] * r, block_families(st, R, r, 0)))


def xbar(st: CleftSetting, r: int, s: int) -> PresentedSpace:
    """X̄_{rs}(M)."""

    def build():
        H, b = st.H, st.bundle
        if s == 0:
            return hochschild_space(st, st.abar, r)
        slots = [hbar_slot(H)] * s + [st.m_slot] + [st.abar.slot] * r
        fams = hl_families(st, s, st.m_slot, lambda l, m: st.m_right(m, b.gamma(H.S(l))))
        fams.extend(block_families(st, st.abar, r, s))
        sp = PresentedSpace(f"X̄_{r},{s}", st.field, slots, fams)
        logger.debug(f"X̄_{r},{s}({st.M.name}): dim {sp.dim}")
        return sp

    return st.cached(("xbar", r, s), build)


def xhat(st: CleftSetting, r: int, s: int) -> PresentedSpace:
    """X̂_{rs}(M); for s = 0 it is M ⊗ Ā^{⊗r} ⊗ again."""

    def build():
        if s == 0:
            return hochschild_space(st, st.abar, r)
        b, A, E, F = st.bundle, st.A, st.E, st.field
        R = st.abar
        et = st.etilde
        a_idx = range(A.dim)
        lam_idx = range(len(R.lams))
        slots = [st.m_slot] + [et] * s + [R.slot] * r
        fams = [balance("⊗_A M|Ẽ", 0, st.m_slot, et, a_idx,
                        lambda m, a: st.m_right(m, b.j_table[a]), lambda a, y: E.mul(b.j_table[a], E.basis_vector(y)))]
        for k in range(1, s):
            fams.append(balance(f"⊗_A Ẽ{k}", k, et, et, a_idx,
                                lambda x, a: E.mul(E.basis_vector(x), b.j_table[a]),
                                lambda a, y: E.mul(b.j_table[a], E.basis_vector(y))))
        if r:
            fams.append(balance("⊗_K Ẽ|Ā", s, et, R.slot, lam_idx,
                                lambda x, t: E.mul(E.basis_vector(x), R.lams_E[t]), lambda t, y: A.mul(R.lams[t], A.basis_vector(y))))
            fams.extend(ring_chain(st, R, s + 1, r))
            fams.append(cyclic("cyclic ⊗", 0, s + r, st.m_slot, R.slot, lam_idx,
                               lambda t, m: st.m_left(R.lams_E[t], m), lambda x, t: A.mul(A.basis_vector(x), R.lams[t])))
        else:
            fams.append(cyclic("cyclic ⊗", 0, s, st.m_slot, et, lam_idx,
                               lambda t, m: st.m_left(R.lams_E[t], m), lambda x, t: E.mul(E.basis_vector(x), R.lams_E[t])))
        return PresentedSpace(f"X̂_{r},{s}", F, slots, fams)

    return st.cached(("xhat", r, s), build)


def _commutes_with(st: CleftSetting, lam_E: dict) -> Callable[[dict], dict]:
    """op with n = op(n) exactly when λ·n = n·λ."""

    def op(n: dict) -> dict:
        out = dict(n)
        sparse.axpy(out, st.M.lmul(lam_E, n))
        sparse.axpy(out, st.M.rmul(n, lam_E), -1)
        return out

    return op


def _ring_constraints(st: CleftSetting, R: Coefficients, key: tuple, first: int, lams_on_last: Callable):
    """K^e-linearity of β on the R̄ block starting at ``first`` (the block ends the key)."""
    F = st.field
    M = st.M
    one = {key: F.one}
    out = []
    for t, (lam, lam_E) in enumerate(zip(R.lams, R.lams_E)):
        if len(key) > first:
            lhs = {key[:first] + (k,) + key[first + 1:]: c for k, c in R.mul(lam, R.e(key[first])).items()}
            out.append((lhs, one, lambda n, g=lam_E: M.lmul(g, n)))
            out.append((lams_on_last(key, t), one, lambda n, g=lam_E: M.rmul(n, g)))
        else:
            out.append((one, one, _commutes_with(st, lam_E)))
    return out


def hochschild_cochain_space(st: CleftSetting, R: Coefficients, r: int, s: int = 0) -> HomSpace:
    """Hom_{(K, K⊗H^L)}(H̄^{⊗s} ⊗_k R̄^{⊗r}, M); with s = 0 this is Hom_{K^e}(R̄^{⊗r}, M)."""

    def build():
        H, b, F = st.H, st.bundle, st.field
        slots = [hbar_slot(H)] * s + [R.slot] * r
        fams = hl_families(st, s) + ring_chain(st, R, s, r)
        source = PresentedSpace(f"H̄^{s}⊗{R.name}^{r}", F, slots, fams)

        def last_times(key, t):
            return {key[:-1] + (k,): c for k, c in R.mul(R.e(key[-1]), R.lams[t]).items()}

        constraints = []
        for key in source.ambient_keys:
            if s:
                h = key[s - 1]
                for l in H.hl_basis:
                    lhs = {key[:s - 1] + (k,) + key[s:]: c for k, c in H.mul(H.e(h), l).items()}
                    constraints.append((lhs, {key: F.one}, lambda n, g=b.gamma(H.S(l)): st.M.lmul(g, n)))
            constraints.extend(_ring_constraints(st, R, key, s, last_times))
        space = HomSpace(f"X̄^{r},{s}" if R is st.abar else f"Hom(R̄^{r}, {st.M.name})", F, source, st.M.dim, constraints)
        logger.debug(f"{space.name}: dim {space.dim}")
        return space

    return st.cached(("cochain", R.name, r, s), build)


def xbar_cochain(st: CleftSetting, r: int, s: int) -> HomSpace:
    """X̄^{rs}(M)."""
    return hochschild_cochain_space(st, st.abar, r, s)


def xhat_cochain(st: CleftSetting, r: int, s: int) -> HomSpace:
    """X̂^{rs}(M); for s = 0 it is identified with X̄^{r0}(M) = Hom_{K^e}(Ā^{⊗r}, M)."""
    if s == 0:
        return xbar_cochain(st, r, 0)

    def build():
        b, A, E, F = st.bundle, st.A, st.E, st.field
        R, et = st.abar, st.etilde
        fams = []
        for k in range(s - 1):
            fams.append(balance(f"⊗_A Ẽ{k}", k, et, et, range(A.dim),
                                lambda x, a: E.mul(E.basis_vector(x), b.j_table[a]),
                                lambda a, y: E.mul(b.j_table[a], E.basis_vector(y))))
        if r:
            fams.append(balance("⊗_K Ẽ|Ā", s - 1, et, R.slot, range(len(R.lams)),
                                lambda x, t: E.mul(E.basis_vector(x), R.lams_E[t]), lambda t, y: A.mul(R.lams[t], A.basis_vector(y))))
            fams.extend(ring_chain(st, R, s, r))
        source = PresentedSpace(f"Ẽ^{s}⊗Ā^{r}", F, [et] * s + [R.slot] * r, fams)
        constraints = []
        for key in source.ambient_keys:
            for a in range(A.dim):
                lhs = {(k,) + key[1:]: c for k, c in E.mul(b.j_table[a], E.basis_vector(key[0])).items()}
                constraints.append((lhs, {key: F.one}, lambda n, g=b.j_table[a]: st.M.lmul(g, n)))
            for t, lam_E in enumerate(R.lams_E):
                if r:
                    lhs = {key[:-1] + (k,): c for k, c in A.mul(A.basis_vector(key[-1]), R.lams[t]).items()}
                else:
                    lhs = {key[:-1] + (k,): c for k, c in E.mul(E.basis_vector(key[-1]), lam_E).items()}
                constraints.append((lhs, {key: F.one}, lambda n, g=lam_E: st.M.rmul(n, g)))
        return HomSpace(f"X̂^{r},{s}", F, source, st.M.dim, constraints)

    return st.cached(("xhat_cochain", r, s), build)


def coinvariant_tail(st: CleftSetting):
    """M⊗ = M/[M, K] as a BarTail for the H^L-balancing l·[m] = [m·γ(S(l))]."""
    space = hochschild_space(st, st.abar, 0)
    H, b = st.H, st.bundle

    def act(l: dict, t: int) -> dict:
        m = space.lift(t)[0]
        image = {(k,): c for k, c in st.m_right(m, b.gamma(H.S(l))).items()}
        return space.project(image)

    return BarTail(f"{st.M.name}⊗", space.dim, act)
