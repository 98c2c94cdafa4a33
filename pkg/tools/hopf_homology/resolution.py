"""The spaces H̄^{⊗_{H^L} s} ⊗_{H^L} T and the contractible resolution of H^R.

H̄ = H/H^L is an H^L-bimodule by multiplication; consecutive factors are
balanced over H^L. The last factor T (the tail) is a left H-module: H itself
for the resolution, the coefficient module N for the homology complex.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from tools.complexes.graded import GradedComplex, homotopy_check
from tools.errors import IllDefinedMap
from tools.linalg import sparse
from tools.linalg.matrix import ExactMatrix
from tools.relative.presented import PresentedSpace, RelationFamily, Slot, induce_map
from tools.report import Report
from tools.weak_hopf.bialgebra import WeakHopfAlgebra

logger = logging.getLogger(__name__)


@dataclass
class BarTail:
    """A left H-module used as last tensor factor.

    ``act(x, t)`` is x·e_t for x ∈ H (a dict) and t a basis index of the tail.
    """

    name: str
    dim: int
    act: Callable[[dict, int], dict]


def regular_tail(H: WeakHopfAlgebra) -> BarTail:
    return BarTail("H", H.dim, lambda x, t: H.mul(x, H.e(t)))


def hbar_slot(H: WeakHopfAlgebra) -> Slot:
    return Slot("H̄", H.field, H.dim, H.hl_basis)


def hl_balance(H: WeakHopfAlgebra, k: int, left: Slot, right: Slot, right_act: Callable[[dict, int], dict]) -> RelationFamily:
    """x·l ⊗ y − x ⊗ l·y on the slots k, k+1, for l running over a basis of H^L."""

    def generator():
        for l in H.hl_basis:
            for x in left.reps:
                xl = H.mul(H.e(x), l)
                for y in right.reps:
                    rel = {}
                    for i, c in xl.items():
                        sparse.add_term(rel, (i, y), c)
                    for j, c in right_act(l, y).items():
                        sparse.add_term(rel, (x, j), -c)
                    yield rel

    return RelationFamily(f"⊗_H^L {k}", (k, k + 1), generator)


def bar_space(H: WeakHopfAlgebra, s: int, tail: Optional[BarTail] = None, name: str = None,
              extra: List[RelationFamily] = ()) -> PresentedSpace:
    """H̄^{⊗_{H^L} s} ⊗_{H^L} tail (or H̄^{⊗_{H^L} s} alone when tail is None)."""
    F = H.field
    slots = [hbar_slot(H) for _ in range(s)]
    if tail is not None:
        slots.append(Slot(tail.name, F, tail.dim))
    families = []
    for k in range(len(slots) - 1):
        if k + 1 < s:
            act = lambda l, y: H.mul(l, H.e(y))
        else:
            act = tail.act
        families.append(hl_balance(H, k, slots[k], slots[k + 1], act))
    families.extend(extra)
    label = name or (f"H̄^{s}⊗{tail.name}" if tail is not None else f"H̄^{s}")
    return PresentedSpace(label, F, slots, families)


def bar_boundary_formula(H: WeakHopfAlgebra, s: int, tail_act: Callable[[dict, int], dict], trailing: int = 0):
    """d_s(h̄_1 ⊗ … ⊗ h̄_s ⊗ t) on basic tuples.

    d_s = \\overline{Π̄^R(h_1)h_2} ⊗ h̄_{3s} ⊗ t + Σ_i (−1)^i (… ⊗ \\overline{h_ih_{i+1}} ⊗ …) ⊗ t
    + (−1)^s h̄_{1,s−1} ⊗ h_s·t; for s = 1 the first term is Π̄^R(h_1)·t.
    ``trailing`` extra slots after the tail are carried along unchanged.
    """
    F = H.field

    def formula(key: tuple) -> dict:
        hs = key[:s]
        t = key[s]
        rest = key[s + 1:s + 1 + trailing]
        out = {}
        first = H.pibar_R(H.e(hs[0]))
        if s == 1:
            for j, c in tail_act(first, t).items():
                sparse.add_term(out, (j,) + rest, c)
        else:
            for j, c in H.mul(first, H.e(hs[1])).items():
                sparse.add_term(out, (j,) + hs[2:] + (t,) + rest, c)
        for i in range(1, s):
            sign = F.one if i % 2 == 0 else -F.one
            for j, c in H.algebra.mul_basis(hs[i - 1], hs[i]).items():
                sparse.add_term(out, hs[:i - 1] + (j,) + hs[i + 1:] + (t,) + rest, sign * c)
        sign = F.one if s % 2 == 0 else -F.one
        for j, c in tail_act(H.e(hs[-1]), t).items():
            sparse.add_term(out, hs[:-1] + (j,) + rest, sign * c)
        return out

    return formula


def hr_coordinates(H: WeakHopfAlgebra, x: dict) -> dict:
    """Coordinates of x ∈ H^R on ``hr_basis`` (values at the pivots)."""
    return {i: x[p] for i, p in enumerate(H.hr.pivots) if x.get(p)}


def hl_coordinates(H: WeakHopfAlgebra, x: dict) -> dict:
    return {i: x[p] for i, p in enumerate(H.hl.pivots) if x.get(p)}


@dataclass
class Resolution:
    """H^R ← H ← H̄⊗_{H^L}H ← H̄^2⊗_{H^L}H ← …, with H^R in degree −1.

    Attributes:
        s_max (int): top degree in which the contraction is checked.
        complex (GradedComplex): degrees −1..s_max + 1.
        spaces (dict): s → presented space, for 0 ≤ s ≤ s_max + 1.
        contraction (dict): n → matrix of ħ from degree n to n + 1, for n ≤ s_max.
    """

    H: WeakHopfAlgebra
    s_max: int
    complex: GradedComplex
    spaces: Dict[int, PresentedSpace]
    contraction: Dict[int, ExactMatrix] = field(default_factory=dict)

    def verify(self) -> Report:
        c = self.complex
        F = c.field
        report = Report(f"resolution of {self.H.name}")
        ident = {n: ExactMatrix.identity(F, c.dim(n)) for n in c.degrees}
        zero = {n: ExactMatrix.zeros(F, c.dim(n), c.dim(n)) for n in c.degrees}
        report.add("res hom: ħ∘d' + d'∘ħ = id in degrees −1, 0",
                   homotopy_check(ident, zero, self.contraction, c, c, [-1, 0]))
        if self.s_max >= 1:
            report.add(f"res hom: ħ∘d' + d'∘ħ = id in degrees 1..{self.s_max}",
                       homotopy_check(ident, zero, self.contraction, c, c, range(1, self.s_max + 1)))
        return report


def build_resolution(H: WeakHopfAlgebra, s_max: int) -> Resolution:
    """The complex of right H-modules contracted by ħ_0(h) = h and ħ_{s+1} = (−1)^{s+1} h̄_{1,s+1} ⊗ 1.

    Spaces and d' are built through degree s_max + 1 so that ħ is defined and
    checked in every degree up to s_max.
    Raises ``IllDefinedMap`` if some d'_s or ħ_s does not descend to the quotients.
    """
    F = H.field
    tail = regular_tail(H)
    top = s_max + 1
    spaces = {s: bar_space(H, s, tail) for s in range(top + 1)}
    dims = {-1: H.hr.rank}
    dims.update({s: sp.dim for s, sp in spaces.items()})
    diffs = {0: ExactMatrix.from_columns(F, H.hr.rank, [hr_coordinates(H, H.pi_R(H.e(h))) for h in range(H.dim)])}
    for s in range(1, top + 1):
        m = induce_map(bar_boundary_formula(H, s, tail.act), spaces[s], spaces[s - 1])
        if not m:
            raise IllDefinedMap(m, f"d'_{s}")
        diffs[s] = m
    complex_ = GradedComplex(F, dims, diffs, -1, f"resolution({H.name})")

    one = H.one()
    contraction = {-1: ExactMatrix.from_columns(F, H.dim, H.hr_basis)}
    for s in range(0, top):
        sign = F.one if (s + 1) % 2 == 0 else -F.one

        def hbar(key, sign=sign):
            return {key + (u,): sign * c for u, c in one.items()}

        m = induce_map(hbar, spaces[s], spaces[s + 1])
        if not m:
            raise IllDefinedMap(m, f"ħ_{s + 1}")
        contraction[s] = m
    logger.info(f"resolution of {H.name}: dims {[dims[n] for n in sorted(dims)]}")
    return Resolution(H, s_max, complex_, spaces, contraction)
