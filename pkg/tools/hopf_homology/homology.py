"""Homology and cohomology of a weak Hopf algebra with coefficients.

H_*(H, N) is computed on H̄^{⊗_{H^L} s} ⊗_{H^L} N for a left H-module N, and
H^*(H, N) on Hom_{H^L}(H̄^{⊗_{H^L} s}, N) for a right H-module N. Both come
from the contractible resolution of H^R, and ``tor_complex`` / ``ext_dims``
recompute them through that resolution for cross-checking.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, List

from tools.complexes.graded import GradedComplex, homology_dims
from tools.errors import IllDefinedMap
from tools.linalg import sparse
from tools.relative.hom import HomSpace, induce_hom_map
from tools.relative.presented import PresentedSpace, RelationFamily, Slot, induce_map
from tools.relative.tensor import SidedModule
from tools.report import Report
from tools.hopf_homology.resolution import (
    BarTail,
    bar_boundary_formula,
    bar_space,
    build_resolution,
    hl_coordinates,
    hr_coordinates,
    regular_tail,
)
from tools.weak_hopf.bialgebra import WeakHopfAlgebra

logger = logging.getLogger(__name__)


def module_tail(N: SidedModule) -> BarTail:
    if N.side != "left":
        raise ValueError(f"{N.name}: homology needs a left H-module")
    return BarTail(N.name, N.dim, lambda x, t: N.act(x, {t: N.field.one}))


def trivial_left_module(H: WeakHopfAlgebra) -> SidedModule:
    """H^L with h·l = Π^L(hl); for a Hopf algebra this is k with h·1 = ε(h)."""
    basis = H.hl_basis

    def act(r, v):
        return hl_coordinates(H, H.pi_L(H.mul(H.e(r), basis[v])))

    return SidedModule.from_function(H.field, len(basis), H.algebra, act, "left", "H^L")


def trivial_right_module(H: WeakHopfAlgebra) -> SidedModule:
    """H^R with l·h = Π^R(lh)."""
    basis = H.hr_basis

    def act(r, v):
        return hr_coordinates(H, H.pi_R(H.mul(basis[v], H.e(r))))

    return SidedModule.from_function(H.field, len(basis), H.algebra, act, "right", "H^R")


def regular_module(H: WeakHopfAlgebra, side: str) -> SidedModule:
    if side == "left":
        return SidedModule.from_function(H.field, H.dim, H.algebra, lambda r, v: H.algebra.mul_basis(r, v), side, "H")
    return SidedModule.from_function(H.field, H.dim, H.algebra, lambda r, v: H.algebra.mul_basis(v, r), side, "H")


def verify_trivial_modules(H: WeakHopfAlgebra) -> Report:
    """H^L and H^R are modules, and Π^R is right H-linear onto H^R."""
    report = Report(f"trivial modules of {H.name}")
    trivial_left_module(H).verify(report)
    trivial_right_module(H).verify(report)

    def pi_r_linear():
        for x, h in product(range(H.dim), range(H.dim)):
            lhs = H.pi_R(H.algebra.mul_basis(x, h))
            rhs = H.pi_R(H.mul(H.pi_R(H.e(x)), H.e(h)))
            if lhs != rhs:
                yield (x, h)

    report.check("Π^R(xh) = Π^R(Π^R(x)h)", pi_r_linear())
    return report


def hopf_chain_complex(H: WeakHopfAlgebra, N: SidedModule, n_max: int) -> GradedComplex:
    """N ← H̄⊗_{H^L}N ← H̄^{⊗2}⊗_{H^L}N ← … in degrees 0..n_max + 1."""
    tail = module_tail(N)
    spaces = {s: bar_space(H, s, tail) for s in range(n_max + 2)}
    diffs = {}
    for s in range(1, n_max + 2):
        m = induce_map(bar_boundary_formula(H, s, tail.act), spaces[s], spaces[s - 1])
        if not m:
            raise IllDefinedMap(m, f"d_{s} of the homology complex")
        diffs[s] = m
    return GradedComplex(H.field, {s: sp.dim for s, sp in spaces.items()}, diffs, -1, f"C({H.name}, {N.name})")


def homology_of_H(H: WeakHopfAlgebra, N: SidedModule, n_max: int) -> List[int]:
    return homology_dims(hopf_chain_complex(H, N, n_max), n_max)


def hom_bar_space(H: WeakHopfAlgebra, s: int, N: SidedModule) -> HomSpace:
    """Hom_{H^L}(H̄^{⊗_{H^L} s}, N): β(x·l) = β(x)·l for l ∈ H^L."""
    source = bar_space(H, s)
    constraints = []
    if s:
        for key in source.ambient_keys:
            for l in H.hl_basis:
                lhs = {key[:-1] + (k,): c for k, c in H.mul(H.e(key[-1]), l).items()}
                constraints.append((lhs, {key: H.field.one}, lambda n, l=l: N.act(l, n)))
    return HomSpace(f"Hom_H^L(H̄^{s}, {N.name})", H.field, source, N.dim, constraints)


def cobar_formula(H: WeakHopfAlgebra, s: int, N: SidedModule):
    """d^s(β)(h̄_{1s}) = β(\\overline{Π̄^R(h_1)h_2}⊗h̄_{3s}) + Σ_i (−1)^i β(…h_ih_{i+1}…) + (−1)^s β(h̄_{1,s−1})·h_s.

    For s = 1 the first term is β()·Π̄^R(h_1).
    """
    F = H.field

    def formula(beta, key):
        out = {}
        first = H.pibar_R(H.e(key[0]))
        if s == 1:
            sparse.axpy(out, N.act(first, beta({(): F.one})), F.one)
        else:
            arg = {(j,) + key[2:]: c for j, c in H.mul(first, H.e(key[1])).items()}
            sparse.axpy(out, beta(arg), F.one)
        for i in range(1, s):
            sign = F.one if i % 2 == 0 else -F.one
            arg = {key[:i - 1] + (j,) + key[i + 1:]: c for j, c in H.algebra.mul_basis(key[i - 1], key[i]).items()}
            sparse.axpy(out, beta(arg), sign)
        sign = F.one if s % 2 == 0 else -F.one
        sparse.axpy(out, N.act(H.e(key[-1]), beta({key[:-1]: F.one})), sign)
        return out

    return formula


def hopf_cochain_complex(H: WeakHopfAlgebra, N: SidedModule, n_max: int) -> GradedComplex:
    """N → Hom_{H^L}(H̄, N) → Hom_{H^L}(H̄^{⊗2}, N) → … in degrees 0..n_max + 1."""
    if N.side != "right":
        raise ValueError(f"{N.name}: cohomology needs a right H-module")
    spaces = {s: hom_bar_space(H, s, N) for s in range(n_max + 2)}
    diffs = {}
    for s in range(1, n_max + 2):
        m = induce_hom_map(cobar_formula(H, s, N), spaces[s - 1], spaces[s])
        if not m:
            raise IllDefinedMap(m, f"d^{s} of the cohomology complex")
        diffs[s - 1] = m
    return GradedComplex(H.field, {s: sp.dim for s, sp in spaces.items()}, diffs, +1, f"C^*({H.name}, {N.name})")


def cohomology_of_H(H: WeakHopfAlgebra, N: SidedModule, n_max: int) -> List[int]:
    c = hopf_cochain_complex(H, N, n_max)
    out = [c.homology_dim(n) for n in range(n_max + 1)]
    logger.info(f"H^*({H.name}, {N.name}) = {out}")
    return out


def tor_complex(H: WeakHopfAlgebra, N: SidedModule, n_max: int) -> GradedComplex:
    """(H̄^{⊗s}⊗_{H^L}H) ⊗_H N with d'_s ⊗ id."""
    F = H.field
    tail = regular_tail(H)
    spaces = {}
    for s in range(n_max + 2):
        last = Slot(N.name, F, N.dim)

        def over_h():
            for x, r, n in product(range(H.dim), range(H.dim), range(N.dim)):
                rel = {}
                for k, c in H.algebra.mul_basis(x, r).items():
                    sparse.add_term(rel, (k, n), c)
                for k, c in N.act(H.e(r), {n: F.one}).items():
                    sparse.add_term(rel, (x, k), -c)
                yield rel

        base = bar_space(H, s, tail)
        spaces[s] = PresentedSpace(
            f"H̄^{s}⊗H⊗_H{N.name}", F, list(base.slots) + [last],
            list(base.families) + [RelationFamily("⊗_H", (s, s + 1), over_h)],
        )
    diffs = {}
    for s in range(1, n_max + 2):
        m = induce_map(bar_boundary_formula(H, s, tail.act, trailing=1), spaces[s], spaces[s - 1])
        if not m:
            raise IllDefinedMap(m, f"d'_{s} ⊗ id")
        diffs[s] = m
    return GradedComplex(F, {s: sp.dim for s, sp in spaces.items()}, diffs, -1, f"Tor({H.name}, {N.name})")


def ext_dims(H: WeakHopfAlgebra, N: SidedModule, n_max: int) -> Dict[int, int]:
    """dim Hom_H(H̄^{⊗s}⊗_{H^L}H, N) for s = 0..n_max."""
    tail = regular_tail(H)
    out = {}
    for s in range(n_max + 1):
        source = bar_space(H, s, tail)
        constraints = []
        for key in source.ambient_keys:
            for r in range(H.dim):
                lhs = {key[:-1] + (k,): c for k, c in H.algebra.mul_basis(key[-1], r).items()}
                constraints.append((lhs, {key: H.field.one}, lambda n, r=r: N.act(H.e(r), n)))
        out[s] = HomSpace(f"Hom_H(P_{s}, {N.name})", H.field, source, N.dim, constraints).dim
    return out


@dataclass
class HopfHomologyRun:
    homology: List[int]
    report: Report


def verify_hopf_homology(H: WeakHopfAlgebra, N: SidedModule, n_max: int) -> HopfHomologyRun:
    """Homology of H with coefficients in N, cross-checked against the resolution."""
    report = Report(f"H_*({H.name}, {N.name})")
    res = build_resolution(H, n_max)
    report.extend(res.verify())
    c = hopf_chain_complex(H, N, n_max)
    tor = tor_complex(H, N, n_max)
    dims = homology_dims(c, n_max)
    via_res = homology_dims(tor, n_max)
    report.add("hom: homology agrees with Tor through the resolution", dims == via_res,
               None if dims == via_res else (dims, via_res))
    report.add("hom: H̄^{⊗s}⊗_{H^L}N ≅ (H̄^{⊗s}⊗_{H^L}H)⊗_H N",
               all(c.dim(s) == tor.dim(s) for s in range(n_max + 1)))
    report.table("H_n", dict(enumerate(dims)))
    report.info["chain dims"] = [c.dim(s) for s in range(n_max + 1)]
    return HopfHomologyRun(dims, report)


def verify_hopf_cohomology(H: WeakHopfAlgebra, N: SidedModule, n_max: int) -> HopfHomologyRun:
    report = Report(f"H^*({H.name}, {N.name})")
    c = hopf_cochain_complex(H, N, n_max)
    dims = [c.homology_dim(n) for n in range(n_max + 1)]
    adj = ext_dims(H, N, n_max)
    report.add("cohom: Hom_{H^L}(H̄^{⊗s}, N) ≅ Hom_H(H̄^{⊗s}⊗_{H^L}H, N)",
               all(c.dim(s) == adj[s] for s in range(n_max + 1)),
               None)
    report.table("H^n", dict(enumerate(dims)))
    report.info["cochain dims"] = [c.dim(s) for s in range(n_max + 1)]
    return HopfHomologyRun(dims, report)
