"""The unitary crossed product E = A ×_ρ^f H and the maps γ, γ⁻¹, j_ν, δ_E attached to it.

E is stored on a basis of im ∇_ρ ⊆ A ⊗ H: the rows of the reduced echelon form
of the columns of ∇_ρ, ordered by pivot. Since every row has coefficient 1 at
its own pivot and 0 at the others, the E-coordinates of an element of im ∇_ρ
are its values at the pivots. Ambient keys are pairs (a, h) of basis indices.
"""

import logging
from itertools import product
from typing import List

import numpy as np

from tools.crossed.cocycle import CocyclePair, evaluate
from tools.crossed.measure import WeakMeasure
from tools.errors import AxiomFailure
from tools.hopf_homology.resolution import hbar_slot, hl_balance
from tools.linalg import sparse
from tools.linalg.echelon import EchelonBasis
from tools.linalg.matrix import ExactMatrix
from tools.relative.presented import PresentedSpace, Slot, balance
from tools.report import Report
from tools.weak_hopf.bialgebra import leg, split_all
from tools.weak_hopf.structure import StructureAlgebra, _first_difference

logger = logging.getLogger(__name__)


class CrossedProductBundle:
    """E = A × H with the structure maps every complex is built from.

    Attributes:
        m (WeakMeasure): the weak measure ρ of H on A.
        pair (CocyclePair): f and its convolution inverse.
        echelon (EchelonBasis): reduced basis of im ∇_ρ over ambient keys (a, h).
        pivots (list): ambient key of each E basis element.
        E (StructureAlgebra): the algebra on the basis of im ∇_ρ.
        gamma_inv_table (list): γ⁻¹(e_h) in E-coordinates, one entry per basis element of H.
    """

    def __init__(self, m: WeakMeasure, pair: CocyclePair, name: str = "E"):
        self.m = m
        self.pair = pair
        self.H = m.H
        self.A = m.A
        self.field = m.field
        self.name = name
        H, A, F = self.H, self.A, self.field
        self._nabla_memo = {}
        self.echelon = EchelonBasis(F, (self.nabla_basis(a, h) for a, h in product(range(A.dim), range(H.dim))))
        self.pivots: List[tuple] = self.echelon.pivots
        self.rows: List[dict] = [self.echelon.rows[p] for p in self.pivots]
        self.dim = len(self.pivots)
        self.E = self._build_algebra()
        self.j_table = [self.to_E(self.nabla({(a, h): c * F.one for h, c in H.one().items()}))
                        for a in range(A.dim)]
        self.gamma_table = [self.to_E(self.nabla({(u, h): c for u, c in A.one().items()}))
                            for h in range(H.dim)]
        self.gamma_inv_table = [self._gamma_inv_formula(h) for h in range(H.dim)]
        logger.info(f"crossed product {name}: dim {self.dim} inside A⊗H of dim {A.dim * H.dim}")

    # ambient A ⊗ H
    def nabla_basis(self, a: int, h: int) -> dict:
        """∇_ρ(e_a ⊗ e_h) = e_a(h⁽¹⁾·1_A) ⊗ h⁽²⁾."""
        out = self._nabla_memo.get((a, h))
        if out is None:
            out = {}
            ea = self.A.basis_vector(a)
            for (x, y), c in self.H.sweedler_basis(h, 2).items():
                left = self.A.mul(ea, self.m.on_one(self.H.e(x)))
                for k, d in left.items():
                    sparse.add_term(out, (k, y), c * d)
            self._nabla_memo[(a, h)] = out
        return out

    def nabla(self, x: dict) -> dict:
        return sparse.apply_linear(x, lambda key: self.nabla_basis(*key))

    def ambient_mul(self, x: dict, y: dict) -> dict:
        """(a⊗h)(b⊗l) = a(h⁽¹⁾·b)f(h⁽²⁾⊗l⁽¹⁾) ⊗ h⁽³⁾l⁽²⁾."""
        A, H, f = self.A, self.H, self.pair.f
        acc = {}
        for (a, h), c in x.items():
            ea = A.basis_vector(a)
            for (b, l), d in y.items():
                for (h1, h2, h3), p in H.sweedler_basis(h, 3).items():
                    left = A.mul(ea, self.m.rho[h1, b])
                    if not left:
                        continue
                    for (l1, l2), q in H.sweedler_basis(l, 2).items():
                        fv = f.get((h2, l1))
                        if not fv:
                            continue
                        a_part = A.mul(left, fv)
                        h_part = H.algebra.mul_basis(h3, l2)
                        coef = c * d * p * q
                        for (k, u), t in sparse.tensor([a_part, h_part], self.field.one).items():
                            sparse.add_term(acc, (k, u), coef * t)
        return acc

    def chi(self, h: dict, a: dict) -> dict:
        """χ_ρ(h ⊗ a) = h⁽¹⁾·a ⊗ h⁽²⁾ in A ⊗ H."""
        acc = {}
        for (x, y), c in self.H.sweedler(h, 2).items():
            for k, d in self.m.act(self.H.e(x), a).items():
                sparse.add_term(acc, (k, y), c * d)
        return acc

    # E coordinates
    def to_E(self, x: dict) -> dict:
        """E-coordinates of an element of im ∇_ρ."""
        return {i: x[p] for i, p in enumerate(self.pivots) if x.get(p)}

    def from_E(self, x: dict) -> dict:
        return sparse.combine((c, self.rows[i]) for i, c in x.items())

    def decompose(self, x: dict) -> dict:
        """Ambient coordinates of x ∈ E, so that x = Σ c j_ν(a)γ(h) over keys (a, h)."""
        return self.from_E(x)

    def in_E(self, x: dict) -> bool:
        return self.echelon.contains(x)

    def _build_algebra(self) -> StructureAlgebra:
        F = self.field
        n = self.dim
        mult = np.empty((n, n, n), dtype=object)
        for i, j in product(range(n), range(n)):
            prod_ij = self.ambient_mul(self.rows[i], self.rows[j])
            if not self.echelon.contains(prod_ij):
                raise AxiomFailure("weak crossed prod (8): A×H is closed under μ_E", (i, j))
            coords = self.to_E(prod_ij)
            for k in range(n):
                mult[i, j, k] = coords.get(k, F.zero)
        unit_ambient = self.nabla({(u, h): c * d for u, c in self.A.one().items() for h, d in self.H.one().items()})
        unit = self.to_E(unit_ambient)
        return StructureAlgebra(F, n, mult, [unit.get(k, F.zero) for k in range(n)], self.name)

    # structure maps
    def mul(self, *xs: dict) -> dict:
        return self.E.prod(*xs)

    def one(self) -> dict:
        return self.E.one()

    def j(self, a: dict) -> dict:
        return sparse.combine((c, self.j_table[i]) for i, c in a.items())

    def gamma(self, h: dict) -> dict:
        return sparse.combine((c, self.gamma_table[i]) for i, c in h.items())

    def gamma_inv(self, h: dict) -> dict:
        return sparse.combine((c, self.gamma_inv_table[i]) for i, c in h.items())

    def _gamma_inv_formula(self, h: int) -> dict:
        """γ⁻¹(h) = j_ν(f⁻¹(S(h⁽²⁾)⊗h⁽³⁾))γ(S(h⁽¹⁾))."""
        H = self.H
        acc = {}
        for (h1, h2, h3), c in H.sweedler_basis(h, 3).items():
            a = evaluate(self.pair.f_inv, H.S(H.e(h2)), H.e(h3))
            if a:
                sparse.axpy(acc, self.E.mul(self.j(a), self.gamma(H.S(H.e(h1)))), c)
        return acc

    def gamma_times(self, hs: tuple) -> dict:
        """γ(h_1)⋯γ(h_s) for a tuple of basis indices."""
        return self.E.prod(*(self.gamma_table[h] for h in hs))

    def gamma_times_inv(self, hs: tuple) -> dict:
        """γ⁻¹(h_s)⋯γ⁻¹(h_1)."""
        return self.E.prod(*(self.gamma_inv_table[h] for h in reversed(hs)))

    def delta_E(self, x: dict) -> dict:
        """δ_E(Σ a_i ⊗ h_i) = Σ ∇_ρ(a_i ⊗ h_i⁽¹⁾) ⊗ h_i⁽²⁾, keyed by (E index, H index)."""
        acc = {}
        for (a, h), c in self.from_E(x).items():
            for (h1, h2), d in self.H.sweedler_basis(h, 2).items():
                for e, t in self.to_E(self.nabla_basis(a, h1)).items():
                    sparse.add_term(acc, (e, h2), c * d * t)
        return acc

    # matrices
    def j_nu_matrix(self) -> ExactMatrix:
        return ExactMatrix.from_columns(self.field, self.dim, self.j_table)

    def gamma_matrix(self) -> ExactMatrix:
        return ExactMatrix.from_columns(self.field, self.dim, self.gamma_table)

    def gamma_inv_matrix(self) -> ExactMatrix:
        return ExactMatrix.from_columns(self.field, self.dim, self.gamma_inv_table)

    def nabla_matrix(self) -> ExactMatrix:
        """∇_ρ on A ⊗ H, with e_a ⊗ e_h at flat index a·dim H + h."""
        dh = self.H.dim
        cols = [{a2 * dh + h2: c for (a2, h2), c in self.nabla_basis(a, h).items()}
                for a, h in product(range(self.A.dim), range(dh))]
        return ExactMatrix.from_columns(self.field, self.A.dim * dh, cols)

    def chi_matrix(self) -> ExactMatrix:
        """χ_ρ: H ⊗ A → A ⊗ H, with e_h ⊗ e_a at flat index h·dim A + a."""
        dh, da = self.H.dim, self.A.dim
        cols = [{a2 * dh + h2: c for (a2, h2), c in self.chi(self.H.e(h), self.A.basis_vector(a)).items()}
                for h, a in product(range(dh), range(da))]
        return ExactMatrix.from_columns(self.field, da * dh, cols)

    def delta_E_matrix(self) -> ExactMatrix:
        """δ_E: E → E ⊗ H, with e_i ⊗ e_h at flat index i·dim H + h."""
        dh = self.H.dim
        cols = [{e * dh + h: c for (e, h), c in self.delta_E({i: self.field.one}).items()} for i in range(self.dim)]
        return ExactMatrix.from_columns(self.field, self.dim * dh, cols)

    def update_signature(self) -> str:
        self.signature = self.m.update_signature() + self.E.update_signature()
        return self.signature

    def __repr__(self):
        return f"CrossedProductBundle({self.A.name} × {self.H.name}, dim={self.dim})"


def _e_tensor_h(E: StructureAlgebra, x: dict, y: dict, H) -> dict:
    """Product in E ⊗ H of two dicts keyed by (E index, H index)."""
    acc = {}
    for (e1, h1), c in x.items():
        for (e2, h2), d in y.items():
            for (e, h), t in sparse.tensor([E.mul_basis(e1, e2), H.algebra.mul_basis(h1, h2)], E.field.one).items():
                sparse.add_term(acc, (e, h), c * d * t)
    return acc


def build_checks(b: CrossedProductBundle) -> Report:
    """The identities ``build_crossed_product`` asserts before returning."""
    report = Report(f"crossed product {b.name}")
    H, A, E, F = b.H, b.A, b.E, b.field
    dh, da = range(H.dim), range(A.dim)

    def nabla_idempotent():
        for a, h in product(da, dh):
            once = b.nabla_basis(a, h)
            if b.nabla(once) != once:
                yield (a, h)

    report.check("∇_ρ is idempotent", nabla_idempotent())
    E.verify(report)
    report.checks[-2].name = "weak crossed prod (8): μ_E associative"
    report.checks[-1].name = "weak crossed prod (8): 1_A×1 is a unit"

    def j_algebra_map():
        if b.j(A.one()) != E.one():
            yield ("unit",)
        for a, c in product(da, da):
            if b.j(A.mul_basis(a, c)) != E.mul(b.j_table[a], b.j_table[c]):
                yield (a, c)

    report.check("weak crossed prod (9): j_ν multiplicative and unitary", j_algebra_map())

    def a_linear():
        for i, a in product(range(b.dim), da):
            ea = A.basis_vector(a)
            x = b.rows[i]
            left = {}
            for (u, h), c in x.items():
                for k, d in A.mul(ea, A.basis_vector(u)).items():
                    sparse.add_term(left, (k, h), c * d)
            right = {}
            for (u, h), c in x.items():
                for (h1, h2), d in H.sweedler_basis(h, 2).items():
                    for k, t in A.mul(A.basis_vector(u), b.m.rho[h1, a]).items():
                        sparse.add_term(right, (k, h2), c * d * t)
            if b.from_E(E.mul(b.j_table[a], {i: F.one})) != left or b.from_E(E.mul({i: F.one}, b.j_table[a])) != right:
                yield (a, i)

    report.check("weak crossed prod (10): j_ν(a)x = a·x and xj_ν(a) = x·a", a_linear())

    def chi_and_F():
        for h, a in product(dh, da):
            if b.from_E(E.mul(b.gamma_table[h], b.j_table[a])) != b.chi(H.e(h), A.basis_vector(a)):
                yield ("χ", h, a)
        for h, l in product(dh, dh):
            ff = {}
            for (h1, h2), c in H.sweedler_basis(h, 2).items():
                for (l1, l2), d in H.sweedler_basis(l, 2).items():
                    fv = b.pair.f.get((h1, l1))
                    if fv:
                        prod_hl = H.algebra.mul_basis(h2, l2)
                        for key, t in sparse.tensor([fv, prod_hl], F.one).items():
                            sparse.add_term(ff, key, c * d * t)
            if b.from_E(E.mul(b.gamma_table[h], b.gamma_table[l])) != ff:
                yield ("F_f", h, l)

    report.check("weak crossed prod (11): χ_ρ(h⊗a) = γ(h)j_ν(a), F_f(h⊗l) = γ(h)γ(l)", chi_and_F())

    def equacion1():
        for a, h in product(da, dh):
            if b.to_E(b.nabla_basis(a, h)) != E.mul(b.j_table[a], b.gamma_table[h]):
                yield (a, h)

    report.check("equacion1: a×h = j_ν(a)γ(h)", equacion1())
    cleft_checks(b, report)
    logger.info(f"crossed product {b.name}: build checks passed={report.passed}")
    return report


def cleft_checks(b: CrossedProductBundle, report: Report) -> Report:
    """γ⁻¹ is a convolution inverse of γ and transforms under δ_E through S."""
    H, E = b.H, b.E

    def convolution_identity(left_first: bool):
        for h in range(H.dim):
            acc = {}
            for (x, y), c in H.sweedler_basis(h, 2).items():
                if left_first:
                    sparse.axpy(acc, E.mul(b.gamma_table[x], b.gamma_inv_table[y]), c)
                else:
                    sparse.axpy(acc, E.mul(b.gamma_inv_table[x], b.gamma_table[y]), c)
            proj = H.pi_L(H.e(h)) if left_first else H.pi_R(H.e(h))
            if acc != b.gamma(proj):
                yield (h,)

    report.check("inv implica cleft: γ*γ⁻¹ = γ∘Π^L", convolution_identity(True))
    report.check("inv implica cleft: γ⁻¹*γ = γ∘Π^R", convolution_identity(False))

    def coaction_on_inverse():
        for h in range(H.dim):
            rhs = {}
            for (x, y), c in H.sweedler_basis(h, 2).items():
                for e, d in b.gamma_inv_table[y].items():
                    for s, t in H.S(H.e(x)).items():
                        sparse.add_term(rhs, (e, s), c * d * t)
            if b.delta_E(b.gamma_inv_table[h]) != rhs:
                yield (h,)

    report.check("coaccion sobre gamma^-1: δ_E(γ⁻¹(h)) = γ⁻¹(h⁽²⁾)⊗S(h⁽¹⁾)", coaction_on_inverse())
    return report


def build_crossed_product(m: WeakMeasure, pair: CocyclePair, strict: bool = True) -> CrossedProductBundle:
    """Build E = A ×_ρ^f H.

    Raises ``AxiomFailure`` naming the first failed identity when ``strict``.
    The caller is expected to have checked ``verify_crossed_hypotheses``.
    """
    bundle = CrossedProductBundle(m, pair)
    if strict:
        build_checks(bundle).raise_on_failure()
    return bundle


def verify_cleft_identities(b: CrossedProductBundle, s_max: int = 3) -> Report:
    """Evaluate the identities relating j_ν, γ, γ⁻¹, f and δ_E on all basis tuples.

    The identities on tensor powers run over 1 ≤ s ≤ s_max.
    """
    report = Report(f"cleft identities {b.name}")
    H, A, E, F = b.H, b.A, b.E, b.field
    dh, da = range(H.dim), range(A.dim)
    e, j, g, ginv = H.e, b.j, b.gamma, b.gamma_inv
    ea = A.basis_vector
    one_pairs = H.unit_coproduct()
    special = H.hl_basis + H.hr_basis

    def gama_iota():
        for h, a in product(dh, da):
            rhs = sparse.combine((c, E.mul(j(b.m.rho[x, a]), g(e(y)))) for (x, y), c in H.sweedler_basis(h, 2).items())
            if E.mul(g(e(h)), j(ea(a))) != rhs:
                yield (h, a)

    def gama_gama():
        for h, l in product(dh, dh):
            rhs = {}
            for (h1, h2), c in H.sweedler_basis(h, 2).items():
                for (l1, l2), d in H.sweedler_basis(l, 2).items():
                    fv = b.pair.f.get((h1, l1))
                    if fv:
                        sparse.axpy(rhs, E.mul(j(fv), g(H.algebra.mul_basis(h2, l2))), c * d)
            if E.mul(g(e(h)), g(e(l))) != rhs:
                yield (h, l)

    report.check("gama iota y gama gama: γ(h)j_ν(a) = j_ν(h⁽¹⁾·a)γ(h⁽²⁾)", gama_iota())
    report.check("gama iota y gama gama: γ(h)γ(l) = j_ν(f(h⁽¹⁾⊗l⁽¹⁾))γ(h⁽²⁾l⁽²⁾)", gama_gama())

    def fundamental():
        for h, li, k in product(dh, range(len(special)), dh):
            l = special[li]
            lhs = evaluate(b.pair.f, H.mul(e(h), l), e(k))
            rhs = evaluate(b.pair.f, e(h), H.mul(l, e(k)))
            if lhs != rhs:
                yield (h, li, k)

    report.check("fundamental': f(hl⊗m) = f(h⊗lm) for l ∈ H^L ∪ H^R", fundamental())

    def auxiliar4_5():
        for h, l in product(dh, dh):
            acc = {}
            for (x, y), c in one_pairs.items():
                left = g(H.mul(e(h), H.S(e(x))))
                right = g(H.mul(e(y), e(l)))
                sparse.axpy(acc, E.mul(left, right), c)
            if acc != E.mul(g(e(h)), g(e(l))):
                yield (h, l)

    report.check("auxiliar4''''': γ(hS(1⁽¹⁾))γ(1⁽²⁾l) = γ(h)γ(l)", auxiliar4_5())

    def auxiliar3():
        for a, h, c2, l in product(da, dh, da, dh):
            acc = {}
            for (x, y), c in one_pairs.items():
                term = b.mul(j(ea(a)), g(H.mul(e(h), e(x))), j(ea(c2)), g(H.mul(H.S(e(y)), e(l))))
                sparse.axpy(acc, term, c)
            if acc != b.mul(j(ea(a)), g(e(h)), j(ea(c2)), g(e(l))):
                yield (a, h, c2, l)

    report.check("auxiliar3: j_ν(a)γ(h1⁽¹⁾)j_ν(b)γ(S(1⁽²⁾)l) = j_ν(a)γ(h)j_ν(b)γ(l)", auxiliar3())

    def auxiliar4_3():
        for h, li in product(dh, range(len(special))):
            l = special[li]
            if E.mul(g(e(h)), g(l)) != g(H.mul(e(h), l)) or E.mul(g(l), g(e(h))) != g(H.mul(l, e(h))):
                yield (h, li)

    report.check("auxiliar4''': γ(h)γ(l) = γ(hl), γ(l)γ(h) = γ(lh) for l ∈ H^L ∪ H^R", auxiliar4_3())

    def auxiliar4_1():
        for li, l in enumerate(H.hl_basis):
            if g(l) != j(b.m.on_one(l)):
                yield (li,)

    def auxiliar4_2():
        for li, a in product(range(len(H.hr_basis)), da):
            l = H.hr_basis[li]
            if E.mul(j(ea(a)), g(l)) != E.mul(g(l), j(ea(a))):
                yield (li, a)

    report.check("auxiliar4 (1): γ(l) = j_ν(l·1_A) for l ∈ H^L", auxiliar4_1())
    report.check("auxiliar4 (2): j_ν(a)γ(l) = γ(l)j_ν(a) for l ∈ H^R", auxiliar4_2())

    def with_second_leg(x: dict, h: int) -> dict:
        """x·γ(h⁽¹⁾) ⊗ h⁽²⁾, for x ∈ E."""
        acc = {}
        for (h1, h2), c in H.sweedler_basis(h, 2).items():
            for k, d in E.mul(x, g(e(h1))).items():
                sparse.add_term(acc, (k, h2), c * d)
        return acc

    def propiedad4_1():
        for a, li, a2, h in product(da, range(len(H.hl_basis)), da, dh):
            l = H.hl_basis[li]
            prefix = b.mul(j(ea(a)), g(l), j(ea(a2)))
            if b.delta_E(E.mul(prefix, g(e(h)))) != with_second_leg(prefix, h):
                yield (a, li, a2, h)

    def propiedad4_2():
        for a2, h, a, li in product(da, dh, da, range(len(H.hl_basis))):
            l = H.hl_basis[li]
            suffix = E.mul(j(ea(a)), g(l))
            lhs = b.delta_E(b.mul(j(ea(a2)), g(e(h)), suffix))
            rhs = {}
            for (h1, h2), c in H.sweedler_basis(h, 2).items():
                for k, d in b.mul(j(ea(a2)), g(e(h1)), suffix).items():
                    sparse.add_term(rhs, (k, h2), c * d)
            if lhs != rhs:
                yield (a2, h, a, li)

    def propiedad4_3():
        for a, li in product(da, range(len(H.hl_basis))):
            coaction = b.delta_E(E.mul(j(ea(a)), g(H.hl_basis[li])))
            legs = {}
            for (k, h), c in coaction.items():
                sparse.add_term(legs.setdefault(k, {}), h, c)
            if any(not H.in_HL(v) for v in legs.values()):
                yield (a, li)

    def propiedad4_4():
        for a, h in product(da, dh):
            rhs = sparse.combine(
                (c, E.mul(ginv(e(x)), j(b.m.rho[y, a]))) for (x, y), c in H.sweedler_basis(h, 2).items()
            )
            if E.mul(j(ea(a)), ginv(e(h))) != rhs:
                yield (a, h)

    report.check("propiedad 4 (1): δ_E(j_ν(a)γ(l)j_ν(a')γ(h)) = j_ν(a)γ(l)j_ν(a')γ(h⁽¹⁾)⊗h⁽²⁾", propiedad4_1())
    report.check("propiedad 4 (2): δ_E(j_ν(a')γ(h)j_ν(a)γ(l)) = j_ν(a')γ(h⁽¹⁾)j_ν(a)γ(l)⊗h⁽²⁾", propiedad4_2())
    report.check("propiedad 4 (3): δ_E(j_ν(A)γ(H^L)) ⊆ E⊗H^L", propiedad4_3())
    report.check("propiedad 4 (4): j_ν(a)γ⁻¹(h) = γ⁻¹(h⁽¹⁾)j_ν(h⁽²⁾·a)", propiedad4_4())

    def prop_esp2():
        for h, li in product(dh, range(len(H.hl_basis))):
            l = H.hl_basis[li]
            s_l = g(H.S(l))
            if ginv(H.mul(e(h), l)) != E.mul(s_l, ginv(e(h))) or ginv(H.mul(l, e(h))) != E.mul(ginv(e(h)), s_l):
                yield (h, li)

    report.check("prop esp'': γ⁻¹(hl) = γ(S(l))γ⁻¹(h), γ⁻¹(lh) = γ⁻¹(h)γ(S(l)) for l ∈ H^L", prop_esp2())
    tensor_power_checks(b, report, s_max)
    cleft_checks(b, report)

    def coaccion():
        for a, h in product(da, dh):
            if b.delta_E(E.mul(j(ea(a)), g(e(h)))) != with_second_leg(j(ea(a)), h):
                yield (a, h)

    report.check("calculo de coaccion: δ_E(j_ν(a)γ(h)) = j_ν(a)γ(h⁽¹⁾)⊗h⁽²⁾", coaccion())
    verify_comodule_algebra(b, report)
    logger.info(f"cleft identities {b.name}: passed={report.passed}")
    return report


def tensor_power_checks(b: CrossedProductBundle, report: Report, s_max: int = 3) -> Report:
    """Identities between γ_×, γ_×⁻¹ and γ̃_A compared in E ⊗_A Ẽ^{⊗_A s} and E ⊗_k H̄^{⊗_{H^L} s}, for 1 ≤ s ≤ s_max."""
    H, A, E, F = b.H, b.A, b.E, b.field
    e, g = H.e, b.gamma
    e_slot = Slot("E", F, b.dim)
    etilde = Slot("Ẽ", F, b.dim, b.j_table)
    hbar = hbar_slot(H)

    def etilde_power(s: int) -> PresentedSpace:
        """E ⊗_A Ẽ^{⊗_A s} on keys of E-indices; Ẽ is a right A-module through j_ν."""
        fams = [balance(f"⊗_A {k}", k, e_slot if k == 0 else etilde, etilde, range(A.dim),
                        lambda x, a: E.mul(E.basis_vector(x), b.j_table[a]),
                        lambda a, y: E.mul(b.j_table[a], E.basis_vector(y)))
                for k in range(s)]
        return PresentedSpace(f"E⊗_AẼ^{s}", F, [e_slot] + [etilde] * s, fams)

    def hbar_power(s: int) -> PresentedSpace:
        fams = [hl_balance(H, k, hbar, hbar, lambda l, y: H.mul(l, H.e(y))) for k in range(1, s)]
        return PresentedSpace(f"E⊗H̄^{s}", F, [e_slot] + [hbar] * s, fams)

    def gammas(hs: tuple) -> list:
        return [b.gamma_table[h] for h in hs]

    def prop_esp1(s: int):
        space = etilde_power(s)
        for hs in product(range(H.dim), repeat=s):
            terms = [(b.gamma_times_inv(leg(legs, 0)), gammas(leg(legs, 1)), c) for legs, c in split_all(H, hs, 2)]
            for a in range(A.dim):
                ja = b.j_table[a]
                diff = {}
                for inv, tail, c in terms:
                    sparse.axpy(diff, sparse.tensor([inv] + tail[:-1] + [E.mul(tail[-1], ja)], F.one), c)
                    sparse.axpy(diff, sparse.tensor([E.mul(ja, inv)] + tail, F.one), -c)
                if not space.is_zero(diff):
                    yield hs + (a,)

    def auxiliar5(s: int):
        space = etilde_power(s)
        for hs in product(range(H.dim), repeat=s):
            diff = sparse.tensor([E.one()] + gammas(hs), F.one)
            for legs, c in split_all(H, hs, 3):
                head = E.mul(b.gamma_times(leg(legs, 0)), b.gamma_times_inv(leg(legs, 1)))
                sparse.axpy(diff, sparse.tensor([head] + gammas(leg(legs, 2)), F.one), -c)
            if not space.is_zero(diff):
                yield hs

    def auxiliar6(s: int):
        space = hbar_power(s)
        one_pairs = H.unit_coproduct()
        for zi, z in enumerate(H.hr_basis):
            gz, pz = g(z), H.pibar_R(z)
            for hs in product(range(H.dim), repeat=s):
                diff = {}
                for legs, c in split_all(H, hs, 3):
                    head = b.mul(b.gamma_times_inv(leg(legs, 0)), gz, b.gamma_times(leg(legs, 1)))
                    sparse.axpy(diff, sparse.tensor([head] + [e(h) for h in leg(legs, 2)], F.one), c)
                for (x, y), c in one_pairs.items():
                    factors = [e(h) for h in hs]
                    factors[0] = H.mul(pz, factors[0])
                    factors[-1] = H.mul(factors[-1], e(y))
                    sparse.axpy(diff, sparse.tensor([g(e(x))] + factors, F.one), -c)
                if not space.is_zero(diff):
                    yield (zi,) + hs

    for s in range(1, s_max + 1):
        report.check(f"prop esp': γ_×⁻¹(h⁽¹⁾)⊗_A γ̃_A(h⁽²⁾)·j_ν(a) = j_ν(a)γ_×⁻¹(h⁽¹⁾)⊗_A γ̃_A(h⁽²⁾), s = {s}",
                     prop_esp1(s))
        report.check(f"auxiliar 5: γ_×(h⁽¹⁾)γ_×⁻¹(h⁽²⁾)⊗_A γ̃_A(h⁽³⁾) = 1_E⊗_A γ̃_A(h), s = {s}", auxiliar5(s))
        report.check(f"auxiliar 6: γ_×⁻¹(h⁽¹⁾)γ(z)γ_×(h⁽²⁾)⊗h̄⁽³⁾ = γ(1⁽¹⁾)⊗Π̄^R(z)·h̄·1⁽²⁾ for z ∈ H^R, s = {s}",
                     auxiliar6(s))
    return report


def verify_comodule_algebra(b: CrossedProductBundle, report: Report = None) -> Report:
    """δ_E is a counital coassociative coaction, μ_E is colinear, and the six equivalent unit conditions hold."""
    report = report or Report(f"comodule algebra {b.name}")
    H, E, F = b.H, b.E, b.field
    n = range(b.dim)
    basis = [{i: F.one} for i in n]

    def twice(x: dict) -> dict:
        """(δ_E ⊗ id)δ_E(x), keyed by (E, H, H)."""
        acc = {}
        for (k, h), c in b.delta_E(x).items():
            for (k2, h2), d in b.delta_E({k: F.one}).items():
                sparse.add_term(acc, (k2, h2, h), c * d)
        return acc

    def coassoc():
        for i in n:
            rhs = {}
            for (k, h), c in b.delta_E(basis[i]).items():
                for (x, y), d in H.sweedler_basis(h, 2).items():
                    sparse.add_term(rhs, (k, x, y), c * d)
            if twice(basis[i]) != rhs:
                yield (i,)

    def counit():
        for i in n:
            acc = {}
            for (k, h), c in b.delta_E(basis[i]).items():
                sparse.add_term(acc, k, c * H.eps(H.e(h)))
            if acc != basis[i]:
                yield (i,)

    def colinear():
        for i, k in product(n, n):
            lhs = b.delta_E(E.mul_basis(i, k))
            rhs = _e_tensor_h(E, b.delta_E(basis[i]), b.delta_E(basis[k]), H)
            if lhs != rhs:
                yield (i, k)

    report.check("δ_E coassociative", coassoc())
    report.check("δ_E counital", counit())
    report.check("μ_E is right H-colinear", colinear())

    one = E.one()
    d_one = b.delta_E(one)
    dd_one = twice(one)
    unit_pairs = H.unit_coproduct()

    def times_unit_coproduct(first_left: bool) -> dict:
        acc = {}
        for (k, h), c in d_one.items():
            for (x, y), d in unit_pairs.items():
                prod_h = H.algebra.mul_basis(h, x) if first_left else H.algebra.mul_basis(x, h)
                for u, t in prod_h.items():
                    sparse.add_term(acc, (k, u, y), c * d * t)
        return acc

    def apply_second(x: dict, proj) -> dict:
        acc = {}
        for (k, h), c in x.items():
            for u, d in proj(H.e(h)).items():
                sparse.add_term(acc, (k, u), c * d)
        return acc

    def item(k):
        if k in (1, 2):
            rhs = times_unit_coproduct(k == 1)
            if dd_one != rhs:
                yield _first_difference(dd_one, rhs)
        elif k in (3, 4):
            for i in n:
                proj = H.pibar_R if k == 3 else H.pi_L
                lhs = apply_second(b.delta_E(basis[i]), proj)
                rhs = {}
                for (u, h), c in d_one.items():
                    prod_e = E.mul(basis[i], {u: F.one}) if k == 3 else E.mul({u: F.one}, basis[i])
                    for v, d in prod_e.items():
                        sparse.add_term(rhs, (v, h), c * d)
                if lhs != rhs:
                    yield (i,)
        else:
            proj = H.pibar_R if k == 5 else H.pi_L
            if apply_second(d_one, proj) != d_one:
                yield ("1_E",)

    labels = {
        1: "1_E⁽⁰⁾⊗1_E⁽¹⁾⊗1_E⁽²⁾ = 1_E⁽⁰⁾⊗1_E⁽¹⁾1⁽¹⁾⊗1⁽²⁾",
        2: "1_E⁽⁰⁾⊗1_E⁽¹⁾⊗1_E⁽²⁾ = 1_E⁽⁰⁾⊗1⁽¹⁾1_E⁽¹⁾⊗1⁽²⁾",
        3: "b⁽⁰⁾⊗Π̄^R(b⁽¹⁾) = b1_E⁽⁰⁾⊗1_E⁽¹⁾",
        4: "b⁽⁰⁾⊗Π^L(b⁽¹⁾) = 1_E⁽⁰⁾b⊗1_E⁽¹⁾",
        5: "1_E⁽⁰⁾⊗Π̄^R(1_E⁽¹⁾) = 1_E⁽⁰⁾⊗1_E⁽¹⁾",
        6: "1_E⁽⁰⁾⊗Π^L(1_E⁽¹⁾) = 1_E⁽⁰⁾⊗1_E⁽¹⁾",
    }
    for k, label in labels.items():
        report.check(f"wbialgebras ({k}): {label}", item(k))
    return report
