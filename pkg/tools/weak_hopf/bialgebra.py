"""Weak bialgebras and weak Hopf algebras: axioms, projections and the subalgebras H^L, H^R."""

import logging
from itertools import product
from typing import Dict, List, Sequence

from tools.errors import DimensionMismatch
from tools.linalg import sparse
from tools.linalg.echelon import EchelonBasis
from tools.linalg.matrix import ExactMatrix
from tools.linalg.scalars import Field
from tools.report import Report
from tools.weak_hopf.structure import StructureAlgebra, StructureCoalgebra, _first_difference

logger = logging.getLogger(__name__)


class WeakBialgebra:
    """An algebra and a coalgebra structure on the same space.

    Attributes:
        algebra (StructureAlgebra): product and unit.
        coalgebra (StructureCoalgebra): coproduct and counit.
    """

    def __init__(self, algebra: StructureAlgebra, coalgebra: StructureCoalgebra, name: str = "H"):
        if algebra.dim != coalgebra.dim:
            raise DimensionMismatch(
                f"algebra has dimension {algebra.dim} but coalgebra has dimension {coalgebra.dim}"
            )
        if algebra.field != coalgebra.field:
            raise DimensionMismatch("algebra and coalgebra are defined over different fields")
        self.algebra = algebra
        self.coalgebra = coalgebra
        self.field: Field = algebra.field
        self.dim = algebra.dim
        self.name = name

    # algebra
    def one(self) -> dict:
        return self.algebra.one()

    def e(self, i: int) -> dict:
        return {i: self.field.one}

    def mul(self, x: dict, y: dict) -> dict:
        return self.algebra.mul(x, y)

    def prod(self, *xs) -> dict:
        return self.algebra.prod(*xs)

    # coalgebra
    def delta(self, x: dict) -> dict:
        return self.coalgebra.delta(x)

    def eps(self, x: dict):
        return self.coalgebra.epsilon(x)

    def sweedler(self, x: dict, n: int) -> dict:
        return self.coalgebra.iterated(x, n)

    def sweedler_basis(self, i: int, n: int) -> dict:
        return self.coalgebra.iterated_basis(i, n)

    def tensor_mul(self, x: dict, y: dict) -> dict:
        """Componentwise product in H^{⊗n} of two dicts over n-tuples."""
        acc = {}
        for kx, a in x.items():
            for ky, b in y.items():
                ab = a * b
                if not ab:
                    continue
                factors = [self.algebra.mul_basis(i, j) for i, j in zip(kx, ky)]
                sparse.axpy(acc, sparse.tensor(factors, self.field.one), ab)
        return acc

    def unit_coproduct(self) -> dict:
        return self.delta(self.one())

    def is_genuinely_weak(self) -> bool:
        one = self.one()
        return self.unit_coproduct() != sparse.tensor([one, one], self.field.one)

    def update_signature(self) -> str:
        return self.algebra.update_signature() + self.coalgebra.update_signature()


def split_all(H: WeakBialgebra, hs: Sequence[int], n: int) -> List[tuple]:
    """Δ^(n) of every h_i: pairs (legs, c) where legs[i] holds the n legs of h_i."""
    terms = [((), H.field.one)]
    for h in hs:
        terms = [(legs + (parts,), c * d)
                 for legs, c in terms
                 for parts, d in H.sweedler_basis(h, n).items()]
    return terms


def leg(legs: tuple, k: int) -> tuple:
    return tuple(p[k] for p in legs)


def verify_weak_bialgebra(H: WeakBialgebra) -> Report:
    """Check every weak bialgebra axiom on all basis tuples.

    The report lists associativity, unit, coassociativity, counit,
    multiplicativity of the coproduct, both equalities of "propiedad de 1" and
    both equalities of "propiedad de epsilon", each with a 0-based witness on
    failure, and records whether Δ(1) ≠ 1⊗1.
    """
    if H.algebra.dim != H.coalgebra.dim:
        raise DimensionMismatch("algebra and coalgebra dimensions differ")
    report = Report(f"weak bialgebra {H.name}")
    H.algebra.verify(report)
    H.coalgebra.verify(report)
    d = range(H.dim)
    F = H.field

    def multiplicative():
        for i, j in product(d, d):
            if H.delta(H.mul(H.e(i), H.e(j))) != H.tensor_mul(H.delta(H.e(i)), H.delta(H.e(j))):
                yield (i, j)

    report.check("multiplicativity of the coproduct", multiplicative())

    one = H.one()
    d1 = H.unit_coproduct()
    d2 = H.sweedler(one, 3)
    left_pad = _pad_tensor(d1, one, right=True)
    right_pad = _pad_tensor(d1, one, right=False)
    first = H.tensor_mul(left_pad, right_pad)
    second = H.tensor_mul(right_pad, left_pad)
    report.add("propiedad de 1 [Δ²(1) = 1⁽¹⁾⊗1⁽²⁾1⁽¹'⁾⊗1⁽²'⁾]", d2 == first, _first_difference(d2, first) if d2 != first else None)
    report.add("propiedad de 1 [Δ²(1) = 1⁽¹⁾⊗1⁽¹'⁾1⁽²⁾⊗1⁽²'⁾]", d2 == second, _first_difference(d2, second) if d2 != second else None)

    def eps_property(second_form: bool):
        for i, j, k in product(d, d, d):
            lhs = H.eps(H.prod(H.e(i), H.e(j), H.e(k)))
            rhs = F.zero
            for (a, b), c in H.coalgebra.coproduct_basis(j).items():
                if second_form:
                    a, b = b, a
                rhs = rhs + c * H.eps(H.mul(H.e(i), H.e(a))) * H.eps(H.mul(H.e(b), H.e(k)))
            if lhs != rhs:
                yield (i, j, k)

    report.check("propiedad de epsilon [ε(hlm) = ε(hl⁽¹⁾)ε(l⁽²⁾m)]", eps_property(False))
    report.check("propiedad de epsilon [ε(hlm) = ε(hl⁽²⁾)ε(l⁽¹⁾m)]", eps_property(True))
    report.info["genuinely weak"] = H.is_genuinely_weak()
    logger.info(f"verified weak bialgebra {H.name}: passed={report.passed}")
    return report


def _pad_tensor(x: dict, one: dict, right: bool) -> dict:
    """x ⊗ 1 (right=True) or 1 ⊗ x for x a dict over pairs."""
    out = {}
    for k, c in x.items():
        for u, d in one.items():
            sparse.add_term(out, k + (u,) if right else (u,) + k, c * d)
    return out


def _matrix_of(H: WeakBialgebra, fn) -> ExactMatrix:
    return ExactMatrix.from_columns(H.field, H.dim, [fn(H.e(i)) for i in range(H.dim)])


def projection_maps(H: WeakBialgebra) -> Dict[str, ExactMatrix]:
    """Matrices of Π^L, Π^R, Π̄^L and Π̄^R.

    Π^L(h) = ε(1⁽¹⁾h)1⁽²⁾, Π^R(h) = 1⁽¹⁾ε(h1⁽²⁾), Π̄^L(h) = 1⁽¹⁾ε(1⁽²⁾h),
    Π̄^R(h) = ε(h1⁽¹⁾)1⁽²⁾.
    """
    d1 = H.unit_coproduct()

    def pi_l(h):
        return sparse.combine((c * H.eps(H.mul(H.e(a), h)), H.e(b)) for (a, b), c in d1.items())

    def pi_r(h):
        return sparse.combine((c * H.eps(H.mul(h, H.e(b))), H.e(a)) for (a, b), c in d1.items())

    def pibar_l(h):
        return sparse.combine((c * H.eps(H.mul(H.e(b), h)), H.e(a)) for (a, b), c in d1.items())

    def pibar_r(h):
        return sparse.combine((c * H.eps(H.mul(h, H.e(a))), H.e(b)) for (a, b), c in d1.items())

    return {
        "pi_L": _matrix_of(H, pi_l),
        "pi_R": _matrix_of(H, pi_r),
        "pibar_L": _matrix_of(H, pibar_l),
        "pibar_R": _matrix_of(H, pibar_r),
    }


class WeakHopfAlgebra(WeakBialgebra):
    """A weak bialgebra with an antipode, its projections and the bases of H^L, H^R.

    Build through ``from_bialgebra``, which runs the axiom suites and raises
    ``AxiomFailure`` on the first violated check unless ``strict`` is False.
    """

    def __init__(self, algebra, coalgebra, antipode: ExactMatrix, name: str = "H"):
        super().__init__(algebra, coalgebra, name)
        if antipode.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"antipode has shape {antipode.shape}, expected {(self.dim, self.dim)}")
        self.antipode = antipode
        self.projections = projection_maps(self)
        self.hl = EchelonBasis(self.field, self.projections["pi_L"].columns)
        self.hr = EchelonBasis(self.field, self.projections["pi_R"].columns)
        self.hl_basis: List[dict] = self.hl.basis()
        self.hr_basis: List[dict] = self.hr.basis()

    @classmethod
    def from_bialgebra(cls, B: WeakBialgebra, antipode: ExactMatrix, strict: bool = True) -> "WeakHopfAlgebra":
        H = cls(B.algebra, B.coalgebra, antipode, B.name)
        if strict:
            verify_weak_bialgebra(H).raise_on_failure()
            verify_antipode(H, antipode).raise_on_failure()
        return H

    def S(self, x: dict) -> dict:
        return self.antipode.apply(x)

    def pi_L(self, x: dict) -> dict:
        return self.projections["pi_L"].apply(x)

    def pi_R(self, x: dict) -> dict:
        return self.projections["pi_R"].apply(x)

    def pibar_L(self, x: dict) -> dict:
        return self.projections["pibar_L"].apply(x)

    def pibar_R(self, x: dict) -> dict:
        return self.projections["pibar_R"].apply(x)

    def in_HL(self, x: dict) -> bool:
        return self.hl.contains(x)

    def is_separable(self) -> bool:
        """True when H = H^L, so H̄ = 0 and every higher complex term vanishes."""
        return self.hl.rank == self.dim

    def update_signature(self) -> str:
        return super().update_signature() + self.antipode.update_signature()

    def __repr__(self):
        return f"WeakHopfAlgebra({self.name}, dim={self.dim}, dim H^L={self.hl.rank}, field={self.field})"


def verify_antipode(H: WeakBialgebra, S: ExactMatrix) -> Report:
    report = Report(f"antipode of {H.name}")
    proj = H.projections if isinstance(H, WeakHopfAlgebra) else projection_maps(H)
    d = range(H.dim)

    def s(x):
        return S.apply(x)

    def axiom(kind):
        for i in d:
            h = H.e(i)
            if kind == "left":
                lhs = sparse.combine((c, H.mul(H.e(a), s(H.e(b)))) for (a, b), c in H.sweedler(h, 2).items())
                rhs = proj["pi_L"].apply(h)
            elif kind == "right":
                lhs = sparse.combine((c, H.mul(s(H.e(a)), H.e(b))) for (a, b), c in H.sweedler(h, 2).items())
                rhs = proj["pi_R"].apply(h)
            else:
                lhs = sparse.combine(
                    (c, H.prod(s(H.e(a)), H.e(b), s(H.e(k)))) for (a, b, k), c in H.sweedler(h, 3).items()
                )
                rhs = s(h)
            if lhs != rhs:
                yield (i,)

    def antimultiplicative():
        for i, j in product(d, d):
            if s(H.mul(H.e(i), H.e(j))) != H.mul(s(H.e(j)), s(H.e(i))):
                yield (i, j)

    def anticomultiplicative():
        for i in d:
            lhs = H.delta(s(H.e(i)))
            rhs = {}
            for (a, b), c in H.sweedler(H.e(i), 2).items():
                sparse.axpy(rhs, sparse.tensor([s(H.e(b)), s(H.e(a))], H.field.one), c)
            if lhs != rhs:
                yield (i,)

    def counit_invariant():
        for i in d:
            if H.eps(s(H.e(i))) != H.eps(H.e(i)):
                yield (i,)

    report.check("antipode: h⁽¹⁾S(h⁽²⁾) = Π^L(h)", axiom("left"))
    report.check("antipode: S(h⁽¹⁾)h⁽²⁾ = Π^R(h)", axiom("right"))
    report.check("antipode: S(h⁽¹⁾)h⁽²⁾S(h⁽³⁾) = S(h)", axiom("triple"))
    report.check("antipode: antimultiplicative", antimultiplicative())
    report.check("antipode: anticomultiplicative", anticomultiplicative())
    report.add("antipode: S(1) = 1", s(H.one()) == H.one())
    report.check("antipode: ε∘S = ε", counit_invariant())
    return report


def verify_structure_identities(H: WeakHopfAlgebra) -> Report:
    """Evaluate the structural identities of a weak Hopf algebra on all basis tuples."""
    report = Report(f"structure identities of {H.name}")
    F = H.field
    d = range(H.dim)
    P = H.projections
    HL, HR = H.hl_basis, H.hr_basis

    for name in ("pi_L", "pi_R", "pibar_L", "pibar_R"):
        report.add(f"{name} idempotent", P[name] @ P[name] == P[name])

    def same_span(vectors, ech: EchelonBasis) -> bool:
        other = EchelonBasis(F, vectors)
        return other.rank == ech.rank and all(ech.contains(v) for v in vectors)

    report.add("im Π̄^R = H^L", same_span(P["pibar_R"].columns, H.hl))
    report.add("im Π̄^L = H^R", same_span(P["pibar_L"].columns, H.hr))

    def unitary_subalgebra(basis, ech):
        if not ech.contains(H.one()):
            yield ("unit",)
        for a, b in product(range(len(basis)), repeat=2):
            if not ech.contains(H.mul(basis[a], basis[b])):
                yield (a, b)

    report.check("conmut1: H^L unitary subalgebra", unitary_subalgebra(HL, H.hl))
    report.check("conmut1: H^R unitary subalgebra", unitary_subalgebra(HR, H.hr))

    def commute():
        for a, b in product(range(len(HL)), range(len(HR))):
            if H.mul(HL[a], HR[b]) != H.mul(HR[b], HL[a]):
                yield (a, b)

    report.check("conmut1: hl = lh for l in H^L, h in H^R", commute())

    def coproduct_side(basis, proj, left):
        for a, l in enumerate(basis):
            dl = H.delta(l)
            if left:
                img = sparse.combine((c, sparse.tensor([proj.apply(H.e(x)), H.e(y)], F.one)) for (x, y), c in dl.items())
            else:
                img = sparse.combine((c, sparse.tensor([H.e(x), proj.apply(H.e(y))], F.one)) for (x, y), c in dl.items())
            if img != dl:
                yield (a,)

    report.check("le h en HR0: Δ(H^L) ⊆ H⊗H^L", coproduct_side(HL, P["pi_L"], left=False))
    report.check("le h en HR0: Δ(H^R) ⊆ H^R⊗H", coproduct_side(HR, P["pi_R"], left=True))

    def le_h(basis, which):
        for a, l in enumerate(basis):
            dl = H.delta(l)
            for i in d:
                h = H.e(i)
                dh = H.delta(h)
                if which == "R1":
                    lhs = H.tensor_mul(dl, dh)
                    rhs = sparse.combine((c, sparse.tensor([H.e(x), H.mul(l, H.e(y))], F.one)) for (x, y), c in dh.items())
                elif which == "R2":
                    lhs = H.tensor_mul(dh, dl)
                    rhs = sparse.combine((c, sparse.tensor([H.e(x), H.mul(H.e(y), l)], F.one)) for (x, y), c in dh.items())
                elif which == "L1":
                    lhs = H.tensor_mul(dh, dl)
                    rhs = sparse.combine((c, sparse.tensor([H.mul(H.e(x), l), H.e(y)], F.one)) for (x, y), c in dh.items())
                else:
                    lhs = H.tensor_mul(dl, dh)
                    rhs = sparse.combine((c, sparse.tensor([H.mul(l, H.e(x)), H.e(y)], F.one)) for (x, y), c in dh.items())
                if lhs != rhs:
                    yield (a, i)

    report.check("le h en HR (1): l⁽¹⁾h⁽¹⁾⊗l⁽²⁾h⁽²⁾ = h⁽¹⁾⊗lh⁽²⁾, l in H^R", le_h(HR, "R1"))
    report.check("le h en HR (1): h⁽¹⁾l⁽¹⁾⊗h⁽²⁾l⁽²⁾ = h⁽¹⁾⊗h⁽²⁾l, l in H^R", le_h(HR, "R2"))
    report.check("le h en HR (2): h⁽¹⁾l⁽¹⁾⊗h⁽²⁾l⁽²⁾ = h⁽¹⁾l⊗h⁽²⁾, l in H^L", le_h(HL, "L1"))
    report.check("le h en HR (2): l⁽¹⁾h⁽¹⁾⊗l⁽²⁾h⁽²⁾ = lh⁽¹⁾⊗h⁽²⁾, l in H^L", le_h(HL, "L2"))

    def buena_def():
        for i, j in product(d, d):
            h, l = H.e(i), H.e(j)
            if H.pibar_R(H.mul(h, l)) != H.pibar_R(H.mul(H.pibar_R(h), l)):
                yield ("first", i, j)
            if H.pi_R(H.mul(h, l)) != H.pi_R(H.mul(H.pibar_R(h), l)):
                yield ("second", i, j)
        for i, a in product(d, range(len(HL))):
            h, m = H.e(i), HL[a]
            if H.pibar_R(H.mul(h, m)) != H.mul(H.pibar_R(h), m):
                yield ("third", i, a)

    report.check("para buena def", buena_def())

    def accion_debil():
        for i, a, k in product(d, range(len(HL)), d):
            h, l, m = H.e(i), HL[a], H.e(k)
            lhs = sparse.combine(
                (c, H.mul(H.pi_L(H.mul(H.e(x), l)), H.pi_L(H.mul(H.e(y), m))))
                for (x, y), c in H.sweedler(h, 2).items()
            )
            if lhs != H.pi_L(H.prod(h, l, m)):
                yield (i, a, k)

    report.check("para ejemplo de accion debil: Π^L(h⁽¹⁾l)Π^L(h⁽²⁾m) = Π^L(hlm)", accion_debil())

    def prop_nec():
        d1 = H.unit_coproduct()
        for i in d:
            h = H.e(i)
            lhs = sparse.combine((c, sparse.tensor([H.pibar_L(H.e(x)), H.e(y)], F.one)) for (x, y), c in H.delta(h).items())
            rhs = sparse.combine((c, sparse.tensor([H.e(x), H.mul(H.e(y), h)], F.one)) for (x, y), c in d1.items())
            if lhs != rhs:
                yield (i,)

    report.check("prop nec: Π̄^L(h⁽¹⁾)⊗h⁽²⁾ = 1⁽¹⁾⊗1⁽²⁾h", prop_nec())
    report.add("S y Pi: Π^L = S∘Π̄^L", H.antipode @ P["pibar_L"] == P["pi_L"])
    report.add("S y Pi: Π^R = S∘Π̄^R", H.antipode @ P["pibar_R"] == P["pi_R"])

    def sweedler_orders():
        for i in d:
            if H.coalgebra.iterated_basis(i, 3) != H.coalgebra.iterated_right_nested(i, 3):
                yield (i,)

    report.check("iterated coproduct independent of association", sweedler_orders())
    report.info["dim H^L"] = H.hl.rank
    report.info["dim H^R"] = H.hr.rank
    return report


def verify_weak_hopf(H: WeakHopfAlgebra) -> Report:
    """All three suites in one report."""
    report = verify_weak_bialgebra(H)
    report.title = f"weak Hopf algebra {H.name}"
    report.extend(verify_antipode(H, H.antipode))
    report.extend(verify_structure_identities(H))
    return report
