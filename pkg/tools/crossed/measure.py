"""Weak measures, weak module algebras and stable subalgebras."""

import logging
from dataclasses import dataclass, field
from hashlib import sha256
from itertools import product
from typing import List, Optional

import numpy as np

from tools.errors import DimensionMismatch, NotStable
from tools.linalg import sparse
from tools.linalg.echelon import EchelonBasis, solve_linear
from tools.linalg.matrix import ExactMatrix
from tools.report import Report
from tools.weak_hopf.bialgebra import WeakHopfAlgebra
from tools.weak_hopf.structure import StructureAlgebra, _first_difference

logger = logging.getLogger(__name__)


class WeakMeasure:
    """ρ: H ⊗ A → A, h ⊗ a ↦ h·a.

    Attributes:
        H (WeakHopfAlgebra): the acting algebra.
        A (StructureAlgebra): the algebra acted on.
        rho (np.ndarray): object array of shape (H.dim, A.dim) holding the sparse dict of e_h·e_a.
    """

    def __init__(self, H: WeakHopfAlgebra, A: StructureAlgebra, rho, name: str = "ρ"):
        if H.field != A.field:
            raise DimensionMismatch("H and A are defined over different fields")
        self.H = H
        self.A = A
        self.field = H.field
        self.name = name
        if isinstance(rho, np.ndarray) and rho.shape == (H.dim, A.dim):
            self.rho = rho
        else:
            self.rho = _action_table(self.field, rho, H.dim, A.dim)
        self._one_memo = {}

    def act_basis(self, h: int, a: int) -> dict:
        return self.rho[h, a]

    def act(self, h: dict, a: dict) -> dict:
        acc = {}
        for i, x in h.items():
            for j, y in a.items():
                sparse.axpy(acc, self.rho[i, j], x * y)
        return acc

    def on_one(self, h: dict) -> dict:
        """h·1_A."""
        acc = {}
        for i, c in h.items():
            v = self._one_memo.get(i)
            if v is None:
                v = self._one_memo[i] = self.act(self.H.e(i), self.A.one())
            sparse.axpy(acc, v, c)
        return acc

    def act_tensor(self, h: dict, key: tuple) -> dict:
        """h·(a_1 ⊗ ... ⊗ a_r) = h⁽¹⁾·a_1 ⊗ ... ⊗ h⁽ʳ⁾·a_r; for r = 0 this is ε(h)."""
        F = self.field
        if not key:
            e = self.H.eps(h)
            return {(): e} if e else {}
        acc = {}
        for hk, c in self.H.sweedler(h, len(key)).items():
            factors = [self.rho[i, a] for i, a in zip(hk, key)]
            sparse.axpy(acc, sparse.tensor(factors, F.one), c)
        return acc

    def update_signature(self) -> str:
        payload = self.H.update_signature() + self.A.update_signature() + repr(
            [sorted((k, str(v)) for k, v in d.items()) for d in self.rho.flat]
        )
        self.signature = sha256(payload.encode("utf-8")).hexdigest()
        return self.signature

    def __repr__(self):
        return f"WeakMeasure({self.H.name} on {self.A.name})"


def _action_table(F, data, h_dim: int, a_dim: int) -> np.ndarray:
    if len(data) != h_dim:
        raise DimensionMismatch(f"rho: expected {h_dim} slices, got {len(data)}")
    table = np.empty((h_dim, a_dim), dtype=object)
    for i in range(h_dim):
        if len(data[i]) != a_dim:
            raise DimensionMismatch(f"rho[{i}]: expected {a_dim} rows")
        for j in range(a_dim):
            row = data[i][j]
            if len(row) != a_dim:
                raise DimensionMismatch(f"rho[{i}][{j}]: expected {a_dim} entries")
            table[i, j] = {k: F(c) for k, c in enumerate(row) if F(c)}
    return table


def verify_weak_measure(m: WeakMeasure, report: Report = None) -> Report:
    report = report or Report(f"weak measure {m.name}")
    H, A = m.H, m.A

    def multiplicative():
        for h, a, b in product(range(H.dim), range(A.dim), range(A.dim)):
            lhs = m.act(H.e(h), A.mul_basis(a, b))
            rhs = sparse.combine(
                (c, A.mul(m.rho[x, a], m.rho[y, b])) for (x, y), c in H.sweedler_basis(h, 2).items()
            )
            if lhs != rhs:
                yield (h, a, b)

    report.check("weak measure: h·(aa') = (h⁽¹⁾·a)(h⁽²⁾·a')", multiplicative())
    return report


def verify_weak_module_algebra(m: WeakMeasure) -> Report:
    """Axioms of a left weak H-module algebra, the full module condition and its consequences."""
    report = Report(f"weak module algebra {m.name}")
    H, A = m.H, m.A
    dh, da = range(H.dim), range(A.dim)

    def unital():
        for a in da:
            if m.act(H.one(), A.basis_vector(a)) != A.basis_vector(a):
                yield (a,)

    report.check("def modulo algebra debil (1): 1·a = a", unital())
    verify_weak_measure(m, report)
    report.checks[-1].name = "def modulo algebra debil (2): h·(aa') = (h⁽¹⁾·a)(h⁽²⁾·a')"

    def on_unit():
        for h, l in product(dh, dh):
            if m.act(H.e(h), m.on_one(H.e(l))) != m.on_one(H.mul(H.e(h), H.e(l))):
                yield (h, l)

    report.check("def modulo algebra debil (3): h·(l·1) = hl·1", on_unit())

    full = full_module_witness(m)
    report.info["full module algebra"] = full is None
    if full is not None:
        report.info["full module algebra witness"] = full[0]

    def consequence(item):
        for h in dh:
            eh = H.e(h)
            h1 = m.on_one(eh)
            if item in (1, 2):
                for a in da:
                    ea = A.basis_vector(a)
                    if item == 1:
                        lhs, rhs = m.act(H.pi_L(eh), ea), A.mul(h1, ea)
                    else:
                        lhs, rhs = m.act(H.pibar_L(eh), ea), A.mul(ea, h1)
                    if lhs != rhs:
                        yield (h, a)
            elif item in (3, 4):
                proj = H.pi_L(eh) if item == 3 else H.pibar_L(eh)
                if m.on_one(proj) != h1:
                    yield (h,)
            else:
                for l in dh:
                    lhs = m.act(eh, m.on_one(H.e(l)))
                    rhs = {}
                    for (x, y), c in H.sweedler_basis(h, 2).items():
                        first, second = (x, y) if item == 5 else (y, x)
                        sparse.axpy(rhs, m.on_one(H.e(first)), c * H.eps(H.mul(H.e(second), H.e(l))))
                    if lhs != rhs:
                        yield (h, l)

    labels = {
        1: "Π^L(h)·a = (h·1)a",
        2: "Π̄^L(h)·a = a(h·1)",
        3: "Π^L(h)·1 = h·1",
        4: "Π̄^L(h)·1 = h·1",
        5: "h·(l·1) = (h⁽¹⁾·1)ε(h⁽²⁾l)",
        6: "h·(l·1) = (h⁽²⁾·1)ε(h⁽¹⁾l)",
    }
    for item, label in labels.items():
        report.check(f"modulo algebra debil ({item}): {label}", consequence(item))
    logger.info(f"weak module algebra {m.name}: passed={report.passed}, full={full is None}")
    return report


@dataclass
class StableSubalgebra:
    """A subalgebra K of A stable under ρ.

    Attributes:
        echelon (EchelonBasis): reduced basis of K inside A.
        basis (list): the echelon rows, used as λ's in every K-balancing relation.
        separable (bool): whether a separability idempotent was found.
        idempotent (dict): the idempotent over pairs of basis positions, when separable.
    """

    A: StructureAlgebra
    echelon: EchelonBasis
    separable: bool = False
    idempotent: Optional[dict] = None
    basis: List[dict] = field(default_factory=list)

    def __post_init__(self):
        self.basis = self.echelon.basis()

    @property
    def dim(self) -> int:
        return self.echelon.rank

    def contains(self, a: dict) -> bool:
        return self.echelon.contains(a)


def _separability_idempotent(A: StructureAlgebra, basis: List[dict]):
    """Solve μ(e) = 1 and λe = eλ for e = Σ c_ab k_a ⊗ k_b in K ⊗ K."""
    F = A.field
    n = len(basis)
    if n == 0:
        return None
    rows = {}

    def row(key):
        r = rows.get(key)
        if r is None:
            r = rows[key] = len(rows)
        return r

    columns = []
    for a, b in product(range(n), range(n)):
        col = {}
        for k, c in A.mul(basis[a], basis[b]).items():
            sparse.add_term(col, row(("mu", k)), c)
        for li, lam in enumerate(basis):
            left = sparse.tensor([A.mul(lam, basis[a]), basis[b]], F.one)
            right = sparse.tensor([basis[a], A.mul(basis[b], lam)], F.one)
            for key, c in sparse.sub(left, right).items():
                sparse.add_term(col, row(("comm", li) + key), c)
        columns.append(col)
    for k in range(A.dim):
        row(("mu", k))
    nrows = len(rows)
    m = ExactMatrix.from_columns(F, nrows, columns)
    rhs = ExactMatrix.from_columns(F, nrows, [{row(("mu", k)): c for k, c in A.one().items()}])
    sol = solve_linear(m, rhs)
    if not sol:
        return None
    values = sol.column(0)
    return {(a, b): values[u] for u, (a, b) in enumerate(product(range(n), range(n))) if u in values}


def stable_subalgebra(m: WeakMeasure, vectors) -> StableSubalgebra:
    """Validate span(vectors) as a ρ-stable subalgebra containing every h·1_A.

    Raises ``NotStable`` naming the violated condition.
    """
    A, H = m.A, m.H
    ech = EchelonBasis(m.field, vectors)
    basis = ech.basis()
    if not ech.contains(A.one()):
        raise NotStable("K does not contain 1_A")
    for a, b in product(range(len(basis)), repeat=2):
        if not ech.contains(A.mul(basis[a], basis[b])):
            raise NotStable(f"K is not a subalgebra: product of basis elements {(a, b)} leaves K")
    for h, a in product(range(H.dim), range(len(basis))):
        if not ech.contains(m.act(H.e(h), basis[a])):
            raise NotStable(f"estable bajo rho: h·λ leaves K at witness {(h, a)}")
    for h in range(H.dim):
        if not ech.contains(m.on_one(H.e(h))):
            raise NotStable(f"incluido: h·1_A is not in K at witness {(h,)}")
    idem = _separability_idempotent(A, basis)
    K = StableSubalgebra(A, ech, idem is not None, idem)
    logger.info(f"stable subalgebra: dim {K.dim}, separable={K.separable}")
    return K


def minimal_stable_subalgebra(m: WeakMeasure) -> StableSubalgebra:
    """K = span{h·1_A : h ∈ H}."""
    vectors = [m.on_one(m.H.e(h)) for h in range(m.H.dim)]
    return stable_subalgebra(m, vectors)


def full_module_witness(m: WeakMeasure):
    """First (h, l, a) with h·(l·a) ≠ hl·a, or None."""
    H, A = m.H, m.A
    for h, l, a in product(range(H.dim), range(H.dim), range(A.dim)):
        lhs = m.act(H.e(h), m.rho[l, a])
        rhs = m.act(H.mul(H.e(h), H.e(l)), A.basis_vector(a))
        if lhs != rhs:
            return (h, l, a), _first_difference(lhs, rhs)
    return None
