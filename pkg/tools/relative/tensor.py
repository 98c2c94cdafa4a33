"""Modules over structure algebras, balanced tensor products, quotient modules, coinvariants."""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, List, Optional

import numpy as np

from tools.errors import DimensionMismatch, IllDefined, IllDefinedMap
from tools.linalg import sparse
from tools.linalg.echelon import QuotientPresentation, make_quotient
from tools.linalg.scalars import Field
from tools.relative.presented import PresentedSpace, RelationFamily, Slot, induce_map
from tools.report import Report
from tools.weak_hopf.structure import StructureAlgebra

logger = logging.getLogger(__name__)


class SidedModule:
    """A left or right module over a ``StructureAlgebra``.

    Attributes:
        action (np.ndarray): object array of shape (base.dim, dim); entry [r, v]
            is the sparse dict of e_r·v (left) or v·e_r (right).
        side (str): "left" or "right".
    """

    def __init__(self, field: Field, dim: int, base: StructureAlgebra, action, side: str, name: str = "M"):
        if side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        if base.field != field:
            raise DimensionMismatch(f"{name}: base algebra is over {base.field}, module over {field}")
        self.field = field
        self.dim = dim
        self.base = base
        self.side = side
        self.name = name
        self.action = action
        if self.action.shape != (base.dim, dim):
            raise DimensionMismatch(f"{name}: action table has shape {self.action.shape}")

    @classmethod
    def from_function(cls, field: Field, dim: int, base: StructureAlgebra,
                      fn: Callable[[int, int], dict], side: str, name: str = "M") -> "SidedModule":
        table = np.empty((base.dim, dim), dtype=object)
        for r, v in product(range(base.dim), range(dim)):
            table[r, v] = {k: c for k, c in fn(r, v).items() if c}
        return cls(field, dim, base, table, side, name)

    @classmethod
    def from_tensor(cls, field: Field, dim: int, base: StructureAlgebra, data, side: str, name: str = "M"):
        """From nested data with data[r][v][w] the coefficient of e_w in the action of e_r on e_v."""
        if len(data) != base.dim or any(len(row) != dim for row in data):
            raise DimensionMismatch(f"{name}: action tensor must have shape ({base.dim}, {dim}, {dim})")
        return cls.from_function(
            field, dim, base, lambda r, v: {w: field(c) for w, c in enumerate(data[r][v]) if c}, side, name
        )

    def act_basis(self, r: int, v: int) -> dict:
        return self.action[r, v]

    def act(self, r: dict, v: dict) -> dict:
        """e_r·v for a left module, v·e_r for a right one; the base element comes first either way."""
        acc = {}
        for i, a in r.items():
            for j, b in v.items():
                sparse.axpy(acc, self.action[i, j], a * b)
        return acc

    def verify(self, report: Report = None) -> Report:
        report = report or Report(f"{self.side} module {self.name}")
        R = self.base
        one = R.one()

        def assoc():
            for i, j, v in product(range(R.dim), range(R.dim), range(self.dim)):
                ev = {v: self.field.one}
                ei, ej = R.basis_vector(i), R.basis_vector(j)
                if self.side == "left":
                    lhs = self.act(ei, self.act(ej, ev))
                    rhs = self.act(R.mul(ei, ej), ev)
                else:
                    lhs = self.act(ej, self.act(ei, ev))
                    rhs = self.act(R.mul(ei, ej), ev)
                if lhs != rhs:
                    yield (i, j, v)

        def unital():
            for v in range(self.dim):
                ev = {v: self.field.one}
                if self.act(one, ev) != ev:
                    yield (v,)

        report.check(f"{self.name}: {self.side} action associative", assoc())
        report.check(f"{self.name}: {self.side} action unital", unital())
        return report

    def __repr__(self):
        return f"SidedModule({self.name}, {self.side}, dim={self.dim}, over {self.base.name})"


class Bimodule:
    """A bimodule over a ``StructureAlgebra``: compatible left and right actions."""

    def __init__(self, left: SidedModule, right: SidedModule, name: str = "M"):
        if left.dim != right.dim or left.base is not right.base:
            raise DimensionMismatch(f"{name}: left and right actions do not fit together")
        self.left = left
        self.right = right
        self.field = left.field
        self.dim = left.dim
        self.base = left.base
        self.name = name

    @classmethod
    def regular(cls, R: StructureAlgebra, name: str = None) -> "Bimodule":
        name = name or R.name
        left = SidedModule.from_function(R.field, R.dim, R, lambda r, v: R.mul_basis(r, v), "left", name)
        right = SidedModule.from_function(R.field, R.dim, R, lambda r, v: R.mul_basis(v, r), "right", name)
        return cls(left, right, name)

    def lmul(self, r: dict, m: dict) -> dict:
        return self.left.act(r, m)

    def rmul(self, m: dict, r: dict) -> dict:
        return self.right.act(r, m)

    def verify(self, report: Report = None) -> Report:
        report = report or Report(f"bimodule {self.name}")
        self.left.verify(report)
        self.right.verify(report)
        R = self.base

        def compatible():
            for i, v, j in product(range(R.dim), range(self.dim), range(R.dim)):
                ev = {v: self.field.one}
                ei, ej = R.basis_vector(i), R.basis_vector(j)
                if self.rmul(self.lmul(ei, ev), ej) != self.lmul(ei, self.rmul(ev, ej)):
                    yield (i, v, j)

        report.check(f"{self.name}: (rm)r' = r(mr')", compatible())
        return report

    def __repr__(self):
        return f"Bimodule({self.name}, dim={self.dim}, over {self.base.name})"


@dataclass
class RelTensorSpace:
    """V ⊗_R W as a presented space, with whatever outer actions V and W carry."""

    space: PresentedSpace
    left: Optional[SidedModule] = None
    right: Optional[SidedModule] = None

    @property
    def dim(self) -> int:
        return self.space.dim


def _outer(m):
    if isinstance(m, Bimodule):
        return m.left, m.right
    return (m, None) if m.side == "left" else (None, m)


def tensor_over(V, W, name: str = None) -> RelTensorSpace:
    """V ⊗_R W for V a right and W a left R-module (either may be a ``Bimodule``)."""
    v_left, v_right = _outer(V)
    w_left, w_right = _outer(W)
    if v_right is None or w_left is None:
        raise ValueError("tensor_over needs a right module on the left and a left module on the right")
    if v_right.base is not w_left.base and v_right.base.update_signature() != w_left.base.update_signature():
        raise DimensionMismatch(f"{V.name} and {W.name} are modules over different algebras")
    field = v_right.field
    R = v_right.base
    name = name or f"{V.name}⊗_{R.name}{W.name}"

    def balance():
        for v, r, w in product(range(V.dim), range(R.dim), range(W.dim)):
            er = R.basis_vector(r)
            rel = sparse.tensor([v_right.act(er, {v: field.one}), {w: field.one}], field.one)
            sparse.axpy(rel, sparse.tensor([{v: field.one}, w_left.act(er, {w: field.one})], field.one), -field.one)
            yield rel

    space = PresentedSpace(
        name, field,
        [Slot(V.name, field, V.dim), Slot(W.name, field, W.dim)],
        [RelationFamily("balance", (0, 1), balance)],
    )
    out = RelTensorSpace(space)
    if v_left is not None:
        out.left = _induced_action(space, v_left, 0, "left", name)
    if w_right is not None:
        out.right = _induced_action(space, w_right, 1, "right", name)
    logger.info(f"{name}: dim {space.dim} (ambient {V.dim * W.dim})")
    return out


def _induced_action(space: PresentedSpace, module: SidedModule, slot: int, side: str, name: str) -> SidedModule:
    field = space.field
    R = module.base
    table = np.empty((R.dim, space.dim), dtype=object)
    for r in range(R.dim):
        er = R.basis_vector(r)

        def formula(key, er=er):
            moved = module.act(er, {key[slot]: field.one})
            return {key[:slot] + (i,) + key[slot + 1:]: c for i, c in moved.items()}

        m = induce_map(formula, space, space)
        if not m:
            raise IllDefinedMap(m, f"{side} action of {R.name} on {name}")
        for v in range(space.dim):
            table[r, v] = m.column(v)
    return SidedModule(field, space.dim, R, table, side, name)


def tensor_chain(modules: List, name: str = None) -> PresentedSpace:
    """M_1 ⊗_R M_2 ⊗_R ... ⊗_R M_n in one presentation (inner modules must be bimodules)."""
    field = modules[0].field
    slots = [Slot(m.name, field, m.dim) for m in modules]
    families = []
    for k in range(len(modules) - 1):
        right = _outer(modules[k])[1]
        left = _outer(modules[k + 1])[0]
        R = right.base

        def balance(right=right, left=left, R=R, a=modules[k].dim, b=modules[k + 1].dim):
            for v, r, w in product(range(a), range(R.dim), range(b)):
                er = R.basis_vector(r)
                rel = sparse.tensor([right.act(er, {v: field.one}), {w: field.one}], field.one)
                sparse.axpy(rel, sparse.tensor([{v: field.one}, left.act(er, {w: field.one})], field.one), -field.one)
                yield rel

        families.append(RelationFamily(f"balance {k}", (k, k + 1), balance))
    return PresentedSpace(name or "⊗".join(m.name for m in modules), field, slots, families)


@dataclass
class QuotientModule:
    presentation: QuotientPresentation
    module: Optional[SidedModule] = None

    @property
    def dim(self) -> int:
        return self.presentation.quotient_dim


def quotient_module(field: Field, dim: int, sub: Iterable, action: SidedModule = None, name: str = "V/U") -> QuotientModule:
    """V/U with the induced action when U is a submodule.

    Raises ValueError when U does not lie in V and ``IllDefinedMap`` when the
    action does not descend to the quotient.
    """
    pres = make_quotient(field, dim, list(sub))
    if action is None:
        return QuotientModule(pres)
    R = action.base
    table = np.empty((R.dim, pres.quotient_dim), dtype=object)
    for r in range(R.dim):
        er = R.basis_vector(r)
        for u_idx, u in enumerate(pres.echelon.basis()):
            if pres.project(action.act(er, u)):
                raise IllDefinedMap(IllDefined((r, u_idx)), f"{action.side} action on {name}")
        for v, key in enumerate(pres.basis):
            table[r, v] = pres.project(action.act(er, {key: field.one}))
    return QuotientModule(pres, SidedModule(field, pres.quotient_dim, R, table, action.side, name))


def coinvariants(M: Bimodule, K_vectors: Iterable[dict], name: str = None) -> PresentedSpace:
    """M⊗ = M/[M,K], spanned by m·λ − λ·m over basis m and the given λ spanning K."""
    field = M.field
    K_vectors = list(K_vectors)

    def commutators():
        for lam in K_vectors:
            for m in range(M.dim):
                em = {m: field.one}
                rel = sparse.sub(M.rmul(em, lam), M.lmul(lam, em))
                yield {(k,): c for k, c in rel.items()}

    return PresentedSpace(
        name or f"{M.name}/[{M.name},K]", field,
        [Slot(M.name, field, M.dim)],
        [RelationFamily("commutators", (0,), commutators)],
    )
