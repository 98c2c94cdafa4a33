"""Linear maps out of a presented space, cut out by linearity constraints.

``HomSpace`` realizes Hom_R(P, N) as the solution space of a linear system:
an unknown β is a table of values β(p) ∈ N on the basis of P, and each
constraint ``(lhs, rhs, op)`` demands β(lhs) = op(β(rhs)). The basis of the
space is the deterministic kernel basis of the system, and the coordinates of
a solution are its values at the free unknowns.
"""

import logging
from typing import Callable, Iterable, List, Optional, Tuple

from tools.errors import IllDefined
from tools.linalg import sparse
from tools.linalg.echelon import EchelonBasis, free_columns, kernel_from_echelon
from tools.linalg.matrix import ExactMatrix
from tools.linalg.scalars import Field
from tools.relative.presented import PresentedSpace, relation_witness
from tools.set_runtime import get_runtime

logger = logging.getLogger(__name__)

# (lhs over basic tuples, rhs over basic tuples, linear op on the target or None for the identity)
Constraint = Tuple[dict, dict, Optional[Callable[[dict], dict]]]


class HomSpace:
    """Hom(source, k^target_dim) restricted by ``constraints``.

    Attributes:
        source (PresentedSpace): the domain.
        target_dim (int): dimension of the coefficient space.
        basis (list): solution vectors over unknowns u = position * target_dim + m.
        free (list): free unknowns; a solution's coordinates are its values there.
    """

    def __init__(self, name: str, field: Field, source: PresentedSpace, target_dim: int,
                 constraints: Iterable[Constraint] = ()):
        self.name = name
        self.field = field
        self.source = source
        self.target_dim = target_dim
        self.n_unknowns = source.dim * target_dim
        self.echelon = EchelonBasis(field)
        for lhs, rhs, op in constraints:
            for row in self._rows(lhs, rhs, op):
                self.echelon.add(row)
        self.free: List[int] = free_columns(self.echelon, self.n_unknowns)
        self.basis: List[dict] = kernel_from_echelon(self.echelon, self.n_unknowns)
        logger.debug(f"hom space {name}: {self.n_unknowns} unknowns, dim {self.dim}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _op_columns(self, op) -> List[dict]:
        return [op({m: self.field.one}) for m in range(self.target_dim)]

    def _rows(self, lhs: dict, rhs: dict, op):
        T = self.target_dim
        p_lhs = self.source.project(lhs)
        p_rhs = self.source.project(rhs)
        if op is None:
            diff = sparse.sub(p_lhs, p_rhs)
            for m in range(T):
                row = {p * T + m: c for p, c in diff.items()}
                if row:
                    yield row
            return
        cols = self._op_columns(op)
        for m in range(T):
            row = {p * T + m: c for p, c in p_lhs.items()}
            for p, c in p_rhs.items():
                for m2 in range(T):
                    v = cols[m2].get(m)
                    if v:
                        sparse.add_term(row, p * T + m2, -c * v)
            if row:
                yield row

    def contains(self, vec: dict) -> bool:
        """True when a table of values (over unknowns) satisfies every constraint."""
        for row in self.echelon.rows.values():
            acc = self.field.zero
            for u, c in row.items():
                v = vec.get(u)
                if v:
                    acc = acc + c * v
            if acc:
                return False
        return True

    def coordinates(self, vec: dict) -> dict:
        return {i: vec[u] for i, u in enumerate(self.free) if vec.get(u)}

    def vector(self, coords: dict) -> dict:
        return sparse.combine((c, self.basis[i]) for i, c in coords.items())

    def value_at(self, vec: dict, position: int) -> dict:
        T = self.target_dim
        out = {}
        for m in range(T):
            c = vec.get(position * T + m)
            if c:
                out[m] = c
        return out

    def evaluator(self, vec: dict) -> Callable[[dict], dict]:
        """β as a function of vectors over basic tuples of the source."""
        values = {}

        def beta(x: dict) -> dict:
            acc = {}
            for p, c in self.source.project(x).items():
                v = values.get(p)
                if v is None:
                    v = values[p] = self.value_at(vec, p)
                sparse.axpy(acc, v, c)
            return acc

        return beta

    def from_values(self, value_of: Callable[[tuple], dict]) -> dict:
        """Table of values built from β on the source basis tuples."""
        T = self.target_dim
        vec = {}
        for p, key in enumerate(self.source.basis):
            for m, c in value_of(key).items():
                if c:
                    vec[p * T + m] = c
        return vec

    def __repr__(self):
        return f"HomSpace({self.name}, dim={self.dim})"


def induce_hom_map(formula: Callable[[Callable[[dict], dict], tuple], dict], src: HomSpace, dst: HomSpace,
                   check: Optional[bool] = None):
    """Matrix of β ↦ formula(β, ·) from ``src`` to ``dst``.

    ``formula(beta, key)`` gives the value of the image cochain at a basic tuple
    of ``dst.source``. With checking on, the image of every basis element must
    kill the relations of ``dst.source`` and satisfy the constraints of
    ``dst``; otherwise ``IllDefined`` is returned.
    """
    if check is None:
        check = get_runtime().g_check_well_defined
    cols = []
    for j, b in enumerate(src.basis):
        beta = src.evaluator(b)
        if check:
            found = relation_witness(dst.source, lambda key: formula(beta, key), lambda v: not v)
            if found is not None:
                logger.info(f"induce_hom_map {src.name} -> {dst.name}: ill defined at basis {j}, {found[0]}")
                return IllDefined(("basis", j) + tuple(found[0]), found[1])
        image = dst.from_values(lambda key: formula(beta, key))
        if check and not dst.contains(image):
            logger.info(f"induce_hom_map {src.name} -> {dst.name}: image of basis {j} violates constraints")
            return IllDefined(("constraint", j), image)
        cols.append(dst.coordinates(image))
    return ExactMatrix.from_columns(src.field, dst.dim, cols)
