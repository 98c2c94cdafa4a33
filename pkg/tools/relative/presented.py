"""Presented spaces: quotients of tensor products by explicit relations.

A ``PresentedSpace`` is a tensor product of slots V_1 ⊗ ... ⊗ V_n, where each
slot may already be a quotient V_k / U_k (H̄ = H/H^L, Ā = A/K, Ẽ = E/j(A)),
divided further by families of balancing relations living on a few slots at a
time (⊗_{H^L}, ⊗_K, cyclic coinvariants). Elements are sparse dicts keyed by
tuples of *basic* indices, one index per slot, in the ambient basis of each
V_k. Every map between presented spaces goes through ``induce_map``.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from tools.errors import IllDefined
from tools.linalg import sparse
from tools.linalg.echelon import QuotientPresentation, keyed_quotient
from tools.linalg.matrix import ExactMatrix
from tools.linalg.scalars import Field
from tools.set_runtime import get_runtime

logger = logging.getLogger(__name__)


class Slot:
    """One tensor factor V/U, with V of dimension ``dim`` and U spanned by ``sub_basis``.

    Attributes:
        reps (list): basic indices representing a basis of V/U.
        sub_vectors (list): echelon basis of U, used by the well-definedness checks.
    """

    def __init__(self, name: str, field: Field, dim: int, sub_basis: Iterable[dict] = ()):
        self.name = name
        self.field = field
        self.dim = dim
        self.quotient: QuotientPresentation = keyed_quotient(field, list(range(dim)), list(sub_basis))
        self.reps: List[int] = list(self.quotient.basis)
        self.sub_vectors: List[dict] = self.quotient.echelon.basis()
        self._reduced = [self._reduce(i) for i in range(dim)]

    def _reduce(self, i: int) -> dict:
        return {self.reps[pos]: c for pos, c in self.quotient.project_key(i).items()}

    def reduce(self, i: int) -> dict:
        """Class of e_i written over the representatives."""
        return self._reduced[i]

    def reduce_vector(self, vec: dict) -> dict:
        return sparse.apply_linear(vec, self.reduce)

    @property
    def quotient_dim(self) -> int:
        return len(self.reps)

    def __repr__(self):
        return f"Slot({self.name}, {self.quotient_dim}/{self.dim})"


@dataclass
class RelationFamily:
    """Relations supported on the slots at ``positions``.

    ``generator()`` yields dicts keyed by tuples of basic indices of those
    slots; each one is tensored with every representative of the other slots.
    """

    name: str
    positions: Tuple[int, ...]
    generator: Callable[[], Iterable[dict]]


def balance(name: str, k: int, left: Slot, right: Slot, scalars: Sequence,
            right_mul: Callable[[int, object], dict], left_mul: Callable[[object, int], dict]) -> RelationFamily:
    """x·t ⊗ y − x ⊗ t·y on slots k, k+1, for t in ``scalars``."""

    def generator():
        for t in scalars:
            for x in left.reps:
                xt = right_mul(x, t)
                for y in right.reps:
                    rel = {}
                    for i, c in xt.items():
                        sparse.add_term(rel, (i, y), c)
                    for j, c in left_mul(t, y).items():
                        sparse.add_term(rel, (x, j), -c)
                    yield rel

    return RelationFamily(name, (k, k + 1), generator)


class PresentedSpace:
    """(V_1/U_1 ⊗ ... ⊗ V_n/U_n) / span(relation families).

    Attributes:
        slots (list): the tensor factors.
        ambient_keys (list): tuples of representatives, in lexicographic order.
        quotient (QuotientPresentation): quotient of the span of ``ambient_keys``.
        basis (list): tuples of representatives forming a basis of the space.
    """

    def __init__(self, name: str, field: Field, slots: Sequence[Slot], families: Sequence[RelationFamily] = ()):
        self.name = name
        self.field = field
        self.slots = list(slots)
        self.families = list(families)
        self._tuple_memo: Dict[tuple, dict] = {}
        self.ambient_keys = [tuple(k) for k in product(*(s.reps for s in self.slots))]
        relations = []
        for fam in self.families:
            relations.extend(self._place(fam))
        self.quotient = keyed_quotient(field, self.ambient_keys, relations)
        self.basis: List[tuple] = self.quotient.basis
        logger.debug(f"presented space {name}: ambient {len(self.ambient_keys)}, dim {self.dim}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def arity(self) -> int:
        return len(self.slots)

    def _place(self, fam: RelationFamily):
        others = [k for k in range(self.arity) if k not in fam.positions]
        other_reps = [self.slots[k].reps for k in others]
        for local in fam.generator():
            if not local:
                continue
            for rest in product(*other_reps):
                vec = {}
                for lkey, c in local.items():
                    key = [None] * self.arity
                    for p, i in zip(fam.positions, lkey):
                        key[p] = i
                    for p, i in zip(others, rest):
                        key[p] = i
                    sparse.axpy(vec, self.reduce_tuple(tuple(key)), c)
                if vec:
                    yield vec

    def reduce_tuple(self, key: tuple) -> dict:
        """Class of a basic tuple in the tensor product of the slot quotients."""
        out = self._tuple_memo.get(key)
        if out is None:
            out = sparse.tensor([s.reduce(i) for s, i in zip(self.slots, key)], self.field.one)
            self._tuple_memo[key] = out
        return out

    def reduce(self, vec: dict) -> dict:
        return sparse.apply_linear(vec, self.reduce_tuple)

    def project(self, vec: dict) -> dict:
        """Coordinates, by basis position, of a vector over basic tuples."""
        return self.quotient.project(self.reduce(vec))

    def lift(self, position: int) -> tuple:
        return self.basis[position]

    def lift_vector(self, coords: dict) -> dict:
        return {self.basis[p]: c for p, c in coords.items()}

    def is_zero(self, vec: dict) -> bool:
        return not self.project(vec)

    def relations(self) -> List[dict]:
        return self.quotient.relations

    @property
    def projection_matrix(self) -> ExactMatrix:
        return self.quotient.projection

    @property
    def section(self) -> ExactMatrix:
        return self.quotient.section

    def identity(self) -> ExactMatrix:
        return ExactMatrix.identity(self.field, self.dim)

    def __repr__(self):
        return f"PresentedSpace({self.name}, dim={self.dim}, slots={self.slots})"


def relation_witness(space: PresentedSpace, evaluate: Callable[[tuple], dict], is_zero: Callable[[dict], bool]):
    """First relation of ``space`` that ``evaluate`` (extended linearly) does not kill.

    Slot subspaces are tested with representatives before slot k, a basis
    vector of U_k at slot k, and every basic index after it; the global
    relations are then tested on their reduced form. Returns ``(witness,
    image)`` or None.
    """
    memo: Dict[tuple, dict] = {}

    def ev(key):
        out = memo.get(key)
        if out is None:
            out = memo[key] = evaluate(key)
        return out

    for k, slot in enumerate(space.slots):
        if not slot.sub_vectors:
            continue
        before = [s.reps for s in space.slots[:k]]
        after = [range(s.dim) for s in space.slots[k + 1:]]
        for u_idx, u in enumerate(slot.sub_vectors):
            for head in product(*before):
                for tail in product(*after):
                    image = {}
                    for i, c in u.items():
                        sparse.axpy(image, ev(head + (i,) + tail), c)
                    if not is_zero(image):
                        return (("slot", slot.name, head, u_idx, tail), image)
    for idx, rel in enumerate(space.quotient.relations):
        image = sparse.apply_linear(rel, ev)
        if not is_zero(image):
            return (("relation", idx, min(rel)), image)
    return None


def induce_map(formula: Callable[[tuple], dict], src: PresentedSpace, dst: PresentedSpace,
               check: Optional[bool] = None):
    """Matrix of the map src → dst induced by ``formula`` on basic tuples.

    ``formula(key)`` returns a dict over basic tuples of ``dst``. Column j is
    the class of ``formula(src.lift(j))``. When checking is on (the runtime
    default), every relation of ``src`` must land in the relations of ``dst``;
    otherwise ``IllDefined`` carries the first offending relation.
    """
    if check is None:
        check = get_runtime().g_check_well_defined
    if check:
        found = relation_witness(src, formula, dst.is_zero)
        if found is not None:
            witness, image = found
            logger.info(f"induce_map {src.name} -> {dst.name}: ill defined at {witness}")
            return IllDefined(witness, image)
    cols = [dst.project(formula(key)) for key in src.basis]
    return ExactMatrix.from_columns(src.field, dst.dim, cols)


def factor_multilinear(fn: Callable[..., dict], src: PresentedSpace, dst: PresentedSpace,
                       check: Optional[bool] = None):
    """``induce_map`` for a map given as a function of the slot indices."""
    return induce_map(lambda key: fn(*key), src, dst, check)
