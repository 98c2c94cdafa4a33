"""Incremental reduced row echelon forms over sparse rows, and the solvers built on them.

Rows are sparse vectors keyed by comparable keys (ints, or tuples of ints of a
common length). The pivot of a row is its lowest key, so every basis produced
here is deterministic.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, List, Optional

from tools.errors import NoSolution
from tools.linalg import sparse
from tools.linalg.scalars import Field

logger = logging.getLogger(__name__)


class EchelonBasis:
    """A subspace kept as a fully reduced row echelon form.

    Every stored row has coefficient 1 at its pivot and no entry at any other
    pivot, so reducing a vector is a single pass over its pivot entries.
    """

    def __init__(self, field: Field, vectors: Optional[Iterable[dict]] = None):
        self.field = field
        self.rows: Dict[Hashable, dict] = {}
        self._col_index: Dict[Hashable, set] = {}
        if vectors is not None:
            for v in vectors:
                self.add(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List:
        return sorted(self.rows)

    def reduce(self, vec: dict) -> dict:
        out = dict(vec)
        for p in [k for k in vec if k in self.rows]:
            sparse.axpy(out, self.rows[p], -vec[p])
        return out

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; returns False when it was already in the span."""
        r = self.reduce(vec)
        if not r:
            return False
        p = min(r)
        inv = self.field.inv(r[p])
        r = sparse.scaled(r, inv)
        for q in list(self._col_index.get(p, ())):
            row = self.rows[q]
            c = row[p]
            self._unindex(q, row)
            sparse.axpy(row, r, -c)
            self._index(q, row)
        self.rows[p] = r
        self._index(p, r)
        return True

    def _index(self, pivot, row):
        for k in row:
            if k != pivot:
                self._col_index.setdefault(k, set()).add(pivot)

    def _unindex(self, pivot, row):
        for k in row:
            if k != pivot:
                s = self._col_index.get(k)
                if s is not None:
                    s.discard(pivot)
                    if not s:
                        del self._col_index[k]

    def basis(self) -> List[dict]:
        return [self.rows[p] for p in self.pivots]


@dataclass
class QuotientPresentation:
    """V / span(relations) with a deterministic complement basis.

    The basis of the quotient is the list of ambient keys that are not pivots
    of the relation echelon form, in key order. The section sends a basis
    element to its own ambient key, and the projection sends a pivot key p to
    -(row_p - p).

    Attributes:
        ambient_keys (list): ordered ambient basis keys.
        relations (list): the relation vectors as given.
        echelon (EchelonBasis): reduced form of the relations.
        basis (list): ambient keys representing the quotient basis.
    """

    field: Field
    ambient_keys: list
    relations: list
    echelon: EchelonBasis

    def __post_init__(self):
        pivots = self.echelon.rows
        self.basis = [k for k in self.ambient_keys if k not in pivots]
        self.position = {k: i for i, k in enumerate(self.basis)}

    @property
    def ambient_dim(self) -> int:
        return len(self.ambient_keys)

    @property
    def quotient_dim(self) -> int:
        return len(self.basis)

    def project_key(self, key) -> dict:
        """Coordinates (by basis position) of the class of an ambient key."""
        row = self.echelon.rows.get(key)
        if row is None:
            return {self.position[key]: self.field.one}
        return {self.position[k]: -c for k, c in row.items() if k != key}

    def project(self, vec: dict) -> dict:
        out = {}
        for k, c in self.echelon.reduce(vec).items():
            sparse.add_term(out, self.position[k], c)
        return out

    def lift(self, position: int):
        return self.basis[position]

    @property
    def projection(self):
        from tools.linalg.matrix import ExactMatrix

        cols = [self.project_key(k) for k in self.ambient_keys]
        return ExactMatrix.from_columns(self.field, self.quotient_dim, cols)

    @property
    def section(self):
        from tools.linalg.matrix import ExactMatrix

        index = {k: i for i, k in enumerate(self.ambient_keys)}
        cols = [{index[k]: self.field.one} for k in self.basis]
        return ExactMatrix.from_columns(self.field, self.ambient_dim, cols)


def make_quotient(field: Field, ambient_dim: int, relations: Iterable) -> QuotientPresentation:
    """Quotient of field^ambient_dim by the span of ``relations``.

    Args:
        field (Field): ground field.
        ambient_dim (int): dimension of the ambient space.
        relations (iterable): sparse dicts keyed by 0..ambient_dim-1, or dense
            sequences of length ambient_dim.
    """
    rels = []
    for r in relations:
        if not isinstance(r, dict):
            if len(r) != ambient_dim:
                raise ValueError(f"relation has length {len(r)}, expected {ambient_dim}")
            r = {i: field(c) for i, c in enumerate(r) if c}
        elif any(not 0 <= k < ambient_dim for k in r):
            raise ValueError(f"relation has keys outside 0..{ambient_dim - 1}")
        rels.append(r)
    return keyed_quotient(field, list(range(ambient_dim)), rels)


def keyed_quotient(field: Field, ambient_keys: list, relations: list) -> QuotientPresentation:
    ech = EchelonBasis(field, relations)
    return QuotientPresentation(field, list(ambient_keys), list(relations), ech)


def solve_linear(m, rhs):
    """One solution X of m X = rhs, or NoSolution when the system is inconsistent."""
    from tools.linalg.matrix import ExactMatrix

    if m.rows != rhs.rows:
        raise ValueError(f"row counts differ: {m.rows} and {rhs.rows}")
    c = m.cols
    ech = EchelonBasis(m.field)
    m_rows = m.row_dicts()
    r_rows = rhs.row_dicts()
    for i in range(m.rows):
        row = dict(m_rows[i])
        for j, v in r_rows[i].items():
            row[c + j] = v
        ech.add(row)
    if any(p >= c for p in ech.rows):
        logger.debug("solve_linear: inconsistent system")
        return NoSolution
    cols = []
    for j in range(rhs.cols):
        col = {}
        for p, row in ech.rows.items():
            v = row.get(c + j)
            if v:
                col[p] = v
        cols.append(col)
    return ExactMatrix.from_columns(m.field, c, cols)


def rank(m) -> int:
    return EchelonBasis(m.field, m.columns).rank


def kernel_basis(m) -> List[dict]:
    """Basis of ker(m), one vector per free column in increasing order.

    The vector attached to the free column f has coefficient 1 at f, zero at
    the other free columns, and -row_p[f] at each pivot p of the reduced row
    echelon form of m.
    """
    return kernel_from_echelon(EchelonBasis(m.field, m.row_dicts()), m.cols)


def free_columns(ech: EchelonBasis, ncols: int) -> List[int]:
    return [f for f in range(ncols) if f not in ech.rows]


def kernel_from_echelon(ech: EchelonBasis, ncols: int) -> List[dict]:
    """Kernel basis of the row space held by ``ech`` (rows keyed by 0..ncols-1)."""
    basis = []
    for f in free_columns(ech, ncols):
        vec = {f: ech.field.one}
        for p, row in ech.rows.items():
            c = row.get(f)
            if c:
                vec[p] = -c
        basis.append(vec)
    return basis
