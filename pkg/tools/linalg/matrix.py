import logging
import operator
from hashlib import sha256
from typing import Iterable, List, Sequence

import numpy as np
import pandas as pd

from tools.errors import DimensionMismatch
from tools.linalg import sparse
from tools.linalg.echelon import EchelonBasis
from tools.linalg.scalars import Field

logger = logging.getLogger(__name__)


class ExactMatrix:
    """
    A matrix over an exact field, stored column by column as sparse dicts.

    Every map between presented spaces is one of these. The signature is a
    sha256 digest of the field and the nonzero entries, used to key the result
    cache in ``tools.set_runtime``.

    Attributes:
        field (Field): the ground field; all entries belong to it.
        rows (int): number of rows.
        cols (int): number of columns.
        columns (list): one sparse dict ``{row: value}`` per column.
    """

    def __init__(self, field: Field, rows: int, cols: int, columns: List[dict] = None):
        self.matrix_type = "ExactMatrix"
        self.field = field
        self.rows = rows
        self.cols = cols
        self.columns = [dict() for _ in range(cols)] if columns is None else columns
        if len(self.columns) != cols:
            raise DimensionMismatch(f"expected {cols} columns, got {len(self.columns)}")

    @classmethod
    def from_columns(cls, field: Field, rows: int, columns: Iterable[dict]) -> "ExactMatrix":
        cols = []
        for col in columns:
            if any(not 0 <= i < rows for i in col):
                raise DimensionMismatch(f"column entry outside 0..{rows - 1}")
            cols.append({i: v for i, v in col.items() if v})
        return cls(field, rows, len(cols), cols)

    @classmethod
    def from_dense(cls, field: Field, entries: Sequence[Sequence], cols: int = None) -> "ExactMatrix":
        rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if rows else 0
        if any(len(r) != cols for r in entries):
            raise DimensionMismatch("ragged rows")
        columns = [dict() for _ in range(cols)]
        for i, r in enumerate(entries):
            for j, v in enumerate(r):
                v = field(v)
                if v:
                    columns[j][i] = v
        return cls(field, rows, cols, columns)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "ExactMatrix":
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "ExactMatrix":
        return cls(field, n, n, [{i: field.one} for i in range(n)])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, key):
        i, j = key
        return self.columns[j].get(i, self.field.zero)

    def column(self, j: int) -> dict:
        return self.columns[j]

    def apply(self, vec: dict) -> dict:
        """Image of a sparse vector keyed by column index."""
        acc = {}
        for j, c in vec.items():
            sparse.axpy(acc, self.columns[j], c)
        return acc

    def row_dicts(self) -> List[dict]:
        out = [dict() for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out[i][j] = v
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.field, self.cols, self.rows, self.row_dicts())

    @property
    def T(self):
        return self.transpose()

    def is_zero(self) -> bool:
        return not any(self.columns)

    def rank(self) -> int:
        return EchelonBasis(self.field, self.columns).rank

    def kernel(self) -> List[dict]:
        from tools.linalg.echelon import kernel_basis

        return kernel_basis(self)

    def to_numpy(self) -> np.ndarray:
        out = np.full((self.rows, self.cols), self.field.zero, dtype=object)
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out[i, j] = v
        return out

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.to_numpy())

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise DimensionMismatch(f"hstack of {self.shape} and {other.shape}")
        return ExactMatrix(self.field, self.rows, self.cols + other.cols,
                           [dict(c) for c in self.columns] + [dict(c) for c in other.columns])

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.cols:
            raise DimensionMismatch(f"vstack of {self.shape} and {other.shape}")
        cols = []
        for a, b in zip(self.columns, other.columns):
            c = dict(a)
            c.update({self.rows + i: v for i, v in b.items()})
            cols.append(c)
        return ExactMatrix(self.field, self.rows + other.rows, self.cols, cols)

    @classmethod
    def block(cls, field: Field, row_dims: List[int], col_dims: List[int], blocks: dict) -> "ExactMatrix":
        """Assemble a block matrix; ``blocks[(i, j)]`` fills block row i, block column j."""
        row_off = np.concatenate(([0], np.cumsum(row_dims, dtype=int))).tolist()
        col_off = np.concatenate(([0], np.cumsum(col_dims, dtype=int))).tolist()
        columns = [dict() for _ in range(col_off[-1])]
        for (bi, bj), m in blocks.items():
            if m.shape != (row_dims[bi], col_dims[bj]):
                raise DimensionMismatch(f"block {(bi, bj)} has shape {m.shape}")
            for j, col in enumerate(m.columns):
                target = columns[col_off[bj] + j]
                for i, v in col.items():
                    sparse.add_term(target, row_off[bi] + i, v)
        return cls(field, row_off[-1], col_off[-1], columns)

    def update_signature(self) -> str:
        entries = sorted((j, i, str(v)) for j, col in enumerate(self.columns) for i, v in col.items())
        unique_str = "_".join([self.matrix_type, repr(self.field), str(self.rows), str(self.cols)])
        self.signature = sha256(unique_str.encode("utf-8") + repr(entries).encode("utf-8")).hexdigest()
        return self.signature

    def __getstate__(self):
        state = self.__dict__.copy()
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)

    def __repr__(self):
        return f"ExactMatrix over {self.field} {self.shape}\n" + repr(self.to_frame())

    def _apply_op(self, other, op_func):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if other.shape != self.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")
        cols = []
        for a, b in zip(self.columns, other.columns):
            c = dict(a)
            for i, v in b.items():
                s = op_func(c.get(i, self.field.zero), v)
                if s:
                    c[i] = s
                else:
                    c.pop(i, None)
            cols.append(c)
        return ExactMatrix(self.field, self.rows, self.cols, cols)

    def __add__(self, other): return self._apply_op(other, operator.add)
    def __sub__(self, other): return self._apply_op(other, operator.sub)

    def __mul__(self, scalar):
        if isinstance(scalar, ExactMatrix):
            return NotImplemented
        return ExactMatrix(self.field, self.rows, self.cols,
                           [sparse.scaled(c, self.field(scalar)) for c in self.columns])

    def __rmul__(self, scalar): return self.__mul__(scalar)

    def __neg__(self):
        return self * -1

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot compose {self.shape} with {other.shape}")
        return ExactMatrix(self.field, self.rows, other.cols, [self.apply(c) for c in other.columns])

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.columns == other.columns

    __hash__ = None


def kernel_matrix(m: ExactMatrix) -> ExactMatrix:
    """Columns form the deterministic kernel basis of ``m``."""
    from tools.linalg.echelon import kernel_basis

    return ExactMatrix.from_columns(m.field, m.cols, kernel_basis(m))
