"""Finite-dimensional algebras and coalgebras given by structure constants."""

import logging
from hashlib import sha256
from itertools import product
from typing import Dict, List

import numpy as np

from tools.errors import DimensionMismatch
from tools.linalg import sparse
from tools.linalg.echelon import EchelonBasis
from tools.linalg.matrix import ExactMatrix
from tools.linalg.scalars import Field
from tools.report import Report

logger = logging.getLogger(__name__)


def as_tensor(field: Field, data, dim: int, name: str) -> np.ndarray:
    """Coerce nested row-major data into a (dim, dim, dim) object array of field scalars."""
    arr = np.empty((dim, dim, dim), dtype=object)
    try:
        if len(data) != dim:
            raise DimensionMismatch(f"{name}: expected {dim} slices, got {len(data)}")
        for i in range(dim):
            if len(data[i]) != dim:
                raise DimensionMismatch(f"{name}[{i}]: expected {dim} rows, got {len(data[i])}")
            for j in range(dim):
                if len(data[i][j]) != dim:
                    raise DimensionMismatch(f"{name}[{i}][{j}]: expected {dim} entries")
                for k in range(dim):
                    arr[i, j, k] = field(data[i][j][k])
    except TypeError as exc:
        raise DimensionMismatch(f"{name}: ragged or non-numeric data ({exc})") from exc
    return arr


def as_vector(field: Field, data, dim: int, name: str) -> List:
    if len(data) != dim:
        raise DimensionMismatch(f"{name}: expected length {dim}, got {len(data)}")
    return [field(c) for c in data]


def _first_difference(a: dict, b: dict):
    for k in sorted(set(a) | set(b)):
        if a.get(k) != b.get(k):
            return k
    return None


class StructureAlgebra:
    """
    A unital algebra with basis e_0..e_{dim-1}.

    Attributes:
        field (Field): ground field.
        dim (int): dimension.
        mult (np.ndarray): object array with e_i e_j = sum_k mult[i, j, k] e_k.
        unit (list): coordinates of the unit.
    """

    def __init__(self, field: Field, dim: int, mult, unit, name: str = "algebra"):
        self.field = field
        self.dim = dim
        self.name = name
        self.mult = mult if isinstance(mult, np.ndarray) else as_tensor(field, mult, dim, f"{name}.mult")
        if self.mult.shape != (dim, dim, dim):
            raise DimensionMismatch(f"{name}.mult has shape {self.mult.shape}")
        self.unit = as_vector(field, unit, dim, f"{name}.unit")
        self._table = [
            [{k: self.mult[i, j, k] for k in range(dim) if self.mult[i, j, k]} for j in range(dim)]
            for i in range(dim)
        ]

    def one(self) -> dict:
        return {i: c for i, c in enumerate(self.unit) if c}

    def basis_vector(self, i: int) -> dict:
        return {i: self.field.one}

    def mul_basis(self, i: int, j: int) -> dict:
        return self._table[i][j]

    def mul(self, x: dict, y: dict) -> dict:
        acc = {}
        for i, a in x.items():
            row = self._table[i]
            for j, b in y.items():
                ab = a * b
                if ab:
                    sparse.axpy(acc, row[j], ab)
        return acc

    def prod(self, *xs: dict) -> dict:
        out = self.one()
        for x in xs:
            out = self.mul(out, x)
        return out

    def left_matrix(self, x: dict) -> ExactMatrix:
        cols = [self.mul(x, self.basis_vector(j)) for j in range(self.dim)]
        return ExactMatrix.from_columns(self.field, self.dim, cols)

    def span(self, vectors) -> EchelonBasis:
        return EchelonBasis(self.field, vectors)

    def update_signature(self) -> str:
        payload = repr((self.field.descriptor(), self.dim, [str(c) for c in self.mult.flat], [str(c) for c in self.unit]))
        self.signature = sha256(payload.encode("utf-8")).hexdigest()
        return self.signature

    def verify(self, report: Report = None) -> Report:
        report = report or Report(f"{self.name} axioms")
        d = range(self.dim)

        def assoc():
            for i, j, k in product(d, d, d):
                ei, ej, ek = (self.basis_vector(t) for t in (i, j, k))
                if self.mul(self.mul(ei, ej), ek) != self.mul(ei, self.mul(ej, ek)):
                    yield (i, j, k)

        def unit():
            one = self.one()
            for i in d:
                ei = self.basis_vector(i)
                if self.mul(one, ei) != ei or self.mul(ei, one) != ei:
                    yield (i,)

        report.check(f"{self.name}: associativity", assoc())
        report.check(f"{self.name}: unit", unit())
        return report

    def __repr__(self):
        return f"StructureAlgebra({self.name}, dim={self.dim}, field={self.field})"


class StructureCoalgebra:
    """
    A counital coalgebra with basis e_0..e_{dim-1}.

    Attributes:
        comult (np.ndarray): Δ(e_i) = sum_{j,k} comult[i, j, k] e_j ⊗ e_k.
        counit (list): ε(e_i).
    """

    def __init__(self, field: Field, dim: int, comult, counit, name: str = "coalgebra"):
        self.field = field
        self.dim = dim
        self.name = name
        self.comult = comult if isinstance(comult, np.ndarray) else as_tensor(field, comult, dim, f"{name}.comult")
        if self.comult.shape != (dim, dim, dim):
            raise DimensionMismatch(f"{name}.comult has shape {self.comult.shape}")
        self.counit = as_vector(field, counit, dim, f"{name}.counit")
        self._delta = [
            {(j, k): self.comult[i, j, k] for j in range(dim) for k in range(dim) if self.comult[i, j, k]}
            for i in range(dim)
        ]
        self._iter_memo: Dict[tuple, dict] = {}

    def coproduct_basis(self, i: int) -> dict:
        return self._delta[i]

    def delta(self, x: dict) -> dict:
        acc = {}
        for i, c in x.items():
            sparse.axpy(acc, self._delta[i], c)
        return acc

    def epsilon(self, x: dict):
        acc = self.field.zero
        for i, c in x.items():
            acc = acc + c * self.counit[i]
        return acc

    def _iterated(self, i: int, n: int) -> Dict[tuple, object]:
        memo = self._iter_memo.get((i, n))
        if memo is None:
            memo = self._iter_memo[(i, n)] = self._iterated_basis(i, n)
        return memo

    def _iterated_basis(self, i: int, n: int) -> Dict[tuple, object]:
        if n == 0:
            e = self.counit[i]
            return {(): e} if e else {}
        if n == 1:
            return {(i,): self.field.one}
        # left-nested: split the first factor once more
        acc = {}
        for key, c in self._iterated(i, n - 1).items():
            for (a, b), d in self._delta[key[0]].items():
                sparse.add_term(acc, (a, b) + key[1:], c * d)
        return acc

    def iterated(self, x: dict, n: int) -> dict:
        """h^{(1)} ⊗ ... ⊗ h^{(n)} as a dict over n-tuples (n = 0 gives ε)."""
        acc = {}
        for i, c in x.items():
            sparse.axpy(acc, self._iterated(i, n), c)
        return acc

    def iterated_basis(self, i: int, n: int) -> dict:
        return self._iterated(i, n)

    def iterated_right_nested(self, i: int, n: int) -> dict:
        if n <= 1:
            return self._iterated(i, n)
        acc = {}
        for key, c in self._iterated_basis(i, n - 1).items():
            for (a, b), d in self._delta[key[-1]].items():
                sparse.add_term(acc, key[:-1] + (a, b), c * d)
        return acc

    def update_signature(self) -> str:
        payload = repr((self.field.descriptor(), self.dim, [str(c) for c in self.comult.flat], [str(c) for c in self.counit]))
        self.signature = sha256(payload.encode("utf-8")).hexdigest()
        return self.signature

    def verify(self, report: Report = None) -> Report:
        report = report or Report(f"{self.name} axioms")
        d = range(self.dim)

        def coassoc():
            for i in d:
                if self._iterated(i, 3) != self.iterated_right_nested(i, 3):
                    yield (i,)

        def counit():
            for i in d:
                left, right = {}, {}
                for (a, b), c in self._delta[i].items():
                    sparse.add_term(left, b, c * self.counit[a])
                    sparse.add_term(right, a, c * self.counit[b])
                ei = {i: self.field.one}
                if left != ei or right != ei:
                    yield (i,)

        report.check(f"{self.name}: coassociativity", coassoc())
        report.check(f"{self.name}: counit", counit())
        return report

    def __repr__(self):
        return f"StructureCoalgebra({self.name}, dim={self.dim}, field={self.field})"
