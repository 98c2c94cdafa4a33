"""Graded complexes with exact differentials, their homology, and double complexes."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from tools.errors import AxiomFailure, DimensionMismatch
from tools.linalg import sparse
from tools.linalg.echelon import EchelonBasis, solve_linear
from tools.linalg.matrix import ExactMatrix
from tools.linalg.scalars import Field
from tools.report import Report

logger = logging.getLogger(__name__)


class Subquotient:
    """Z / (Z ∩ D) for a subspace Z given by spanning vectors and a subspace D ⊆ Z.

    Attributes:
        numerator (EchelonBasis): reduced basis of Z.
        denominator (EchelonBasis): reduced basis of D.
        reps (list): vectors of Z whose classes form the basis of the subquotient.
    """

    def __init__(self, field: Field, ambient_dim: int, numerator, denominator):
        self.field = field
        self.ambient_dim = ambient_dim
        self.numerator = EchelonBasis(field, numerator)
        self.denominator = EchelonBasis(field, denominator)
        joint = EchelonBasis(field, self.denominator.basis())
        self.reps: List[dict] = [z for z in self.numerator.basis() if joint.add(z)]
        self._solver: Optional[ExactMatrix] = None

    @property
    def dim(self) -> int:
        return len(self.reps)

    def contains(self, x: dict) -> bool:
        return self.numerator.contains(x)

    def is_zero(self, x: dict) -> bool:
        return self.denominator.contains(x)

    def coordinates(self, x: dict) -> dict:
        """Coordinates of the class of x ∈ Z on the classes of ``reps``."""
        if not self.contains(x):
            raise ValueError("vector does not lie in the numerator")
        cols = self.reps + self.denominator.basis()
        m = ExactMatrix.from_columns(self.field, self.ambient_dim, cols)
        sol = solve_linear(m, ExactMatrix.from_columns(self.field, self.ambient_dim, [x]))
        if not sol:
            raise ValueError("vector does not lie in the numerator")
        return {i: c for i, c in sol.column(0).items() if i < self.dim}

    def __repr__(self):
        return f"Subquotient(dim={self.dim}, ambient={self.ambient_dim})"


class GradedComplex:
    """Spaces X_n with differentials d_n: X_n → X_{n+degree}.

    ``degree`` is -1 for chain complexes and +1 for cochain complexes. Missing
    differentials are zero. d∘d = 0 is checked at construction.
    """

    def __init__(self, field: Field, dims: Dict[int, int], differentials: Dict[int, ExactMatrix],
                 degree: int = -1, name: str = "X", check: bool = True):
        if degree not in (-1, 1):
            raise ValueError(f"degree must be -1 or +1, got {degree}")
        self.field = field
        self.dims = dict(dims)
        self.degree = degree
        self.name = name
        self.differentials = {}
        for n, d in differentials.items():
            expected = (self.dim(n + degree), self.dim(n))
            if d.shape != expected:
                raise DimensionMismatch(f"{name}: d_{n} has shape {d.shape}, expected {expected}")
            self.differentials[n] = d
        if check:
            self.verify().raise_on_failure()

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def d(self, n: int) -> ExactMatrix:
        out = self.differentials.get(n)
        if out is None:
            out = ExactMatrix.zeros(self.field, self.dim(n + self.degree), self.dim(n))
        return out

    def incoming(self, n: int) -> ExactMatrix:
        """The differential landing in X_n."""
        return self.d(n - self.degree)

    @property
    def degrees(self) -> List[int]:
        return sorted(self.dims)

    def verify(self) -> Report:
        report = Report(f"complex {self.name}")

        def square_zero():
            for n in self.degrees:
                if not (self.d(n + self.degree) @ self.d(n)).is_zero():
                    yield (n,)

        report.check(f"{self.name}: d∘d = 0", square_zero())
        return report

    def homology_dim(self, n: int) -> int:
        d_out = self.d(n)
        return self.dim(n) - d_out.rank() - self.incoming(n).rank()

    def homology(self, n: int) -> "Subquotient":
        cycles = self.d(n).kernel()
        boundaries = self.incoming(n).columns
        return Subquotient(self.field, self.dim(n), cycles, boundaries)

    def __repr__(self):
        return f"GradedComplex({self.name}, dims={self.dims}, degree={self.degree:+d})"


def homology_dims(c: GradedComplex, n_max: int) -> List[int]:
    """dim H_n = dim ker d_n − rank of the differential into X_n, for n = 0..n_max."""
    out = [c.homology_dim(n) for n in range(n_max + 1)]
    logger.debug(f"homology of {c.name}: {out}")
    return out


def is_chain_map(f: Dict[int, ExactMatrix], src: GradedComplex, dst: GradedComplex, degrees) -> bool:
    for n in degrees:
        fn = f.get(n)
        fnext = f.get(n + src.degree)
        lhs = dst.d(n) @ fn if fn is not None else None
        rhs = fnext @ src.d(n) if fnext is not None else None
        if lhs is None or rhs is None:
            continue
        if lhs != rhs:
            logger.info(f"chain map check failed in degree {n}")
            return False
    return True


def homotopy_check(f: Dict[int, ExactMatrix], g: Dict[int, ExactMatrix], h: Dict[int, ExactMatrix],
                   src: GradedComplex, dst: GradedComplex, degrees) -> bool:
    """f_n − g_n = d∘h_n + h_{n+degree}∘d_n in every listed degree.

    h_n maps src_n to dst_{n−degree}; missing entries of h are zero.
    """
    F = src.field
    for n in degrees:
        rows, cols = dst.dim(n), src.dim(n)
        diff = f.get(n, ExactMatrix.zeros(F, rows, cols)) - g.get(n, ExactMatrix.zeros(F, rows, cols))
        acc = ExactMatrix.zeros(F, rows, cols)
        hn = h.get(n)
        if hn is not None:
            acc = acc + dst.d(n - src.degree) @ hn
        hm = h.get(n + src.degree)
        if hm is not None:
            acc = acc + hm @ src.d(n)
        if diff != acc:
            logger.info(f"homotopy identity fails in degree {n}")
            return False
    return True


def induced_on_homology(f: ExactMatrix, src: Subquotient, dst: Subquotient) -> ExactMatrix:
    """Matrix of the map induced by a chain map component on the given homology groups."""
    cols = [dst.coordinates(f.apply(z)) for z in src.reps]
    return ExactMatrix.from_columns(f.field, dst.dim, cols)


@dataclass
class DoubleComplex:
    """Bigraded spaces X_{rs} with components d^l: X_{rs} → X_{r+l−1, s−l}.

    d^0 lowers r, d^1 lowers s; d^l for l ≥ 2 are the higher components of a
    twisted differential. The total differential is Σ_l d^l with no extra sign.

    Attributes:
        dims (dict): (r, s) → dim X_{rs}.
        components (dict): l → {(r, s): matrix of d^l out of X_{rs}}.
    """

    field: Field
    dims: Dict[Tuple[int, int], int]
    components: Dict[int, Dict[Tuple[int, int], ExactMatrix]] = field(default_factory=dict)
    name: str = "X"

    def dim(self, r: int, s: int) -> int:
        return self.dims.get((r, s), 0)

    def component(self, l: int, r: int, s: int) -> ExactMatrix:
        m = self.components.get(l, {}).get((r, s))
        if m is None:
            m = ExactMatrix.zeros(self.field, self.dim(r + l - 1, s - l), self.dim(r, s))
        return m

    def summands(self, n: int) -> List[Tuple[int, int]]:
        """(r, s) with r + s = n, ordered by s."""
        return sorted(((r, s) for (r, s) in self.dims if r + s == n), key=lambda k: k[1])

    def verify(self, report: Report = None, orders: Optional[List[int]] = None) -> Report:
        """Σ_{i+j=k} d^i∘d^j = 0 from every X_{rs}, for every k (or the listed ones).

        When only some d^l are known, pass the orders k whose sums are complete.
        """
        report = report or Report(f"double complex {self.name}")
        ls = sorted(self.components)
        ks = list(orders) if orders is not None else list(range(0, 2 * (max(ls) if ls else 0) + 1))

        def relations():
            for (r, s) in sorted(self.dims):
                for k in ks:
                    acc = None
                    for j in ls:
                        i = k - j
                        if i not in self.components:
                            continue
                        r1, s1 = r + j - 1, s - j
                        term = self.component(i, r1, s1) @ self.component(j, r, s)
                        acc = term if acc is None else acc + term
                    if acc is not None and not acc.is_zero():
                        yield (k, r, s)

        report.check(f"{self.name}: Σ d^i∘d^j = 0", relations())
        return report

    def total(self, n_max: int, check: bool = True) -> "TotalComplex":
        """Total complex X_n = ⊕_{r+s=n} X_{rs} for n ≤ n_max + 1."""
        dims, offsets = {}, {}
        for n in range(n_max + 2):
            off = 0
            for key in self.summands(n):
                offsets[key] = off
                off += self.dim(*key)
            dims[n] = off
        diffs = {}
        for n in range(1, n_max + 2):
            cols = [dict() for _ in range(dims[n])]
            for (r, s) in self.summands(n):
                for l in self.components:
                    tgt = (r + l - 1, s - l)
                    if tgt not in offsets:
                        continue
                    m = self.component(l, r, s)
                    for j, col in enumerate(m.columns):
                        target = cols[offsets[(r, s)] + j]
                        for i, v in col.items():
                            sparse.add_term(target, offsets[tgt] + i, v)
            diffs[n] = ExactMatrix(self.field, dims[n - 1], dims[n], cols)
        complex_ = GradedComplex(self.field, dims, diffs, -1, f"Tot({self.name})", check=False)
        if check:
            bad = complex_.verify()
            if not bad.passed:
                raise AxiomFailure(f"total complex of {self.name}: d∘d = 0", bad.first_failure().witness)
        levels = {n: [] for n in dims}
        for n in dims:
            for (r, s) in self.summands(n):
                levels[n].extend([s] * self.dim(r, s))
        logger.info(f"total complex of {self.name}: dims {[dims[n] for n in sorted(dims)]}")
        return TotalComplex(complex_, offsets, levels)


@dataclass
class TotalComplex:
    """A total complex with the position of each summand and the filtration index s of each coordinate."""

    complex: GradedComplex
    offsets: Dict[Tuple[int, int], int]
    levels: Dict[int, List[int]]

    def embed(self, r: int, s: int, vec: dict) -> dict:
        off = self.offsets[(r, s)]
        return {off + i: c for i, c in vec.items()}

    def restrict(self, r: int, s: int, vec: dict, size: int) -> dict:
        off = self.offsets[(r, s)]
        return {i - off: c for i, c in vec.items() if off <= i < off + size}


def cochain_total(field: Field, dims: Dict[Tuple[int, int], int],
                  components: Dict[int, Dict[Tuple[int, int], ExactMatrix]], n_max: int,
                  name: str = "X") -> Tuple[GradedComplex, Dict[Tuple[int, int], int], Dict[int, List[int]]]:
    """Total cochain complex of components d_l: X^{rs} → X^{r−l+1, s+l}."""
    total_dims, offsets = {}, {}
    for n in range(n_max + 2):
        off = 0
        for key in sorted(((r, s) for (r, s) in dims if r + s == n), key=lambda k: k[1]):
            offsets[key] = off
            off += dims[key]
        total_dims[n] = off
    diffs = {}
    for n in range(n_max + 1):
        cols = [dict() for _ in range(total_dims[n])]
        for (r, s), off in offsets.items():
            if r + s != n:
                continue
            for l, table in components.items():
                m = table.get((r, s))
                tgt = (r - l + 1, s + l)
                if m is None or tgt not in offsets:
                    continue
                for j, col in enumerate(m.columns):
                    for i, v in col.items():
                        sparse.add_term(cols[off + j], offsets[tgt] + i, v)
        diffs[n] = ExactMatrix(field, total_dims[n + 1], total_dims[n], cols)
    complex_ = GradedComplex(field, total_dims, diffs, +1, f"Tot({name})", check=False)
    report = complex_.verify()
    if not report.passed:
        raise AxiomFailure(f"total cochain complex of {name}: d∘d = 0", report.first_failure().witness)
    levels = {n: [] for n in total_dims}
    for (r, s), off in sorted(offsets.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[1])):
        levels[r + s].extend([s] * dims[(r, s)])
    return complex_, offsets, levels
