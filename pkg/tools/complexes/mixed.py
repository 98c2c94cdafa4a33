"""Mixed complexes (X, b, B) and their cyclic, negative and periodic homology.

The bicomplexes BC, BN and BP are assembled from columns: column i in total
degree n holds X_{n-2i}; b stays in its column and B moves one column to the
left. BC uses the columns i ≥ 0. Negative and periodic homology are
approximated on finite column windows, which are quotient complexes of BN and
BP, so d∘d = 0 still holds on them.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from tools.complexes.graded import GradedComplex
from tools.errors import DimensionMismatch
from tools.linalg import sparse
from tools.linalg.matrix import ExactMatrix
from tools.report import Report

logger = logging.getLogger(__name__)


class MixedComplexData:
    """A chain complex (X, b) with an operator B_n: X_n → X_{n+1}.

    Attributes:
        complex (GradedComplex): X with b, degrees 0..top.
        B (dict): n → matrix of B_n; missing entries are zero.
        top (int): highest degree with data. B_top and anything above are unknown.
    """

    def __init__(self, complex_: GradedComplex, B: Dict[int, ExactMatrix], name: str = None, check: bool = True):
        if complex_.degree != -1:
            raise ValueError("a mixed complex needs a chain complex")
        self.complex = complex_
        self.field = complex_.field
        self.name = name or complex_.name
        self.top = max(complex_.degrees) if complex_.degrees else 0
        self.B = {}
        for n, m in B.items():
            expected = (complex_.dim(n + 1), complex_.dim(n))
            if m.shape != expected:
                raise DimensionMismatch(f"{self.name}: B_{n} has shape {m.shape}, expected {expected}")
            self.B[n] = m
        if check:
            self.verify().raise_on_failure()

    def dim(self, n: int) -> int:
        return self.complex.dim(n)

    def b(self, n: int) -> ExactMatrix:
        return self.complex.d(n)

    def connes(self, n: int) -> ExactMatrix:
        m = self.B.get(n)
        if m is None:
            m = ExactMatrix.zeros(self.field, self.dim(n + 1), self.dim(n))
        return m

    def verify(self, report: Report = None) -> Report:
        report = report or Report(f"mixed complex {self.name}")
        degrees = [n for n in self.complex.degrees if n + 1 <= self.top]

        def bb():
            for n in self.complex.degrees:
                if not (self.b(n - 1) @ self.b(n)).is_zero():
                    yield (n,)

        def BB():
            for n in degrees:
                if n + 2 <= self.top and not (self.connes(n + 1) @ self.connes(n)).is_zero():
                    yield (n,)

        def anti():
            for n in degrees:
                if not (self.connes(n - 1) @ self.b(n) + self.b(n + 1) @ self.connes(n)).is_zero():
                    yield (n,)

        report.check(f"{self.name}: b∘b = 0", bb())
        report.check(f"{self.name}: B∘B = 0", BB())
        report.check(f"{self.name}: B∘b + b∘B = 0", anti())
        return report

    def __repr__(self):
        return f"MixedComplexData({self.name}, top={self.top})"


def column_complex(mx: MixedComplexData, lo: int, hi: Optional[int], n_min: int, n_max: int,
                   name: str = "BC") -> GradedComplex:
    """Total complex of the columns lo ≤ i ≤ hi (hi None: no upper bound) in degrees n_min..n_max.

    Summands needing X_p with p > top are left out; callers keep the window
    small enough that this never happens in the degrees they read.
    """
    F = mx.field
    dims, offsets = {}, {}
    for n in range(n_min, n_max + 1):
        off = 0
        top_col = (n // 2) if hi is None else min(hi, n // 2)
        for i in range(lo, top_col + 1):
            p = n - 2 * i
            if p < 0 or p > mx.top:
                continue
            offsets[(n, i)] = off
            off += mx.dim(p)
        dims[n] = off
    diffs = {}
    for n in range(n_min + 1, n_max + 1):
        cols = [dict() for _ in range(dims[n])]
        for (deg, i), off in offsets.items():
            if deg != n:
                continue
            p = n - 2 * i
            b_tgt = offsets.get((n - 1, i))
            B_tgt = offsets.get((n - 1, i - 1))
            b_m = mx.b(p) if b_tgt is not None and p >= 1 else None
            B_m = mx.connes(p) if B_tgt is not None else None
            for j in range(mx.dim(p)):
                col = cols[off + j]
                if b_m is not None:
                    for k, c in b_m.column(j).items():
                        sparse.add_term(col, b_tgt + k, c)
                if B_m is not None:
                    for k, c in B_m.column(j).items():
                        sparse.add_term(col, B_tgt + k, c)
        diffs[n] = ExactMatrix(F, dims[n - 1], dims[n], cols)
    return GradedComplex(F, dims, diffs, -1, f"{name}({mx.name})")


@dataclass
class CyclicHomology:
    """HC, HN, HP dimensions of a mixed complex in degrees 0..n_max.

    ``hn_windows`` / ``hp_windows`` keep the dims of every window tried;
    statuses are "stabilized" when the last two windows agree, else "truncated".
    """

    hc: List[int]
    hn: List[int]
    hp: List[int]
    hn_status: str
    hp_status: str
    window: int
    hn_windows: List[List[int]] = field(default_factory=list)
    hp_windows: List[List[int]] = field(default_factory=list)

    def as_tables(self) -> Dict[str, Dict[str, int]]:
        return {
            "HC_n": {str(n): v for n, v in enumerate(self.hc)},
            "HN_n": {str(n): v for n, v in enumerate(self.hn)},
            "HP_n": {str(n): v for n, v in enumerate(self.hp)},
        }


def _grow(mx: MixedComplexData, n_max: int, cap: int, hi: Optional[int], label: str) -> Tuple[List[List[int]], str]:
    windows = []
    for w in range(cap + 1):
        c = column_complex(mx, -w, hi, -1, n_max + 1, f"{label}[{w}]")
        windows.append([c.homology_dim(n) for n in range(n_max + 1)])
        if w >= 1 and windows[-1] == windows[-2]:
            return windows, "stabilized"
    return windows, "truncated"


def cyclic_from_mixed(mx: MixedComplexData, n_max: int, trunc: int) -> CyclicHomology:
    """HC_n exactly; HN_n, HP_n on column windows of width at most ``trunc``.

    The window width is also capped by the degrees present in ``mx``: in degree
    n_max + 1 the last window column needs X_{n_max+1+2w}.
    """
    if n_max + 1 > mx.top:
        raise ValueError(f"{mx.name}: degrees up to {n_max + 1} are needed, data stops at {mx.top}")
    bc = column_complex(mx, 0, None, 0, n_max + 1, "BC")
    hc = [bc.homology_dim(n) for n in range(n_max + 1)]
    cap = max(0, min(trunc, (mx.top - n_max - 1) // 2))
    hn_windows, hn_status = _grow(mx, n_max, cap, 0, "BN")
    hp_windows, hp_status = _grow(mx, n_max, cap, None, "BP")
    logger.info(f"cyclic homology of {mx.name}: HC {hc}, HN {hn_windows[-1]} ({hn_status}), "
                f"HP {hp_windows[-1]} ({hp_status})")
    return CyclicHomology(hc, hn_windows[-1], hp_windows[-1], hn_status, hp_status, len(hn_windows) - 1,
                          hn_windows, hp_windows)
