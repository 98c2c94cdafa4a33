"""Spectral sequences of filtered complexes.

The filtration is increasing and given per degree by a level for every basis
coordinate: F_p X_n is spanned by the coordinates of level ≤ p. A decreasing
filtration F^s is passed as levels −s. Pages are built from

    Z^r_p = {x ∈ F_p : dx ∈ F_{p−r}},
    E^r_p = Z^r_p / (Z^{r−1}_{p−1} + d Z^{r−1}_{p+r−1}),

and d_r is the map E^r_p → E^r_{p−r} induced by d. The bigrading of E^r_p in
total degree n is (p, n − p).
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from tools.complexes.graded import GradedComplex, Subquotient
from tools.linalg import sparse
from tools.linalg.echelon import make_quotient
from tools.linalg.matrix import ExactMatrix
from tools.report import Report

logger = logging.getLogger(__name__)


class FilteredComplex:
    """A graded complex with a coordinate filtration.

    Attributes:
        complex (GradedComplex): the underlying complex.
        levels (dict): n → list with the filtration level of each coordinate of X_n.
    """

    def __init__(self, complex_: GradedComplex, levels: Dict[int, List[int]], check: bool = True):
        self.complex = complex_
        self.field = complex_.field
        self.levels = {n: list(v) for n, v in levels.items()}
        for n in complex_.degrees:
            if len(self.levels.setdefault(n, [])) != complex_.dim(n):
                raise ValueError(f"filtration of degree {n} has {len(self.levels[n])} levels for dim {complex_.dim(n)}")
        if check:
            self.verify().raise_on_failure()

    @property
    def bounds(self) -> Tuple[int, int]:
        flat = [p for v in self.levels.values() for p in v]
        return (min(flat), max(flat)) if flat else (0, 0)

    def piece(self, n: int, p: int) -> List[dict]:
        """Basis of F_p X_n."""
        return [{i: self.field.one} for i, lv in enumerate(self.levels.get(n, [])) if lv <= p]

    def verify(self, report: Report = None) -> Report:
        report = report or Report(f"filtration of {self.complex.name}")
        c = self.complex

        def preserved():
            for n in c.degrees:
                tgt = self.levels.get(n + c.degree, [])
                d = c.d(n)
                for j, lv in enumerate(self.levels[n]):
                    if any(tgt[i] > lv for i in d.column(j)):
                        yield (n, j)

        report.check(f"{c.name}: d(F_p) ⊆ F_p", preserved())
        return report

    def cycles(self, n: int, p: int, r: int) -> List[dict]:
        """Basis of Z^r_p in degree n."""
        c = self.complex
        source = self.piece(n, p)
        if not source:
            return []
        tgt_n = n + c.degree
        tgt_dim = c.dim(tgt_n)
        q = make_quotient(self.field, tgt_dim, self.piece(tgt_n, p - r))
        d = c.d(n)
        images = [q.project(d.apply(x)) for x in source]
        m = ExactMatrix.from_columns(self.field, q.quotient_dim, images)
        return [sparse.combine((coef, source[idx]) for idx, coef in k.items()) for k in m.kernel()]

    def page_space(self, n: int, p: int, r: int) -> Subquotient:
        c = self.complex
        numerator = self.cycles(n, p, r)
        denominator = list(self.cycles(n, p - 1, r - 1))
        src_n = n - c.degree
        if c.dim(src_n):
            d_in = c.d(src_n)
            denominator.extend(d_in.apply(z) for z in self.cycles(src_n, p + r - 1, r - 1))
        return Subquotient(self.field, c.dim(n), numerator, denominator)


@dataclass
class SpectralPage:
    """E^r with dims keyed by (p, q) and d_r: E^r_{p,q} → E^r_{p−r, q+r+degree}."""

    r: int
    dims: Dict[Tuple[int, int], int]
    differentials: Dict[Tuple[int, int], ExactMatrix] = field(default_factory=dict)
    spaces: Dict[Tuple[int, int], Subquotient] = field(default_factory=dict, repr=False)

    def dim(self, p: int, q: int) -> int:
        return self.dims.get((p, q), 0)

    def total(self, n: int) -> int:
        return sum(v for (p, q), v in self.dims.items() if p + q == n)


def _default_degrees(c: GradedComplex) -> List[int]:
    return [n for n in c.degrees if n + 1 in c.dims]


def spectral_pages(fc: FilteredComplex, r_max: int, degrees: Optional[List[int]] = None) -> List[SpectralPage]:
    """Pages E^0..E^{r_max} in the given total degrees."""
    c = fc.complex
    degrees = sorted(degrees if degrees is not None else _default_degrees(c))
    lo, hi = fc.bounds
    pages = []
    for r in range(r_max + 1):
        spaces = {}
        for n in degrees:
            for p in range(lo, hi + 1):
                spaces[(p, n - p)] = fc.page_space(n, p, r)
        diffs = {}
        for (p, q), sq in spaces.items():
            n = p + q
            tgt_n = n + c.degree
            key = (p - r, tgt_n - (p - r))
            tgt = spaces.get(key)
            if tgt is None:
                continue
            d = c.d(n)
            cols = [tgt.coordinates(d.apply(z)) for z in sq.reps]
            diffs[(p, q)] = ExactMatrix.from_columns(fc.field, tgt.dim, cols)
        dims = {k: sq.dim for k, sq in spaces.items() if sq.dim}
        pages.append(SpectralPage(r, dims, diffs, spaces))
        logger.debug(f"page E^{r} of {c.name}: {dims}")
    return pages


def verify_pages(fc: FilteredComplex, pages: List[SpectralPage], degrees: Optional[List[int]] = None) -> Report:
    """d_r∘d_r = 0, E^{r+1} = H(E^r, d_r), and convergence to the homology of the complex."""
    c = fc.complex
    degrees = sorted(degrees if degrees is not None else _default_degrees(c))
    report = Report(f"spectral sequence of {c.name}")

    def square_zero():
        for page in pages:
            for (p, q), d in page.differentials.items():
                n = p + q
                key = (p - page.r, n + c.degree - (p - page.r))
                d2 = page.differentials.get(key)
                if d2 is not None and not (d2 @ d).is_zero():
                    yield (page.r, p, q)

    def next_page():
        for page, nxt in zip(pages, pages[1:]):
            r = page.r
            for (p, q), sq in page.spaces.items():
                n = p + q
                if not all(m in degrees or c.dim(m) == 0 for m in (n, n - c.degree, n + c.degree)):
                    continue
                src_key = (p + r, n - c.degree - (p + r))
                out = page.differentials.get((p, q))
                inc = page.differentials.get(src_key)
                expected = sq.dim - (out.rank() if out is not None else 0) - (inc.rank() if inc is not None else 0)
                if expected != nxt.dim(p, q):
                    yield (r, p, q)

    report.check(f"{c.name}: d_r∘d_r = 0", square_zero())
    report.check(f"{c.name}: E^(r+1) = H(E^r, d_r)", next_page())

    lo, hi = fc.bounds
    last = pages[-1]
    if last.r > hi - lo:
        def convergence():
            for n in degrees:
                if last.total(n) != c.homology_dim(n):
                    yield (n,)

        report.check(f"{c.name}: Σ_p E^∞_(p,n−p) = dim H_n", convergence())
    return report
