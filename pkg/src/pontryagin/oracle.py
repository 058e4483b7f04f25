"""Ground-truth quotient dimensions by exact linear algebra on degree slices.

For homogeneous relations the two-sided ideal is graded, and its degree-``d``
part is spanned by the products ``a*r*b`` of total degree ``d``. Rank is
computed by Gaussian elimination on sparse rows: column sets over F_2 and
``{column: coefficient}`` dicts otherwise. Sparse rows keep memory proportional
to the number of nonzero entries, which stays small for the few-term relations
of the presets. Nothing here depends on the rewriting module, so it can
be used to certify it.
"""

from __future__ import annotations

import functools

from .algebra import Element, GeneratorTable, HomogeneityError, Word, words_of_degree, ZERO, MIXED
from .presentations import Presentation
from .report import Report

DEFAULT_MAX_WORDS = 500_000
PIVOTS = ("max", "min")


class ResourceCapError(RuntimeError):
    def __init__(self, degree: int, words: int, cap: int):
        super().__init__(f"degree {degree} slice has {words} words, above the cap of {cap}; "
                         f"raise it with --max-words or lower the degree")
        self.degree, self.words, self.cap = degree, words, cap


def count_words(table: GeneratorTable, d: int) -> int:
    c = [0] * (d + 1)
    c[0] = 1
    for n in range(1, d + 1):
        c[n] = sum(c[n - g] for g in table.degrees if g <= n)
    return c[d] if d >= 0 else 0


class _SetEchelon:
    """Row echelon form over F_2 with rows stored as sets of columns."""

    def __init__(self, pivot: str = "max"):
        self.pivot = pivot
        self.rows: dict[int, frozenset[int]] = {}

    def lead(self, row) -> int:
        return max(row) if self.pivot == "max" else min(row)

    def reduce(self, row) -> set[int]:
        rows = self.rows
        row = set(row)
        while row:
            p = rows.get(self.lead(row))
            if p is None:
                return row
            row ^= p
        return row

    def add(self, row) -> bool:
        row = self.reduce(row)
        if row:
            self.rows[self.lead(row)] = frozenset(row)
            return True
        return False

    @property
    def rank(self) -> int:
        return len(self.rows)

    def copy(self):
        other = _SetEchelon(self.pivot)
        other.rows = dict(self.rows)
        return other


class _SparseEchelon:
    """Row echelon form over F_p (odd p) or Q with dict rows ``{column: coefficient}``."""

    def __init__(self, field, pivot: str = "max"):
        self.field = field
        self.pivot = pivot
        self.rows: dict[int, dict[int, object]] = {}

    def lead(self, row: dict) -> int:
        return max(row) if self.pivot == "max" else min(row)

    def reduce(self, row: dict) -> dict:
        f, rows = self.field, self.rows
        row = dict(row)
        while row:
            h = self.lead(row)
            p = rows.get(h)
            if p is None:
                return row
            c = row[h]
            for k, v in p.items():
                nv = f(row.get(k, 0) - c * v)
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        h = self.lead(row)
        inv = self.field.inverse(row[h])
        self.rows[h] = {k: self.field(v * inv) for k, v in row.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def copy(self):
        other = _SparseEchelon(self.field, self.pivot)
        other.rows = dict(self.rows)
        return other


class DegreeSlice:
    """The degree-``d`` part of the free algebra modulo the relation ideal."""

    def __init__(self, presentation: Presentation, degree: int,
                 max_words: int = DEFAULT_MAX_WORDS, pivot: str = "max"):
        if pivot not in PIVOTS:
            raise ValueError(f"pivot must be one of {PIVOTS}")
        self.presentation = presentation
        self.degree = degree
        table = presentation.table
        n = count_words(table, degree)
        if n > max_words:
            raise ResourceCapError(degree, n, max_words)
        self.words: tuple[Word, ...] = words_of_degree(table, degree)
        self.index = {w: i for i, w in enumerate(self.words)}
        self.char2 = presentation.field.characteristic == 2
        self._echelon = _SetEchelon(pivot) if self.char2 else _SparseEchelon(presentation.field, pivot)
        self._build()

    def _build(self):
        p, d = self.presentation, self.degree
        table, index, ech = p.table, self.index, self._echelon
        for r in p.all_relations():
            e = r.degree()
            if e > d:
                continue
            terms = list(r.terms.items())
            for k in range(d - e + 1):
                lefts = words_of_degree(table, k)
                rights = words_of_degree(table, d - e - k)
                for a in lefts:
                    for b in rights:
                        if self.char2:
                            ech.add({index[a + w + b] for w, _ in terms})
                        else:
                            ech.add({index[a + w + b]: c for w, c in terms})

    @property
    def rank(self) -> int:
        return self._echelon.rank

    @property
    def dimension(self) -> int:
        return len(self.words) - self.rank

    def vector(self, e: Element):
        if e.table != self.presentation.table or e.field != self.presentation.field:
            raise ValueError("element is not over the slice's presentation")
        deg = e.degree()
        if deg == MIXED:
            raise HomogeneityError("ideal membership needs a homogeneous element")
        if deg not in (ZERO, self.degree):
            raise ValueError(f"element has degree {deg}, slice has degree {self.degree}")
        if self.char2:
            return {self.index[w] for w in e.terms}
        return {self.index[w]: c for w, c in e.terms.items()}

    def contains(self, e: Element) -> bool:
        return not self._echelon.reduce(self.vector(e))

    def independent_count(self, elements) -> int:
        """How many of ``elements`` stay independent modulo the ideal (adding them in turn)."""
        ech = self._echelon.copy()
        return sum(ech.add(self.vector(e)) for e in elements)


@functools.lru_cache(maxsize=64)
def _slice(p: Presentation, d: int, max_words: int, pivot: str) -> DegreeSlice:
    return DegreeSlice(p, d, max_words, pivot)


def clear_cache():
    _slice.cache_clear()


def degree_slice(p: Presentation, d: int, max_words: int = DEFAULT_MAX_WORDS,
                 pivot: str = "max") -> DegreeSlice:
    n = count_words(p.table, d)
    if n > max_words:
        raise ResourceCapError(d, n, max_words)
    return _slice(p, d, max_words, pivot)


def quotient_dimension(p: Presentation, d: int, max_words: int = DEFAULT_MAX_WORDS,
                       pivot: str = "max") -> int:
    if d < 0:
        return 0
    return degree_slice(p, d, max_words, pivot).dimension


def quotient_dimensions(p: Presentation, dmax: int, max_words: int = DEFAULT_MAX_WORDS) -> list[int]:
    return [quotient_dimension(p, d, max_words) for d in range(dmax + 1)]


def ideal_contains(p: Presentation, e: Element, max_words: int = DEFAULT_MAX_WORDS) -> bool:
    deg = e.degree()
    if deg == ZERO:
        return True
    if deg == MIXED:
        raise HomogeneityError("ideal membership needs a homogeneous element")
    return degree_slice(p, deg, max_words).contains(e)


def verify_basis(p: Presentation, rs, dmax: int, max_words: int = DEFAULT_MAX_WORDS) -> Report:
    """Compare normal-form basis counts with quotient dimensions and check independence."""
    report = Report("basis")
    for d in range(dmax + 1):
        sl = degree_slice(p, d, max_words)
        basis = rs.basis_words(d)
        dim = sl.dimension
        embedded = [rs.embed(Element.from_word(rs.field, rs.table, w)) for w in basis]
        indep = sl.independent_count(embedded)
        ok = len(basis) == dim and indep == len(basis)
        witness = {"basis_words": len(basis), "quotient_dimension": dim, "independent": indep}
        report.add(f"degree {d} basis", ok, d, witness)
    return report


def check_rules(rs, max_words: int = DEFAULT_MAX_WORDS) -> Report:
    """Each rule ``lhs -> rhs`` must hold in the quotient: ``embed(lhs - rhs)`` lies in the ideal."""
    report = Report("rule soundness")
    for r in rs.rules:
        lhs = Element.from_word(rs.field, rs.table, r.lhs)
        diff = rs.embed(lhs - r.rhs)
        ok = ideal_contains(rs.base, diff, max_words)
        report.add(f"rule {r.format(rs.table)}", ok, rs.table.word_degree(r.lhs),
                   None if ok else str(diff))
    return report


__all__ = [
    "DEFAULT_MAX_WORDS", "DegreeSlice", "ResourceCapError", "check_rules", "clear_cache",
    "count_words", "degree_slice", "ideal_contains", "quotient_dimension",
    "quotient_dimensions", "verify_basis",
]
