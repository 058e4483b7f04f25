"""Dimension series of presentations and the factorization identities they satisfy."""

from __future__ import annotations

from .algebra import F2, FieldTag
from .oracle import DEFAULT_MAX_WORDS, ResourceCapError, count_words, quotient_dimension
from .presentations import BasisSchema, Presentation, glambda, preset, smash_s1_so3_series
from .report import Report
from .rewrite import RewriteSystem, compile_presentation
from .series import PowerSeries, SeriesDivisionError, divide, is_nondecreasing, james_series, polynomial, rational_series

ROUTES = ("rewrite", "oracle")


class ComputedSeries(PowerSeries):
    """A :class:`PowerSeries` that remembers how its coefficients were obtained."""

    __slots__ = ("provenance",)

    def __init__(self, coeffs, provenance: dict):
        super().__init__(coeffs)
        self.provenance = provenance


def series_of(source, N: int = 16, route: str = "rewrite",
              max_words: int = DEFAULT_MAX_WORDS) -> ComputedSeries:
    """Dimension series to degree ``N`` of a presentation, rewriting system or basis schema.

    ``route="rewrite"`` counts normal-form basis words; ``route="oracle"`` uses
    exact quotient dimensions (subject to the ``max_words`` cap).
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    if route not in ROUTES:
        raise ValueError(f"route must be one of {ROUTES}")
    if isinstance(source, BasisSchema):
        return ComputedSeries(source.series(N).coeffs,
                              {"source": source.name, "route": "schema", "N": N})
    if isinstance(source, RewriteSystem):
        rs, p = source, source.base
    elif isinstance(source, Presentation):
        p, rs = source, None
    else:
        raise TypeError(f"cannot take the series of {type(source).__name__}")
    if route == "rewrite":
        rs = rs or compile_presentation(p)
        coeffs = [len(rs.basis_words(d)) for d in range(N + 1)]
    else:
        top = count_words(p.table, N)
        if top > max_words:  # refuse before spending time on the lower degrees
            raise ResourceCapError(N, top, max_words)
        coeffs = [quotient_dimension(p, d, max_words) for d in range(N + 1)]
    meta = {"source": p.name, "field": p.field.name, "route": route, "N": N}
    return ComputedSeries(coeffs, meta)


def _so3_series(field: FieldTag, N: int) -> PowerSeries:
    if field.characteristic == 2:
        return polynomial([1, 1], N) * polynomial([1, 0, 1], N)
    return polynomial([1, 0, 0, 1], N)


def check_fibration_identities(N: int = 16, field: FieldTag = F2,
                               pg: PowerSeries | None = None) -> Report:
    """Factor the glambda series through both strata and compare with the closed forms.

    ``pg`` overrides the computed glambda series (useful to see a corrupted input rejected).
    """
    report = Report("fibration identities")
    pg = series_of(glambda(field), N) if pg is None else pg.truncate(N)
    circle = polynomial([1, 1], N)
    so3 = _so3_series(field, N)
    quotients = {}
    for label, fiber in (("K0", so3 * so3), ("K1", circle * so3)):
        try:
            quotients[label] = q = divide(pg, fiber)
            report.add(f"P_G / P_{label} exact", True, N, q.to_list())
            neg = next((k for k, c in enumerate(q) if c < 0), None)
            report.add(f"P_G / P_{label} has nonnegative coefficients", neg is None, neg, None)
        except SeriesDivisionError as exc:
            report.add(f"P_G / P_{label} exact", False, exc.degree, str(exc))
    if len(quotients) < 2:
        return report
    u0, u1 = quotients["K0"], quotients["K1"]
    shifted = u1.shift(1)
    diff = u0 - PowerSeries.one(N)
    bad = next((k for k in range(N + 1) if diff[k] != shifted[k]), None)
    report.add("P_U0 - 1 = q * P_U1", bad is None, bad,
               None if bad is None else {"lhs": diff[bad], "rhs": shifted[bad]})
    schema0, schema1 = preset("u0_model", field), preset("u1_model", field)
    report.add("P_U0 matches v_I t^e schema", u0 == schema0.series(N), N, None)
    report.add("P_U1 matches u_I x^e schema", u1 == schema1.series(N), N, None)
    if field.characteristic == 2:
        den = [1, 0, -1, -1, -1]
        closed0 = rational_series([1, 1], den, N)
        closed1 = rational_series([1, 1, 1, 1], den, N)
        report.add("P_U0 closed form", u0 == closed0, N, closed0.to_list())
        report.add("P_U1 closed form", u1 == closed1, N, closed1.to_list())
        report.add("P_U0 nondecreasing", is_nondecreasing(u0), N, u0.to_list())
        late = [k for k in range(4, N + 1) if u0[k] < 2]
        report.add("P_U0 >= 2 beyond degree 3", not late, late[0] if late else None, None)
    return report


def homotopy_model_series(field: FieldTag, N: int = 16) -> PowerSeries:
    """James series of the reduced smash series, times the circle and two SO(3) factors."""
    reduced = smash_s1_so3_series(field, N)
    so3 = _so3_series(field, N)
    return james_series(reduced, N) * polynomial([1, 1], N) * so3 * so3


def check_homotopy_model(N: int = 16, field: FieldTag = F2) -> Report:
    report = Report("homotopy model")
    lhs = series_of(glambda(field), N)
    rhs = homotopy_model_series(field, N)
    bad = next((k for k in range(N + 1) if lhs[k] != rhs[k]), None)
    report.add(f"glambda/{field.name} = model", bad is None, bad,
               {"glambda": lhs.to_list(), "model": rhs.to_list()})
    return report


__all__ = [
    "ComputedSeries", "ROUTES", "check_fibration_identities", "check_homotopy_model",
    "homotopy_model_series", "series_of",
]
