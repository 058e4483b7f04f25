"""Named verification checks for the published values, run as one suite."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Any, Callable

from .algebra import F2, QQ, FieldTag, graded_commutator
from .hopf import check_coproduct, cup, diagonal, dual, nilpotency_order, pair, standard_hopf
from .identities import check_fibration_identities, check_homotopy_model, series_of
from .oracle import ideal_contains, quotient_dimension, verify_basis
from .presentations import KOSZUL, STRICT, exterior_algebra, glambda, glambda_core, preset, tensor_product, truncated_polynomial
from .report import FAIL, PASS
from .rewrite import check_consistency, compile_presentation
from .series import divide, evaluate_expression, is_nondecreasing, james_series, polynomial

LITERATURE = "literature"
COMPUTED = "independent computation"
F3 = FieldTag(3)


class Workspace:
    """Compiled systems and Hopf structures shared by the checks of one run."""

    def __init__(self, seed: int = 7, max_degree: int = 16, oracle_max_degree: int = 8):
        self.seed, self.max_degree, self.oracle_max_degree = seed, max_degree, oracle_max_degree

    @functools.lru_cache(maxsize=None)
    def presentation(self, name: str, field: FieldTag, policy: str = STRICT):
        if name == "glambda":
            return glambda(field, policy)
        return preset(name, field)

    @functools.lru_cache(maxsize=None)
    def rs(self, name: str, field: FieldTag = F2, policy: str = STRICT):
        return compile_presentation(self.presentation(name, field, policy))

    @functools.lru_cache(maxsize=None)
    def hopf(self, name: str, field: FieldTag = F2, policy: str = STRICT):
        return standard_hopf(self.presentation(name, field, policy))

    # helpers used by several checks
    def nf(self, text: str, field: FieldTag = F2, name: str = "glambda") -> str:
        rs = self.rs(name, field)
        return str(rs.normal_form(rs.element(text)))

    def rule(self, lhs: str, field: FieldTag = F2) -> str:
        rs = self.rs("glambda", field)
        for r in rs.rules:
            if rs.table.format_word(r.lhs) == lhs:
                return str(r.rhs)
        return "missing"

    def cup_pair(self, a: str, b: str, target: str, field: FieldTag = F2, policy: str = STRICT):
        rs, h = self.rs("glambda", field, policy), self.hopf("glambda", field, policy)
        c = cup(dual(rs, a), dual(rs, b), h, rs)
        return int(pair(c, rs.element(target), rs))

    def dims(self, p, n: int) -> list[int]:
        return series_of(p, n).to_list()

    def fibration_quotients(self):
        pg = series_of(glambda(F2), self.max_degree)
        so3 = polynomial([1, 1], self.max_degree) * polynomial([1, 0, 1], self.max_degree)
        return divide(pg, so3 * so3), divide(pg, polynomial([1, 1], self.max_degree) * so3)


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    basis: str
    expected: Any
    compute: Callable[[Workspace], Any] = field(repr=False)


def _diag(ws: Workspace, text: str) -> str:
    so3, k0 = ws.rs("so3"), ws.rs("k0")
    img = diagonal(ws.hopf("so3"), so3, so3.element(text), k0,
                   {"x1": "x1", "x2": "x2"}, {"x1": "z1", "x2": "z2"})
    return str(img)


def _pair_word(ws: Workspace, a: str, e: str) -> int:
    rs = ws.rs("glambda")
    return int(pair(dual(rs, a), rs.element(e), rs))


def _relations(name: str, field: FieldTag) -> list[str]:
    p = glambda(field) if name == "glambda" else preset(name, field)
    return sorted(str(r) for r in p.relations)


MANIFEST: tuple[Check, ...] = (
    # commutator letters
    Check("w1-expansion", "w1 is the commutator x1*t + t*x1 of degree-one classes", LITERATURE,
          "t*x1 + x1*t", lambda ws: str(ws.rs("glambda").embed(ws.rs("glambda").element("w1")))),
    Check("commutator-x1-t", "[x1, t] = x1*t + t*x1 over F2", LITERATURE, "t*x1 + x1*t",
          lambda ws: str(graded_commutator(ws.presentation("glambda", F2).element("x1"),
                                           ws.presentation("glambda", F2).element("t")))),
    Check("commutator-x3-t-rational", "[x3, t] = x3*t + t*x3 over Q (odd degrees anticommute)",
          LITERATURE, "t*x3 + x3*t",
          lambda ws: str(graded_commutator(ws.presentation("glambda", QQ).element("x3"),
                                           ws.presentation("glambda", QQ).element("t")))),
    Check("degree-w1", "w_i lies in degree i + 1; w1 has degree 2", LITERATURE, 2,
          lambda ws: ws.rs("glambda").embed(ws.rs("glambda").element("w1")).degree()),
    # presentations
    Check("so3-mod2-dims", "H_*(SO(3); F2) is exterior on classes of degree 1 and 2", LITERATURE,
          [1, 1, 1, 1, 0], lambda ws: ws.dims(preset("so3", F2), 4)),
    Check("so3-rational-dims", "H_*(SO(3); Q) has a single generator in degree 3", LITERATURE,
          [1, 0, 0, 1, 0], lambda ws: ws.dims(preset("so3", QQ), 4)),
    Check("truncated-polynomial-a4", "F2[a]/a^4 with deg a = 1 has dimensions 1,1,1,1", LITERATURE,
          [1, 1, 1, 1, 0], lambda ws: ws.dims(truncated_polynomial("a", 1, 4, F2), 4)),
    Check("tensor-product-glambda", "exterior(y1, y2) tensor F2<t,x1,x2>/R has the glambda series",
          LITERATURE, True,
          lambda ws: ws.dims(tensor_product(exterior_algebra([("y1", 1), ("y2", 2)], F2),
                                            glambda_core(F2)), 10) == ws.dims(glambda(F2), 10)),
    Check("glambda-mod2-relations", "relations t^2, x1^2, x2^2, x1*x2 + x2*x1 with y1, y2 central",
          LITERATURE, ["t*t", "x1*x1", "x1*x2 + x2*x1", "x2*x2", "y1*y1", "y2*y2"],
          lambda ws: _relations("glambda", F2)),
    Check("glambda-rational-relations", "relations t^2, x3^2 with y3 exterior and central",
          LITERATURE, ["t*t", "x3*x3", "y3*y3"], lambda ws: _relations("glambda", QQ)),
    Check("so3-mod2-preset", "so3 over F2 is exterior on x1, x2", LITERATURE,
          [["x1", 1], ["x2", 2]], lambda ws: [list(g) for g in preset("so3", F2).generators]),
    # rewriting
    Check("rule-x1-t", "x_i*t = t*x_i + w_i", LITERATURE, "w1 + t*x1", lambda ws: ws.rule("x1*t")),
    Check("rule-x1-w2", "x_i*w_j = w_i*x_j + w3", LITERATURE, "w1*x2 + w3", lambda ws: ws.rule("x1*w2")),
    Check("rule-x3-t-rational", "x3*t = -t*x3 + w3 over Q", LITERATURE, "w3 - t*x3",
          lambda ws: ws.rule("x3*t", QQ)),
    Check("nf-x1-t", "normal form of x1*t is w1 + t*x1", LITERATURE, "w1 + t*x1",
          lambda ws: ws.nf("x1*t")),
    Check("nf-t-t", "t^2 = 0", LITERATURE, "0", lambda ws: ws.nf("t*t")),
    Check("nf-x1-x2-t", "x1*x2*t reduces to w3 + t*x1*x2", COMPUTED, "w3 + t*x1*x2",
          lambda ws: ws.nf("x1*x2*t")),
    Check("basis-degree-1", "H_1 has basis t, x1, y1 (rank 3)", LITERATURE, ["t", "x1", "y1"],
          lambda ws: [ws.rs("glambda").table.format_word(w) for w in ws.rs("glambda").basis_words(1)]),
    Check("basis-degree-2", "H_2 has basis w1, t*x1, t*y1, x2, x1*y1, y2 (rank 6)", LITERATURE,
          sorted(["w1", "t*x1", "t*y1", "x2", "x1*y1", "y2"]),
          lambda ws: sorted(ws.rs("glambda").table.format_word(w) for w in ws.rs("glambda").basis_words(2))),
    Check("rewrite-consistency", "relation multiples vanish and overlaps resolve (sampled)", COMPUTED,
          True, lambda ws: check_consistency(ws.rs("glambda"), min(ws.max_degree, 10), 20, ws.seed).ok),
    # oracle
    Check("oracle-rank-1", "rank of H_1(G_lambda; F2) is 3", LITERATURE, 3,
          lambda ws: quotient_dimension(glambda(F2), 1)),
    Check("oracle-rank-2", "rank of H_2(G_lambda; F2) is 6", LITERATURE, 6,
          lambda ws: quotient_dimension(glambda(F2), 2)),
    Check("oracle-rank-3-4", "ranks of H_3 and H_4 are 11 and 17", COMPUTED, [11, 17],
          lambda ws: [quotient_dimension(glambda(F2), 3), quotient_dimension(glambda(F2), 4)]),
    Check("ideal-t-squared", "t^2 lies in the relation ideal", LITERATURE, True,
          lambda ws: ideal_contains(glambda(F2), glambda(F2).element("t*t"))),
    Check("ideal-w1-nonzero", "w1 = x1*t + t*x1 is a nonzero class in H_2", LITERATURE, False,
          lambda ws: ideal_contains(glambda(F2), glambda(F2).element("x1*t + t*x1"))),
    Check("oracle-basis", "normal-form basis counts equal exact quotient dimensions", COMPUTED, True,
          lambda ws: verify_basis(glambda(F2), ws.rs("glambda"), ws.oracle_max_degree).ok),
    Check("rational-degree-1", "Lambda(t, x, y) tensor Q[w] has one class in degree 1", LITERATURE, 1,
          lambda ws: quotient_dimension(glambda(QQ), 1)),
    # duality
    Check("diagonal-y1", "diagonal sends y1 to x1 + z1", LITERATURE, "x1 + z1",
          lambda ws: _diag(ws, "x1")),
    Check("diagonal-y2", "diagonal sends y2 to x2 + z2 + x1*z1", LITERATURE, "x1*z1 + x2 + z2",
          lambda ws: _diag(ws, "x2")),
    Check("diagonal-y3", "diagonal sends y3 to x3 + z3 + x1*z2 + x2*z1", LITERATURE,
          "x1*x2 + x1*z2 + x2*z1 + z1*z2", lambda ws: _diag(ws, "x1*x2")),
    Check("pair-t-t", "dual(t) evaluates to 1 on t", LITERATURE, 1,
          lambda ws: _pair_word(ws, "dual(t)", "t")),
    Check("pair-t-x1", "dual(t) vanishes on x1", LITERATURE, 0,
          lambda ws: _pair_word(ws, "dual(t)", "x1")),
    Check("pair-t-y1", "dual(t) vanishes on y1", LITERATURE, 0,
          lambda ws: _pair_word(ws, "dual(t)", "y1")),
    Check("cup-t-x1-commutator", "dual(t) cup dual(x1) vanishes on [x1, t]", LITERATURE, 0,
          lambda ws: ws.cup_pair("dual(t)", "dual(x1)", "x1*t + t*x1")),
    Check("cup-t-x2-commutator", "dual(t) cup dual(x2) vanishes on [x2, t]", LITERATURE, 0,
          lambda ws: ws.cup_pair("dual(t)", "dual(x2)", "x2*t + t*x2")),
    Check("cup-t-x3-commutator", "dual(t) cup dual(x1*x2) vanishes on [x1*x2, t]", LITERATURE, 0,
          lambda ws: ws.cup_pair("dual(t)", "dual(x1*x2)", "x1*x2*t + t*x1*x2")),
    Check("cup-t-x3-commutator-rational", "over Q, dual(t) cup dual(x3) vanishes on x3*t + t*x3",
          LITERATURE, 0,
          lambda ws: ws.cup_pair("dual(t)", "dual(x3)", "x3*t + t*x3", QQ, KOSZUL)),
    Check("cup-w1-x1y2-on-w2y2", "<dual(w1) cup dual(x1*y2), w2*y2> = 1", LITERATURE, 1,
          lambda ws: ws.cup_pair("dual(w1)", "dual(x1*y2)", "w2*y2")),
    Check("cup-w1-x1y2-on-w1x1y2", "<dual(w1) cup dual(x1*y2), w1*x1*y2> = 1", COMPUTED, 1,
          lambda ws: ws.cup_pair("dual(w1)", "dual(x1*y2)", "w1*x1*y2")),
    Check("cup-x1-squared", "dual(x1)^2 = dual(x2), as in F2[a]/a^4", LITERATURE, 1,
          lambda ws: ws.cup_pair("dual(x1)", "dual(x1)", "x2")),
    Check("nilpotency-x1", "dual(x1) has multiplicative order 4", LITERATURE, 4,
          lambda ws: nilpotency_order(dual(ws.rs("glambda"), "dual(x1)"), ws.hopf("glambda"),
                                      ws.rs("glambda"), 8)),
    Check("nilpotency-t", "dual(t) squares to zero", LITERATURE, 2,
          lambda ws: nilpotency_order(dual(ws.rs("glambda"), "dual(t)"), ws.hopf("glambda"),
                                      ws.rs("glambda"), 8)),
    Check("nilpotency-y1", "dual(y1) has multiplicative order 4", COMPUTED, 4,
          lambda ws: nilpotency_order(dual(ws.rs("glambda"), "dual(y1)"), ws.hopf("glambda"),
                                      ws.rs("glambda"), 8)),
    Check("coproduct-well-defined", "the coproduct kills relations and is coassociative", COMPUTED, True,
          lambda ws: check_coproduct(ws.hopf("glambda"), ws.rs("glambda"), ws.oracle_max_degree).ok),
    # series
    Check("series-glambda-low", "glambda over F2 starts 1, 3, 6", LITERATURE, [1, 3, 6],
          lambda ws: ws.dims(glambda(F2), 2)),
    Check("series-glambda-closed-form", "glambda series is (1+q)^3 (1+q^2)^2 / (1-q^2-q^3-q^4)",
          COMPUTED, True,
          lambda ws: series_of(glambda(F2), ws.max_degree)
          == evaluate_expression("(1+q)^3*(1+q^2)^2/(1-q^2-q^3-q^4)", ws.max_degree)),
    Check("series-so3", "SO(3) over F2 has series 1, 1, 1, 1", LITERATURE, [1, 1, 1, 1],
          lambda ws: ws.dims(preset("so3", F2), 3)),
    Check("james-w-factor", "tensor algebra on classes of degree 2, 3, 4 (S^1 smash SO(3))", LITERATURE,
          True,
          lambda ws: james_series(polynomial([0, 0, 1, 1, 1], ws.max_degree))
          == series_of(preset("loops_model", F2), ws.max_degree)),
    Check("u0-low-degrees", "H_1(U_0; F2) = F2: P_U0 starts 1, 1, 1", LITERATURE, [1, 1, 1],
          lambda ws: ws.fibration_quotients()[0].to_list()[:3]),
    Check("mayer-vietoris-p1", "dim H_1(U_0) = dim H_0(U_1) = 1", LITERATURE, [1, 1],
          lambda ws: [ws.fibration_quotients()[0][1], ws.fibration_quotients()[1][0]]),
    Check("u0-growth", "dimensions of H_p(U_0) never decrease and keep growing", LITERATURE, True,
          lambda ws: is_nondecreasing(ws.fibration_quotients()[0])
          and ws.fibration_quotients()[0][ws.max_degree] > ws.fibration_quotients()[0][4]),
    Check("fibration-identities", "P_G factors through both strata and the shift identity holds",
          COMPUTED, True, lambda ws: check_fibration_identities(ws.max_degree, F2).ok),
    Check("homotopy-model-mod2", "additive homotopy model over F2", COMPUTED, True,
          lambda ws: check_homotopy_model(ws.max_degree, F2).ok),
    Check("homotopy-model-rational", "(1+q)(1+q^3)^2/(1-q^4) is the rational series", LITERATURE, True,
          lambda ws: check_homotopy_model(ws.max_degree, QQ).ok),
    Check("no-odd-torsion", "glambda over F3 and over Q have equal dimensions", LITERATURE, True,
          lambda ws: ws.dims(glambda(F3), ws.max_degree) == ws.dims(glambda(QQ), ws.max_degree)),
)

SUITES = {"paper": MANIFEST}


@dataclass
class CheckOutcome:
    name: str
    anchor: str
    basis: str
    expected: Any
    observed: Any
    status: str


def run_suite(suite: str = "paper", seed: int = 7, max_degree: int = 16,
              oracle_max_degree: int = 8) -> list[CheckOutcome]:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")
    ws = Workspace(seed, max_degree, oracle_max_degree)
    out = []
    for check in SUITES[suite]:
        try:
            observed = check.compute(ws)
            status = PASS if observed == check.expected else FAIL
        except Exception as exc:  # a crashing check is a failing check
            observed, status = f"{type(exc).__name__}: {exc}", FAIL
        out.append(CheckOutcome(check.name, check.anchor, check.basis, check.expected, observed, status))
    return out


__all__ = ["COMPUTED", "Check", "CheckOutcome", "LITERATURE", "MANIFEST", "SUITES", "Workspace", "run_suite"]
