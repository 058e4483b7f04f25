"""Coproducts on presented algebras and the dual pairing / cup product they induce.

A :class:`HopfStructure` fixes ``Delta`` on generators. It is extended to words
as an algebra map into ``A (x) A`` with the Koszul rule
``(a (x) b)(c (x) d) = (-1)^(|b||c|) ac (x) bd``, and both tensor factors are
kept in normal form. Cohomology classes are handled degree by degree as
coordinate vectors against the normal-form basis.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .algebra import Element, FieldTag, GeneratorTable, MIXED, ParseError, Word, ZERO, word_key
from .presentations import Presentation
from .report import Report
from .rewrite import RewriteSystem

Pair = tuple  # (Word, Word)


class HopfError(ValueError):
    pass


class TensorElement:
    """Finite sum of ``c * (u (x) v)`` with ``u``, ``v`` words over one table."""

    __slots__ = ("field", "table", "terms")

    def __init__(self, field: FieldTag, table: GeneratorTable, terms: Mapping[Pair, object] = ()):
        self.field, self.table = field, table
        acc: dict[Pair, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, c in items:
            acc[k] = acc.get(k, 0) + c
        self.terms = {k: field(c) for k, c in acc.items() if field(c) != 0}

    @classmethod
    def tensor(cls, a: Element, b: Element) -> TensorElement:
        return cls(a.field, a.table, {(u, v): x * y for u, x in a.terms.items()
                                      for v, y in b.terms.items()})

    def __add__(self, other: TensorElement) -> TensorElement:
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return TensorElement(self.field, self.table, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> TensorElement:
        return TensorElement(self.field, self.table, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: TensorElement) -> TensorElement:
        deg, f = self.table.word_degree, self.field
        out: dict[Pair, object] = {}
        for (a, b), x in self.terms.items():
            db = deg(b)
            for (c, d), y in other.terms.items():
                k = (a + c, b + d)
                out[k] = out.get(k, 0) + f.sign(db * deg(c)) * x * y
        return TensorElement(f, self.table, out)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        key = lambda kv: (word_key(self.table, kv[0][0]), word_key(self.table, kv[0][1]))  # noqa: E731
        return sorted(self.terms.items(), key=key)

    def component(self, left_degree: int) -> TensorElement:
        deg = self.table.word_degree
        return TensorElement(self.field, self.table,
                             {k: c for k, c in self.terms.items() if deg(k[0]) == left_degree})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (u, v), c in self.items():
            neg = self.field.p is None and c < 0
            mag = -c if neg else c
            body = f"{self.table.format_word(u)} ⊗ {self.table.format_word(v)}"
            if mag != 1:
                body = f"{mag}*({body})"
            parts.append(("- " if neg else "+ ") + body)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    __repr__ = __str__


@dataclass
class HopfStructure:
    """Values of the coproduct on the generators of ``presentation``."""

    presentation: Presentation
    delta: dict[str, TensorElement]
    _engines: dict = field(default_factory=dict, repr=False, compare=False)
    _validated: set = field(default_factory=set, repr=False, compare=False)

    def __post_init__(self):
        table = self.presentation.table
        for name in table.names:
            if name not in self.delta:
                raise HopfError(f"no coproduct given for generator {name!r}")
        for name, d in self.delta.items():
            if d.table != table:
                raise HopfError(f"coproduct of {name} is over the wrong table")
            g = table.word(name)
            if d.terms.get((g, ())) != 1 or d.terms.get(((), g)) != 1:
                raise HopfError(f"coproduct of {name} must contain {name}⊗1 + 1⊗{name}")
            if any(not u and not v for u, v in d.terms):
                raise HopfError(f"coproduct of {name} has a 1⊗1 term")

    def engine(self, rs: RewriteSystem) -> "_Coalgebra":
        if rs.base is not self.presentation and rs.base != self.presentation:
            raise HopfError("rewriting system was compiled from another presentation")
        eng = self._engines.get(id(rs))
        if eng is None or eng.rs is not rs:
            eng = self._engines[id(rs)] = _Coalgebra(self, rs)
        return eng


def standard_hopf(p: Presentation) -> HopfStructure:
    """The coproduct carried by the preset families.

    Every generator is primitive, except that in characteristic 2 a degree-2
    generator ``a2`` with a degree-1 partner ``a1`` gets the SO(3) coproduct
    ``a2⊗1 + a1⊗a1 + 1⊗a2``.
    """
    table, f = p.table, p.field
    delta = {}
    for name, d in table.entries():
        g = table.word(name)
        terms = {(g, ()): 1, ((), g): 1}
        m = re.fullmatch(r"([A-Za-z_]+)2", name)
        partner = f"{m.group(1)}1" if m else None
        if (f.characteristic == 2 and d == 2 and partner in table
                and table.degree_of(partner) == 1):
            h = table.word(partner)
            terms[(h, h)] = 1
        delta[name] = TensorElement(f, table, terms)
    return HopfStructure(p, delta)


class _Coalgebra:
    """Memoised coproducts of words for one (HopfStructure, RewriteSystem) pair."""

    def __init__(self, h: HopfStructure, rs: RewriteSystem):
        self.h, self.rs = h, rs
        self.field, self.table = rs.field, rs.table
        self._words: dict[Word, dict[Pair, object]] = {(): {((), ()): self.field(1)}}
        self._letters: dict[int, dict[Pair, object]] = {}

    def _normalize(self, terms: Mapping[Pair, object]) -> dict[Pair, object]:
        f, nf = self.field, self.rs._nf_word
        out: dict[Pair, object] = {}
        for (u, v), c in terms.items():
            nu = nf(u)
            if not nu:
                continue
            nv = nf(v)
            for a, x in nu.items():
                for b, y in nv.items():
                    out[(a, b)] = out.get((a, b), 0) + c * x * y
        return {k: f(c) for k, c in out.items() if f(c) != 0}

    def _multiply(self, s: Mapping[Pair, object], t: Mapping[Pair, object]) -> dict[Pair, object]:
        deg, f = self.table.word_degree, self.field
        out: dict[Pair, object] = {}
        for (a, b), x in s.items():
            db = deg(b)
            for (c, d), y in t.items():
                k = (a + c, b + d)
                out[k] = out.get(k, 0) + f.sign(db * deg(c)) * x * y
        return self._normalize(out)

    def letter(self, i: int) -> dict[Pair, object]:
        if i in self._letters:
            return self._letters[i]
        rs, name = self.rs, self.table.names[i]
        if name in rs.embed_map:
            acc: dict[Pair, object] = {}
            for w, c in rs.lift(rs.embed_map[name]).terms.items():
                for k, v in self.word(w).items():
                    acc[k] = acc.get(k, 0) + c * v
            val = {k: self.field(c) for k, c in acc.items() if self.field(c) != 0}
        else:
            d = self.h.delta[name]
            to = rs._to_ext
            lifted = {(tuple(to[j] for j in u), tuple(to[j] for j in v)): c
                      for (u, v), c in d.terms.items()}
            val = self._normalize(lifted)
        self._letters[i] = val
        return val

    def word(self, w: Word) -> dict[Pair, object]:
        w = tuple(w)
        got = self._words.get(w)
        if got is None:
            got = self._multiply(self.word(w[:-1]), self.letter(w[-1]))
            self._words[w] = got
        return got

    def element(self, e: Element) -> TensorElement:
        e = self.rs.lift(e)
        acc: dict[Pair, object] = {}
        for w, c in e.terms.items():
            for k, v in self.word(w).items():
                acc[k] = acc.get(k, 0) + c * v
        return TensorElement(self.field, self.table, acc)


def coproduct(h: HopfStructure, rs: RewriteSystem, e: Element) -> TensorElement:
    """``Delta(e)`` with both tensor factors in normal form."""
    if e.degree() == MIXED:
        raise HopfError("coproduct expects a homogeneous element")
    return h.engine(rs).element(e)


def tensor_normal_form(rs: RewriteSystem, t: TensorElement) -> TensorElement:
    eng = _Coalgebra.__new__(_Coalgebra)
    eng.rs, eng.field, eng.table = rs, rs.field, rs.table
    return TensorElement(rs.field, rs.table, eng._normalize(t.terms))


# -- duals ---------------------------------------------------------------------

class DualElement:
    """A degree-``d`` cohomology class as coordinates on the normal-form basis of degree ``d``."""

    __slots__ = ("field", "table", "degree", "coords")

    def __init__(self, field: FieldTag, table: GeneratorTable, degree: int,
                 coords: Mapping[Word, object] = ()):
        self.field, self.table, self.degree = field, table, degree
        items = coords.items() if isinstance(coords, Mapping) else coords
        acc: dict[Word, object] = {}
        for w, c in items:
            if table.word_degree(w) != degree:
                raise ValueError(f"{table.format_word(w)} is not of degree {degree}")
            acc[w] = acc.get(w, 0) + c
        self.coords = {w: field(c) for w, c in acc.items() if field(c) != 0}

    def __add__(self, other: DualElement) -> DualElement:
        if other.degree != self.degree:
            raise ValueError("cannot add duals of different degrees")
        out = dict(self.coords)
        for w, c in other.coords.items():
            out[w] = out.get(w, 0) + c
        return DualElement(self.field, self.table, self.degree, out)

    def scale(self, c) -> DualElement:
        return DualElement(self.field, self.table, self.degree,
                           {w: v * c for w, v in self.coords.items()})

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.coords
        if not isinstance(other, DualElement):
            return NotImplemented
        return self.degree == other.degree and self.coords == other.coords

    __hash__ = None

    def __bool__(self):
        return bool(self.coords)

    def __str__(self):
        if not self.coords:
            return "0"
        parts = []
        for w, c in sorted(self.coords.items()):
            neg = self.field.p is None and c < 0
            mag = -c if neg else c
            body = f"dual({self.table.format_word(w)})"
            if mag != 1:
                body = f"{mag}*{body}"
            parts.append(("- " if neg else "+ ") + body)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    __repr__ = __str__


_DUAL_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?dual\(([^()]*)\)\s*")


def dual(rs: RewriteSystem, text: str) -> DualElement:
    """Parse ``"dual(w1)"`` or a combination like ``"dual(x2) + dual(t*x1)"``.

    Each ``dual(...)`` must name a normal-form basis word.
    """
    pos, terms, degree = 0, {}, None
    text = text.strip()
    while pos < len(text):
        m = _DUAL_TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse dual expression at {pos}: {text!r}")
        sign, coeff, body = m.groups()
        if terms and sign is None:
            raise ParseError(f"missing '+' or '-' before dual({body})")
        w_el = rs.element(body)
        if len(w_el) != 1 or w_el.coefficient(next(iter(w_el.terms))) != 1:
            raise ParseError(f"dual({body}) must name a single word")
        w = next(iter(w_el.terms))
        if not rs.is_irreducible(w):
            raise ParseError(f"{body} is not a normal-form basis word (its normal form is "
                             f"{rs.normal_form(w_el)})")
        d = rs.table.word_degree(w)
        if degree is not None and d != degree:
            raise ParseError("all terms of a dual expression must share one degree")
        degree = d
        c = rs.field.parse_scalar(coeff) if coeff else rs.field(1)
        terms[w] = terms.get(w, 0) + (-c if sign == "-" else c)
        pos = m.end()
    if degree is None:
        raise ParseError("empty dual expression")
    return DualElement(rs.field, rs.table, degree, terms)


def dual_of_word(rs: RewriteSystem, word: Word) -> DualElement:
    return DualElement(rs.field, rs.table, rs.table.word_degree(word), {tuple(word): 1})


def pair(a: DualElement, e: Element, rs: RewriteSystem):
    """Evaluate ``a`` on the class of ``e``."""
    n = rs.normal_form(e)
    d = n.degree()
    if d == ZERO:
        return rs.field(0)
    if d != a.degree:
        raise ValueError(f"degree mismatch: dual of degree {a.degree}, element of degree {d}")
    return rs.field(sum(c * n.coefficient(w) for w, c in a.coords.items()))


def ensure_valid(h: HopfStructure, rs: RewriteSystem):
    """Raise unless ``Delta`` kills every relation (the coproduct is well defined)."""
    if id(rs) in h._validated:
        return
    eng = h.engine(rs)
    for r in rs.base.all_relations():
        img = eng.element(r)
        if img:
            raise HopfError(f"coproduct does not kill relation {r}: {img}")
    h._validated.add(id(rs))


def cup(a: DualElement, b: DualElement, h: HopfStructure, rs: RewriteSystem) -> DualElement:
    """``<a ∪ b, c> = sum (-1)^(|b||u|) a(u) b(v)`` over ``Delta(c) = sum u ⊗ v``."""
    ensure_valid(h, rs)
    eng = h.engine(rs)
    n = a.degree + b.degree
    f = rs.field
    sign = f.sign(a.degree * b.degree)
    coords = {}
    for c in rs.basis_words(n):
        total = 0
        for (u, v), x in eng.word(c).items():
            au = a.coords.get(u)
            if au is None:
                continue
            bv = b.coords.get(v)
            if bv is not None:
                total += x * au * bv
        if f(total):
            coords[c] = sign * total
    return DualElement(f, rs.table, n, coords)


def nilpotency_order(g: DualElement, h: HopfStructure, rs: RewriteSystem, bound: int = 16) -> int | None:
    """Least ``k`` with ``g^k = 0`` under cup product, or ``None`` if ``k > bound``."""
    if not g:
        return 1
    power = g
    for k in range(2, bound + 1):
        power = cup(power, g, h, rs)
        if not power:
            return k
    return None


def diagonal(h: HopfStructure, rs: RewriteSystem, e: Element, target: RewriteSystem,
             left: Mapping[str, str], right: Mapping[str, str]) -> Element:
    """Image of ``e`` under the diagonal into a product group: ``u ⊗ v -> left(u) * right(v)``."""
    t = coproduct(h, rs, e)
    f = target.field
    out = Element.zero(f, target.table)
    for (u, v), c in t.terms.items():
        lu = Element.one(f, target.table)
        for i in u:
            lu = lu * Element.letter(f, target.table, left[rs.table.names[i]])
        rv = Element.one(f, target.table)
        for i in v:
            rv = rv * Element.letter(f, target.table, right[rs.table.names[i]])
        out = out + (lu * rv).scale(c)
    return target.normal_form(out)


# -- checks ----------------------------------------------------------------------

def _triple(eng: _Coalgebra, terms: Mapping[Pair, object], side: str) -> dict:
    out: dict = {}
    for (u, v), c in terms.items():
        if side == "left":
            for (a, b), x in eng.word(u).items():
                out[(a, b, v)] = out.get((a, b, v), 0) + c * x
        else:
            for (a, b), x in eng.word(v).items():
                out[(u, a, b)] = out.get((u, a, b), 0) + c * x
    f = eng.field
    return {k: f(c) for k, c in out.items() if f(c) != 0}


def check_coproduct(h: HopfStructure, rs: RewriteSystem, dmax: int) -> Report:
    """Well-definedness on relations, coassociativity and counit on basis words up to ``dmax``.

    Cocommutativity is recorded for information only.
    """
    report = Report("coproduct")
    eng = h.engine(rs)
    f, table = rs.field, rs.table
    for r in rs.base.all_relations():
        if r.degree() > dmax:
            continue
        img = eng.element(r)
        report.add(f"Delta({r}) = 0", not img, r.degree(), None if not img else str(img))
    for d in range(dmax + 1):
        coassoc_bad, counit_bad, cocomm = None, None, True
        for c in rs.basis_words(d):
            dc = eng.word(c)
            if _triple(eng, dc, "left") != _triple(eng, dc, "right") and coassoc_bad is None:
                coassoc_bad = table.format_word(c)
            left_unit = {v: x for (u, v), x in dc.items() if not u}
            right_unit = {u: x for (u, v), x in dc.items() if not v}
            if (left_unit != {c: 1} or right_unit != {c: 1}) and counit_bad is None:
                counit_bad = table.format_word(c)
            twisted = {(v, u): f(f.sign(table.word_degree(u) * table.word_degree(v)) * x)
                       for (u, v), x in dc.items()}
            if twisted != dc:
                cocomm = False
        report.add("coassociativity", coassoc_bad is None, d, coassoc_bad)
        report.add("counit", counit_bad is None, d, counit_bad)
        report.add("cocommutativity", None, d, cocomm)
    return report


__all__ = [
    "DualElement", "HopfError", "HopfStructure", "TensorElement", "check_coproduct",
    "coproduct", "cup", "diagonal", "dual", "dual_of_word", "ensure_valid",
    "nilpotency_order", "pair", "standard_hopf", "tensor_normal_form",
]
