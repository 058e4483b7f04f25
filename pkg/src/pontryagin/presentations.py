"""Finitely presented graded algebras and the built-in preset registry."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (
    Element,
    FieldTag,
    GeneratorTable,
    ParseError,
    parse_element,
    words_of_degree,
)
from .series import PowerSeries, james_series

STRICT = "strict"
KOSZUL = "koszul"
SIGN_POLICIES = (STRICT, KOSZUL)


class PresentationError(ValueError):
    pass


class UnknownPresetError(KeyError):
    pass


@dataclass(frozen=True)
class Presentation:
    """Generators with degrees, homogeneous relations and a set of central generators.

    Central generators contribute ``g*c - s*c*g`` for every other generator ``g``,
    where ``s`` is 1 under the strict policy and ``(-1)^(|g||c|)`` under the Koszul one.
    ``family`` tags presets whose rewriting system is known in closed form.
    """

    field: FieldTag
    table: GeneratorTable
    relations: tuple[Element, ...] = ()
    central: tuple[str, ...] = ()
    sign_policy: str = STRICT
    family: str | None = None
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        object.__setattr__(self, "central", tuple(self.central))
        if self.sign_policy not in SIGN_POLICIES:
            raise PresentationError(f"sign_policy must be one of {SIGN_POLICIES}")
        for r in self.relations:
            if r.field != self.field or r.table != self.table:
                raise PresentationError(f"relation {r} is over a different context")
            if not r:
                raise PresentationError("relations must be nonzero")
            if not r.is_homogeneous():
                raise PresentationError(f"relation {r} is not homogeneous")
        for c in self.central:
            if c not in self.table:
                raise PresentationError(f"central generator {c!r} is not a generator")

    @property
    def generators(self) -> list[tuple[str, int]]:
        return self.table.entries()

    def commutation_sign(self, g: str, h: str) -> int:
        if self.sign_policy == KOSZUL:
            return -1 if (self.table.degree_of(g) * self.table.degree_of(h)) % 2 else 1
        return 1

    def commutation_relation(self, g: str, h: str) -> Element:
        """``g*h - s*h*g`` with ``s`` chosen by the sign policy."""
        eg = Element.letter(self.field, self.table, g)
        eh = Element.letter(self.field, self.table, h)
        return eg * eh - (eh * eg).scale(self.commutation_sign(g, h))

    def all_relations(self) -> tuple[Element, ...]:
        """Explicit relations followed by the centrality expansion, duplicates removed."""
        out: list[Element] = []
        seen: set[Element] = set()

        def push(r: Element):
            if r and r not in seen and -r not in seen:
                seen.add(r)
                out.append(r)

        for r in self.relations:
            push(r)
        names = self.table.names
        done: set[frozenset] = set()
        for c in self.central:
            for g in names:
                pair = frozenset((g, c))
                if g == c or pair in done:
                    continue
                done.add(pair)
                hi, lo = (g, c) if self.table.index(g) > self.table.index(c) else (c, g)
                push(self.commutation_relation(hi, lo))
        return tuple(out)

    def element(self, text: str) -> Element:
        return parse_element(text, self.table, self.field)

    def to_json(self) -> dict:
        return {
            "field": self.field.name,
            "generators": [{"name": n, "degree": d} for n, d in self.generators],
            "relations": [str(r) for r in self.relations],
            "central": list(self.central),
            "sign_policy": self.sign_policy,
        }

    @classmethod
    def from_json(cls, data: dict | str) -> Presentation:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            field_ = FieldTag.parse(data["field"])
            table = GeneratorTable.of((g["name"], int(g["degree"])) for g in data["generators"])
        except (KeyError, TypeError) as exc:
            raise PresentationError(f"malformed presentation JSON: missing {exc}") from None
        try:
            rels = [parse_element(r, table, field_) for r in data.get("relations", [])]
        except ParseError as exc:
            raise PresentationError(str(exc)) from None
        return cls(field_, table, tuple(rels), tuple(data.get("central", [])),
                   data.get("sign_policy", STRICT), name=data.get("name"))

    def __repr__(self):
        rels = ", ".join(str(r) for r in self.relations)
        return (f"Presentation({self.name or '?'}, {self.field.name}, "
                f"gens={self.generators}, relations=[{rels}], central={list(self.central)})")


def _check_gens(gens: Sequence[tuple[str, int]]) -> GeneratorTable:
    try:
        return GeneratorTable.of(gens)
    except ValueError as exc:
        raise PresentationError(str(exc)) from None


def free_algebra(gens: Sequence[tuple[str, int]], field: FieldTag, name: str | None = None) -> Presentation:
    return Presentation(field, _check_gens(gens), name=name)


def exterior_algebra(gens: Sequence[tuple[str, int]], field: FieldTag,
                     sign_policy: str = STRICT, name: str | None = None) -> Presentation:
    """Every generator squares to zero and all generators commute (per ``sign_policy``)."""
    table = _check_gens(gens)
    rels = tuple(Element.from_word(field, table, (i, i)) for i in range(len(table)))
    return Presentation(field, table, rels, table.names, sign_policy, name=name)


def truncated_polynomial(name: str, degree: int, order: int, field: FieldTag,
                         label: str | None = None) -> Presentation:
    """``F[g]/(g^order)``; warns when ``order`` is not a power of the characteristic."""
    if order < 2:
        raise PresentationError("order must be at least 2")
    p = field.characteristic
    if p:
        k = order
        while k % p == 0:
            k //= p
        if k != 1:
            warnings.warn(f"order {order} is not a power of the characteristic {p}", stacklevel=2)
    table = _check_gens([(name, degree)])
    return Presentation(field, table, (Element.from_word(field, table, (0,) * order),),
                        name=label)


def _transport(e: Element, table: GeneratorTable, offset: int) -> Element:
    return Element(e.field, table, {tuple(i + offset for i in w): c for w, c in e.terms.items()})


def tensor_product(p: Presentation, q: Presentation, name: str | None = None) -> Presentation:
    """Graded tensor product: generators of ``p`` then ``q``, factors commute (``p``'s sign policy)."""
    if p.field != q.field:
        raise PresentationError(f"field mismatch: {p.field} vs {q.field}")
    clash = set(p.table.names) & set(q.table.names)
    if clash:
        raise PresentationError(f"generator names collide, rename first: {sorted(clash)}")
    table = GeneratorTable(p.table.names + q.table.names, p.table.degrees + q.table.degrees)
    rels = [_transport(r, table, 0) for r in p.relations]
    rels += [_transport(r, table, len(p.table)) for r in q.relations]
    # cross relations are expanded explicitly so that ``central`` keeps its meaning
    proto = Presentation(p.field, table, (), (), p.sign_policy)
    for h in q.table.names:
        for g in p.table.names:
            rels.append(proto.commutation_relation(h, g))
    central = tuple(c for c in p.central + q.central)
    return Presentation(p.field, table, tuple(rels), central, p.sign_policy, name=name)


def rename(p: Presentation, mapping: dict[str, str], name: str | None = None) -> Presentation:
    table = GeneratorTable(tuple(mapping.get(n, n) for n in p.table.names), p.table.degrees)
    rels = tuple(Element(p.field, table, r.terms) for r in p.relations)
    central = tuple(mapping.get(c, c) for c in p.central)
    return Presentation(p.field, table, rels, central, p.sign_policy, p.family, name or p.name)


# -- basis schemas for the strata models -----------------------------------

@dataclass(frozen=True)
class BasisSchema:
    """Words ``f_I * e`` with ``f_I`` any word in ``free`` letters and ``e`` an
    ordered product of distinct ``tail`` letters (each used at most once)."""

    name: str
    field: FieldTag
    free: tuple[tuple[str, int], ...]
    tail: tuple[tuple[str, int], ...]

    def words(self, d: int) -> list[str]:
        free_table = GeneratorTable.of(self.free) if self.free else None
        out = []
        n = len(self.tail)
        for mask in range(1 << n):
            chosen = [self.tail[i] for i in range(n) if mask >> i & 1]
            rest = d - sum(deg for _, deg in chosen)
            if rest < 0:
                continue
            heads = [()] if rest == 0 else (words_of_degree(free_table, rest) if free_table else [])
            tail_txt = [nm for nm, _ in chosen]
            for w in heads:
                letters = [self.free[i][0] for i in w] + tail_txt
                out.append("*".join(letters) or "1")
        return sorted(out)

    def series(self, N: int) -> PowerSeries:
        v = PowerSeries([0] * (N + 1))
        for _, deg in self.free:
            v = v + PowerSeries.monomial(deg, N)
        s = james_series(v, N)
        for _, deg in self.tail:
            s = s * (PowerSeries.one(N) + PowerSeries.monomial(deg, N))
        return s


# -- presets -----------------------------------------------------------------

def _odd(field: FieldTag) -> bool:
    return field.characteristic != 2


def _so3(field: FieldTag, letter: str = "x") -> Presentation:
    if _odd(field):
        return exterior_algebra([(f"{letter}3", 3)], field, name="so3")
    return exterior_algebra([(f"{letter}1", 1), (f"{letter}2", 2)], field, name="so3")


def _k0(field: FieldTag) -> Presentation:
    return tensor_product(_so3(field, "x"), _so3(field, "z"), name="k0")


def _k1(field: FieldTag) -> Presentation:
    circle = exterior_algebra([("t", 1)], field)
    return tensor_product(circle, _so3(field, "y"), name="k1")


def glambda_core(field: FieldTag) -> Presentation:
    """The noncommutative factor ``F<t, x_i>/R`` without the central exterior part."""
    if _odd(field):
        table = GeneratorTable(("t", "x3"), (1, 3))
        rels = [parse_element(s, table, field) for s in ("t*t", "x3*x3")]
    else:
        table = GeneratorTable(("t", "x1", "x2"), (1, 1, 2))
        rels = [parse_element(s, table, field)
                for s in ("t*t", "x1*x1", "x2*x2", "x1*x2 + x2*x1")]
    return Presentation(field, table, tuple(rels), name="glambda_core")


def _glambda(field: FieldTag, sign_policy: str = STRICT) -> Presentation:
    core = glambda_core(field)
    if _odd(field):
        table = GeneratorTable(("t", "x3", "y3"), (1, 3, 3))
        extra, central = ["y3*y3"], ("y3",)
    else:
        table = GeneratorTable(("t", "x1", "x2", "y1", "y2"), (1, 1, 2, 1, 2))
        extra, central = ["y1*y1", "y2*y2"], ("y1", "y2")
    rels = [Element(field, table, r.terms) for r in core.relations]
    rels += [parse_element(s, table, field) for s in extra]
    return Presentation(field, table, tuple(rels), central, sign_policy,
                        family="glambda", name="glambda")


def _u0_model(field: FieldTag) -> BasisSchema:
    free = (("v3", 4),) if _odd(field) else (("v1", 2), ("v2", 3), ("v3", 4))
    return BasisSchema("u0_model", field, free, (("t", 1),))


def _u1_model(field: FieldTag) -> BasisSchema:
    if _odd(field):
        return BasisSchema("u1_model", field, (("u3", 4),), (("x3", 3),))
    return BasisSchema("u1_model", field, (("u1", 2), ("u2", 3), ("u3", 4)),
                       (("x1", 1), ("x2", 2)))


def smash_s1_so3_series(field: FieldTag, N: int = 16) -> PowerSeries:
    """Reduced homology series of ``S^1 smash SO(3)``: ``q`` times reduced ``SO(3)``."""
    so3 = _so3(field)
    s = PowerSeries.one(N)
    for _, d in so3.generators:
        s = s * (PowerSeries.one(N) + PowerSeries.monomial(d, N))
    reduced = s - PowerSeries.one(N)
    return reduced.shift(1)


def _loops_model(field: FieldTag) -> Presentation:
    if _odd(field):
        return free_algebra([("w3", 4)], field, name="loops_model")
    return free_algebra([("w1", 2), ("w2", 3), ("w3", 4)], field, name="loops_model")


PRESETS = {
    "so3": _so3,
    "k0": _k0,
    "k1": _k1,
    "glambda": _glambda,
    "u0_model": _u0_model,
    "u1_model": _u1_model,
    "smash_s1_so3": smash_s1_so3_series,
    "loops_model": _loops_model,
}

PRESET_DESCRIPTIONS = {
    "so3": "homology of SO(3): exterior on x1, x2 (char 2) or on x3 (otherwise)",
    "k0": "SO(3) x SO(3): exterior on x- and z-families",
    "k1": "S^1 x SO(3): exterior on t and the y-family",
    "glambda": "Pontryagin ring of the symplectomorphism group (0 < lambda <= 1)",
    "u0_model": "basis schema v_I t^e of the open stratum",
    "u1_model": "basis schema u_I x^e of the codimension-2 stratum",
    "smash_s1_so3": "reduced Poincare series of S^1 smash SO(3)",
    "loops_model": "tensor algebra on the reduced homology of S^1 smash SO(3)",
}


def preset(name: str, field: FieldTag = FieldTag(2)):
    """Resolve a preset to a :class:`Presentation`, :class:`BasisSchema` or :class:`PowerSeries`."""
    try:
        builder = PRESETS[name]
    except KeyError:
        raise UnknownPresetError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}") from None
    return builder(field)


def glambda(field: FieldTag = FieldTag(2), sign_policy: str = STRICT) -> Presentation:
    return _glambda(field, sign_policy)


__all__ = [
    "BasisSchema", "KOSZUL", "PRESETS", "Presentation", "PresentationError", "STRICT",
    "UnknownPresetError", "exterior_algebra", "free_algebra", "glambda", "glambda_core",
    "preset", "rename", "smash_s1_so3_series", "tensor_product", "truncated_polynomial",
]
