"""Oriented rewriting systems, normal forms and normal-form basis words.

Words are compared by degree, then lexicographically by generator precedence.
Every rule rewrites its left-hand word into strictly smaller words of the same
degree, so reduction terminates. No completion is attempted: whether the
irreducible words form a basis is certified degree by degree against
:mod:`pontryagin.oracle`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .algebra import (
    Element,
    GeneratorTable,
    IncompatibleContextError,
    Word,
    graded_commutator,
    parse_element,
    random_element,
    word_key,
)
from .presentations import Presentation
from .report import Report


class OrientationError(ValueError):
    pass


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: Element

    def format(self, table: GeneratorTable) -> str:
        return f"{table.format_word(self.lhs)} -> {self.rhs}"


class RewriteSystem:
    """Rules over an extended alphabet together with the substitution back to base letters.

    ``embed_map`` sends each derived letter (e.g. ``w1``) to an element over the
    base table; base letters keep their names in the extended table.
    """

    def __init__(self, base: Presentation, table: GeneratorTable,
                 rules: Iterable[RewriteRule], embed_map: dict[str, Element] | None = None):
        self.base = base
        self.table = table
        self.field = base.field
        self.rules = tuple(rules)
        self.embed_map = dict(embed_map or {})
        for name in base.table.names:
            if name not in table:
                raise ValueError(f"extended table lacks base letter {name!r}")
        for name in table.names:
            if name not in base.table and name not in self.embed_map:
                raise ValueError(f"derived letter {name!r} has no embedding")
        self._by_lhs: dict[Word, RewriteRule] = {}
        for r in self.rules:
            if r.rhs.table != table:
                raise ValueError("rule right-hand side over the wrong table")
            for w in r.rhs.terms:
                if word_key(table, w) >= word_key(table, r.lhs):
                    raise OrientationError(f"rule {r.format(table)} does not decrease")
            self._by_lhs.setdefault(r.lhs, r)
        self._rank = {id(r): i for i, r in enumerate(self.rules)}
        self._lengths = sorted({len(lhs) for lhs in self._by_lhs})
        self._to_ext = tuple(table.index(n) for n in base.table.names)
        self._memo: dict[Word, dict[Word, object]] = {}
        self._depth: dict[Word, int] = {}
        self._basis: dict[int, list[Word]] = {}
        self._letter_images: dict[int, Element] = {}

    # -- conversions ------------------------------------------------------
    def lift(self, e: Element) -> Element:
        """Express a base-table element over the extended table."""
        if e.table == self.table:
            return e
        if e.table != self.base.table or e.field != self.field:
            raise IncompatibleContextError("element is not over this system's base presentation")
        to = self._to_ext
        return Element._raw(self.field, self.table,
                            {tuple(to[i] for i in w): c for w, c in e.terms.items()})

    def element(self, text: str) -> Element:
        return parse_element(text, self.table, self.field)

    def _letter_image(self, i: int) -> Element:
        img = self._letter_images.get(i)
        if img is None:
            name = self.table.names[i]
            if name in self.embed_map:
                img = self.embed_map[name]
            else:
                img = Element.letter(self.field, self.base.table, name)
            self._letter_images[i] = img
        return img

    def embed(self, e: Element) -> Element:
        """Substitute derived letters by their base expressions."""
        if e.table == self.base.table:
            return e
        if e.table != self.table:
            raise IncompatibleContextError("element is not over this system's tables")
        one = Element.one(self.field, self.base.table)
        out = Element.zero(self.field, self.base.table)
        for w, c in e.terms.items():
            img = one
            for i in w:
                img = img * self._letter_image(i)
            out = out + img.scale(c)
        return out

    # -- reduction --------------------------------------------------------
    def find_redex(self, word: Word) -> tuple[int, RewriteRule] | None:
        """Leftmost redex; among rules matching there, the first registered."""
        n = len(word)
        for pos in range(n):
            best = None
            for L in self._lengths:
                if pos + L > n:
                    break
                r = self._by_lhs.get(word[pos:pos + L])
                if r is not None and (best is None or self._rank[id(r)] < self._rank[id(best)]):
                    best = r
            if best is not None:
                return pos, best
        return None

    def apply_at(self, word: Word, pos: int, rule: RewriteRule) -> dict[Word, object]:
        pre, post = word[:pos], word[pos + len(rule.lhs):]
        return {pre + w + post: c for w, c in rule.rhs.terms.items()}

    def _nf_word(self, word: Word) -> dict[Word, object]:
        memo, depth, f = self._memo, self._depth, self.field
        if word in memo:
            return memo[word]
        stack = [word]
        pending: dict[Word, dict | None] = {}
        while stack:
            top = stack[-1]
            if top in memo:
                stack.pop()
                continue
            if top not in pending:
                hit = self.find_redex(top)
                pending[top] = None if hit is None else self.apply_at(top, *hit)
            succ = pending[top]
            if succ is None:
                memo[top], depth[top] = {top: f(1)}, 0
                stack.pop()
                continue
            missing = [u for u in succ if u not in memo]
            if missing:
                stack.extend(missing)
                continue
            acc: dict[Word, object] = {}
            for u, c in succ.items():
                for v, d in memo[u].items():
                    acc[v] = acc.get(v, 0) + c * d
            memo[top] = {v: f(c) for v, c in acc.items() if f(c) != 0}
            depth[top] = 1 + max((depth[u] for u in succ), default=0)
            del pending[top]
            stack.pop()
        return memo[word]

    def normal_form(self, e: Element) -> Element:
        e = self.lift(e)
        f = self.field
        acc: dict[Word, object] = {}
        for w, c in e.terms.items():
            for v, d in self._nf_word(w).items():
                acc[v] = acc.get(v, 0) + c * d
        return Element._raw(f, self.table, {v: f(c) for v, c in acc.items() if f(c) != 0})

    def chain_length(self, word: Word) -> int:
        """Longest rewrite chain starting at ``word`` (0 when irreducible)."""
        self._nf_word(tuple(word))
        return self._depth[tuple(word)]

    def is_irreducible(self, word: Word) -> bool:
        return self.find_redex(tuple(word)) is None

    def basis_words(self, d: int) -> list[Word]:
        """All irreducible words of degree ``d``, in canonical order."""
        if d in self._basis:
            return list(self._basis[d])
        out: list[Word] = []
        degs = self.table.degrees
        lhs, lengths = self._by_lhs, self._lengths

        def grow(prefix: Word, rem: int):
            if rem == 0:
                out.append(prefix)
                return
            for i, gd in enumerate(degs):
                if gd > rem:
                    continue
                w = prefix + (i,)
                if any(L <= len(w) and w[len(w) - L:] in lhs for L in lengths):
                    continue
                grow(w, rem - gd)

        if d >= 0:
            grow((), d)
        self._basis[d] = out
        return list(out)

    def multiply(self, a: Element, b: Element) -> Element:
        """Product in the quotient algebra, returned in normal form."""
        return self.normal_form(self.lift(a) * self.lift(b))

    def format_rules(self) -> list[str]:
        return [r.format(self.table) for r in self.rules]


def normal_form(rs: RewriteSystem, e: Element) -> Element:
    return rs.normal_form(e)


def basis_words(rs: RewriteSystem, d: int) -> list[Word]:
    return rs.basis_words(d)


# -- compilation --------------------------------------------------------------

def compile_presentation(p: Presentation) -> RewriteSystem:
    """Compile ``p`` into a rewriting system.

    The ``glambda`` family gets its closed-form rule set over the alphabet
    extended by the commutator letters; any other presentation is oriented
    naively at leading words after inter-reduction.
    """
    if p.family == "glambda":
        if p.field.characteristic == 2:
            return _compile_glambda_char2(p)
        return _compile_glambda_odd(p)
    return _compile_generic(p)


def _rule_builder(table: GeneratorTable, p: Presentation):
    rules: list[RewriteRule] = []

    def rule(lhs: str, rhs: str | Element):
        if isinstance(rhs, str):
            rhs = parse_element(rhs, table, p.field)
        rules.append(RewriteRule(table.word(*lhs.split("*")), rhs))

    return rules, rule


def _compile_glambda_char2(p: Presentation) -> RewriteSystem:
    ext = GeneratorTable(("w1", "w2", "w3", "t", "x1", "x2", "y1", "y2"),
                         (2, 3, 4, 1, 1, 2, 1, 2))
    base = p.table
    B = lambda s: parse_element(s, base, p.field)  # noqa: E731
    xs = {1: "x1", 2: "x2", 3: "x1*x2"}
    embed = {f"w{i}": graded_commutator(B(xs[i]), B("t")) for i in (1, 2, 3)}
    rules, rule = _rule_builder(ext, p)
    for g in ("t", "x1", "x2", "y1", "y2"):
        rule(f"{g}*{g}", "0")
    rule("x2*x1", "x1*x2")
    for i in (1, 2):
        rule(f"x{i}*t", f"t*x{i} + w{i}")
    for j in (1, 2, 3):
        rule(f"t*w{j}", f"w{j}*t")
    for i in (1, 2):
        for j in (1, 2, 3):
            extra = " + w3" if {i, j} == {1, 2} else ""
            rule(f"x{i}*w{j}", f"w{i}*{xs[j]}{extra}")
    for y in ("y1", "y2"):
        for g in ("w1", "w2", "w3", "t", "x1", "x2"):
            rule(f"{y}*{g}", f"{g}*{y}")
    rule("y2*y1", "y1*y2")
    return RewriteSystem(p, ext, rules, embed)


def _compile_glambda_odd(p: Presentation) -> RewriteSystem:
    ext = GeneratorTable(("w3", "t", "x3", "y3"), (4, 1, 3, 3))
    f = p.field
    base = p.table
    w3 = graded_commutator(Element.letter(f, base, "x3"), Element.letter(f, base, "t"))
    rules, rule = _rule_builder(ext, p)
    E = lambda s: parse_element(s, ext, f)  # noqa: E731
    for g in ("t", "x3", "y3"):
        rule(f"{g}*{g}", "0")
    # w3 = x3*t - (-1)^(|x3||t|) t*x3, solved for the leading word x3*t
    rule("x3*t", E("w3") + E("t*x3").scale(f.sign(3 * 1)))
    rule("t*w3", "w3*t")
    rule("x3*w3", "w3*x3")
    for g in ("w3", "t", "x3"):
        s = 1 if p.sign_policy == "strict" else f.sign(3 * ext.degree_of(g))
        rule(f"y3*{g}", E(f"{g}*y3").scale(s))
    return RewriteSystem(p, ext, rules, {"w3": w3})


def _compile_generic(p: Presentation) -> RewriteSystem:
    table = p.table
    rels = sorted(p.all_relations(), key=lambda r: (r.degree(), word_key(table, r.leading_word())))
    rules: list[RewriteRule] = []
    for r in rels:
        rs = RewriteSystem(p, table, rules)
        reduced = rs.normal_form(r)
        if not reduced:
            continue
        lead = reduced.leading_word()
        if not lead:
            raise OrientationError(f"relation {r} reduces to a nonzero constant")
        c = reduced.coefficient(lead)
        rhs = (Element.from_word(p.field, table, lead) - reduced.scale(p.field.inverse(c)))
        rules.append(RewriteRule(lead, rhs))
    return RewriteSystem(p, table, rules)


# -- consistency ------------------------------------------------------------------

def overlaps(rs: RewriteSystem, dmax: int) -> list[tuple[Word, int, RewriteRule, int, RewriteRule]]:
    """Critical overlaps ``(word, pos1, rule1, pos2, rule2)`` of degree at most ``dmax``."""
    out = []
    table = rs.table
    for r1 in rs.rules:
        l1 = r1.lhs
        for r2 in rs.rules:
            l2 = r2.lhs
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    w = l1 + l2[k:]
                    if table.word_degree(w) <= dmax:
                        out.append((w, 0, r1, len(l1) - k, r2))
            if r1 is not r2 and len(l2) < len(l1):
                for i in range(len(l1) - len(l2) + 1):
                    if l1[i:i + len(l2)] == l2 and table.word_degree(l1) <= dmax:
                        out.append((l1, 0, r1, i, r2))
    return out


def reduction_paths(rs: RewriteSystem, word: Word) -> list[Element]:
    """Normal forms reached by taking each possible first rewrite step of ``word``."""
    word = tuple(word)
    results = []
    for pos in range(len(word)):
        for r in rs.rules:
            if word[pos:pos + len(r.lhs)] == r.lhs:
                step = Element(rs.field, rs.table, rs.apply_at(word, pos, r))
                results.append(rs.normal_form(step))
    return results


def check_consistency(rs: RewriteSystem, dmax: int, samples: int = 20, seed: int = 0) -> Report:
    """Relation multiples must reduce to zero and critical overlaps must resolve.

    Samples come from an isolated ``random.Random(seed)`` stream.
    """
    rng = random.Random(seed)
    report = Report("consistency")
    base = rs.base
    one = Element.one(rs.field, base.table)
    for r in base.all_relations():
        e = r.degree()
        if e > dmax:
            continue
        bad = None
        trials = [(one, one)]
        for _ in range(samples):
            da = rng.randint(0, dmax - e)
            db = rng.randint(0, dmax - e - da)
            a = random_element(rng, base.table, rs.field, da, 2) if da else one
            b = random_element(rng, base.table, rs.field, db, 2) if db else one
            trials.append((a, b))
        for a, b in trials:
            if rs.normal_form(a * r * b):
                bad = {"a": str(a), "relation": str(r), "b": str(b)}
                break
        report.add(f"relation multiples of {r} reduce to 0", bad is None, e, bad)
    table = rs.table
    for w, p1, r1, p2, r2 in overlaps(rs, dmax):
        a = rs.normal_form(Element(rs.field, table, rs.apply_at(w, p1, r1)))
        b = rs.normal_form(Element(rs.field, table, rs.apply_at(w, p2, r2)))
        witness = None if a == b else {"word": table.format_word(w), "path1": str(a), "path2": str(b)}
        report.add(f"overlap {table.format_word(w)}", a == b, table.word_degree(w), witness)
    return report


__all__ = [
    "OrientationError", "RewriteRule", "RewriteSystem", "basis_words", "check_consistency",
    "compile_presentation", "normal_form", "overlaps", "reduction_paths",
]
