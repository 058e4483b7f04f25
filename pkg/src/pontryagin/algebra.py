"""Exact scalars, generator tables, words and elements of graded free algebras.

An :class:`Element` is a finitely supported linear combination of words over a
:class:`GeneratorTable`, with coefficients in a prime field or the rationals.
Multiplication is plain concatenation; reduction modulo relations lives in
:mod:`pontryagin.rewrite`.
"""

from __future__ import annotations

import functools
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Union

Word = tuple  # tuple[int, ...] of generator indices
Scalar = Union[int, Fraction]

MIXED = "mixed"
ZERO = "zero"

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class IncompatibleContextError(ValueError):
    """Operands live over different fields or generator tables."""


class HomogeneityError(ValueError):
    pass


class ParseError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class FieldTag:
    """A prime field ``F_p`` (``p`` given) or the rationals (``p is None``)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def parse(cls, text: str) -> FieldTag:
        text = text.strip()
        if text in ("Q", "QQ"):
            return cls(None)
        m = re.fullmatch(r"(?:F|Z|GF)_?(\d+)", text)
        if not m:
            raise ValueError(f"unrecognised field {text!r}; use F<p> or Q")
        return cls(int(m.group(1)))

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __str__(self):
        return self.name

    def __call__(self, value) -> Scalar:
        """Coerce an int or Fraction into a canonical representative."""
        if self.p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return value % self.p

    def inverse(self, value: Scalar) -> Scalar:
        if value == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(value)
        return pow(value, -1, self.p)

    def sign(self, exponent: int) -> Scalar:
        return self(-1 if exponent % 2 else 1)

    def parse_scalar(self, text: str) -> Scalar:
        try:
            return self(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar {text!r}") from exc

    def format_scalar(self, value: Scalar) -> str:
        return str(value)


F2 = FieldTag(2)
QQ = FieldTag(None)


@dataclass(frozen=True)
class GeneratorTable:
    """Ordered generator names with positive degrees; order is precedence."""

    names: tuple[str, ...]
    degrees: tuple[int, ...]
    _index: Mapping[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names, degrees = tuple(self.names), tuple(int(d) for d in self.degrees)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "degrees", degrees)
        if len(names) != len(degrees):
            raise ValueError("names and degrees differ in length")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for n, d in zip(names, degrees):
            if not _NAME_RE.match(n):
                raise ValueError(f"invalid generator name {n!r}")
            if d < 1:
                raise ValueError(f"generator {n} has degree {d} < 1")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    @classmethod
    def of(cls, entries: Iterable[tuple[str, int]]) -> GeneratorTable:
        entries = list(entries)
        return cls(tuple(n for n, _ in entries), tuple(d for _, d in entries))

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def degree_of(self, name: str) -> int:
        return self.degrees[self.index(name)]

    def word(self, *names: str) -> Word:
        return tuple(self.index(n) for n in names)

    def word_degree(self, word: Word) -> int:
        degs = self.degrees
        return sum(degs[i] for i in word)

    def format_word(self, word: Word) -> str:
        if not word:
            return "1"
        return "*".join(self.names[i] for i in word)

    def entries(self) -> list[tuple[str, int]]:
        return list(zip(self.names, self.degrees))


@functools.lru_cache(maxsize=256)
def words_of_degree(table: GeneratorTable, d: int) -> tuple[Word, ...]:
    """All words of total degree ``d``, in lexicographic (= canonical) order."""
    if d < 0:
        return ()
    if d == 0:
        return ((),)
    out = []
    for i, gd in enumerate(table.degrees):
        if gd <= d:
            out.extend((i,) + w for w in words_of_degree(table, d - gd))
    return tuple(out)


def word_key(table: GeneratorTable, word: Word):
    return (table.word_degree(word), word)


class Element:
    """Immutable linear combination of words; zero coefficients are never stored."""

    __slots__ = ("field", "table", "_terms", "_hash")

    def __init__(self, field: FieldTag, table: GeneratorTable,
                 terms: Mapping[Word, Scalar] | Iterable[tuple[Word, Scalar]] = ()):
        self.field = field
        self.table = table
        acc: dict[Word, Scalar] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            w = tuple(w)
            acc[w] = acc.get(w, 0) + c
        self._terms = {w: field(c) for w, c in acc.items() if field(c) != 0}
        self._hash = None

    @classmethod
    def _raw(cls, field, table, terms: dict) -> Element:
        e = cls.__new__(cls)
        e.field, e.table, e._terms, e._hash = field, table, terms, None
        return e

    # constructors
    @classmethod
    def zero(cls, field, table):
        return cls._raw(field, table, {})

    @classmethod
    def one(cls, field, table):
        return cls._raw(field, table, {(): field(1)})

    @classmethod
    def letter(cls, field, table, name: str, coeff: Scalar = 1):
        return cls(field, table, {(table.index(name),): coeff})

    @classmethod
    def from_word(cls, field, table, word: Word, coeff: Scalar = 1):
        return cls(field, table, {tuple(word): coeff})

    # inspection
    @property
    def terms(self) -> Mapping[Word, Scalar]:
        return MappingProxyType(self._terms)

    def items(self) -> list[tuple[Word, Scalar]]:
        """Terms in canonical order: degree, then lexicographic by precedence."""
        return sorted(self._terms.items(), key=lambda t: word_key(self.table, t[0]))

    def __iter__(self) -> Iterator[tuple[Word, Scalar]]:
        return iter(self.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, word: Word) -> Scalar:
        return self._terms.get(tuple(word), self.field(0))

    def degree(self):
        """Common degree, ``ZERO`` for the zero element, ``MIXED`` otherwise."""
        if not self._terms:
            return ZERO
        degs = {self.table.word_degree(w) for w in self._terms}
        return degs.pop() if len(degs) == 1 else MIXED

    def is_homogeneous(self) -> bool:
        return self.degree() != MIXED

    def leading_word(self) -> Word:
        if not self._terms:
            raise ValueError("zero element has no leading word")
        return max(self._terms, key=lambda w: word_key(self.table, w))

    # arithmetic
    def _check(self, other: Element):
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.field != self.field or other.table != self.table:
            raise IncompatibleContextError(
                f"cannot combine elements over ({self.field}, {self.table.names}) "
                f"and ({other.field}, {other.table.names})")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.one(self.field, self.table).scale(other)
        self._check(other)
        f = self.field
        out = dict(self._terms)
        for w, c in other._terms.items():
            v = f(out.get(w, 0) + c)
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return Element._raw(f, self.table, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return Element._raw(f, self.table, {w: f(-c) for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> Element:
        f = self.field
        c = f(c)
        if c == 0:
            return Element._raw(f, self.table, {})
        return Element._raw(f, self.table, {w: f(c * v) for w, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        f = self.field
        out: dict[Word, Scalar] = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                w = u + v
                out[w] = out.get(w, 0) + a * b
        return Element._raw(f, self.table, {w: f(c) for w, c in out.items() if f(c) != 0})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        out = Element.one(self.field, self.table)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self._terms
        if not isinstance(other, Element):
            return NotImplemented
        return (self.field == other.field and self.table == other.table
                and self._terms == other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.table, frozenset(self._terms.items())))
        return self._hash

    def map_terms(self, fn) -> Element:
        """Linear extension of ``fn: word -> Element`` (all images over one table)."""
        out = None
        for w, c in self._terms.items():
            img = fn(w).scale(c)
            out = img if out is None else out + img
        return out

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({self.field.name}, {format_element(self)!r})"


def mul(a: Element, b: Element) -> Element:
    return a * b


def add(a: Element, b: Element) -> Element:
    return a + b


def degree(e: Element):
    return e.degree()


def graded_commutator(a: Element, b: Element) -> Element:
    """``a*b - (-1)^(|a||b|) b*a`` for homogeneous ``a``, ``b``."""
    a._check(b)
    da, db = a.degree(), b.degree()
    if MIXED in (da, db):
        raise HomogeneityError("graded commutator needs homogeneous arguments")
    if ZERO in (da, db):
        return Element.zero(a.field, a.table)
    return a * b - (b * a).scale(a.field.sign(da * db))


def format_element(e: Element) -> str:
    if not e:
        return "0"
    parts = []
    for w, c in e.items():
        neg = e.field.p is None and c < 0
        mag = -c if neg else c
        word = e.table.format_word(w)
        if mag == 1:
            body = word
        elif not w:
            body = e.field.format_scalar(mag)
        else:
            body = f"{e.field.format_scalar(mag)}*{word}"
        parts.append(("-" if neg else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def parse_element(text: str, table: GeneratorTable, field: FieldTag) -> Element:
    """Parse ``"x1*t + t*x1"``-style text; scalars as ``c*word`` with ``c`` an int or ``a/b``.

    ``name^k`` and parenthesised sub-expressions are also accepted.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def atom() -> Element:
        kind, val = peek()
        if kind == "num":
            take()
            return Element.one(field, table).scale(field.parse_scalar(val))
        if kind == "name":
            take()
            if val not in table:
                raise ParseError(f"unknown generator {val!r} (known: {', '.join(table.names)})")
            return Element.letter(field, table, val)
        if val == "(":
            take()
            e = expr()
            if take()[1] != ")":
                raise ParseError("missing ')'")
            return e
        if val is None:
            raise ParseError(f"unexpected end of input in {text!r}")
        raise ParseError(f"unexpected token {val!r} in {text!r}")

    def power() -> Element:
        base = atom()
        if peek()[1] == "^":
            take()
            kind, val = take()
            if kind != "num" or "/" in val:
                raise ParseError("exponent must be a non-negative integer")
            base = base ** int(val)
        return base

    def term() -> Element:
        e = power()
        while peek()[1] == "*":
            take()
            e = e * power()
        return e

    def expr() -> Element:
        sign = 1
        if peek() in (("op", "+"), ("op", "-")):
            sign = -1 if take()[1] == "-" else 1
        e = term().scale(sign)
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            t = term()
            e = e + t if op == "+" else e - t
        return e

    try:
        result = expr()
    except IndexError:
        raise ParseError(f"unexpected end of input in {text!r}") from None
    if pos != len(tokens):
        raise ParseError(f"trailing input {tokens[pos][1]!r} in {text!r}")
    return result


def random_element(rng: random.Random, table: GeneratorTable, field: FieldTag,
                   degree: int, n_terms: int = 3) -> Element:
    """Random homogeneous element of the given degree (possibly zero)."""
    words = words_of_degree(table, degree)
    if not words:
        return Element.zero(field, table)
    terms = {}
    for _ in range(n_terms):
        w = words[rng.randrange(len(words))]
        if field.p is None:
            c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        else:
            c = rng.randrange(field.p)
        terms[w] = terms.get(w, 0) + c
    return Element(field, table, terms)
