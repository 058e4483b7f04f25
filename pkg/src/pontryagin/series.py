"""Truncated integer power series in one variable ``q``.

Series carry dimension sequences, so coefficients are plain integers. Binary
operations truncate to the smaller of the two truncation degrees.
"""

from __future__ import annotations

import ast
from typing import Callable, Iterable, Sequence


class SeriesDivisionError(ArithmeticError):
    """Raised when truncated division leaves a remainder; ``degree`` is the first bad degree."""

    def __init__(self, message: str, degree: int | None = None):
        super().__init__(message)
        self.degree = degree


class PowerSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int], truncation: int | None = None):
        coeffs = [int(c) for c in coeffs]
        if truncation is not None:
            if truncation < 0:
                raise ValueError("truncation must be >= 0")
            coeffs = (coeffs + [0] * (truncation + 1))[: truncation + 1]
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        self.coeffs = tuple(coeffs)

    @classmethod
    def monomial(cls, k: int, N: int, c: int = 1) -> PowerSeries:
        return cls([0] * k + [c], N)

    @classmethod
    def one(cls, N: int) -> PowerSeries:
        return cls([1], N)

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def _coerce(self, other) -> PowerSeries:
        if isinstance(other, PowerSeries):
            return other
        if isinstance(other, int):
            return PowerSeries([other], self.truncation)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.truncation, other.truncation)
        return PowerSeries([self[k] + other[k] for k in range(n + 1)])

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.truncation, other.truncation)
        out = [0] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j, b in enumerate(other.coeffs[: n + 1 - i]):
                    out[i + j] += a * b
        return PowerSeries(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = PowerSeries.one(self.truncation)
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return divide(self, other)

    def __rtruediv__(self, other):
        return divide(self._coerce(other), self)

    def shift(self, k: int) -> PowerSeries:
        """Multiply by ``q**k``, keeping the truncation."""
        return PowerSeries([0] * k + list(self.coeffs), self.truncation)

    def truncate(self, N: int) -> PowerSeries:
        return PowerSeries(self.coeffs, min(N, self.truncation))

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.truncation, other.truncation)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __hash__(self):
        return hash(self.coeffs)

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __repr__(self):
        return f"PowerSeries({list(self.coeffs)})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
                lead = str(c) if (c != 1 or k == 0) else ""
                terms.append(lead + ("*" if lead and mono else "") + mono)
        return (" + ".join(terms) or "0") + f" + O(q^{self.truncation + 1})"


def polynomial(coeffs: Sequence[int], N: int) -> PowerSeries:
    return PowerSeries(coeffs, N)


def divide(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Truncated long division ``a / b`` over the integers.

    Raises :class:`SeriesDivisionError` at the first degree where the running
    remainder is not divisible by ``b[0]``.
    """
    n = min(a.truncation, b.truncation)
    b0 = b[0]
    if b0 == 0:
        raise SeriesDivisionError("divisor has zero constant term", 0)
    quot = [0] * (n + 1)
    for k in range(n + 1):
        r = a[k] - sum(b[j] * quot[k - j] for j in range(1, k + 1) if j <= b.truncation)
        if r % b0:
            raise SeriesDivisionError(f"remainder {r} not divisible by {b0} in degree {k}", k)
        quot[k] = r // b0
    return PowerSeries(quot)


def rational_series(numerator: Sequence[int], denominator: Sequence[int], N: int) -> PowerSeries:
    """Expand ``numerator / denominator`` to degree ``N`` by linear recurrence."""
    if not denominator or denominator[0] not in (1, -1):
        raise SeriesDivisionError("denominator constant term must be +1 or -1", 0)
    den = list(denominator)
    num = list(numerator) + [0] * (N + 1)
    d0 = den[0]
    out = [0] * (N + 1)
    for n in range(N + 1):
        acc = num[n] - sum(den[k] * out[n - k] for k in range(1, min(n, len(den) - 1) + 1))
        out[n] = acc * d0  # d0 is its own inverse
    return PowerSeries(out)


def james_series(v: PowerSeries, N: int | None = None) -> PowerSeries:
    """Tensor-algebra series ``1 / (1 - v)`` of a reduced series ``v``."""
    if v[0] != 0:
        raise ValueError("reduced series must have zero constant term")
    N = v.truncation if N is None else N
    v = PowerSeries(v.coeffs, N)
    out = [0] * (N + 1)
    out[0] = 1
    for n in range(1, N + 1):
        out[n] = sum(v[k] * out[n - k] for k in range(1, n + 1))
    return PowerSeries(out)


def is_nondecreasing(s: PowerSeries, start: int = 0) -> bool:
    c = s.coeffs[start:]
    return all(x <= y for x, y in zip(c, c[1:]))


# -- expression sublanguage -------------------------------------------------

def evaluate_expression(text: str, N: int,
                        algebra: Callable[[str], PowerSeries] | None = None) -> PowerSeries:
    """Evaluate e.g. ``"(1+q)^3*(1+q^2)^2/(1-q^2-q^3-q^4)"`` or ``"james(q^2+q^3+q^4)"``.

    ``algebra(name)`` resolves ``algebra(<preset>)`` calls.
    """
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse series expression {text!r}: {exc.msg}") from None

    def ev(node) -> PowerSeries:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return PowerSeries([node.value], N)
        if isinstance(node, ast.Name) and node.id == "q":
            return PowerSeries.monomial(1, N)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int) and exp.value >= 0):
                    raise ValueError("exponents must be non-negative integer literals")
                return ev(node.left) ** exp.value
            left, right = ev(node.left), ev(node.right)
            ops = {ast.Add: lambda: left + right, ast.Sub: lambda: left - right,
                   ast.Mult: lambda: left * right, ast.Div: lambda: divide(left, right)}
            for op_type, fn in ops.items():
                if isinstance(node.op, op_type):
                    return fn()
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and len(node.args) == 1:
            if node.func.id == "james":
                return james_series(ev(node.args[0]), N)
            if node.func.id == "algebra":
                arg = node.args[0]
                if algebra is None or not isinstance(arg, ast.Name):
                    raise ValueError("algebra(...) expects a preset name")
                return algebra(arg.id).truncate(N)
        raise ValueError(f"unsupported construct in series expression: {ast.dump(node)[:60]}")

    return ev(tree)
