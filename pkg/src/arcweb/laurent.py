"""Laurent polynomials in q with integer coefficients, plus small matrix helpers."""
from __future__ import annotations

import re
from typing import Iterable, Mapping

_TERM = re.compile(r"([+-]?)(\d*)(q(?:\^(-?\d+))?)?")


class LaurentPoly:
    """Immutable element of Z[q, q^-1], stored as a sparse exponent map."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | int | None = None):
        if coeffs is None:
            c = {}
        elif isinstance(coeffs, int):
            c = {0: coeffs} if coeffs else {}
        else:
            c = {int(e): int(v) for e, v in coeffs.items() if v}
        object.__setattr__(self, "_c", c)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> LaurentPoly:
        return cls({exp: coeff})

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        s = text.replace(" ", "").replace("*", "")
        if s in ("", "0"):
            return cls()
        out: dict[int, int] = {}
        pos = 0
        while pos < len(s):
            m = _TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse Laurent polynomial {text!r}")
            sign, digits, qpart, exp = m.groups()
            if not digits and not qpart:
                raise ValueError(f"cannot parse Laurent polynomial {text!r}")
            coeff = int(digits) if digits else 1
            if sign == "-":
                coeff = -coeff
            e = 0 if not qpart else (int(exp) if exp is not None else 1)
            out[e] = out.get(e, 0) + coeff
            pos = m.end()
        return cls(out)

    # -- access --------------------------------------------------------
    def terms(self) -> list[tuple[int, int]]:
        return sorted(self._c.items())

    def coeff(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._c

    def min_degree(self) -> int:
        return min(self._c)

    def max_degree(self) -> int:
        return max(self._c)

    def at_one(self) -> int:
        return sum(self._c.values())

    def nonneg(self) -> bool:
        return all(v > 0 for v in self._c.values())

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other) -> LaurentPoly:
        other = _coerce(other)
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other) -> LaurentPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> LaurentPoly:
        return _coerce(other) - self

    def __mul__(self, other) -> LaurentPoly:
        other = _coerce(other)
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            raise ValueError("negative powers are only defined for monomials; use shift")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by q^k."""
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def at_minus_q(self) -> LaurentPoly:
        """Substitute q -> -q."""
        return LaurentPoly({e: (-v if e % 2 else v) for e, v in self._c.items()})

    def bar(self) -> LaurentPoly:
        """Substitute q -> q^-1."""
        return LaurentPoly({-e: v for e, v in self._c.items()})

    # -- comparison ----------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(frozenset(self._c.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self) -> bool:
        return bool(self._c)

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, v in self.terms():
            if e == 0:
                body = str(abs(v))
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if abs(v) == 1 else f"{abs(v)}{mono}"
            sign = "-" if v < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += sign + body
        return text

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")


ZERO = LaurentPoly()
ONE = LaurentPoly(1)
Q = LaurentPoly.monomial(1)
# graded dimension of the two-dimensional ring spanned by 1 and x
QUANTUM_TWO = LaurentPoly({-1: 1, 1: 1})


def q(exp: int = 1) -> LaurentPoly:
    return LaurentPoly.monomial(exp)


def poly_sum(items: Iterable[LaurentPoly]) -> LaurentPoly:
    c: dict[int, int] = {}
    for p in items:
        for e, v in p._c.items():
            c[e] = c.get(e, 0) + v
    return LaurentPoly(c)


def from_degrees(degrees: Iterable[int]) -> LaurentPoly:
    """Graded dimension of a space with a basis in the given degrees."""
    c: dict[int, int] = {}
    for d in degrees:
        c[d] = c.get(d, 0) + 1
    return LaurentPoly(c)


# -- matrices of Laurent polynomials (lists of rows) ---------------------

Matrix = list


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[ZERO] * (n if m is None else m) for _ in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = []
    for i in range(n):
        row_a = a[i]
        nz = [(t, row_a[t]) for t in range(k) if row_a[t]]
        row = []
        for j in range(m):
            row.append(poly_sum(v * b[t][j] for t, v in nz if b[t][j]))
        out.append(row)
    return out


def mat_map(a: Matrix, fn) -> Matrix:
    return [[fn(x) for x in row] for row in a]


def is_identity(a: Matrix) -> bool:
    return all(a[i][j] == (ONE if i == j else ZERO)
               for i in range(len(a)) for j in range(len(a[i])))


def unitriangular_inverse(a: Matrix) -> Matrix:
    """Inverse of an upper unitriangular matrix by back-substitution."""
    n = len(a)
    for i in range(n):
        if a[i][i] != ONE or any(a[i][j] for j in range(i)):
            raise ValueError("matrix is not upper unitriangular")
    inv = identity(n)
    for i in range(n - 1, -1, -1):
        for j in range(i + 1, n):
            s = poly_sum(a[i][k] * inv[k][j] for k in range(i + 1, j + 1) if a[i][k])
            inv[i][j] = -s
    return inv
