"""Sparse exact linear algebra over Q or a prime field.

Vectors are dicts ``{index: value}`` with no zero entries.  Over Q the
values are ints or Fractions; over GF(p) they are ints in ``range(p)``.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

Vec = dict


@dataclass(frozen=True)
class Field:
    """Q when ``p`` is None, otherwise GF(p)."""

    p: Optional[int] = None

    def __str__(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"

    def coerce(self, x):
        if self.p is None:
            return x
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return x % self.p

    def inv(self, x):
        if self.p is None:
            return Fraction(1, x) if isinstance(x, int) else 1 / x
        return pow(x, -1, self.p)

    def vec(self, v: Vec) -> Vec:
        out = {}
        for k, x in v.items():
            x = self.coerce(x)
            if x:
                out[k] = x
        return out


QQ = Field()
_default = [QQ]


def default_field() -> Field:
    return _default[0]


def set_default_field(field: Field | str | int | None) -> Field:
    """Select Q (``None``/``"Q"``) or GF(p) (an odd prime or ``"p<prime>"``)."""
    if field is None or field in ("Q", "q", "QQ"):
        f = QQ
    elif isinstance(field, Field):
        f = field
    else:
        p = int(str(field).lstrip("pGF()")) if not isinstance(field, int) else field
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        f = Field(p)
    _default[0] = f
    return f


def parse_field(text: str | None) -> Field:
    if text is None or text in ("Q", "q", "QQ"):
        return QQ
    p = int(text.lstrip("pGF()"))
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    return Field(p)


def _axpy(target: Vec, scale, row: Vec, p) -> None:
    """target -= scale * row, in place."""
    if p is None:
        for k, x in row.items():
            v = target.get(k, 0) - scale * x
            if v:
                target[k] = v
            else:
                target.pop(k, None)
    else:
        for k, x in row.items():
            v = (target.get(k, 0) - scale * x) % p
            if v:
                target[k] = v
            else:
                target.pop(k, None)


class Echelon:
    """Incrementally built row echelon form, each row led by its smallest index.

    Rows may carry a companion vector (a record of how they were formed),
    which makes kernels and coordinates cheap to read off.
    """

    def __init__(self, field: Field | None = None):
        self.field = field or default_field()
        self.rows: dict[int, Vec] = {}
        self.tags: dict[int, Vec] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Vec, tag: Vec | None = None) -> tuple[Vec, Vec | None]:
        p = self.field.p
        vec = dict(vec)
        tag = dict(tag) if tag is not None else None
        heap = [k for k in vec if k in self.rows]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            x = vec.get(c)
            if not x:
                continue
            row = self.rows[c]
            new_keys = [k for k in row if k not in vec and k in self.rows]
            _axpy(vec, x, row, p)
            if tag is not None:
                _axpy(tag, x, self.tags[c], p)
            for k in new_keys:
                heapq.heappush(heap, k)
        return vec, tag

    def add(self, vec: Vec, tag: Vec | None = None) -> bool:
        vec, tag = self.reduce(self.field.vec(vec), tag)
        if not vec:
            return False
        self._store(vec, tag)
        return True

    def add_or_residual(self, vec: Vec, tag: Vec) -> Vec | None:
        """Add vec; if it is dependent return the reduced tag (a relation)."""
        vec, tag = self.reduce(self.field.vec(vec), tag)
        if not vec:
            return tag
        self._store(vec, tag)
        return None

    def _store(self, vec: Vec, tag: Vec | None) -> None:
        c = min(vec)
        s = self.field.inv(vec[c])
        if self.field.p is None:
            row = {k: v * s for k, v in vec.items()}
            t = {k: v * s for k, v in tag.items()} if tag is not None else None
        else:
            p = self.field.p
            row = {k: v * s % p for k, v in vec.items()}
            t = {k: v * s % p for k, v in tag.items()} if tag is not None else None
        self.rows[c] = row
        if t is not None:
            self.tags[c] = {k: v for k, v in t.items() if v}

    def contains(self, vec: Vec) -> bool:
        return not self.reduce(self.field.vec(vec))[0]


def rank(vectors: Iterable[Vec], field: Field | None = None) -> int:
    ech = Echelon(field)
    for v in vectors:
        ech.add(v)
    return ech.rank


def kernel(images: list[Vec], field: Field | None = None) -> list[Vec]:
    """Basis of the kernel of the map sending basis vector i to images[i]."""
    ech = Echelon(field)
    out = []
    for i, img in enumerate(images):
        rel = ech.add_or_residual(img, {i: 1})
        if rel is not None:
            out.append({k: v for k, v in rel.items() if v})
    return out


def independent_subset(vectors: list[Vec], start: Echelon | None = None,
                       field: Field | None = None) -> list[int]:
    """Indices of vectors that are independent modulo start (which is extended)."""
    ech = start if start is not None else Echelon(field)
    return [i for i, v in enumerate(vectors) if ech.add(v)]


def span_echelon(vectors: Iterable[Vec], field: Field | None = None) -> Echelon:
    ech = Echelon(field)
    for v in vectors:
        ech.add(v)
    return ech


def coordinates(basis: list[Vec], field: Field | None = None):
    """Return a function giving coordinates of a vector in the span of basis."""
    ech = Echelon(field)
    for i, b in enumerate(basis):
        if not ech.add(b, {i: 1}):
            raise ValueError("basis vectors are dependent")

    def coords(v: Vec) -> Vec:
        red, tag = ech.reduce(ech.field.vec(v), {})
        if red:
            raise ValueError("vector is not in the span")
        p = ech.field.p
        out = {k: (-x if p is None else (-x) % p) for k, x in tag.items()}
        return {k: x for k, x in out.items() if x}

    return coords


def apply_sparse(matrix: dict[int, Vec], vec: Vec, field: Field | None = None) -> Vec:
    """Apply a column-sparse matrix (column index -> image vector) to vec."""
    p = (field or default_field()).p
    out: Vec = {}
    for j, x in vec.items():
        col = matrix.get(j)
        if not col:
            continue
        for i, y in col.items():
            out[i] = out.get(i, 0) + x * y
    if p is not None:
        return {i: v % p for i, v in out.items() if v % p}
    return {i: v for i, v in out.items() if v}
