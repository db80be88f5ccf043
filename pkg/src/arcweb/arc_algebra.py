"""The graded algebras K and H and their basis diagrams."""
from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .core_combinatorics import Block, Weight
from .diagrams import CapDiagram, CupDiagram, Matching
from .laurent import LaurentPoly, from_degrees
from .surgery import Key, diagram_of, multiply_keys


@lru_cache(maxsize=None)
def oriented_cups(block: Block) -> dict[Weight, tuple[Weight, ...]]:
    """For each lam, the alpha in the block with cup(alpha) lam oriented."""
    ws = block.weights
    cups = [CupDiagram.of_weight(a) for a in ws]
    return {lam: tuple(a for a, c in zip(ws, cups) if c.is_oriented_with(lam)) for lam in ws}


@lru_cache(maxsize=None)
def oriented_targets(m: Matching, bottom: Block, top: Block) -> dict[Weight, tuple[Weight, ...]]:
    """For each lam in bottom, the mu in top with lam m mu oriented."""
    return {lam: tuple(mu for mu in top.weights if m.is_oriented_with(lam, mu)) for lam in bottom.weights}


def key_degree(key: Key, matchings: Sequence[Matching]) -> int:
    alpha, ws, beta = key
    d = CupDiagram.of_weight(alpha).degree_with(ws[0]) + CapDiagram.of_weight(beta).degree_with(ws[-1])
    d += sum(m.degree_with(a, b) for m, a, b in zip(matchings, ws, ws[1:]))
    return d


class DiagramSpace:
    """Basis of oriented circle diagrams on a stack of blocks joined by matchings."""

    def __init__(self, blocks: Sequence[Block], matchings: Sequence[Matching] = ()):
        self.blocks = tuple(blocks)
        self.matchings = tuple(matchings)
        if len(self.blocks) != len(self.matchings) + 1:
            raise ValueError("need one more block than matchings")
        for m, b, t in zip(self.matchings, self.blocks, self.blocks[1:]):
            if m.bottom != b.frame or m.top != t.frame:
                raise ValueError("matching frames do not match the blocks")

    @property
    def bottom(self) -> Block:
        return self.blocks[0]

    @property
    def top(self) -> Block:
        return self.blocks[-1]

    @cached_property
    def basis(self) -> tuple[Key, ...]:
        seqs: list[tuple[Weight, ...]] = [(lam,) for lam in self.bottom.weights]
        for m, b, t in zip(self.matchings, self.blocks, self.blocks[1:]):
            tg = oriented_targets(m, b, t)
            seqs = [s + (mu,) for s in seqs for mu in tg[s[-1]]]
        cups_b = oriented_cups(self.bottom)
        cups_t = oriented_cups(self.top)
        ib, it = self.bottom.index, self.top.index
        keys = [(a, s, b) for s in seqs for a in cups_b[s[0]] for b in cups_t[s[-1]]]
        idx = [tuple(blk.index(w) for blk, w in zip(self.blocks, s)) for _, s, _ in keys]
        order = sorted(range(len(keys)), key=lambda n: (ib(keys[n][0]), idx[n], it(keys[n][2])))
        return tuple(keys[n] for n in order)

    @cached_property
    def index(self) -> dict[Key, int]:
        return {k: i for i, k in enumerate(self.basis)}

    def __len__(self) -> int:
        return len(self.basis)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(key_degree(k, self.matchings) for k in self.basis)

    @cached_property
    def left(self) -> tuple[int, ...]:
        return tuple(self.bottom.index(k[0]) for k in self.basis)

    @cached_property
    def right(self) -> tuple[int, ...]:
        return tuple(self.top.index(k[2]) for k in self.basis)

    def diagram(self, i: int):
        return diagram_of(self.basis[i], self.matchings)

    def graded_dim(self, left: Weight | None = None, right: Weight | None = None) -> LaurentPoly:
        li = None if left is None else self.bottom.index(left)
        ri = None if right is None else self.top.index(right)
        return from_degrees(d for d, l, r in zip(self.degrees, self.left, self.right)
                            if (li is None or l == li) and (ri is None or r == ri))

    def format_key(self, i: int) -> str:
        a, ws, b = self.basis[i]
        return f"({a} | {' '.join(str(w) for w in ws)} | {b})"


class ArcAlgebra(DiagramSpace):
    """The algebra K of a block: oriented circle diagrams cup(alpha) lam cap(beta)."""

    def __init__(self, block: Block, extra_pad: int = 0):
        super().__init__((block,), ())
        self.block = block
        self.extra_pad = extra_pad

    @property
    def weights(self) -> tuple[Weight, ...]:
        return self.block.weights

    @cached_property
    def idempotent_index(self) -> dict[int, int]:
        return {n: self.index[(lam, (lam,), lam)] for n, lam in enumerate(self.block.weights)}

    def idempotent(self, lam: Weight) -> int:
        return self.idempotent_index[self.block.index(lam)]

    def mul(self, i: int, j: int) -> dict[int, int]:
        """Product of basis vectors i and j (x drawn underneath y)."""
        return self._mul(i, j)

    @lru_cache(maxsize=None)
    def _mul(self, i: int, j: int) -> dict[int, int]:
        x, y = self.basis[i], self.basis[j]
        if x[2] != y[0]:
            return {}
        return {self.index[k]: c for k, c in multiply_keys(x, (), y, (), self.extra_pad)}

    def star(self, i: int) -> int:
        a, ws, b = self.basis[i]
        return self.index[(b, ws, a)]

    @cached_property
    def positive(self) -> tuple[int, ...]:
        return tuple(i for i, d in enumerate(self.degrees) if d > 0)

    @cached_property
    def degree_one(self) -> tuple[int, ...]:
        return tuple(i for i, d in enumerate(self.degrees) if d == 1)

    def element(self, coeffs: dict[int, int] | int) -> AlgebraElement:
        if isinstance(coeffs, int):
            coeffs = {coeffs: 1}
        return AlgebraElement(self, coeffs)

    def unit(self) -> AlgebraElement:
        return AlgebraElement(self, {i: 1 for i in self.idempotent_index.values()})

    def cartan_matrix(self) -> list[list[LaurentPoly]]:
        n = len(self.weights)
        counts: dict[tuple[int, int], dict[int, int]] = {}
        for d, l, r in zip(self.degrees, self.left, self.right):
            c = counts.setdefault((l, r), {})
            c[d] = c.get(d, 0) + 1
        return [[LaurentPoly(counts.get((a, b), {})) for b in range(n)] for a in range(n)]

    @cached_property
    def generating_set(self) -> tuple[int, ...]:
        """Positive-degree elements that generate the radical as a two-sided ideal.

        Degree one elements are used when their products already reach every
        positive degree basis vector; otherwise every positive basis vector.
        """
        return self.degree_one if generated_in_degree_one(self) else self.positive


def generated_in_degree_one(alg) -> bool:
    """Do the degree ≤ 1 parts of a positively graded algebra generate it?"""
    from .linalg import Echelon, default_field
    field = default_field()
    by_deg: dict[int, list[int]] = {}
    for i, d in enumerate(alg.degrees):
        by_deg.setdefault(d, []).append(i)
    if any(d < 0 for d in by_deg):
        return False
    current = {i: {i: 1} for i in by_deg.get(1, [])}
    spans = {1: list(current.values())}
    top = max(by_deg) if by_deg else 0
    for d in range(2, top + 1):
        ech = Echelon(field)
        vecs = []
        for v in spans[d - 1]:
            for g in alg.degree_one:
                prod: dict[int, int] = {}
                for i, c in v.items():
                    for k, e in alg.mul(i, g).items():
                        prod[k] = prod.get(k, 0) + c * e
                prod = {k: e for k, e in prod.items() if e}
                if prod and ech.add(prod):
                    vecs.append(prod)
        if ech.rank != len(by_deg.get(d, [])):
            return False
        spans[d] = vecs
    return True


class AlgebraElement:
    """A linear combination of basis vectors of a graded algebra."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg, coeffs: dict[int, int]):
        self.alg = alg
        self.coeffs = {i: c for i, c in coeffs.items() if c}

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        c = dict(self.coeffs)
        for i, v in other.coeffs.items():
            c[i] = c.get(i, 0) + v
        return AlgebraElement(self.alg, c)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-1) * other

    def __rmul__(self, s) -> AlgebraElement:
        return AlgebraElement(self.alg, {i: s * c for i, c in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return other * self
        out: dict[int, int] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                for k, c in self.alg.mul(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return AlgebraElement(self.alg, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def star(self) -> AlgebraElement:
        return AlgebraElement(self.alg, {self.alg.star(i): c for i, c in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_homogeneous(self) -> bool:
        return len({self.alg.degrees[i] for i in self.coeffs}) <= 1

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{self.alg.format_key(i)}" for i, c in sorted(self.coeffs.items()))


class SubAlgebra:
    """The subalgebra e K e for e the sum of idempotents of chosen weights."""

    def __init__(self, parent: ArcAlgebra, weights: Iterable[Weight]):
        self.parent = parent
        chosen = [parent.block.index(w) for w in weights]
        self._wmap = {old: new for new, old in enumerate(sorted(chosen))}
        self.weights = tuple(parent.weights[i] for i in sorted(chosen))
        self.embed = tuple(i for i in range(len(parent))
                           if parent.left[i] in self._wmap and parent.right[i] in self._wmap)
        self.index_of = {old: new for new, old in enumerate(self.embed)}
        self.degrees = tuple(parent.degrees[i] for i in self.embed)
        self.left = tuple(self._wmap[parent.left[i]] for i in self.embed)
        self.right = tuple(self._wmap[parent.right[i]] for i in self.embed)
        self.basis = tuple(parent.basis[i] for i in self.embed)
        self.idempotent_index = {self._wmap[w]: self.index_of[parent.idempotent_index[w]]
                                 for w in sorted(chosen)}

    def __len__(self) -> int:
        return len(self.embed)

    def mul(self, i: int, j: int) -> dict[int, int]:
        out = {}
        for k, c in self.parent.mul(self.embed[i], self.embed[j]).items():
            if k not in self.index_of:
                raise AssertionError("subalgebra is not closed under multiplication")
            out[self.index_of[k]] = c
        return out

    def star(self, i: int) -> int:
        return self.index_of[self.parent.star(self.embed[i])]

    @cached_property
    def positive(self) -> tuple[int, ...]:
        return tuple(i for i, d in enumerate(self.degrees) if d > 0)

    @cached_property
    def degree_one(self) -> tuple[int, ...]:
        return tuple(i for i, d in enumerate(self.degrees) if d == 1)

    @cached_property
    def generating_set(self) -> tuple[int, ...]:
        return self.degree_one if generated_in_degree_one(self) else self.positive

    def format_key(self, i: int) -> str:
        return self.parent.format_key(self.embed[i])

    def idempotent(self, lam: Weight) -> int:
        return self.idempotent_index[self.weights.index(lam)]


def h_subalgebra(alg: ArcAlgebra) -> SubAlgebra:
    """The subalgebra on the maximal defect weights."""
    return SubAlgebra(alg, alg.block.maximal_defect_weights)


@lru_cache(maxsize=None)
def arc_algebra(block: Block) -> ArcAlgebra:
    return ArcAlgebra(block)
