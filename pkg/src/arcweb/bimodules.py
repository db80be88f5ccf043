"""Graded bimodules spanned by oriented circle diagrams through matchings."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

from .arc_algebra import ArcAlgebra, DiagramSpace, arc_algebra
from .core_combinatorics import Block, Weight
from .diagrams import (CapDiagram, CupDiagram, Matching, OrientedDiagram,
                       components_of, reduction, upper_reduction)
from .laurent import QUANTUM_TWO, LaurentPoly, from_degrees, q
from .linalg import Echelon
from .surgery import Key, multiply_keys


def blocks_for(bottom: Block, matchings: Sequence[Matching]) -> tuple[Block, ...]:
    """Blocks on every line, using that caps and cups shift the counts evenly."""
    out = [bottom]
    for m in matchings:
        b = out[-1]
        nd = b.n_down - m.n_caps + m.n_cups
        nu = b.n_up - m.n_caps + m.n_cups
        out.append(Block(m.top, nd, nu))
    return tuple(out)


def is_proper(m: Matching, bottom: Block, top: Block) -> bool:
    """Whether some lam in bottom and mu in top orient m."""
    return any(m.is_oriented_with(lam, mu) for lam in bottom.weights for mu in top.weights)


class Bimodule(DiagramSpace):
    """Oriented diagrams cup(alpha) lam_0 t_1 lam_1 ... t_k lam_k cap(beta).

    The left action is by the algebra of the bottom block (its diagrams are
    drawn underneath), the right action by the algebra of the top block.
    """

    def __init__(self, blocks: Sequence[Block], matchings: Sequence[Matching], extra_pad: int = 0):
        super().__init__(blocks, matchings)
        self.extra_pad = extra_pad

    @classmethod
    def from_bottom(cls, bottom: Block, matchings: Sequence[Matching]) -> Bimodule:
        return cls(blocks_for(bottom, matchings), matchings)

    @property
    def left_algebra(self) -> ArcAlgebra:
        return arc_algebra(self.bottom)

    @property
    def right_algebra(self) -> ArcAlgebra:
        return arc_algebra(self.top)

    @property
    def n_caps(self) -> int:
        return sum(m.n_caps for m in self.matchings)

    @property
    def n_cups(self) -> int:
        return sum(m.n_cups for m in self.matchings)

    @lru_cache(maxsize=None)
    def left_mul(self, a: int, j: int) -> dict[int, int]:
        """Algebra basis vector a of the bottom algebra times bimodule vector j."""
        x = self.left_algebra.basis[a]
        y = self.basis[j]
        if x[2] != y[0]:
            return {}
        return {self.index[k]: c for k, c in multiply_keys(x, (), y, self.matchings, self.extra_pad)}

    @lru_cache(maxsize=None)
    def right_mul(self, j: int, a: int) -> dict[int, int]:
        """Bimodule vector j times algebra basis vector a of the top algebra."""
        x = self.basis[j]
        y = self.right_algebra.basis[a]
        if x[2] != y[0]:
            return {}
        return {self.index[k]: c for k, c in multiply_keys(x, self.matchings, y, (), self.extra_pad)}

    def compose(self, other: Bimodule) -> Bimodule:
        if self.top != other.bottom:
            raise ValueError("bimodules do not compose")
        return Bimodule(self.blocks + other.blocks[1:], self.matchings + other.matchings)

    def mul_bimodule(self, j: int, other: Bimodule, k: int) -> dict[int, int]:
        """Product of a diagram of self with a diagram of other, in the composite."""
        comp = _composite(self, other)
        x, y = self.basis[j], other.basis[k]
        if x[2] != y[0]:
            return {}
        return {comp.index[k_]: c for k_, c in multiply_keys(x, self.matchings, y, other.matchings)}

    def star(self) -> Bimodule:
        return Bimodule(tuple(reversed(self.blocks)), tuple(m.mirror() for m in reversed(self.matchings)))

    def star_index(self, j: int) -> tuple[Bimodule, int]:
        other = _star(self)
        a, ws, b = self.basis[j]
        return other, other.index[(b, tuple(reversed(ws)), a)]


@lru_cache(maxsize=None)
def _composite(a: Bimodule, b: Bimodule) -> Bimodule:
    return a.compose(b)


@lru_cache(maxsize=None)
def _star(a: Bimodule) -> Bimodule:
    return a.star()


@lru_cache(maxsize=None)
def bimodule(blocks: tuple[Block, ...], matchings: tuple[Matching, ...]) -> Bimodule:
    return Bimodule(blocks, matchings)


# -- tensor products over the middle algebra --------------------------------

@dataclass
class TensorResult:
    dims: dict[tuple[int, int], LaurentPoly]  # (left weight, right weight) -> graded dim
    distinguished_basis: bool | None = None

    @property
    def total(self) -> LaurentPoly:
        out = LaurentPoly()
        for v in self.dims.values():
            out = out + v
        return out


def tensor_over_K(b1: Bimodule, b2: Bimodule, check_distinguished: bool = False) -> TensorResult:
    """Graded dimensions of b1 tensored with b2 over the algebra of the shared block.

    The tensor product is the quotient of the idempotent-wise tensor product
    by the balancing relations xh (x) y - x (x) hy for h in a generating set.
    With check_distinguished, also test that the distinguished vectors
    x(nu) (x) y(nu) with the shared cap/cup diagram of the middle weight
    project to a basis of the quotient.
    """
    if b1.top != b2.bottom:
        raise ValueError("bimodules do not share a block")
    K = b1.right_algebra
    by_left: dict[int, list[int]] = {}
    for k in range(len(b2)):
        by_left.setdefault(b2.left[k], []).append(k)
    pairs: dict[tuple[int, int], int] = {}
    comp_of: list[tuple[int, int, int]] = []
    for j in range(len(b1)):
        for k in by_left.get(b1.right[j], ()):
            pairs[(j, k)] = len(comp_of)
            comp_of.append((b1.left[j], b2.right[k], b1.degrees[j] + b2.degrees[k]))
    ech: dict[tuple[int, int, int], Echelon] = {}
    gens = K.generating_set
    gens_by_left: dict[int, list[int]] = {}
    for h in gens:
        gens_by_left.setdefault(K.left[h], []).append(h)
    for j in range(len(b1)):
        for h in gens_by_left.get(b1.right[j], ()):
            xh = b1.right_mul(j, h)
            for k in by_left.get(K.right[h], ()):
                hy = b2.left_mul(h, k)
                rel: dict[int, int] = {}
                for j2, c in xh.items():
                    n = pairs[(j2, k)]
                    rel[n] = rel.get(n, 0) + c
                for k2, c in hy.items():
                    n = pairs[(j, k2)]
                    rel[n] = rel.get(n, 0) - c
                rel = {n: c for n, c in rel.items() if c}
                if rel:
                    comp = comp_of[next(iter(rel))]
                    ech.setdefault(comp, Echelon()).add(rel)
    counts: dict[tuple[int, int, int], int] = {}
    for comp in comp_of:
        counts[comp] = counts.get(comp, 0) + 1
    dims: dict[tuple[int, int], dict[int, int]] = {}
    for (l, r, d), n in counts.items():
        e = ech.get((l, r, d))
        left = n - (e.rank if e else 0)
        if left:
            dd = dims.setdefault((l, r), {})
            dd[d] = dd.get(d, 0) + left
    result = TensorResult({lr: LaurentPoly(c) for lr, c in dims.items()})
    if check_distinguished:
        result.distinguished_basis = _distinguished_ok(b1, b2, pairs, comp_of, ech, counts)
    return result


def _distinguished_ok(b1, b2, pairs, comp_of, ech, counts) -> bool:
    """Distinguished vectors are independent modulo relations and fill the quotient."""
    for (j, k), n in pairs.items():
        x, y = b1.basis[j], b2.basis[k]
        nu = x[1][-1]
        if x[2] == nu and y[0] == nu and y[1][0] == nu:
            if not ech.setdefault(comp_of[n], Echelon()).add({n: 1}):
                return False
    return all((ech[c].rank if c in ech else 0) == n for c, n in counts.items())


def distinguished_pairs(b1: Bimodule, b2: Bimodule) -> list[tuple[int, int]]:
    """Pairs (x, y) whose shared middle line carries nu with cap(nu) over cup(nu)."""
    out = []
    for j, x in enumerate(b1.basis):
        nu = x[1][-1]
        if x[2] != nu:
            continue
        for k, y in enumerate(b2.basis):
            if y[0] == nu and y[1][0] == nu:
                out.append((j, k))
    return out


def multiplication_is_iso(b1: Bimodule, b2: Bimodule) -> bool:
    """The product of distinguished pairs gives a basis of the composite bimodule."""
    comp = _composite(b1, b2)
    ech = Echelon()
    prs = distinguished_pairs(b1, b2)
    for j, k in prs:
        if not ech.add(b1.mul_bimodule(j, b2, k)):
            return False
    return len(prs) == len(comp) == ech.rank


# -- reduction of matching sequences ---------------------------------------

@dataclass(frozen=True)
class ReductionData:
    matching: Matching
    n_circles: int
    shift: int  # sum of caps of the t_i minus caps of the reduction


def reduce_bimodule(matchings: Sequence[Matching]) -> ReductionData:
    red = reduction(matchings)
    u = red.result
    shift = sum(m.n_caps for m in matchings) - u.n_caps
    return ReductionData(u, len(red.circles), shift)


def reduction_prediction(b: Bimodule) -> tuple[LaurentPoly, LaurentPoly]:
    """Graded dims of b and of the reduced bimodule tensored with R^n and shifted."""
    data = reduce_bimodule(b.matchings)
    reduced = Bimodule((b.bottom, b.top), (data.matching,))
    rhs = reduced.graded_dim() * (QUANTUM_TWO ** data.n_circles) * q(data.shift)
    return b.graded_dim(), rhs


# -- the pairing between K^{t*} and K^t ------------------------------------

def phi(xb: Bimodule, x: int, yb: Bimodule, y: int) -> dict[int, int]:
    """Pairing of (a lam t* nu d) with (d' kappa t mu b), valued in the algebra of the lower block.

    xb has blocks (Gamma, Lambda) with matching t*; yb has blocks (Lambda, Gamma)
    with matching t.  Returns coefficients in the basis of K_Gamma.
    """
    (t_star,), (t,) = xb.matchings, yb.matchings
    if t_star != t.mirror():
        raise ValueError("the matchings are not mirror images")
    a, (lam, nu), d = xb.basis[x]
    d2, (kappa, mu), b = yb.basis[y]
    if d2 != d:
        return {}
    dx = xb.diagram(x)
    dy = yb.diagram(y)
    upper = {c.positions_on(1): c.orientation for c in _circles(dx) if c.lines_touched == {1}}
    lower = {c.positions_on(0): c.orientation for c in _circles(dy) if c.lines_touched == {0}}
    for pos, o in upper.items():
        if lower.get(pos) == o:
            return {}
    red = upper_reduction([t_star], CapDiagram.of_weight(d))
    c_weight = red.result.weight
    K = arc_algebra(xb.bottom)
    left = (a, (lam,), c_weight)
    right = (c_weight, (mu,), b)
    if left not in K.index or right not in K.index:
        raise AssertionError("reduced diagrams are not oriented")
    return K.mul(K.index[left], K.index[right])


class _Circ:
    __slots__ = ("comp",)

    def __init__(self, comp):
        self.comp = comp

    @property
    def lines_touched(self):
        return set(self.comp.lines_touched)

    @property
    def orientation(self):
        return self.comp.orientation

    def positions_on(self, line: int) -> frozenset[int]:
        return frozenset(p for l, p in self.comp.vertices if l == line)


def _circles(d: OrientedDiagram):
    return [_Circ(c) for c in d.components() if c.kind == "circle"]
