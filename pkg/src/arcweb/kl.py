"""Kazhdan-Lusztig polynomials of Grassmannian type, by a closed formula over
labelled cap diagrams and by recursion, with the matrices P, D, C and E.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core_combinatorics import (DOWN, UP, Block, Weight, bruhat_leq, cup_arcs, delete_vertices,
                            ell_sequence, is_kostant, rel_length, swap)
from .diagrams import CupDiagram
from .laurent import LaurentPoly, identity, mat_map, mat_mul, q, transpose, zeros


# -- capped forests ---------------------------------------------------------

@dataclass(frozen=True)
class LabelledCapForest:
    """Caps of a cap diagram with their nesting; chamber labels sit on the caps."""

    caps: tuple[tuple[int, int], ...]  # positions, sorted by left end
    parent: tuple[int, ...]  # -1 for outermost caps
    children: tuple[tuple[int, ...], ...]
    leftmost: tuple[int, ...]  # index among the free vertices of each cap's left end

    @classmethod
    @lru_cache(maxsize=None)
    def of_weight(cls, mu: Weight) -> LabelledCapForest:
        cups, _ = cup_arcs(mu)
        caps = tuple(sorted(cups))
        parent = []
        stack: list[int] = []
        for k, (i, j) in enumerate(caps):
            while stack and caps[stack[-1]][1] < i:
                stack.pop()
            parent.append(stack[-1] if stack else -1)
            stack.append(k)
        children = tuple(tuple(k for k, p in enumerate(parent) if p == m) for m in range(len(caps)))
        idx = {p: n for n, p in enumerate(mu.free_positions)}
        return cls(caps, tuple(parent), children, tuple(idx[i] for i, _ in caps))

    @property
    def roots(self) -> tuple[int, ...]:
        return tuple(k for k, p in enumerate(self.parent) if p == -1)

    def is_leaf(self, k: int) -> bool:
        return not self.children[k]

    def label_sums(self, bounds: dict[int, int]) -> dict[int, int]:
        """Number of admissible labellings with each label sum, leaves k bounded by bounds[k]."""
        # bound of a subtree: the smallest leaf bound inside it
        sub: dict[int, int] = {}
        for k in reversed(range(len(self.caps))):
            sub[k] = bounds[k] if self.is_leaf(k) else min(sub[c] for c in self.children[k])
        memo: dict[tuple[int, int], dict[int, int]] = {}

        def f(k: int, lower: int) -> dict[int, int]:
            key = (k, lower)
            if key in memo:
                return memo[key]
            out: dict[int, int] = {}
            for v in range(lower, sub[k] + 1):
                acc = {v: 1}
                for c in self.children[k]:
                    acc = _pmul(acc, f(c, v))
                    if not acc:
                        break
                _padd(out, acc)
            memo[key] = out
            return out

        total = {0: 1}
        for r in self.roots:
            total = _pmul(total, f(r, 0))
            if not total:
                break
        return total


def _pmul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _padd(a: dict[int, int], b: dict[int, int]) -> None:
    for k, v in b.items():
        a[k] = a.get(k, 0) + v


def _check_block(lam: Weight, mu: Weight) -> None:
    if lam.frame != mu.frame or lam.n_down != mu.n_down:
        raise ValueError("weights lie in different blocks")


def kl_poly_closed(lam: Weight, mu: Weight) -> LaurentPoly:
    """p_{lam,mu}(q) = q^l(lam,mu) times the sum over labelled cap diagrams of q^(-2|C|)."""
    _check_block(lam, mu)
    ells = ell_sequence(lam, mu)
    if any(v < 0 for v in ells):
        return LaurentPoly()
    forest = LabelledCapForest.of_weight(mu)
    bounds = {k: ells[forest.leftmost[k]] for k in range(len(forest.caps)) if forest.is_leaf(k)}
    length = sum(ells)
    return LaurentPoly({length - 2 * s: c for s, c in forest.label_sums(bounds).items()})


# -- recursion --------------------------------------------------------------

def _neighbour_pairs(lam: Weight) -> list[tuple[int, int]]:
    fp = lam.free_positions
    return [(i, j) for i, j in zip(fp, fp[1:]) if lam.label(i) == DOWN and lam.label(j) == UP]


def kl_poly_recursive(lam: Weight, mu: Weight, choice: str = "leftmost") -> LaurentPoly:
    """p_{lam,mu} by deleting or swapping a neighbouring v^ pair of lam.

    choice picks the pair: "leftmost", "rightmost" or "middle".
    """
    _check_block(lam, mu)
    return LaurentPoly(dict(_rec(lam, mu, choice)))


@lru_cache(maxsize=None)
def _rec(lam: Weight, mu: Weight, choice: str) -> tuple[tuple[int, int], ...]:
    if lam == mu:
        return ((0, 1),)
    if not bruhat_leq(lam, mu):
        return ()
    pairs = _neighbour_pairs(lam)
    i, j = {"leftmost": pairs[0], "rightmost": pairs[-1]}.get(choice, pairs[len(pairs) // 2])
    out: dict[int, int] = {}
    for e, c in _rec(swap(lam, i, j), mu, choice):
        out[e + 1] = out.get(e + 1, 0) + c
    if mu.label(i) == DOWN and mu.label(j) == UP:
        for e, c in _rec(delete_vertices(lam, i, j), delete_vertices(mu, i, j), choice):
            out[e] = out.get(e, 0) + c
    return tuple(sorted((e, c) for e, c in out.items() if c))


def kl_poly(lam: Weight, mu: Weight, method: str = "closed") -> LaurentPoly:
    return kl_poly_closed(lam, mu) if method == "closed" else kl_poly_recursive(lam, mu)


# -- matrices ---------------------------------------------------------------

def kl_matrix(block: Block, method: str = "closed") -> list[list[LaurentPoly]]:
    ws = block.weights
    return [[kl_poly(a, b, method) for b in ws] for a in ws]


def decomposition_matrix(block: Block) -> list[list[LaurentPoly]]:
    """d_{lam,mu}(q) = q^deg(cup(lam) mu) if cup(lam) mu is oriented."""
    ws = block.weights
    out = []
    for lam in ws:
        cup = CupDiagram.of_weight(lam)
        out.append([q(cup.degree_with(mu)) if cup.is_oriented_with(mu) else LaurentPoly()
                    for mu in ws])
    return out


def cartan_matrix(block: Block) -> list[list[LaurentPoly]]:
    """c_{lam,mu}(q) counted directly: oriented circle diagrams cup(lam) nu cap(mu)."""
    ws = block.weights
    n = len(ws)
    cups = [CupDiagram.of_weight(w) for w in ws]
    oriented = [[cups[a].degree_with(ws[k]) if cups[a].is_oriented_with(ws[k]) else None
                 for k in range(n)] for a in range(n)]
    out = zeros(n)
    for a in range(n):
        for b in range(n):
            c: dict[int, int] = {}
            for k in range(n):
                x, y = oriented[a][k], oriented[b][k]
                if x is not None and y is not None:
                    c[x + y] = c.get(x + y, 0) + 1
            out[a][b] = LaurentPoly(c)
    return out


def at_minus_q(m):
    return mat_map(m, lambda p: p.at_minus_q())


def poincare_matrix(block: Block) -> list[list[LaurentPoly]]:
    """E(q) = P(q)^T P(q)."""
    P = kl_matrix(block)
    return mat_mul(transpose(P), P)


def neumann_inverse(C: list[list[LaurentPoly]], max_degree: int) -> list[list[LaurentPoly]]:
    """Inverse of a matrix I - N with N in positive degrees, as a series truncated at max_degree."""
    n = len(C)
    I = identity(n)
    N = [[I[a][b] - C[a][b] for b in range(n)] for a in range(n)]
    if any(p.min_degree() is not None and p.min_degree() <= 0
           for row in N for p in row if not p.is_zero()):
        raise ValueError("matrix is not unipotent modulo q")
    out = identity(n)
    term = identity(n)
    for _ in range(max_degree):
        term = _truncate(mat_mul(term, N), max_degree)
        if all(p.is_zero() for row in term for p in row):
            break
        out = [[out[a][b] + term[a][b] for b in range(n)] for a in range(n)]
    return out


def _truncate(m, d):
    return [[LaurentPoly({e: c for e, c in p.terms() if e <= d}) for p in row] for row in m]


def max_length(block: Block) -> int:
    ws = block.weights
    return rel_length(ws[0], ws[-1]) if len(ws) > 1 else 0


# -- predicted resolutions ----------------------------------------------------

def linear_resolution_ranks(lam: Weight, block: Block | None = None) -> list[dict[tuple[Weight, int], int]]:
    """P_n(lam) = sum over mu of p^(n)_{lam,mu} copies of P(mu)<n>."""
    block = block or lam.block
    tables: dict[int, dict[tuple[Weight, int], int]] = {}
    for mu in block.weights:
        for e, c in kl_poly_closed(lam, mu).terms():
            tables.setdefault(e, {})[(mu, e)] = c
    top = max(tables) if tables else -1
    return [tables.get(n, {}) for n in range(top + 1)]


def euler_check(lam: Weight, block: Block | None = None, C=None, D=None) -> bool:
    """sum_n (-1)^n [P_n(lam)] equals [V(lam)], both in the basis of irreducibles."""
    block = block or lam.block
    ws = block.weights
    C = C if C is not None else cartan_matrix(block)
    D = D if D is not None else decomposition_matrix(block)
    k = block.index(lam)
    lhs = [LaurentPoly() for _ in ws]
    for n, table in enumerate(linear_resolution_ranks(lam, block)):
        sign = -1 if n % 2 else 1
        for (mu, s), c in table.items():
            m = block.index(mu)
            for nu in range(len(ws)):
                if not C[nu][m].is_zero():
                    lhs[nu] = lhs[nu] + C[nu][m].shift(s) * (sign * c)
    return all(lhs[nu] == D[nu][k] for nu in range(len(ws)))


def ext_cell_check(alg, lam: int, mu: int | None = None, n_max: int = 4) -> bool:
    """Ext^i(V(lam), L(mu))_{-j} from a minimal resolution is p^(i)_{lam,mu} on i = j, zero off it."""
    from .modrep import cell_module, ext_table, minimal_resolution
    ws = alg.weights
    res = minimal_resolution(cell_module(alg, lam), n_max)
    table = ext_table(res)
    targets = range(len(ws)) if mu is None else [mu]
    for m in targets:
        p = kl_poly_closed(ws[lam], ws[m])
        par = rel_length(ws[lam], ws[m]) % 2
        for i in range(len(res.terms)):
            for (i2, w, j), c in table.items():
                if i2 == i and w == m and (j != i or c != p.coeff(i)):
                    return False
            if p.coeff(i) and (i % 2 != par):
                return False
            if p.coeff(i) and table.get((i, m, i), 0) != p.coeff(i):
                return False
    return True


def kostant_by_kl(mu: Weight) -> bool:
    """mu is Kostant when every p_{lam,mu} is the monomial q^l(lam,mu)."""
    return all(kl_poly_closed(lam, mu) == q(rel_length(lam, mu))
               for lam in mu.block.weights if bruhat_leq(lam, mu))
