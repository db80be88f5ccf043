"""BGG complexes of cell modules ending in an irreducible module.

The n-th term is the sum of V(lam)<n> over lam <= mu with l(lam, mu) = n,
and the differentials are signed sums of the canonical maps between
neighbouring cell modules.  Those maps send (c lam| to (c nu| or to zero, so
the complex splits as a direct sum over the cup diagram c and ranks can be
computed one c at a time.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .core_combinatorics import (DOWN, Block, Weight, arrows_from, bruhat_leq, is_kostant,
                            rel_length)
from .diagrams import CupDiagram
from .linalg import rank

Arrow = tuple[Weight, Weight]


def interval_below(mu: Weight) -> list[Weight]:
    return [lam for lam in mu.block.weights if bruhat_leq(lam, mu)]


def interval_arrows(mu: Weight) -> dict[Arrow, tuple[int, int]]:
    """Arrows lam -> nu inside the interval below mu, with the swapped vertices."""
    inside = set(interval_below(mu))
    return {(lam, nu): (i, j) for lam in inside for i, j, nu in arrows_from(lam) if nu in inside}


def squares(arrows: dict[Arrow, tuple[int, int]]) -> list[tuple[Weight, Weight, Weight, Weight]]:
    out_of: dict[Weight, list[Weight]] = {}
    for lam, nu in arrows:
        out_of.setdefault(lam, []).append(nu)
    found = []
    for lam, nus in out_of.items():
        for nu, nu2 in combinations(sorted(nus, key=str), 2):
            for top in set(out_of.get(nu, ())) & set(out_of.get(nu2, ())):
                found.append((lam, nu, nu2, top))
    return found


@dataclass
class SignAssignment:
    signs: dict[Arrow, int]
    method: str = "coordinate"

    def __getitem__(self, arrow: Arrow) -> int:
        return self.signs[arrow]

    def square_ok(self, sq) -> bool:
        lam, nu, nu2, top = sq
        s = self.signs
        return s[(lam, nu)] * s[(nu, top)] * s[(lam, nu2)] * s[(nu2, top)] == -1


def coordinate_sign(lam: Weight, i: int) -> int:
    """(-1)^(sum of free-vertex ranks of the downs to the right of the moved one)."""
    fp = lam.free_positions
    downs = [n for n, p in enumerate(fp) if lam.label(p) == DOWN]
    a = downs.index(fp.index(i))
    return -1 if sum(downs[a + 1:]) % 2 else 1


def _solve_gf2(arrows: list[Arrow], sqs) -> dict[Arrow, int] | None:
    idx = {a: n for n, a in enumerate(arrows)}
    rows: dict[int, tuple[int, int]] = {}  # pivot -> (mask, rhs)
    for lam, nu, nu2, top in sqs:
        mask = 0
        for a in ((lam, nu), (nu, top), (lam, nu2), (nu2, top)):
            mask ^= 1 << idx[a]
        rhs = 1
        while mask:
            p = mask.bit_length() - 1
            if p not in rows:
                rows[p] = (mask, rhs)
                break
            m, r = rows[p]
            mask ^= m
            rhs ^= r
        else:
            if rhs:
                return None
    value = [0] * len(arrows)
    for p in sorted(rows):
        m, r = rows[p]
        v = r
        for b in range(p):
            if m >> b & 1:
                v ^= value[b]
        value[p] = v
    return {a: (-1 if value[n] else 1) for a, n in idx.items()}


def sign_assignment(mu: Weight, method: str = "coordinate") -> SignAssignment:
    """Signs on the arrows below mu making every square anticommute."""
    arrows = interval_arrows(mu)
    sqs = squares(arrows)
    if method == "coordinate":
        sa = SignAssignment({(lam, nu): coordinate_sign(lam, i) for (lam, nu), (i, _) in arrows.items()})
        if all(sa.square_ok(s) for s in sqs):
            return sa
    solved = _solve_gf2(sorted(arrows, key=lambda a: (str(a[0]), str(a[1]))), sqs)
    if solved is None:
        raise ArithmeticError("no sign assignment exists")
    return SignAssignment(solved, "gf2")


# -- the canonical maps -------------------------------------------------------

def cell_basis(lam: Weight) -> list[tuple[Weight, int]]:
    """(alpha, degree) for the basis vectors (cup(alpha) lam| of V(lam)."""
    out = []
    for a in lam.block.weights:
        c = CupDiagram.of_weight(a)
        if c.is_oriented_with(lam):
            out.append((a, c.degree_with(lam)))
    return out


def cell_hom(alg, lam: Weight, nu: Weight, check: bool = True):
    """f_{lam,nu}: V(lam)<1> -> V(nu) as a ModuleMap, for an arrow lam -> nu."""
    from .modrep import ModuleMap, cell_module
    pairs = [(i, j) for i, j, w in arrows_from(lam) if w == nu]
    if not pairs:
        raise ValueError(f"{lam} -> {nu} is not an arrow")
    i, j = pairs[0]
    block = alg.block
    src = cell_module(alg, block.index(lam)).shift(1)
    tgt = cell_module(alg, block.index(nu))
    pos = {a: n for n, a in enumerate(tgt.labels)}
    images = {}
    for n, a in enumerate(src.labels):
        if (i, j) in CupDiagram.of_weight(a).cups:
            images[n] = {pos[a]: 1}
    return ModuleMap(src, tgt, images, 0, check=check)


@dataclass
class BGGComplex:
    mu: Weight
    terms: list[list[Weight]]  # weights lam with l(lam, mu) = n
    signs: SignAssignment
    arrows: dict[Arrow, tuple[int, int]]

    @classmethod
    def build(cls, mu: Weight, method: str = "coordinate") -> BGGComplex:
        below = interval_below(mu)
        top = max((rel_length(l, mu) for l in below), default=0)
        terms = [[] for _ in range(top + 1)]
        for lam in below:
            terms[rel_length(lam, mu)].append(lam)
        return cls(mu, terms, sign_assignment(mu, method), interval_arrows(mu))

    def basis(self, n: int, alpha: Weight) -> list[Weight]:
        """Summands of V_n having a basis vector with cup diagram alpha."""
        c = CupDiagram.of_weight(alpha)
        return [lam for lam in self.terms[n] if c.is_oriented_with(lam)] if n < len(self.terms) else []

    def differential(self, n: int, alpha: Weight) -> list[dict[int, int]]:
        """Columns of d_n: V_{n+1} -> V_n restricted to cup diagram alpha."""
        src, tgt = self.basis(n + 1, alpha), self.basis(n, alpha)
        pos = {lam: k for k, lam in enumerate(tgt)}
        cups = set(CupDiagram.of_weight(alpha).cups)
        cols = []
        for lam in src:
            col = {}
            for (l, nu), ij in self.arrows.items():
                if l == lam and nu in pos and ij in cups:
                    col[pos[nu]] = self.signs[(lam, nu)]
            cols.append(col)
        return cols

    def alphas(self) -> list[Weight]:
        return list(self.mu.block.weights)


@dataclass
class BGGReport:
    mu: Weight
    kostant: bool
    d_squared_zero: bool
    exact_positions: list[bool]
    signs_method: str
    squares_ok: bool

    @property
    def verdict(self) -> bool:
        return all(self.exact_positions)

    def as_dict(self) -> dict:
        return {"mu": str(self.mu), "kostant": self.kostant, "d_squared_zero": self.d_squared_zero,
                "exact_positions": self.exact_positions, "verdict": self.verdict,
                "signs": self.signs_method, "squares_ok": self.squares_ok}


def _compose(d_low: list[dict[int, int]], d_high: list[dict[int, int]]) -> bool:
    """Is d_low after d_high zero?"""
    for col in d_high:
        acc: dict[int, int] = {}
        for k, x in col.items():
            for r, y in d_low[k].items():
                acc[r] = acc.get(r, 0) + x * y
        if any(acc.values()):
            return False
    return True


def verify_bgg(mu: Weight, method: str = "coordinate") -> BGGReport:
    cx = BGGComplex.build(mu, method)
    sqs = squares(cx.arrows)
    squares_ok = all(cx.signs.square_ok(s) for s in sqs)
    top = len(cx.terms) - 1
    d2 = True
    exact = [True] * (top + 1)
    for alpha in cx.alphas():
        dims = [len(cx.basis(n, alpha)) for n in range(top + 1)]
        if not any(dims):
            continue
        ds = [cx.differential(n, alpha) for n in range(top)]
        ranks = [rank(d) for d in ds] + [0]
        for n in range(top - 1):
            if not _compose(ds[n], ds[n + 1]):
                d2 = False
        # augmentation: nonzero exactly on (cup(mu) mu|
        eps = 1 if alpha == mu else 0
        if dims[0] - eps != ranks[0]:
            exact[0] = False
        for n in range(1, top + 1):
            if dims[n] - ranks[n - 1] != ranks[n]:
                exact[n] = False
    return BGGReport(mu, is_kostant(mu), d2, exact, cx.signs.method, squares_ok)


def euler_characteristic(mu: Weight) -> dict[Weight, object]:
    """sum_n (-1)^n [V_n] in the basis of cell modules: coefficient (-q)^l(lam, mu)."""
    from .laurent import q
    return {lam: q(rel_length(lam, mu)) * ((-1) ** rel_length(lam, mu)) for lam in interval_below(mu)}
