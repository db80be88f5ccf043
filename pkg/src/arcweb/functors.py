"""Projective functors G^t = K^t<-caps(t)> (x) - between module categories of
two blocks, described combinatorially and, for checking, by honest tensor
products with the bimodule K^t.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .arc_algebra import arc_algebra
from .bimodules import Bimodule, blocks_for, is_proper
from .core_combinatorics import DOWN, UP, Block, Weight
from .diagrams import CapDiagram, CupDiagram, Matching, lower_reduction, upper_reduction
from .laurent import QUANTUM_TWO, LaurentPoly, q
from .linalg import Echelon
from .modrep import (GradedModule, bimodule_module, cell_module, hom_graded_dim,
                      irreducible_module, projective_module)


@dataclass(frozen=True)
class FunctorDescriptor:
    """G^t from modules over the top block gamma to modules over the bottom block lam."""

    source: Block  # Gamma, the top line of t
    target: Block  # Lambda, the bottom line of t
    t: Matching

    @classmethod
    def from_bottom(cls, target: Block, t: Matching) -> FunctorDescriptor:
        _, top = blocks_for(target, [t])
        return cls(top, target, t)

    @property
    def shift(self) -> int:
        return -self.t.n_caps

    @property
    def proper(self) -> bool:
        return is_proper(self.t, self.target, self.source)

    def dual(self) -> FunctorDescriptor:
        """G^{t*}, going the other way."""
        return FunctorDescriptor(self.target, self.source, self.t.mirror())

    @cached_property
    def bimodule(self) -> Bimodule:
        return Bimodule((self.target, self.source), (self.t,))


@dataclass(frozen=True)
class FiltrationLayer:
    weight: Weight
    shift: int


def _line_orientable(comp) -> bool:
    (_, tu), (_, tv) = comp.ends
    return (tu != tv) == bool((comp.n_cups + comp.n_caps) % 2)


def on_projective(F: FunctorDescriptor, gamma: Weight):
    """G^t P(gamma) = P(lam) (x) R^n <cups - caps>, or None when it is zero."""
    red = upper_reduction([F.t], CapDiagram.of_weight(gamma))
    if not all(_line_orientable(c) for c in red.lines):
        return None
    lam = red.result.weight
    if not F.target.contains(lam):
        return None
    return lam, len(red.circles), F.t.n_cups - F.t.n_caps


def _bruhat_key(w: Weight) -> int:
    # sum of the positions of the down labels increases strictly along the order
    return sum(p for p, l in zip(w.frame.positions, w.labels) if l == DOWN)


def on_cell(F: FunctorDescriptor, gamma: Weight) -> list[FiltrationLayer]:
    """Cell filtration of G^t V(gamma): V(mu_i)<deg(mu_i t gamma) - caps(t)>, bigger mu first."""
    t = F.t
    layers = [FiltrationLayer(mu, t.degree_with(mu, gamma) - t.n_caps)
              for mu in F.target.weights if t.is_oriented_with(mu, gamma)]
    layers.sort(key=lambda L: -_bruhat_key(L.weight))
    return layers


def _cup_key(c: CupDiagram):
    return tuple(sorted(c.cups)), tuple(sorted(c.rays))


def on_irreducible_K0(F: FunctorDescriptor, gamma: Weight) -> list[tuple[Weight, LaurentPoly]]:
    """[G^t L(gamma)] = sum of (q + q^-1)^{n_mu} [L(mu)]."""
    target = _cup_key(CupDiagram.of_weight(gamma))
    out = []
    for mu in F.target.weights:
        red = lower_reduction(CupDiagram.of_weight(mu), [F.t])
        if _cup_key(red.result) != target:
            continue
        if not all(_line_orientable(c) for c in red.lines):
            continue
        out.append((mu, QUANTUM_TWO ** len(red.circles)))
    return out


def cups_anticlockwise(t: Matching, gamma: Weight) -> bool:
    return all(gamma.label(i) == DOWN and gamma.label(j) == UP for i, j in t.cups)


def gamma_t(F: FunctorDescriptor) -> list[Weight]:
    if not F.proper:
        return []
    return [g for g in F.source.weights if cups_anticlockwise(F.t, g)]


def gamma_t_connected(F: FunctorDescriptor) -> bool:
    """Connectivity of Gamma(t) under [V(lam) : L(mu)] != 0."""
    ws = gamma_t(F)
    if not ws:
        return True
    parent = {w: w for w in ws}

    def find(w):
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    for lam in ws:
        for mu in ws:
            if CupDiagram.of_weight(mu).is_oriented_with(lam):
                parent[find(lam)] = find(mu)
    return len({find(w) for w in ws}) == 1


# -- characters ------------------------------------------------------------

Character = dict  # weight -> LaurentPoly


def _add(ch: Character, other: Character, shift: int = 0, scale: LaurentPoly | None = None) -> None:
    for w, p in other.items():
        p = p.shift(shift)
        if scale is not None:
            p = p * scale
        ch[w] = ch.get(w, LaurentPoly()) + p


def _clean(ch: Character) -> Character:
    return {w: p for w, p in ch.items() if not p.is_zero()}


def module_character(M: GradedModule) -> Character:
    ws = M.alg.weights
    return _clean({ws[i]: p for i, p in M.character().items()})


def tensor_character(b: Bimodule, M: GradedModule) -> Character:
    """Character of b (x)_K M, K the algebra of the top block of b (so M is over it)."""
    alg = b.right_algebra
    if M.alg is not alg:
        raise ValueError("module is not over the right algebra of the bimodule")
    by_weight: dict[int, list[int]] = {}
    for i, w in enumerate(M.weights):
        by_weight.setdefault(w, []).append(i)
    pairs: dict[tuple[int, int], int] = {}
    comp: dict[int, tuple[int, int]] = {}
    for j in range(len(b)):
        for i in by_weight.get(b.right[j], ()):
            n = len(pairs)
            pairs[(j, i)] = n
            comp[n] = (b.left[j], b.degrees[j] + M.degrees[i])
    ech: dict[tuple[int, int], Echelon] = {}
    by_left: dict[int, list[int]] = {}
    for j in range(len(b)):
        by_left.setdefault(b.right[j], []).append(j)
    for a in alg.generating_set:
        for j in by_left.get(alg.left[a], ()):
            ba = b.right_mul(j, a)
            for i in by_weight.get(alg.right[a], ()):
                rel: dict[int, int] = {}
                for j2, c in ba.items():
                    k = pairs[(j2, i)]
                    rel[k] = rel.get(k, 0) + c
                for i2, c in M.act(a, i).items():
                    k = pairs[(j, i2)]
                    rel[k] = rel.get(k, 0) - c
                rel = {k: c for k, c in rel.items() if c}
                if rel:
                    cmp = comp[next(iter(rel))]
                    ech.setdefault(cmp, Echelon()).add(rel)
    counts: dict[tuple[int, int], int] = {}
    for n, c in comp.items():
        counts[c] = counts.get(c, 0) + 1
    out: dict[Weight, dict[int, int]] = {}
    ws = b.bottom.weights
    for (w, d), n in counts.items():
        e = ech.get((w, d))
        n -= e.rank if e is not None else 0
        if n:
            out.setdefault(ws[w], {})[d] = n
    return {w: LaurentPoly(c) for w, c in out.items()}


def apply_character(F: FunctorDescriptor, M: GradedModule) -> Character:
    """Character of G^t M computed by tensoring with the bimodule."""
    return _clean({w: p.shift(F.shift) for w, p in tensor_character(F.bimodule, M).items()})


def _alg_index(block: Block, w: Weight) -> int:
    return block.index(w)


def predicted_projective(F: FunctorDescriptor, gamma: Weight) -> Character:
    res = on_projective(F, gamma)
    if res is None:
        return {}
    lam, n, s = res
    P = projective_module(arc_algebra(F.target), F.target.index(lam))
    out: Character = {}
    _add(out, module_character(P), s, QUANTUM_TWO ** n)
    return _clean(out)


def predicted_cell(F: FunctorDescriptor, gamma: Weight) -> Character:
    alg = arc_algebra(F.target)
    out: Character = {}
    for layer in on_cell(F, gamma):
        _add(out, module_character(cell_module(alg, F.target.index(layer.weight))), layer.shift)
    return _clean(out)


def predicted_irreducible(F: FunctorDescriptor, gamma: Weight) -> Character:
    out: Character = {}
    for mu, m in on_irreducible_K0(F, gamma):
        out[mu] = out.get(mu, LaurentPoly()) + m
    return _clean(out)


def consistency_report(F: FunctorDescriptor) -> dict[str, list[Weight]]:
    """Weights gamma for which matrix-level tensoring disagrees with the predictions."""
    alg = arc_algebra(F.source)
    bad: dict[str, list[Weight]] = {"proj": [], "cell": [], "irr": []}
    for g, gamma in enumerate(F.source.weights):
        if apply_character(F, projective_module(alg, g)) != predicted_projective(F, gamma):
            bad["proj"].append(gamma)
        if apply_character(F, cell_module(alg, g)) != predicted_cell(F, gamma):
            bad["cell"].append(gamma)
        if apply_character(F, irreducible_module(alg, g)) != predicted_irreducible(F, gamma):
            bad["irr"].append(gamma)
    return bad


def duality_dim_check(F: FunctorDescriptor, M: GradedModule) -> bool:
    """ch G(M*) equals the bar of ch G(M)."""
    lhs = apply_character(F, M.dual())
    rhs = {w: p.bar() for w, p in apply_character(F, M).items()}
    return lhs == rhs


def adjunction_dim_check(F: FunctorDescriptor, lam: Weight, N: GradedModule) -> bool:
    """Hom(G^{t*} P(lam) <cups - caps>, N) against e_lam G^t N, as graded dimensions."""
    Fs = F.dual()
    X = bimodule_module(Fs.bimodule, F.target.index(lam))
    X = X.shift(Fs.shift + F.t.n_cups - F.t.n_caps)
    lhs = hom_graded_dim(X, N)
    rhs = apply_character(F, N).get(lam, LaurentPoly())
    return lhs == rhs
