"""The identity suite behind ``arcweb check``.

Each check scans every free block up to a size limit and returns the first
counterexample it meets, written out in full.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .core_combinatorics import Block, Frame, arrows, bruhat_leq, is_kostant
from .laurent import identity, mat_mul, transpose
from .parallel import pmap


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int = 0
    counterexample: str | None = None
    notes: list[str] = field(default_factory=list)

    def line(self) -> str:
        head = f"{'PASS' if self.passed else 'FAIL'} {self.name} ({self.cases} cases)"
        if self.counterexample:
            head += f"\n  counterexample: {self.counterexample}"
        for n in self.notes:
            head += f"\n  note: {n}"
        return head


def free_blocks(max_free: int, min_free: int = 1):
    for n in range(min_free, max_free + 1):
        for nd in range(n + 1):
            yield Block.free(nd, n - nd)


def _fmt(m) -> str:
    return "[" + "; ".join(", ".join(str(x) for x in row) for row in m) + "]"


def check_kl_methods(max_free: int) -> CheckResult:
    from .kl import kl_poly_closed, kl_poly_recursive
    r = CheckResult("kl closed formula = recursion", True)
    for b in free_blocks(max_free):
        for lam in b.weights:
            for mu in b.weights:
                r.cases += 1
                a, c = kl_poly_closed(lam, mu), kl_poly_recursive(lam, mu)
                if a != c:
                    r.passed = False
                    r.counterexample = f"lam={lam} mu={mu}: closed {a}, recursive {c}"
                    return r
    return r


def check_inverse(max_free: int) -> CheckResult:
    from .kl import at_minus_q, decomposition_matrix, kl_matrix
    r = CheckResult("D(q) P(-q) = I", True)
    for b in free_blocks(max_free):
        r.cases += 1
        D, P = decomposition_matrix(b), kl_matrix(b)
        X = mat_mul(D, at_minus_q(P))
        if X != identity(len(D)):
            r.passed = False
            r.counterexample = f"block {b.frame} {b.n_down},{b.n_up}: D P(-q) = {_fmt(X)}"
            return r
    return r


def check_cartan(max_free: int) -> CheckResult:
    from .kl import at_minus_q, cartan_matrix, decomposition_matrix, max_length, neumann_inverse, poincare_matrix
    r = CheckResult("C = D D^T and E = P^T P = C(-q)^-1", True)
    for b in free_blocks(max_free):
        r.cases += 1
        D, C = decomposition_matrix(b), cartan_matrix(b)
        if mat_mul(D, transpose(D)) != C:
            r.passed, r.counterexample = False, f"block {b.n_down},{b.n_up}: C != D D^T"
            return r
        E = poincare_matrix(b)
        Cm = at_minus_q(C)
        if mat_mul(Cm, E) != identity(len(E)) or neumann_inverse(Cm, 4 * max_length(b) + 2) != E:
            r.passed, r.counterexample = False, f"block {b.n_down},{b.n_up}: E != C(-q)^-1"
            return r
    return r


def check_euler(max_free: int) -> CheckResult:
    from .kl import cartan_matrix, decomposition_matrix, euler_check
    r = CheckResult("alternating sum of predicted resolutions = [V(lam)]", True)
    for b in free_blocks(max_free):
        C, D = cartan_matrix(b), decomposition_matrix(b)
        for lam in b.weights:
            r.cases += 1
            if not euler_check(lam, b, C, D):
                r.passed, r.counterexample = False, f"lam={lam}"
                return r
    return r


def check_kostant(max_free: int) -> CheckResult:
    from .kl import kostant_by_kl
    r = CheckResult("Kostant: pattern avoidance = monomial KL polynomials", True)
    for b in free_blocks(max_free):
        for mu in b.weights:
            r.cases += 1
            if is_kostant(mu) != kostant_by_kl(mu):
                r.passed, r.counterexample = False, f"mu={mu}: pattern {is_kostant(mu)}"
                return r
    return r


def _bgg_one(mu):
    from .bgg import verify_bgg
    rep = verify_bgg(mu)
    return str(mu), rep.as_dict()


def check_bgg(max_free: int) -> CheckResult:
    r = CheckResult("BGG complexes: d^2 = 0, signs anticommute, exact iff Kostant", True)
    mus = [mu for b in free_blocks(max_free) for mu in b.weights]
    above = 0
    for name, rep in pmap(_bgg_one, mus):
        r.cases += 1
        if not all(rep["exact_positions"][1:]):
            above += 1
        if not (rep["d_squared_zero"] and rep["squares_ok"] and rep["verdict"] == rep["kostant"]):
            r.passed = False
            r.counterexample = f"mu={name}: {rep}"
            return r
    if above:
        r.notes.append(f"{above} non-Kostant weights have homology above position 0")
    return r


def check_degree_lemma(max_free: int, samples: int = 200, seed: int = 0) -> CheckResult:
    from .diagrams import CapDiagram, CupDiagram, OrientedDiagram, degree_lemma_holds
    r = CheckResult("circle and line degree formulas", True)
    rng = random.Random(seed)
    for b in free_blocks(min(max_free, 4)):
        ws = b.weights
        for _ in range(samples // 10 + 1):
            cup = CupDiagram.of_weight(rng.choice(ws))
            cap = CapDiagram.of_weight(rng.choice(ws))
            for lam in ws:
                d = OrientedDiagram(cup, (lam,), (), cap)
                if not d.is_oriented():
                    continue
                for comp in d.components():
                    r.cases += 1
                    if not degree_lemma_holds(comp):
                        r.passed, r.counterexample = False, f"cup={cup.weight} lam={lam} cap={cap.weight}"
                        return r
    return r


def check_algebra(max_free: int) -> CheckResult:
    from .arc_algebra import arc_algebra
    r = CheckResult("associativity and idempotents of K", True)
    for b in free_blocks(min(max_free, 4)):
        A = arc_algebra(b)
        n = len(A)
        for i in range(n):
            for j in range(n):
                ij = A.mul(i, j)
                if not ij:
                    continue
                for k in range(n):
                    if A.right[j] != A.left[k]:
                        continue
                    r.cases += 1
                    lhs: dict[int, int] = {}
                    for m, c in ij.items():
                        for t, e in A.mul(m, k).items():
                            lhs[t] = lhs.get(t, 0) + c * e
                    rhs: dict[int, int] = {}
                    for m, c in A.mul(j, k).items():
                        for t, e in A.mul(i, m).items():
                            rhs[t] = rhs.get(t, 0) + c * e
                    if {t: c for t, c in lhs.items() if c} != {t: c for t, c in rhs.items() if c}:
                        r.passed = False
                        r.counterexample = f"({A.format_key(i)})({A.format_key(j)})({A.format_key(k)})"
                        return r
    return r


def check_modules(max_free: int) -> CheckResult:
    from .arc_algebra import arc_algebra
    from .modrep import double_centralizer_check, socle_check, decomposition_matrix_via_hom
    from .kl import decomposition_matrix
    r = CheckResult("socles of cell modules, double centralizer, D via Hom", True)
    for b in free_blocks(min(max_free, 5)):
        A = arc_algebra(b)
        for lam in range(len(b.weights)):
            r.cases += 1
            if not socle_check(A, lam):
                r.passed, r.counterexample = False, f"soc V({b.weights[lam]})"
                return r
        if len(b.weights) <= 10:
            r.cases += 1
            if not double_centralizer_check(A):
                r.passed, r.counterexample = False, f"double centralizer on {b.n_down},{b.n_up}"
                return r
            if decomposition_matrix_via_hom(A) != decomposition_matrix(b):
                r.passed, r.counterexample = False, f"D via Hom on {b.n_down},{b.n_up}"
                return r
    return r


def check_koszul(max_free: int) -> CheckResult:
    from .arc_algebra import arc_algebra
    from .kl import max_length, poincare_matrix
    from .laurent import LaurentPoly
    from .modrep import ext_table, irreducible_module, minimal_resolution
    r = CheckResult("Ext between irreducibles: linear and equal to P^T P", True)
    for b in free_blocks(min(max_free, 4)):
        A = arc_algebra(b)
        n = len(b.weights)
        E = [[LaurentPoly() for _ in range(n)] for _ in range(n)]
        for lam in range(n):
            r.cases += 1
            res = minimal_resolution(irreducible_module(A, lam), 2 * max_length(b) + 1)
            if not (res.complete and res.is_linear() and res.minimal_ok):
                r.passed, r.counterexample = False, f"resolution of L({b.weights[lam]})"
                return r
            for (i, w, _), c in ext_table(res).items():
                E[lam][w] = E[lam][w] + LaurentPoly({i: c})
        if E != poincare_matrix(b):
            r.passed, r.counterexample = False, f"E on {b.n_down},{b.n_up}: {_fmt(E)}"
            return r
    return r


def check_functors(max_free: int) -> CheckResult:
    from .bimodules import blocks_for, is_proper
    from .diagrams import all_matchings
    from .functors import FunctorDescriptor, consistency_report, gamma_t_connected
    r = CheckResult("projective functors: predictions = tensoring", True)
    limit = min(max_free, 4)
    for b in free_blocks(limit):
        for nt in range(0, limit + 1):
            for m in all_matchings(b.frame, Frame.free(nt)):
                try:
                    top = blocks_for(b, [m])[1]
                except ValueError:
                    continue
                if top.n_down < 0 or top.n_up < 0 or not is_proper(m, b, top):
                    continue
                F = FunctorDescriptor(top, b, m)
                r.cases += 1
                bad = consistency_report(F)
                if any(bad.values()) or not gamma_t_connected(F):
                    r.passed, r.counterexample = False, f"t={m} on {b.n_down},{b.n_up}: {bad}"
                    return r
    return r


CHECKS: dict[str, Callable[[int], CheckResult]] = {
    "kl": check_kl_methods,
    "inverse": check_inverse,
    "cartan": check_cartan,
    "euler": check_euler,
    "kostant": check_kostant,
    "bgg": check_bgg,
    "degree": check_degree_lemma,
    "algebra": check_algebra,
    "modules": check_modules,
    "koszul": check_koszul,
    "functors": check_functors,
}


def run_checks(max_free: int, names: list[str] | None = None, seed: int = 0) -> list[CheckResult]:
    out = []
    for n in names or list(CHECKS):
        fn = CHECKS[n]
        out.append(fn(max_free, seed=seed) if n == "degree" else fn(max_free))
    return out
