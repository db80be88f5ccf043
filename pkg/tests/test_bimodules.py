from __future__ import annotations

import random

import pytest

from arcweb.arc_algebra import arc_algebra
from arcweb.bimodules import (Bimodule, blocks_for, distinguished_pairs, is_proper,
                              multiplication_is_iso, phi, reduce_bimodule, reduction_prediction,
                              tensor_over_K)
from arcweb.core_combinatorics import Block, Frame
from arcweb.diagrams import Matching, all_matchings
from arcweb.laurent import QUANTUM_TWO, LaurentPoly, q

F = Frame.parse
B1 = Block.free(1, 1)
CAP = Matching.build(F("**"), F(""), caps=((1, 2),))
CUP = Matching.build(F(""), F("**"), cups=((1, 2),))


def combine(*vecs_and_coeffs):
    out = {}
    for vec, c in vecs_and_coeffs:
        for k, v in vec.items():
            out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


class TestBasics:
    def test_identity_matching_is_the_algebra(self):
        B = Bimodule((B1, B1), (Matching.identity(F("**")),))
        assert len(B) == 5 and B.graded_dim() == arc_algebra(B1).graded_dim()

    def test_cap_down_to_an_empty_line(self):
        bottom, top = blocks_for(B1, [CAP])
        assert (top.n_down, top.n_up) == (0, 0)
        B = Bimodule((bottom, top), (CAP,))
        # a circle in degrees 0 and 2, and a line through the rays of cup(^v) in degree 1
        assert B.graded_dim() == LaurentPoly({0: 1, 1: 1, 2: 1})

    def test_improper_matching_has_no_basis(self):
        top = Block.free(0, 0)
        bottom = Block.free(0, 2)
        assert not is_proper(CAP, bottom, top)
        assert len(Bimodule((bottom, top), (CAP,))) == 0

    def test_frames_must_fit(self):
        with pytest.raises(ValueError):
            Bimodule((Block.free(2, 2), B1), (CAP,))


class TestActions:
    @pytest.mark.parametrize("bottom,m", [
        (Block.free(2, 2), Matching.build(F("****"), F("**"), caps=((2, 3),))),
        (Block.free(1, 2), Matching.build(F("***"), F("*****"), cups=((4, 5),))),
        (B1, Matching.build(F("**"), F("****"), cups=((2, 3),))),
    ])
    def test_bimodule_axioms(self, bottom, m):
        B = Bimodule.from_bottom(bottom, [m])
        L, R = B.left_algebra, B.right_algebra
        rng = random.Random(1)
        for j in range(len(B)):
            assert B.left_mul(L.idempotent_index[B.left[j]], j) == {j: 1}
            assert B.right_mul(j, R.idempotent_index[B.right[j]]) == {j: 1}
        for _ in range(80):
            a, a2 = rng.randrange(len(L)), rng.randrange(len(L))
            j = rng.randrange(len(B))
            r = rng.randrange(len(R))
            # (a a2) x = a (a2 x)
            lhs = combine(*[(B.left_mul(k, j), c) for k, c in L.mul(a, a2).items()])
            rhs = combine(*[(B.left_mul(a, k), c) for k, c in B.left_mul(a2, j).items()])
            assert lhs == rhs
            # (a x) r = a (x r)
            lhs = combine(*[(B.right_mul(k, r), c) for k, c in B.left_mul(a, j).items()])
            rhs = combine(*[(B.left_mul(a, k), c) for k, c in B.right_mul(j, r).items()])
            assert lhs == rhs
            for k in B.left_mul(a, j):
                assert B.degrees[k] == L.degrees[a] + B.degrees[j]


class TestComposition:
    def test_tensor_with_identity(self):
        b = Block.free(2, 2)
        t = Matching.build(F("****"), F("**"), caps=((1, 2),))
        B = Bimodule.from_bottom(b, [t])
        Id = Bimodule.from_bottom(B.top, [Matching.identity(B.top.frame)])
        res = tensor_over_K(B, Id, check_distinguished=True)
        assert res.total == B.graded_dim() and res.distinguished_basis

    def test_cap_then_cup(self):
        bl = blocks_for(B1, [CAP, CUP])
        b1 = Bimodule(bl[:2], (CAP,))
        b2 = Bimodule(bl[1:], (CUP,))
        direct = Bimodule(bl, (CAP, CUP)).graded_dim()
        assert tensor_over_K(b1, b2).total == direct
        assert multiplication_is_iso(b1, b2)

    def test_distinguished_pairs_count(self):
        bl = blocks_for(B1, [CAP, CUP])
        b1, b2 = Bimodule(bl[:2], (CAP,)), Bimodule(bl[1:], (CUP,))
        assert len(distinguished_pairs(b1, b2)) == len(Bimodule(bl, (CAP, CUP)))


class TestReduction:
    def test_single_matching(self):
        t = Matching.build(F("****"), F("**"), caps=((2, 3),))
        r = reduce_bimodule([t])
        assert (r.matching, r.n_circles, r.shift) == (t, 0, 0)

    def test_three_level_example(self):
        t1 = Matching.parse("bottom=*******;top=*******;caps=1-4,2-3;cups=2-3,5-6;segs=5-1,6-4,7-7")
        t2 = Matching.parse("bottom=*******;top=o****o*;caps=1-4,2-3,6-7;cups=3-4,5-7;segs=5-2")
        r = reduce_bimodule([t1, t2])
        assert r.n_circles == 1 and r.shift == 2 + 3 - 3

    def test_cup_then_cap_on_b1(self):
        up = Matching.build(F("**"), F("****"), cups=((2, 3),))
        down = Matching.build(F("****"), F("**"), caps=((2, 3),))
        B = Bimodule.from_bottom(B1, [up, down])
        r = reduce_bimodule([up, down])
        assert r.n_circles == 1 and r.shift == 1
        lhs, rhs = reduction_prediction(B)
        assert lhs == rhs == arc_algebra(B1).graded_dim() * QUANTUM_TWO * q(1)


class TestPairing:
    def setup_method(self):
        self.t = Matching.build(F("****"), F("**"), caps=((2, 3),))
        self.L = Block.free(2, 2)
        self.G = blocks_for(self.L, [self.t])[1]
        self.yb = Bimodule((self.L, self.G), (self.t,))
        self.xb = Bimodule((self.G, self.L), (self.t.mirror(),))

    def test_zero_unless_middle_caps_agree(self):
        for x in range(len(self.xb)):
            for y in range(len(self.yb)):
                if self.xb.basis[x][2] != self.yb.basis[y][0]:
                    assert phi(self.xb, x, self.yb, y) == {}

    def test_degree(self):
        K = self.xb.left_algebra
        hits = 0
        for x in range(len(self.xb)):
            for y in range(len(self.yb)):
                for k in phi(self.xb, x, self.yb, y):
                    hits += 1
                    assert K.degrees[k] == self.xb.degrees[x] + self.yb.degrees[y] - 2 * self.t.n_caps
        assert hits > 0

    def test_rejects_non_mirror_pairs(self):
        with pytest.raises(ValueError):
            phi(self.yb, 0, self.yb, 0)


def test_star_swaps_blocks():
    t = Matching.build(F("****"), F("**"), caps=((2, 3),))
    B = Bimodule.from_bottom(Block.free(2, 2), [t])
    S = B.star()
    assert S.bottom == B.top and S.top == B.bottom and len(S) == len(B)
    for j in range(len(B)):
        other, k = B.star_index(j)
        assert other.degrees[k] == B.degrees[j]
