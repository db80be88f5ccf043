from __future__ import annotations

import pytest

from arcweb.core_combinatorics import Block, Frame, Weight
from arcweb.diagrams import (ANTICLOCKWISE, CLOCKWISE, CapDiagram, CupDiagram, Matching,
                             OrientedDiagram, Stack, adeg, all_matchings, cdeg, cdeg_upper,
                             closure, degree_lemma_holds, lower_reduction, reduction,
                             upper_reduction)

W = Weight.parse
F = Frame.parse

# the three-level example: one internal circle disappears on reduction
T1 = Matching.parse("bottom=*******;top=*******;caps=1-4,2-3;cups=2-3,5-6;segs=5-1,6-4,7-7")
T2 = Matching.parse("bottom=*******;top=o****o*;caps=1-4,2-3,6-7;cups=3-4,5-7;segs=5-2")
U = Matching.parse("bottom=*******;top=o****o*;caps=1-4,2-3,5-6;cups=3-4,5-7;segs=7-2")

# the lower reduction example: one lower circle and one lower line disappear
LT = Matching.parse("bottom=*********;top=*****@3;caps=1-2,6-7,5-8;cups=4-5;segs=3-3,4-6,9-7")
LA = CupDiagram(F("*********"), ((1, 4), (2, 3), (6, 7)), ((5, "^"), (8, "v"), (9, "v")))


class TestOrientation:
    def test_cup_needs_opposite_labels(self):
        cup = CupDiagram.of_weight(W("v^"))
        assert cup.is_oriented_with(W("v^")) and cup.is_oriented_with(W("^v"))
        assert not cup.is_oriented_with(W("vv"))

    def test_segments_need_equal_labels(self):
        m = Matching.identity(F("**"))
        assert m.is_oriented_with(W("^^"), W("^^"))
        assert not m.is_oriented_with(W("v^"), W("^v"))

    def test_ray_tags_are_binding(self):
        rays = CupDiagram.of_weight(W("^v"))
        assert rays.is_oriented_with(W("^v")) and not rays.is_oriented_with(W("v^"))

    def test_degrees(self):
        cup = CupDiagram.of_weight(W("v^"))
        assert cup.degree_with(W("v^")) == 0 and cup.degree_with(W("^v")) == 1

    def test_frame_mismatch_is_not_oriented(self):
        assert not CupDiagram.of_weight(W("v^")).is_oriented_with(W("v^@2"))


class TestComponentsAndDegreeLemma:
    def small_circle(self, lam):
        cup = CupDiagram.of_weight(W("v^"))
        return OrientedDiagram(cup, (W(lam),), (), cup.mirror())

    def test_small_circles(self):
        (c,) = self.small_circle("v^").components()
        assert (c.kind, c.n_cups, c.n_caps, c.orientation, c.degree) == ("circle", 1, 1, ANTICLOCKWISE, 0)
        (c,) = self.small_circle("^v").components()
        assert (c.orientation, c.degree) == (CLOCKWISE, 2)
        assert degree_lemma_holds(c)

    def test_line_through_a_segment(self):
        st = Stack.of(CupDiagram.of_weight(W("^")), [Matching.identity(F("*"))], CapDiagram.of_weight(W("^")))
        (c,) = st.components()
        assert c.kind == "line" and c.n_cups == c.n_caps == 0

    def test_line_with_one_clockwise_cup(self):
        # a clockwise cup whose ends run off as rays
        cup = CupDiagram(F("****"), ((2, 3),), ((1, "^"), (4, "v")))
        cap = CapDiagram(F("****"), (), ((1, "^"), (2, "^"), (3, "v"), (4, "v")))
        d = OrientedDiagram(cup, (W("^^vv"),), (), cap)
        assert d.is_oriented()
        lines = [c for c in d.components() if c.n_cups == 1]
        assert lines[0].kind == "line" and lines[0].degree == 1 and degree_lemma_holds(lines[0])

    def test_internal_circle_component(self):
        kinds = [(c.kind, c.lines_touched) for c in Stack.of(None, [T1, T2]).components()]
        assert ("circle", frozenset({1})) in kinds


class TestReductions:
    def test_three_level_example(self):
        r = reduction([T1, T2])
        assert r.result == U and len(r.circles) == 1 and not r.lines

    def test_single_and_identity(self):
        assert reduction([T1]).result == T1 and not reduction([T1]).circles
        idm = Matching.identity(F("****"))
        r = reduction([idm, idm])
        assert r.result == idm and not r.circles

    def test_lower_reduction_example(self):
        r = lower_reduction(LA, [LT])
        assert r.result.frame == F("*****@3")
        assert r.result.cups == ((3, 6), (4, 5)) and r.result.rays == ((7, "v"),)
        assert len(r.circles) == 1 and len(r.lines) == 1

    def test_lower_reduction_through_identity(self):
        a = CupDiagram.of_weight(W("vv^^v"))
        assert lower_reduction(a, [Matching.identity(a.frame)]).result == a

    def test_cup_closed_by_a_cap(self):
        t = Matching.build(F("**"), F(""), caps=((1, 2),))
        r = lower_reduction(CupDiagram.of_weight(W("v^")), [t])
        assert r.result.cups == () and r.result.rays == () and len(r.circles) == 1

    def test_upper_reduction_mirrors_lower(self):
        for w in Block.free(2, 3).weights:
            a = CupDiagram.of_weight(w)
            for t in all_matchings(F("*****"), F("***")):
                lo = lower_reduction(a, [t])
                up = upper_reduction([t.mirror()], a.mirror())
                assert up.result.mirror() == lo.result
                assert len(up.circles) == len(lo.circles)

    def test_reduce_formula_on_every_orientation_of_the_example(self):
        bottom = Block(F("*******"), 4, 3)
        count = 0
        for l0 in Block(F("*******"), 4, 3).weights:
            for l1 in Block(F("*******"), 4, 3).weights:
                if not T1.is_oriented_with(l0, l1):
                    continue
                for l2 in Block(F("o****o*"), 3, 2).weights:
                    if not T2.is_oriented_with(l1, l2):
                        continue
                    for a in bottom.weights:
                        cup = CupDiagram.of_weight(a)
                        if not cup.is_oriented_with(l0):
                            continue
                        cap = CapDiagram.of_weight(l2)
                        d = OrientedDiagram(cup, (l0, l1, l2), (T1, T2), cap)
                        lhs, rhs = adeg(d)
                        assert lhs == rhs
                        count += 1
        assert count > 0


class TestDegreeFormulasForOneMatching:
    @pytest.mark.parametrize("nb,nt", [(4, 2), (4, 4), (5, 3), (3, 5)])
    def test_cdeg_both_ways(self, nb, nt):
        for t in all_matchings(Frame.free(nb), Frame.free(nt)):
            for nd in range(nb + 1):
                bot = Block.free(nd, nb - nd)
                for lam in bot.weights:
                    tops = [m for n in range(nt + 1) for m in Block.free(n, nt - n).weights
                            if t.is_oriented_with(lam, m)]
                    for mu in tops:
                        for a in bot.weights:
                            cup = CupDiagram.of_weight(a)
                            if not cup.is_oriented_with(lam):
                                continue
                            cap = CapDiagram.of_weight(mu)
                            d = OrientedDiagram(cup, (lam, mu), (t,), cap)
                            assert cdeg(d)[0] == cdeg(d)[1]
                            assert cdeg_upper(d)[0] == cdeg_upper(d)[1]


class TestClosure:
    def test_closed_diagram_unchanged(self):
        d = OrientedDiagram(CupDiagram.of_weight(W("v^")), (W("v^"),), (), CapDiagram.of_weight(W("v^")))
        assert closure(d, 0, 0) == d

    def test_single_up_ray(self):
        cup = CupDiagram.of_weight(W("^"))
        d = OrientedDiagram(cup, (W("^"),), (), cup.mirror())
        c = closure(d, 1, 0)
        (comp,) = c.components()
        assert comp.kind == "circle" and comp.orientation == ANTICLOCKWISE and c.degree() == 0

    def test_rays_become_a_degree_zero_circle_diagram(self):
        lam = W("^v")
        d = OrientedDiagram(CupDiagram.of_weight(lam), (lam,), (), CapDiagram.of_weight(lam))
        c = closure(d, 1, 1)
        assert c.is_oriented() and c.degree() == 0
        assert all(comp.kind == "circle" for comp in c.components())

    def test_inadmissible_padding(self):
        lam = W("^v")
        d = OrientedDiagram(CupDiagram.of_weight(lam), (lam,), (), CapDiagram.of_weight(lam))
        with pytest.raises(ValueError):
            closure(d, 1, 0)


class TestMatchings:
    def test_text_roundtrip(self):
        for m in (T1, T2, U, LT):
            assert Matching.parse(str(m)) == m

    def test_mirror_is_an_involution(self):
        for m in all_matchings(F("****"), F("**")):
            assert m.mirror().mirror() == m
            assert m.mirror().n_caps == m.n_cups

    @pytest.mark.parametrize("text", [
        "bottom=**;top=**;caps=1-2;cups=",          # leftover vertices differ
        "bottom=****;top=;caps=1-3,2-4;cups=",      # crossing caps
        "top=**",                                   # no bottom
        "bottom=**;top=**;segs=1-2,2-1",            # crossing segments
    ])
    def test_malformed(self, text):
        with pytest.raises(ValueError):
            Matching.parse(text)

    def test_counts(self):
        # crossingless matchings between 2n and 0 points are Catalan numbers
        assert len(list(all_matchings(F("******"), F("")))) == 5
        assert len(list(all_matchings(F("**"), F("**")))) == 2
