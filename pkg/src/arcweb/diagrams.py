"""Cup diagrams, cap diagrams, matchings and oriented circle diagrams.

Number lines in a stack are numbered from the bottom (line 0) upwards.  A
vertex of a stack is a pair ``(line, position)``.  Arcs are tuples
``(kind, u, v, tag)`` with kind one of ``cup`` (hangs below the line of its
endpoints), ``cap`` (sits above it), ``seg`` (joins line l to line l+1) and
``ray`` (a single endpoint running off to infinity, carrying a tag).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Optional

from .core_combinatorics import (DOWN, FREE, UP, Frame, Weight, cup_arcs,
                            weight_from_arcs)

Pair = tuple[int, int]
Vertex = tuple[int, int]
Arc = tuple  # (kind, u, v, tag)

FLIP = {DOWN: UP, UP: DOWN}
ANTICLOCKWISE, CLOCKWISE = "1", "x"


def _check_noncrossing(pairs: Iterable[Pair], exposed: Iterable[int], what: str) -> None:
    pairs = list(pairs)
    for i, j in pairs:
        if not i < j:
            raise ValueError(f"{what} ({i},{j}) must have i < j")
    for a, (i, j) in enumerate(pairs):
        for k, l in pairs[a + 1:]:
            if i < k < j < l or k < i < l < j:
                raise ValueError(f"{what}s ({i},{j}) and ({k},{l}) cross")
    for p in exposed:
        for i, j in pairs:
            if i < p < j:
                raise ValueError(f"vertex {p} is trapped under ({i},{j})")


def _check_cover(frame: Frame, used: list[int]) -> None:
    if sorted(used) != sorted(frame.free_positions):
        raise ValueError(f"arcs must meet every free vertex of {frame} exactly once")


@dataclass(frozen=True)
class _ArcDiagram:
    frame: Frame
    arcs: tuple[Pair, ...]
    rays: tuple[tuple[int, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(sorted(tuple(a) for a in self.arcs)))
        object.__setattr__(self, "rays", tuple(sorted(tuple(r) for r in self.rays)))
        used = [p for a in self.arcs for p in a] + [p for p, _ in self.rays]
        _check_cover(self.frame, used)
        _check_noncrossing(self.arcs, [p for p, _ in self.rays], "arc")
        for _, tag in self.rays:
            if tag not in (DOWN, UP):
                raise ValueError(f"ray tag must be v or ^, got {tag!r}")

    @cached_property
    def weight(self) -> Weight:
        """The weight whose own diagram this is (anticlockwise arcs, tags on rays)."""
        return weight_from_arcs(self.frame, self.arcs, self.rays)

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    def is_oriented_with(self, w: Weight) -> bool:
        if w.frame != self.frame:
            return False
        return (all(w.label(i) != w.label(j) for i, j in self.arcs)
                and all(w.label(p) == t for p, t in self.rays))

    def degree_with(self, w: Weight) -> int:
        return sum(1 for i, _ in self.arcs if w.label(i) == UP)


class CupDiagram(_ArcDiagram):
    """Cups hanging below a number line, plus tagged rays running down."""

    @property
    def cups(self) -> tuple[Pair, ...]:
        return self.arcs

    @classmethod
    def of_weight(cls, w: Weight) -> CupDiagram:
        return _cup_of(w)

    def mirror(self) -> CapDiagram:
        return CapDiagram(self.frame, self.arcs, self.rays)

    def __repr__(self) -> str:
        return f"CupDiagram({self.weight})"


class CapDiagram(_ArcDiagram):
    """Caps above a number line, plus tagged rays running up."""

    @property
    def caps(self) -> tuple[Pair, ...]:
        return self.arcs

    @classmethod
    def of_weight(cls, w: Weight) -> CapDiagram:
        return _cap_of(w)

    def mirror(self) -> CupDiagram:
        return CupDiagram(self.frame, self.arcs, self.rays)

    def __repr__(self) -> str:
        return f"CapDiagram({self.weight})"


@lru_cache(maxsize=None)
def _cup_of(w: Weight) -> CupDiagram:
    cups, rays = cup_arcs(w)
    return CupDiagram(w.frame, cups, rays)


@lru_cache(maxsize=None)
def _cap_of(w: Weight) -> CapDiagram:
    cups, rays = cup_arcs(w)
    return CapDiagram(w.frame, cups, rays)


@dataclass(frozen=True)
class Matching:
    """A crossingless matching between a bottom and a top number line."""

    bottom: Frame
    top: Frame
    caps: tuple[Pair, ...] = ()
    cups: tuple[Pair, ...] = ()
    segments: tuple[Pair, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "caps", tuple(sorted(tuple(a) for a in self.caps)))
        object.__setattr__(self, "cups", tuple(sorted(tuple(a) for a in self.cups)))
        object.__setattr__(self, "segments", tuple(sorted(tuple(a) for a in self.segments)))
        _check_cover(self.bottom, [p for a in self.caps for p in a] + [b for b, _ in self.segments])
        _check_cover(self.top, [p for a in self.cups for p in a] + [t for _, t in self.segments])
        _check_noncrossing(self.caps, [b for b, _ in self.segments], "cap")
        _check_noncrossing(self.cups, [t for _, t in self.segments], "cup")
        tops = [t for _, t in self.segments]
        if tops != sorted(tops):
            raise ValueError("line segments cross")

    @classmethod
    def build(cls, bottom: Frame, top: Frame, caps=(), cups=()) -> Matching:
        """Join the vertices left over by caps and cups with segments, in order."""
        bused = {p for a in caps for p in a}
        tused = {p for a in cups for p in a}
        bs = [p for p in bottom.free_positions if p not in bused]
        ts = [p for p in top.free_positions if p not in tused]
        if len(bs) != len(ts):
            raise ValueError("caps and cups leave different numbers of vertices")
        return cls(bottom, top, tuple(caps), tuple(cups), tuple(zip(bs, ts)))

    @classmethod
    def identity(cls, frame: Frame) -> Matching:
        return cls.build(frame, frame)

    @classmethod
    def parse(cls, text: str) -> Matching:
        """Parse ``bottom=****;top=**;caps=1-2;cups=;segs=3-1,4-2`` (segs optional)."""
        fields = {}
        for part in text.split(";"):
            part = part.strip()
            if not part:
                continue
            if "=" not in part:
                raise ValueError(f"bad matching field {part!r}")
            k, v = part.split("=", 1)
            fields[k.strip()] = v.strip()
        if "bottom" not in fields or "top" not in fields:
            raise ValueError("matching needs bottom= and top= frames")

        def pairs(s: str) -> tuple[Pair, ...]:
            out = []
            for tok in filter(None, (t.strip() for t in s.split(","))):
                a, b = tok.split("-")
                out.append((int(a), int(b)))
            return tuple(out)

        bottom, top = Frame.parse(fields["bottom"]), Frame.parse(fields["top"])
        caps, cups = pairs(fields.get("caps", "")), pairs(fields.get("cups", ""))
        if "segs" in fields:
            return cls(bottom, top, caps, cups, pairs(fields["segs"]))
        return cls.build(bottom, top, caps, cups)

    def __str__(self) -> str:
        f = lambda ps: ",".join(f"{a}-{b}" for a, b in ps)
        return (f"bottom={self.bottom};top={self.top};caps={f(self.caps)};"
                f"cups={f(self.cups)};segs={f(self.segments)}")

    def mirror(self) -> Matching:
        return Matching(self.top, self.bottom, self.cups, self.caps,
                        tuple((t, b) for b, t in self.segments))

    @property
    def n_caps(self) -> int:
        return len(self.caps)

    @property
    def n_cups(self) -> int:
        return len(self.cups)

    def padded(self, p: int, q: int) -> Matching:
        b, t = self.bottom, self.top
        segs = [(b.offset - p + r, t.offset - p + r) for r in range(p)]
        segs += [(b.offset + len(b) + r, t.offset + len(t) + r) for r in range(q)]
        return Matching(b.padded(p, q), t.padded(p, q), self.caps, self.cups,
                        self.segments + tuple(segs))

    def is_oriented_with(self, lam: Weight, mu: Weight) -> bool:
        if lam.frame != self.bottom or mu.frame != self.top:
            return False
        return (all(lam.label(i) != lam.label(j) for i, j in self.caps)
                and all(mu.label(i) != mu.label(j) for i, j in self.cups)
                and all(lam.label(b) == mu.label(t) for b, t in self.segments))

    def degree_with(self, lam: Weight, mu: Weight) -> int:
        return (sum(1 for i, _ in self.caps if lam.label(i) == UP)
                + sum(1 for i, _ in self.cups if mu.label(i) == UP))


# -- stacks ---------------------------------------------------------------

@dataclass(frozen=True)
class Stack:
    """An unoriented stack: optional cup diagram, matchings, optional cap diagram."""

    frames: tuple[Frame, ...]
    matchings: tuple[Matching, ...] = ()
    cup: Optional[CupDiagram] = None
    cap: Optional[CapDiagram] = None

    def __post_init__(self):
        if len(self.frames) != len(self.matchings) + 1:
            raise ValueError("a stack with k matchings has k+1 number lines")
        for l, m in enumerate(self.matchings):
            if m.bottom != self.frames[l] or m.top != self.frames[l + 1]:
                raise ValueError(f"matching {l} does not fit the number lines")
        if self.cup is not None and self.cup.frame != self.frames[0]:
            raise ValueError("cup diagram does not fit the bottom line")
        if self.cap is not None and self.cap.frame != self.frames[-1]:
            raise ValueError("cap diagram does not fit the top line")

    @classmethod
    def of(cls, cup=None, matchings=(), cap=None, frames=None) -> Stack:
        matchings = tuple(matchings)
        if frames is None:
            if matchings:
                frames = (matchings[0].bottom,) + tuple(m.top for m in matchings)
            elif cup is not None:
                frames = (cup.frame,)
            elif cap is not None:
                frames = (cap.frame,)
            else:
                raise ValueError("cannot infer number lines of an empty stack")
        return cls(tuple(frames), matchings, cup, cap)

    @cached_property
    def arcs(self) -> tuple[Arc, ...]:
        out: list[Arc] = []
        top = len(self.frames) - 1
        if self.cup is not None:
            out += [("cup", (0, i), (0, j), None) for i, j in self.cup.arcs]
            out += [("ray", (0, p), None, t) for p, t in self.cup.rays]
        for l, m in enumerate(self.matchings):
            out += [("cap", (l, i), (l, j), None) for i, j in m.caps]
            out += [("cup", (l + 1, i), (l + 1, j), None) for i, j in m.cups]
            out += [("seg", (l, b), (l + 1, t), None) for b, t in m.segments]
        if self.cap is not None:
            out += [("cap", (top, i), (top, j), None) for i, j in self.cap.arcs]
            out += [("ray", (top, p), None, t) for p, t in self.cap.rays]
        return tuple(out)

    def components(self) -> list[Component]:
        return components_of(self.arcs)


@dataclass(frozen=True)
class OrientedDiagram:
    """Weights on every line of a stack (bottom first)."""

    cup: Optional[CupDiagram]
    weights: tuple[Weight, ...]
    matchings: tuple[Matching, ...] = ()
    cap: Optional[CapDiagram] = None

    @cached_property
    def stack(self) -> Stack:
        return Stack(tuple(w.frame for w in self.weights), tuple(self.matchings), self.cup, self.cap)

    @property
    def arcs(self) -> tuple[Arc, ...]:
        return self.stack.arcs

    def label(self, v: Vertex) -> str:
        return self.weights[v[0]].label(v[1])

    def is_oriented(self) -> bool:
        try:
            self.stack
        except ValueError:
            return False
        return arcs_oriented(self.arcs, self.label)

    def degree(self) -> int:
        return arcs_degree(self.arcs, self.label)

    def components(self) -> list[Component]:
        return components_of(self.arcs, self.label)


def arcs_oriented(arcs: Iterable[Arc], label) -> bool:
    for kind, u, v, tag in arcs:
        if kind == "ray":
            if label(u) != tag:
                return False
        elif kind == "seg":
            if label(u) != label(v):
                return False
        elif label(u) == label(v):
            return False
    return True


def arcs_degree(arcs: Iterable[Arc], label) -> int:
    """Number of clockwise cups and caps (left endpoint labelled ^)."""
    return sum(1 for kind, u, v, _ in arcs
               if kind in ("cup", "cap") and label(min(u, v, key=_xkey)) == UP)


def _xkey(v: Vertex) -> tuple[int, int]:
    return (v[1], v[0])


@dataclass(frozen=True)
class Component:
    kind: str  # "circle" or "line"
    vertices: tuple[Vertex, ...]  # in traversal order
    arcs: tuple[Arc, ...]  # as traversed
    n_cups: int
    n_caps: int
    orientation: Optional[str] = None  # "1" anticlockwise, "x" clockwise (circles only)
    degree: Optional[int] = None
    ends: tuple = ()  # for lines: the two (vertex, tag) ray ends, or open ends (vertex, None)

    @property
    def lines_touched(self) -> frozenset[int]:
        return frozenset(l for l, _ in self.vertices)

    @property
    def positions(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.vertices)


def components_of(arcs: Iterable[Arc], label=None) -> list[Component]:
    """Connected components, ordered by their leftmost (then lowest) vertex.

    Circles are traversed from their leftmost vertex starting downwards;
    open paths start at their leftmost end.
    """
    arcs = list(arcs)
    incident: dict[Vertex, list[int]] = {}
    for idx, (kind, u, v, _) in enumerate(arcs):
        incident.setdefault(u, []).append(idx)
        if v is not None:
            incident.setdefault(v, []).append(idx)
    seen_arcs: set[int] = set()
    seen_v: set[Vertex] = set()
    out: list[Component] = []
    for start in sorted(incident, key=_xkey):
        if start in seen_v:
            continue
        # find the component's vertex set
        comp_v = {start}
        todo = [start]
        while todo:
            x = todo.pop()
            for idx in incident[x]:
                _, u, v, _ = arcs[idx]
                for y in (u, v):
                    if y is not None and y not in comp_v:
                        comp_v.add(y)
                        todo.append(y)
        seen_v |= comp_v
        # ends: vertices with a ray or with fewer than two arcs
        ends = []
        for x in comp_v:
            n = len(incident[x])
            rays = [idx for idx in incident[x] if arcs[idx][0] == "ray"]
            ends += [(x, arcs[idx][3], idx) for idx in rays]
            if n < 2:
                ends.append((x, None, None))
        ends.sort(key=lambda e: (_xkey(e[0]), e[1] is None))
        if ends:
            first = ends[0]
            walk_v, walk_a = _walk(arcs, incident, first[0], first[2])
            kind = "line"
        else:
            first_arc = _downward_arc(arcs, incident[start], start)
            walk_v, walk_a = _walk(arcs, incident, start, None, first_arc)
            kind = "circle"
        seen_arcs |= set(walk_a)
        traversed = tuple(arcs[i] for i in walk_a if arcs[i][0] != "ray")
        n_cups = sum(1 for a in traversed if a[0] == "cup")
        n_caps = sum(1 for a in traversed if a[0] == "cap")
        orient = deg = None
        if label is not None:
            deg = arcs_degree(traversed, label)
            if kind == "circle":
                orient = ANTICLOCKWISE if label(min(comp_v, key=_xkey)) == DOWN else CLOCKWISE
        comp_ends = tuple((e[0], e[1]) for e in ends)
        out.append(Component(kind, tuple(walk_v), traversed, n_cups, n_caps, orient, deg, comp_ends))
    return out


def _downward_arc(arcs, incident_idx, v):
    for idx in incident_idx:
        kind, a, b, _ = arcs[idx]
        if kind == "cup":
            return idx
        if kind == "seg" and b == v:  # segment arriving from below
            return idx
    return incident_idx[0]


def _walk(arcs, incident, start, skip_arc, first_arc=None):
    """Traverse from start; skip_arc is the ray at the start (if any)."""
    verts = [start]
    used = []
    if skip_arc is not None:
        used.append(skip_arc)
    cur = start
    nxt = first_arc
    while True:
        if nxt is None:
            options = [i for i in incident[cur] if i not in used and arcs[i][0] != "ray"]
            if not options:
                rays = [i for i in incident[cur] if i not in used]
                used += rays
                break
            nxt = options[0]
        used.append(nxt)
        _, u, v, _ = arcs[nxt]
        cur = v if u == cur else u
        nxt = None
        if cur == start:
            break
        verts.append(cur)
    return verts, used


# -- reductions -----------------------------------------------------------

@dataclass(frozen=True)
class Reduction:
    """Result of deleting the inner lines of a stack."""

    result: object  # Matching, CupDiagram or CapDiagram
    circles: tuple[Component, ...]  # closed components removed
    lines: tuple[Component, ...]  # lines with both ends on rays, removed


def _end_parity(comp: Component) -> int:
    return (comp.n_cups + comp.n_caps) % 2


def reduction(matchings, frames=None) -> Reduction:
    """Compose a sequence of matchings (bottom first), removing internal circles."""
    st = Stack.of(matchings=matchings, frames=frames)
    top = len(st.frames) - 1
    caps, cups, segs, circles = [], [], [], []
    for comp in st.components():
        if comp.kind == "circle":
            circles.append(comp)
            continue
        (u, _), (v, _) = comp.ends
        if u[0] == v[0] == 0:
            caps.append(tuple(sorted((u[1], v[1]))))
        elif u[0] == v[0] == top:
            cups.append(tuple(sorted((u[1], v[1]))))
        else:
            b, t = (u, v) if u[0] == 0 else (v, u)
            segs.append((b[1], t[1]))
    m = Matching(st.frames[0], st.frames[-1], tuple(caps), tuple(cups), tuple(segs))
    return Reduction(m, tuple(circles), ())


def lower_reduction(cup: CupDiagram, matchings) -> Reduction:
    """Turn a cup diagram under a stack of matchings into a cup diagram on the top line."""
    st = Stack.of(cup=cup, matchings=matchings)
    top = len(st.frames) - 1
    cups, rays, circles, lines = [], [], [], []
    for comp in st.components():
        if comp.kind == "circle":
            circles.append(comp)
            continue
        (u, tu), (v, tv) = comp.ends
        if tu is not None and tv is not None:
            lines.append(comp)
        elif tu is None and tv is None:
            cups.append(tuple(sorted((u[1], v[1]))))
        else:
            (_, tag), (w, _) = ((u, tu), (v, tv)) if tu is not None else ((v, tv), (u, tu))
            assert w[0] == top
            rays.append((w[1], FLIP[tag] if _end_parity(comp) else tag))
    return Reduction(CupDiagram(st.frames[-1], tuple(cups), tuple(rays)), tuple(circles), tuple(lines))


def upper_reduction(matchings, cap: CapDiagram) -> Reduction:
    """Turn a stack of matchings under a cap diagram into a cap diagram on the bottom line."""
    st = Stack.of(matchings=matchings, cap=cap)
    caps, rays, circles, lines = [], [], [], []
    for comp in st.components():
        if comp.kind == "circle":
            circles.append(comp)
            continue
        (u, tu), (v, tv) = comp.ends
        if tu is not None and tv is not None:
            lines.append(comp)
        elif tu is None and tv is None:
            caps.append(tuple(sorted((u[1], v[1]))))
        else:
            (_, tag), (w, _) = ((u, tu), (v, tv)) if tu is not None else ((v, tv), (u, tu))
            assert w[0] == 0
            rays.append((w[1], FLIP[tag] if _end_parity(comp) else tag))
    return Reduction(CapDiagram(st.frames[0], tuple(caps), tuple(rays)), tuple(circles), tuple(lines))


# -- degree bookkeeping ---------------------------------------------------

def degree_lemma_holds(comp: Component) -> bool:
    if comp.kind == "circle":
        expect = comp.n_caps - 1 if comp.orientation == ANTICLOCKWISE else comp.n_caps + 1
    else:
        expect = max(comp.n_cups, comp.n_caps)
    return comp.degree == expect


def adeg(d: OrientedDiagram) -> tuple[int, int]:
    """Both sides of the degree formula for replacing the matchings of d by their reduction."""
    lhs = d.degree()
    red = reduction(d.matchings)
    u = red.result
    circ = _circles_at(d, red.circles)
    p = sum(1 for c in circ if c.orientation == CLOCKWISE)
    qq = len(circ) - p
    reduced = OrientedDiagram(d.cup, (d.weights[0], d.weights[-1]), (u,), d.cap)
    rhs = reduced.degree() + sum(m.n_caps for m in d.matchings) - u.n_caps + p - qq
    return lhs, rhs


def _circles_at(d: OrientedDiagram, circles) -> list[Component]:
    """The oriented versions (inside d) of circles found in a sub-stack."""
    sets = {c.positions for c in circles}
    return [c for c in d.components() if c.kind == "circle" and c.positions in sets]


def cdeg(d: OrientedDiagram) -> tuple[int, int]:
    """Both sides of the degree formula for a cup diagram, one matching and a cap diagram."""
    if len(d.matchings) != 1 or d.cup is None:
        raise ValueError("cdeg needs exactly one matching and a cup diagram")
    t = d.matchings[0]
    red = lower_reduction(d.cup, [t])
    circ = _circles_at(d, red.circles)
    p = sum(1 for c in circ if c.orientation == CLOCKWISE)
    qq = len(circ) - p
    reduced = OrientedDiagram(red.result, (d.weights[1],), (), d.cap)
    return d.degree(), reduced.degree() + t.n_caps + p - qq


def cdeg_upper(d: OrientedDiagram) -> tuple[int, int]:
    """Mirror of cdeg: the matching and cap diagram collapse to a cap diagram."""
    if len(d.matchings) != 1 or d.cap is None:
        raise ValueError("cdeg_upper needs exactly one matching and a cap diagram")
    t = d.matchings[0]
    red = upper_reduction([t], d.cap)
    circ = _circles_at(d, red.circles)
    p = sum(1 for c in circ if c.orientation == CLOCKWISE)
    qq = len(circ) - p
    reduced = OrientedDiagram(d.cup, (d.weights[0],), (), red.result)
    return d.degree(), reduced.degree() + t.n_cups + p - qq


# -- closure --------------------------------------------------------------

def padding_for(weights: Iterable[Weight], extra: int = 0) -> tuple[int, int]:
    """Smallest admissible padding (p, q) for a sequence of weights, plus extra."""
    weights = list(weights)
    diffs = {w.n_up - w.n_down for w in weights}
    if len(diffs) != 1:
        raise ValueError("weights in a stack must share n_up - n_down")
    p = max(w.n_up for w in weights) + extra
    return p, p - diffs.pop()


def closure(d: OrientedDiagram, p: int, q: int) -> OrientedDiagram:
    """Bend every ray into p new vertices on the left and q on the right of each line."""
    for w in d.weights:
        if p < 0 or q < 0 or p - w.n_up != q - w.n_down:
            raise ValueError(f"padding ({p},{q}) is not admissible for {w}")
    if d.cup is None or d.cap is None:
        raise ValueError("closure needs both a cup and a cap diagram")
    cup = CupDiagram.of_weight(d.cup.weight.padded(p, q))
    cap = CapDiagram.of_weight(d.cap.weight.padded(p, q))
    if cup.rays or cap.rays:
        raise ValueError(f"padding ({p},{q}) leaves rays unclosed")
    return OrientedDiagram(cup, tuple(w.padded(p, q) for w in d.weights),
                           tuple(m.padded(p, q) for m in d.matchings), cap)


# -- enumeration helpers --------------------------------------------------

def arc_shapes(points: tuple[int, ...], perfect: bool = False):
    """Crossingless partial matchings of points with no unmatched point under an arc."""
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    if not perfect:
        for tail in arc_shapes(rest):
            yield tail
    for k in range(0, len(rest), 2):
        inside, after = rest[:k], rest[k + 1:]
        for inner in arc_shapes(inside, perfect=True):
            for tail in arc_shapes(after, perfect=perfect):
                yield ((first, rest[k]),) + inner + tail


def all_matchings(bottom: Frame, top: Frame):
    """Every crossingless matching between two number lines."""
    for caps in arc_shapes(bottom.free_positions):
        left_b = bottom.n_free - 2 * len(caps)
        for cups in arc_shapes(top.free_positions):
            if top.n_free - 2 * len(cups) == left_b:
                yield Matching.build(bottom, top, caps, cups)
