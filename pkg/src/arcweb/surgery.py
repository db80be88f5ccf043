"""Multiplication of oriented circle diagrams by surgery on their closures.

Two diagrams ``x`` (cup diagram alpha underneath, cap diagram beta on top)
and ``y`` (cup diagram gamma, cap diagram delta) multiply to zero unless
beta == gamma.  Otherwise both are closed off by padding every number line,
``x`` is drawn underneath ``y`` and each cap of the middle section is cut
against the cup it faces.  Every cut merges two circles or splits one:

    merge  1.1 -> 1   1.x -> x   x.x -> 0
    split  1 -> 1.x + x.1        x -> x.x

where ``1`` is an anticlockwise circle and ``x`` a clockwise one.  Terms in
which a pad vertex ends up with the wrong label are discarded, and the
survivors are un-padded.
"""
from __future__ import annotations

from functools import lru_cache

from .core_combinatorics import DOWN, UP, Weight
from .diagrams import (CapDiagram, CupDiagram, OrientedDiagram, Matching,
                       closure, padding_for)

Key = tuple  # (alpha, weights, beta)

_FLIPS = {"cup": 1, "cap": 1, "seg": 0}


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


class ClosedStack:
    """Arcs of a closed stacked diagram on integer vertex ids.

    Vertices are numbered in order of (line, position); ``xs[v]`` is the
    position and ``lines[v]`` the line of vertex ``v``.
    """

    def __init__(self, verts: list[tuple[int, int]], arcs: list[tuple[str, int, int]]):
        self.verts = verts
        self.vid = {v: i for i, v in enumerate(verts)}
        self.arcs = arcs

    def components(self):
        n = len(self.verts)
        uf = _UnionFind(n)
        for _, a, b in self.arcs:
            uf.union(a, b)
        roots = [uf.find(i) for i in range(n)]
        return roots

    def parity_from(self, start: int, members: set[int]) -> dict[int, int]:
        """Label flips from start to every vertex of its component."""
        adj: dict[int, list[tuple[int, int]]] = {}
        for kind, a, b in self.arcs:
            if a in members:
                f = _FLIPS[kind]
                adj.setdefault(a, []).append((b, f))
                adj.setdefault(b, []).append((a, f))
        par = {start: 0}
        todo = [start]
        while todo:
            x = todo.pop()
            for y, f in adj.get(x, ()):
                if y not in par:
                    par[y] = par[x] ^ f
                    todo.append(y)
        return par


def _leftmost(verts, members) -> int:
    return min(members, key=lambda i: (verts[i][1], verts[i][0]))


def _stack_arcs(d: OrientedDiagram, line0: int):
    """Arcs of a closed oriented diagram with lines shifted by line0."""
    out = []
    for kind, u, v, _ in d.arcs:
        if kind == "ray":
            raise ValueError("diagram is not closed")
        out.append((kind, (u[0] + line0, u[1]), (v[0] + line0, v[1])))
    return out


def surgery_product(X: OrientedDiagram, Y: OrientedDiagram, order=None) -> dict[tuple[Weight, ...], int]:
    """Product of two closed oriented diagrams with X.cap mirroring Y.cup.

    Returns the weights on every line of each resulting diagram (the two
    middle lines merged into one), mapped to coefficients.  ``order`` is an
    optional permutation of the middle caps, used to test that the result
    does not depend on the order of the cuts.
    """
    if X.cap.mirror() != Y.cup:
        return {}
    k = len(X.weights) - 1
    weights = list(X.weights) + list(Y.weights)
    verts = [(l, p) for l, w in enumerate(weights) for p in w.free_positions]
    vid = {v: i for i, v in enumerate(verts)}
    arcs = [(kind, vid[u], vid[v]) for kind, u, v in _stack_arcs(X, 0) + _stack_arcs(Y, k + 1)]
    labels0 = tuple(weights[l].label(p) for l, p in verts)
    terms: dict[tuple[str, ...], int] = {labels0: 1}
    pairs = list(X.cap.arcs)
    if order is not None:
        pairs = [pairs[i] for i in order]
    st = ClosedStack(verts, arcs)
    for i, j in pairs:
        if not terms:
            return {}
        terms = _cut(st, terms, vid[(k, i)], vid[(k, j)], vid[(k + 1, i)], vid[(k + 1, j)])
    out: dict[tuple[Weight, ...], int] = {}
    for labels, c in terms.items():
        ws = []
        for l, w in enumerate(weights):
            if l == k + 1:
                continue
            new = w.replace({p: labels[vid[(l, p)]] for p in w.free_positions})
            ws.append(new)
        if __debug__:
            top = weights[k + 1]
            assert all(labels[vid[(k, p)]] == labels[vid[(k + 1, p)]] for p in top.free_positions)
        key = tuple(ws)
        out[key] = out.get(key, 0) + c
    return {k_: v for k_, v in out.items() if v}


def _cut(st: ClosedStack, terms, bi, bj, ti, tj):
    verts = st.verts
    old_roots = st.components()
    members_old: dict[int, set[int]] = {}
    for v, r in enumerate(old_roots):
        members_old.setdefault(r, set()).add(v)
    c1, c2 = old_roots[bi], old_roots[ti]
    left1 = _leftmost(verts, members_old[c1])
    left2 = _leftmost(verts, members_old[c2])
    # rewire: drop the cap (bi,bj) and the cup (ti,tj), add two segments
    new_arcs = []
    dropped = 0
    for a in st.arcs:
        kind, x, y = a
        if kind == "cap" and {x, y} == {bi, bj}:
            dropped += 1
            continue
        if kind == "cup" and {x, y} == {ti, tj}:
            dropped += 1
            continue
        new_arcs.append(a)
    assert dropped == 2
    new_arcs += [("seg", bi, ti), ("seg", bj, tj)]
    st.arcs = new_arcs
    roots = st.components()
    out: dict = {}
    if c1 != c2:
        members = {v for v, r in enumerate(roots) if r == roots[bi]}
        start = _leftmost(verts, members)
        par = st.parity_from(start, members)
        for labels, coeff in terms.items():
            t1 = labels[left1] == DOWN
            t2 = labels[left2] == DOWN
            if not t1 and not t2:
                continue
            _add(out, _orient(labels, par, start, t1 and t2), coeff)
    else:
        ra, rb = roots[bi], roots[bj]
        assert ra != rb, "a cut on a single circle must split it"
        ma = {v for v, r in enumerate(roots) if r == ra}
        mb = {v for v, r in enumerate(roots) if r == rb}
        sa, sb = _leftmost(verts, ma), _leftmost(verts, mb)
        pa, pb = st.parity_from(sa, ma), st.parity_from(sb, mb)
        for labels, coeff in terms.items():
            if labels[left1] == DOWN:
                _add(out, _orient(_orient(labels, pa, sa, True), pb, sb, False), coeff)
                _add(out, _orient(_orient(labels, pa, sa, False), pb, sb, True), coeff)
            else:
                _add(out, _orient(_orient(labels, pa, sa, False), pb, sb, False), coeff)
    return {t: c for t, c in out.items() if c}


def _orient(labels, par, start, anticlockwise: bool):
    base = DOWN if anticlockwise else UP
    other = UP if anticlockwise else DOWN
    new = list(labels)
    for v, f in par.items():
        new[v] = other if f else base
    return tuple(new)


def _add(d, key, c):
    d[key] = d.get(key, 0) + c


# -- products of diagram keys --------------------------------------------

def diagram_of(key: Key, matchings: tuple[Matching, ...]) -> OrientedDiagram:
    alpha, weights, beta = key
    return OrientedDiagram(CupDiagram.of_weight(alpha), tuple(weights), tuple(matchings),
                           CapDiagram.of_weight(beta))


@lru_cache(maxsize=None)
def multiply_keys(x: Key, mx: tuple, y: Key, my: tuple, extra_pad: int = 0) -> tuple[tuple[Key, int], ...]:
    """Product of two basis diagrams, as a tuple of (key, coefficient)."""
    if x[2] != y[0]:
        return ()
    ws = list(x[1]) + list(y[1])
    p, q = padding_for(ws, extra_pad)
    X = closure(diagram_of(x, mx), p, q)
    Y = closure(diagram_of(y, my), p, q)
    raw = surgery_product(X, Y)
    frames = [w.frame for w in x[1]] + [w.frame for w in y[1][1:]]
    out = []
    for closed_ws, c in raw.items():
        ws_out = []
        ok = True
        for w, f in zip(closed_ws, frames):
            labels = w.labels
            if any(s != DOWN for s in labels[:p]) or any(s != UP for s in labels[len(labels) - q:]):
                ok = False
                break
            ws_out.append(Weight(labels[p:len(labels) - q], f.offset))
        if ok:
            out.append(((x[0], tuple(ws_out), y[2]), c))
    out.sort(key=lambda kc: [str(w) for w in kc[0][1]])
    return tuple(out)
