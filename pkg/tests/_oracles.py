"""Independent brute-force reference implementations used by the tests.

Nothing here imports the library's algorithms; only plain strings and
integers are used, so agreement with the library is meaningful.
"""
from __future__ import annotations

import itertools
from fractions import Fraction


def labels_of(text: str) -> str:
    return text.split("@")[0]


def ell_row(lam: str, mu: str) -> list[int]:
    """Running count of extra v's of lam over mu along the free vertices."""
    row, acc = [], 0
    for a, b in zip(lam, mu):
        if a in "ox":
            continue
        if a != b:
            acc += (a == "v") - (b == "v")
        row.append(acc)
    return row


def caps_by_stack(w: str, offset: int = 1) -> tuple[list[tuple[int, int]], list[int]]:
    """Arcs joining v (left) to ^ (right), nested greedily; unmatched positions."""
    stack, arcs = [], []
    for n, c in enumerate(w):
        p = n + offset
        if c == "v":
            stack.append(p)
        elif c == "^" and stack:
            arcs.append((stack.pop(), p))
    used = {p for a in arcs for p in a}
    free = [n + offset for n, c in enumerate(w) if c in "v^" and n + offset not in used]
    return sorted(arcs), free


def brute_kl(lam: str, mu: str) -> dict[int, int]:
    """p_{lam,mu} by enumerating every chamber labelling of the cap diagram of mu."""
    row = ell_row(lam, mu)
    if any(x < 0 for x in row):
        return {}
    free_pos = [n + 1 for n, c in enumerate(mu) if c not in "ox"]
    ell_at = dict(zip(free_pos, row))
    caps, _ = caps_by_stack(mu)
    parent = {}
    for c in caps:
        around = [d for d in caps if d[0] < c[0] and c[1] < d[1]]
        parent[c] = min(around, key=lambda d: d[1] - d[0]) if around else None
    small = [c for c in caps if not any(c[0] < d[0] and d[1] < c[1] for d in caps)]
    top = max(row, default=0)
    total = sum(row)
    out: dict[int, int] = {}
    for labels in itertools.product(range(top + 1), repeat=len(caps)):
        lab = dict(zip(caps, labels))
        if any(parent[c] is not None and lab[c] < lab[parent[c]] for c in caps):
            continue
        if any(lab[c] > ell_at[c[0]] for c in small):
            continue
        e = total - 2 * sum(labels)
        out[e] = out.get(e, 0) + 1
    return out


def weights_of_block(frame: str, n_down: int) -> list[str]:
    """All fillings of the free slots, v before ^ lexicographically."""
    slots = [n for n, c in enumerate(frame) if c == "*"]
    out = []
    for combo in itertools.product("v^", repeat=len(slots)):
        if combo.count("v") != n_down:
            continue
        w = list(frame)
        for n, c in zip(slots, combo):
            w[n] = c
        out.append("".join(w))
    return sorted(out, key=lambda s: [("v^ox".index(c)) for c in s])


def has_pattern(w: str, pattern: str = "^v^v") -> bool:
    letters = [c for c in w if c in "v^"]
    it = iter(letters)
    return all(any(c == p for c in it) for p in pattern)


def rank_fraction(rows: list[list[int]]) -> int:
    """Rank by dense Gaussian elimination over Q."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


def circle_is_anticlockwise(comp, label, level: float = 1000.0) -> bool:
    """Orientation of a traversed circle from the signed area of a drawn polygon.

    Cups dip below their line and caps rise above it by a height that grows
    with their width but stays well inside the strip between lines.
    """
    verts = list(comp.vertices)
    arcs = list(comp.arcs)
    width = max(p for _, p in verts) - min(p for _, p in verts) + 2
    h = level / (8 * width)
    pts = []
    for n, v in enumerate(verts):
        pts.append((float(v[1]), v[0] * level))
        kind, a, b, _ = arcs[n]
        if kind in ("cup", "cap"):
            mid = (a[1] + b[1]) / 2
            depth = h * (abs(b[1] - a[1]) + 1)
            pts.append((mid, v[0] * level + (-depth if kind == "cup" else depth)))
    area = sum(x1 * y2 - x2 * y1 for (x1, y1), (x2, y2) in zip(pts, pts[1:] + pts[:1]))
    # direction of travel through the first vertex
    kind, a, b, _ = arcs[0]
    other = b if a == verts[0] else a
    going_down = kind == "cup" or (kind == "seg" and other[0] < verts[0][0])
    agrees = going_down == (label(verts[0]) == "v")
    ccw = area > 0
    return ccw if agrees else not ccw
