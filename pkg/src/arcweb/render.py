"""Text, SVG and JSON renderings of weights, cup/cap diagrams and matchings."""
from __future__ import annotations

import json

from .core_combinatorics import Frame, Weight
from .diagrams import CapDiagram, CupDiagram, Matching

PITCH = 30  # svg pixels between neighbouring vertices
LEVEL = 60  # svg pixels between stacked number lines


# -- JSON ---------------------------------------------------------------------

def to_json(obj) -> dict:
    if isinstance(obj, Weight):
        return {"kind": "weight", "weight": str(obj)}
    if isinstance(obj, (CupDiagram, CapDiagram)):
        kind = "cup" if isinstance(obj, CupDiagram) else "cap"
        return {"kind": kind, "frame": str(obj.frame), "cups" if kind == "cup" else "caps":
                [list(a) for a in obj.arcs], "rays": {str(p): t for p, t in obj.rays}}
    if isinstance(obj, Matching):
        return {"kind": "matching", "bottom": str(obj.bottom), "top": str(obj.top),
                "caps": [list(a) for a in obj.caps], "cups": [list(a) for a in obj.cups],
                "segments": [list(a) for a in obj.segments]}
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def from_json(data: dict):
    kind = data.get("kind")
    pairs = lambda key: tuple(tuple(p) for p in data.get(key, ()))
    if kind == "weight":
        return Weight.parse(data["weight"])
    if kind in ("cup", "cap"):
        rays = tuple((int(p), t) for p, t in data.get("rays", {}).items())
        cls = CupDiagram if kind == "cup" else CapDiagram
        return cls(Frame.parse(data["frame"]), pairs("cups" if kind == "cup" else "caps"), rays)
    if kind == "matching":
        return Matching(Frame.parse(data["bottom"]), Frame.parse(data["top"]),
                        pairs("caps"), pairs("cups"), pairs("segments"))
    raise ValueError(f"unknown diagram kind {kind!r}")


def dumps(obj) -> str:
    return json.dumps(to_json(obj), sort_keys=True)


def loads(text: str):
    return from_json(json.loads(text))


# -- ASCII ----------------------------------------------------------------------

def _depths(arcs) -> dict[tuple[int, int], int]:
    """Nesting height of each arc: 1 for arcs with nothing inside."""
    out = {}
    for a in sorted(arcs, key=lambda a: a[1] - a[0]):
        inner = [out[b] for b in out if a[0] < b[0] and b[1] < a[1]]
        out[a] = 1 + max(inner, default=0)
    return out


def _label_row(frame: Frame, labels=None) -> str:
    row = []
    for n, s in enumerate(frame.slots):
        row.append(labels[n] if labels is not None else s)
    return " ".join(row)


def _arc_rows(frame: Frame, arcs, rays, corner: str) -> list[str]:
    depth = _depths(arcs)
    height = max(depth.values(), default=0)
    col = lambda p: 2 * (p - frame.offset)
    width = 2 * len(frame) - 1
    rows = [[" "] * width for _ in range(height)]
    for (i, j), d in depth.items():
        for r in range(d - 1):
            rows[r][col(i)] = rows[r][col(j)] = "|"
        r = d - 1
        rows[r][col(i)] = rows[r][col(j)] = corner
        for c in range(col(i) + 1, col(j)):
            rows[r][c] = "-"
    for p, _ in rays:
        for r in range(height):
            rows[r][col(p)] = "|"
    return ["".join(r).rstrip() for r in rows]


def ascii_weight(w: Weight, below: bool = True) -> str:
    """The weight with its cup diagram hanging underneath (or cap diagram above)."""
    top = " ".join(w.labels)
    if below:
        c = CupDiagram.of_weight(w)
        return "\n".join([top] + _arc_rows(w.frame, c.arcs, c.rays, "'"))
    c = CapDiagram.of_weight(w)
    return "\n".join(list(reversed(_arc_rows(w.frame, c.arcs, c.rays, "."))) + [top])


def ascii_cup(c: CupDiagram) -> str:
    labels = list(c.weight.labels)
    return "\n".join([_label_row(c.frame, labels)] + _arc_rows(c.frame, c.arcs, c.rays, "'"))


def ascii_cap(c: CapDiagram) -> str:
    labels = list(c.weight.labels)
    return "\n".join(list(reversed(_arc_rows(c.frame, c.arcs, c.rays, "."))) + [_label_row(c.frame, labels)])


def ascii_matching(m: Matching) -> str:
    """Cups under the top line, caps over the bottom line, segments listed between."""
    top = _arc_rows(m.top, m.cups, (), "'")
    bottom = list(reversed(_arc_rows(m.bottom, m.caps, (), ".")))
    segs = "  ".join(f"{b}->{t}" for b, t in m.segments) or "(no segments)"
    return "\n".join([_label_row(m.top)] + top + ["  " + segs] + bottom + [_label_row(m.bottom)])


def render_text(obj) -> str:
    if isinstance(obj, Weight):
        return ascii_weight(obj)
    if isinstance(obj, CupDiagram):
        return ascii_cup(obj)
    if isinstance(obj, CapDiagram):
        return ascii_cap(obj)
    if isinstance(obj, Matching):
        return ascii_matching(obj)
    raise TypeError(f"cannot render {type(obj).__name__}")


# -- SVG --------------------------------------------------------------------------

def _x(frame: Frame, p: int) -> int:
    return PITCH * (p - frame.offset + 1)


def _svg_arcs(frame: Frame, arcs, y: int, up: bool) -> list[str]:
    out = []
    sweep = 1 if up else 0
    for i, j in arcs:
        x1, x2 = _x(frame, i), _x(frame, j)
        r = (x2 - x1) / 2
        out.append(f'<path d="M {x1} {y} A {r:g} {r:g} 0 0 {sweep} {x2} {y}" fill="none" stroke="black"/>')
    return out


def _svg_labels(frame: Frame, labels, y: int) -> list[str]:
    return [f'<text x="{_x(frame, p)}" y="{y - 4}" text-anchor="middle" font-size="12">{s}</text>'
            for p, s in zip(frame.positions, labels)]


def _line(frame: Frame, y: int) -> str:
    return f'<line x1="{PITCH // 2}" y1="{y}" x2="{_x(frame, frame.positions[-1]) + PITCH // 2}" y2="{y}" stroke="gray"/>'


def render_svg(obj) -> str:
    """A deterministic SVG drawing with fixed vertex pitch."""
    body: list[str] = []
    if isinstance(obj, Weight):
        obj = CupDiagram.of_weight(obj)
    if isinstance(obj, (CupDiagram, CapDiagram)):
        f = obj.frame
        up = isinstance(obj, CapDiagram)
        height = PITCH * (len(f) // 2 + 2)
        y = height if up else PITCH
        body.append(_line(f, y))
        labels = list(obj.weight.labels)
        body += _svg_labels(f, labels, y)
        body += _svg_arcs(f, obj.arcs, y, up)
        for p, _ in obj.rays:
            y2 = 0 if up else height + PITCH
            body.append(f'<line x1="{_x(f, p)}" y1="{y}" x2="{_x(f, p)}" y2="{y2}" stroke="black"/>')
        width = _x(f, f.positions[-1]) + PITCH
        total = height + PITCH
    elif isinstance(obj, Matching):
        width = max(_x(obj.bottom, obj.bottom.positions[-1]), _x(obj.top, obj.top.positions[-1])) + PITCH
        yb, yt = LEVEL + PITCH, PITCH
        body += [_line(obj.bottom, yb), _line(obj.top, yt)]
        body += _svg_labels(obj.bottom, obj.bottom.slots, yb + 16)
        body += _svg_labels(obj.top, obj.top.slots, yt)
        body += _svg_arcs(obj.bottom, obj.caps, yb, True)
        body += _svg_arcs(obj.top, obj.cups, yt, False)
        for b, t in obj.segments:
            body.append(f'<line x1="{_x(obj.bottom, b)}" y1="{yb}" x2="{_x(obj.top, t)}" y2="{yt}" stroke="black"/>')
        total = yb + PITCH
    else:
        raise TypeError(f"cannot render {type(obj).__name__}")
    head = f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{total}">'
    return "\n".join([head] + body + ["</svg>"])
