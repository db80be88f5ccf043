"""Weights, blocks, the Bruhat order and the cup diagram attached to a weight.

A weight is a finite run of labels ``v`` (down), ``^`` (up), ``o`` (nought)
and ``x`` (cross) sitting on consecutive integer vertices starting at an
offset.  Only ``v`` and ``^`` vertices carry arcs; the others are frozen.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator

DOWN, UP, NOUGHT, CROSS, FREE = "v", "^", "o", "x", "*"
LABELS = (DOWN, UP, NOUGHT, CROSS)
MAX_FREE = 20


@dataclass(frozen=True)
class Frame:
    """Shape of a number line: ``*`` marks a free vertex, ``o``/``x`` frozen ones."""

    slots: tuple[str, ...]
    offset: int = 1

    def __post_init__(self):
        bad = [s for s in self.slots if s not in (FREE, NOUGHT, CROSS)]
        if bad:
            raise ValueError(f"frame symbols must be '*', 'o' or 'x', got {bad[0]!r}")

    @classmethod
    def parse(cls, text: str) -> Frame:
        body, off = _split_offset(text)
        return cls(tuple(body), off)

    @classmethod
    def free(cls, n: int, offset: int = 1) -> Frame:
        return cls((FREE,) * n, offset)

    def __len__(self) -> int:
        return len(self.slots)

    def __str__(self) -> str:
        s = "".join(self.slots)
        return s if self.offset == 1 else f"{s}@{self.offset}"

    @cached_property
    def positions(self) -> tuple[int, ...]:
        return tuple(range(self.offset, self.offset + len(self.slots)))

    @cached_property
    def free_positions(self) -> tuple[int, ...]:
        return tuple(p for p, s in zip(self.positions, self.slots) if s == FREE)

    @property
    def n_free(self) -> int:
        return len(self.free_positions)

    def padded(self, p: int, q: int) -> Frame:
        return Frame((FREE,) * p + self.slots + (FREE,) * q, self.offset - p)


def _split_offset(text: str) -> tuple[str, int]:
    text = text.strip()
    if "@" in text:
        body, off = text.rsplit("@", 1)
        try:
            return body, int(off)
        except ValueError:
            raise ValueError(f"bad offset in {text!r}") from None
    return text, 1


@dataclass(frozen=True)
class Weight:
    labels: tuple[str, ...]
    offset: int = 1

    def __post_init__(self):
        for s in self.labels:
            if s not in LABELS:
                raise ValueError(f"weight labels must be v, ^, o or x, got {s!r}")

    @classmethod
    def parse(cls, text: str) -> Weight:
        body, off = _split_offset(text)
        if not body:
            raise ValueError("empty weight")
        return cls(tuple(body), off)

    def __str__(self) -> str:
        s = "".join(self.labels)
        return s if self.offset == 1 else f"{s}@{self.offset}"

    def __len__(self) -> int:
        return len(self.labels)

    def label(self, pos: int) -> str:
        i = pos - self.offset
        if not 0 <= i < len(self.labels):
            raise IndexError(f"vertex {pos} is outside the weight")
        return self.labels[i]

    @cached_property
    def frame(self) -> Frame:
        return Frame(tuple(s if s in (NOUGHT, CROSS) else FREE for s in self.labels), self.offset)

    @cached_property
    def free_positions(self) -> tuple[int, ...]:
        return tuple(self.offset + i for i, s in enumerate(self.labels) if s in (DOWN, UP))

    @cached_property
    def free_labels(self) -> str:
        return "".join(s for s in self.labels if s in (DOWN, UP))

    @property
    def n_down(self) -> int:
        return self.labels.count(DOWN)

    @property
    def n_up(self) -> int:
        return self.labels.count(UP)

    @property
    def block(self) -> Block:
        return Block(self.frame, self.n_down, self.n_up)

    def replace(self, changes: dict[int, str]) -> Weight:
        labels = list(self.labels)
        for pos, s in changes.items():
            labels[pos - self.offset] = s
        return Weight(tuple(labels), self.offset)

    def padded(self, p: int, q: int) -> Weight:
        return Weight((DOWN,) * p + self.labels + (UP,) * q, self.offset - p)


@dataclass(frozen=True)
class Block:
    frame: Frame
    n_down: int
    n_up: int

    def __post_init__(self):
        if self.n_down < 0 or self.n_up < 0 or self.n_down + self.n_up != self.frame.n_free:
            raise ValueError(
                f"block counts {self.n_down},{self.n_up} do not fill {self.frame.n_free} free slots")

    @classmethod
    def parse(cls, frame: str, counts: str | None = None) -> Block:
        """Parse ``"****", "2,2"`` or ``"****:2,2"`` (counts are down,up)."""
        if counts is None:
            if ":" not in frame:
                raise ValueError("block needs counts, e.g. '****:2,2'")
            frame, counts = frame.split(":", 1)
        try:
            nd, nu = (int(x) for x in counts.split(","))
        except ValueError:
            raise ValueError(f"bad block counts {counts!r}") from None
        return cls(Frame.parse(frame), nd, nu)

    @classmethod
    def free(cls, n_down: int, n_up: int, offset: int = 1) -> Block:
        return cls(Frame.free(n_down + n_up, offset), n_down, n_up)

    def __str__(self) -> str:
        return f"{self.frame}:{self.n_down},{self.n_up}"

    @property
    def n_free(self) -> int:
        return self.frame.n_free

    def contains(self, w: Weight) -> bool:
        return w.frame == self.frame and w.n_down == self.n_down

    @cached_property
    def weights(self) -> tuple[Weight, ...]:
        return enumerate_block(self)

    @cached_property
    def _index(self) -> dict[Weight, int]:
        return {w: i for i, w in enumerate(self.weights)}

    def index(self, w: Weight) -> int:
        try:
            return self._index[w]
        except KeyError:
            raise ValueError(f"{w} is not in block {self}") from None

    @property
    def max_defect(self) -> int:
        return min(self.n_down, self.n_up)

    @cached_property
    def maximal_defect_weights(self) -> tuple[Weight, ...]:
        return tuple(w for w in self.weights if defect(w) == self.max_defect)

    def padded(self, p: int, q: int) -> Block:
        return Block(self.frame.padded(p, q), self.n_down + p, self.n_up + q)


def enumerate_block(block: Block) -> tuple[Weight, ...]:
    """All weights of the block in lexicographic order with ``v`` before ``^``."""
    if block.n_free > MAX_FREE:
        raise ValueError(f"blocks with more than {MAX_FREE} free vertices are not enumerated")
    slots = block.frame.slots
    out: list[Weight] = []
    labels: list[str] = []

    def rec(i: int, downs: int, ups: int) -> None:
        if i == len(slots):
            out.append(Weight(tuple(labels), block.frame.offset))
            return
        s = slots[i]
        if s != FREE:
            labels.append(s)
            rec(i + 1, downs, ups)
            labels.pop()
            return
        if downs:
            labels.append(DOWN)
            rec(i + 1, downs - 1, ups)
            labels.pop()
        if ups:
            labels.append(UP)
            rec(i + 1, downs, ups - 1)
            labels.pop()

    rec(0, block.n_down, block.n_up)
    return tuple(out)


def _same_block(lam: Weight, mu: Weight) -> None:
    if lam.frame != mu.frame or lam.n_down != mu.n_down:
        raise ValueError(f"{lam} and {mu} lie in different blocks")


def ell_sequence(lam: Weight, mu: Weight) -> tuple[int, ...]:
    """The values l_i(lam, mu) at each free vertex i, left to right."""
    _same_block(lam, mu)
    out = []
    acc = 0
    for a, b in zip(lam.labels, mu.labels):
        if a in (NOUGHT, CROSS):
            continue
        acc += (a == DOWN) - (b == DOWN)
        out.append(acc)
    return tuple(out)


def ell(lam: Weight, mu: Weight, i: int) -> int:
    """l_i(lam, mu): downs of lam minus downs of mu at free vertices up to i."""
    _same_block(lam, mu)
    if lam.frame.slots[i - lam.offset] != FREE:
        raise ValueError(f"vertex {i} is not free")
    idx = lam.free_positions.index(i)
    return ell_sequence(lam, mu)[idx]


def rel_length(lam: Weight, mu: Weight) -> int:
    return sum(ell_sequence(lam, mu))


def bruhat_leq(lam: Weight, mu: Weight) -> bool:
    return all(v >= 0 for v in ell_sequence(lam, mu))


def bruhat_lt(lam: Weight, mu: Weight) -> bool:
    return lam != mu and bruhat_leq(lam, mu)


@lru_cache(maxsize=None)
def cup_arcs(w: Weight) -> tuple[tuple[tuple[int, int], ...], tuple[tuple[int, str], ...]]:
    """Cups joining neighbouring ``v^`` pairs repeatedly, plus tagged leftover rays."""
    stack: list[int] = []
    cups: list[tuple[int, int]] = []
    rays: list[tuple[int, str]] = []
    for pos in w.free_positions:
        s = w.label(pos)
        if s == DOWN:
            stack.append(pos)
        elif stack:
            cups.append((stack.pop(), pos))
        else:
            rays.append((pos, UP))
    rays.extend((pos, DOWN) for pos in stack)
    rays.sort()
    return tuple(sorted(cups)), tuple(rays)


def defect(w: Weight) -> int:
    return len(cup_arcs(w)[0])


def weight_from_arcs(frame: Frame, cups, rays) -> Weight:
    """The weight whose cup diagram has the given cups and tagged rays."""
    labels = list(frame.slots)
    off = frame.offset
    for i, j in cups:
        labels[i - off] = DOWN
        labels[j - off] = UP
    for pos, tag in rays:
        labels[pos - off] = tag
    if FREE in labels:
        raise ValueError("arcs do not cover every free vertex")
    return Weight(tuple(labels), off)


def circ_arcs(lam: Weight):
    """Cups and rays of the cup diagram of lam-circle.

    Clockwise cups join neighbouring ``^v`` pairs first; what remains reads
    ``v...v^...^`` and is joined by nested anticlockwise cups, with rays on
    the surplus.
    """
    stack: list[int] = []
    cups: list[tuple[int, int]] = []
    left: list[int] = []
    for pos in lam.free_positions:
        s = lam.label(pos)
        if s == UP:
            stack.append(pos)
        elif stack:
            cups.append((stack.pop(), pos))
        else:
            left.append(pos)
    rest = left + stack  # downs then ups
    downs = left
    ups = stack
    k = min(len(downs), len(ups))
    for t in range(k):
        cups.append((downs[len(downs) - 1 - t], ups[t]))
    rays = [(p, DOWN) for p in downs[: len(downs) - k]] + [(p, UP) for p in ups[k:]]
    assert len(rest) == 2 * k + len(rays)
    return tuple(sorted(cups)), tuple(sorted(rays))


def lambda_circ(lam: Weight) -> Weight:
    """The maximal defect weight whose cup diagram has the largest degree against lam."""
    cups, rays = circ_arcs(lam)
    return weight_from_arcs(lam.frame, cups, rays)


def is_kostant(lam: Weight) -> bool:
    """True unless the free labels contain ``^v^v`` as a subsequence."""
    pattern = UP + DOWN + UP + DOWN
    k = 0
    for s in lam.free_labels:
        if s == pattern[k]:
            k += 1
            if k == len(pattern):
                return False
    return True


def swap(w: Weight, i: int, j: int) -> Weight:
    return w.replace({i: w.label(j), j: w.label(i)})


def arrows_from(lam: Weight) -> Iterator[tuple[int, int, Weight]]:
    """Weights obtained by swapping a neighbouring ``v^`` pair to ``^v``."""
    fp = lam.free_positions
    for i, j in zip(fp, fp[1:]):
        if lam.label(i) == DOWN and lam.label(j) == UP:
            yield i, j, swap(lam, i, j)


def arrows(block: Block) -> list[tuple[Weight, Weight]]:
    return [(lam, nu) for lam in block.weights for _, _, nu in arrows_from(lam)]


def delete_vertices(w: Weight, i: int, j: int) -> Weight:
    """Remove vertices i and j, closing up the number line."""
    labels = tuple(s for p, s in zip(range(w.offset, w.offset + len(w)), w.labels) if p not in (i, j))
    return Weight(labels, w.offset)
