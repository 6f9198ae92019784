"""Build PD diagrams as plat closures of braids.

Strands sit at positions ``0 .. width-1``. Caps on top and cups at the bottom
join positions ``(0,1), (2,3), ...``. A braid letter ``(i, +1)`` crosses
positions ``i`` and ``i+1`` with the strand coming from the upper left passing
over; ``(i, -1)`` lets the strand from the upper right pass over. Orientation
is assigned by traversal, and each crossing sign is read off the geometry.
"""
from __future__ import annotations

from .diagram import Crossing, Diagram

# slot geometry (x, y) with y pointing up; counterclockwise order TR, TL, BL, BR
_POS = {"TL": (-1, 1), "TR": (1, 1), "BL": (-1, -1), "BR": (1, -1)}
_CCW = ("TR", "TL", "BL", "BR")
_PARTNER = {"TL": "BR", "BR": "TL", "TR": "BL", "BL": "TR"}


def plat_closure(word: list[tuple[int, int]], width: int = 4, name: str = "", reverse: frozenset = frozenset()) -> Diagram:
    """PD diagram of the plat closure of ``word``.

    ``reverse`` holds component indices (in traversal order) whose
    orientation is flipped after the default traversal.
    """
    if width % 2:
        raise ValueError("plat width must be even")
    wires: dict = {}

    def link(u, v):
        wires.setdefault(u, []).append(v)
        wires.setdefault(v, []).append(u)

    top = {p: ("t", p) for p in range(width)}
    for p in range(0, width, 2):
        link(("t", p), ("t", p + 1))
    overs = []
    for c, (i, s) in enumerate(word):
        if not 0 <= i < width - 1 or s not in (1, -1):
            raise ValueError(f"bad braid letter {(i, s)}")
        link(top[i], ("x", c, "TL"))
        link(top[i + 1], ("x", c, "TR"))
        top[i] = ("x", c, "BL")
        top[i + 1] = ("x", c, "BR")
        overs.append(("TL", "BR") if s > 0 else ("TR", "BL"))
    for p in range(width):
        link(top[p], ("b", p))
    for p in range(0, width, 2):
        link(("b", p), ("b", p + 1))

    def far_end(slot):
        # follow wires through cap/cup terminals to the next crossing slot
        prev, cur = slot, wires[slot][0]
        while cur[0] != "x":
            a, b = wires[cur]
            prev, cur = cur, (b if a == prev else a)
        return cur

    n = len(word)
    # traverse components, recording the direction through every slot
    direction: dict = {}  # slot -> "in" / "out"
    comps = []
    for c in range(n):
        for start in ("TL", "TR"):
            s0 = ("x", c, start)
            if s0 in direction:
                continue
            comp = []
            slot = s0
            while True:
                direction[slot] = "in"
                out = ("x", slot[1], _PARTNER[slot[2]])
                direction[out] = "out"
                comp.append(out)
                slot = far_end(out)
                if slot == s0:
                    break
            comps.append(comp)
    free = 0
    if n == 0:
        free = width // 2
    for k in reverse:
        for out in comps[k]:
            inn = ("x", out[1], _PARTNER[out[2]])
            direction[out], direction[inn] = "in", "out"
    # label arcs along each component, starting at its first outgoing slot
    label: dict = {}
    nxt = 1
    for k, comp in enumerate(comps):
        start = comp[0] if k not in reverse else ("x", comp[0][1], _PARTNER[comp[0][2]])
        slot = start
        while True:
            end = far_end(slot)
            label[slot] = label[end] = nxt
            nxt += 1
            slot = ("x", end[1], _PARTNER[end[2]])
            if slot == start:
                break
    crossings = []
    for c in range(n):
        o1, o2 = overs[c]
        u1, u2 = [s for s in _CCW if s not in (o1, o2)]
        o_in, o_out = (o1, o2) if direction[("x", c, o1)] == "in" else (o2, o1)
        u_in, u_out = (u1, u2) if direction[("x", c, u1)] == "in" else (u2, u1)
        vo = _vec(o_in, o_out)
        vu = _vec(u_in, u_out)
        sign = 1 if vo[0] * vu[1] - vo[1] * vu[0] > 0 else -1
        start = _CCW.index(u_in)
        pd = tuple(label[("x", c, _CCW[(start + t) % 4])] for t in range(4))
        crossings.append(Crossing(c, sign, pd))
    d = Diagram(tuple(crossings), free, name, 1 if crossings else None,
                meta={"plat_word": [list(x) for x in word], "width": width})
    d.validate()
    return d


def _vec(a: str, b: str) -> tuple[int, int]:
    return (_POS[b][0] - _POS[a][0], _POS[b][1] - _POS[a][1])
