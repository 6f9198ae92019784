"""Oriented link diagrams in planar-diagram (PD) form.

Each crossing lists its four arc labels counterclockwise starting from the
incoming under-strand. For a positive crossing the order is
``(under_in, over_out, under_out, over_in)``; for a negative one it is
``(under_in, over_in, under_out, over_out)``. Every arc label occurs exactly
twice: once as an outgoing end and once as an incoming end.

Fixture JSON::

    {"name": "5_2", "free_loops": 0, "cut_arc": 1,
     "crossings": [{"id": 0, "sign": 1, "pd": [1, 4, 2, 5]}, ...]}
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path


class DiagramError(ValueError):
    """Inconsistent diagram encoding."""


@dataclass(frozen=True)
class Crossing:
    id: int
    sign: int
    pd: tuple[int, int, int, int]

    @property
    def under_in(self) -> int:
        return self.pd[0]

    @property
    def under_out(self) -> int:
        return self.pd[2]

    @property
    def over_in(self) -> int:
        return self.pd[3] if self.sign > 0 else self.pd[1]

    @property
    def over_out(self) -> int:
        return self.pd[1] if self.sign > 0 else self.pd[3]

    @classmethod
    def from_strands(cls, id: int, sign: int, under_in: int, under_out: int, over_in: int, over_out: int) -> Crossing:
        if sign > 0:
            return cls(id, 1, (under_in, over_out, under_out, over_in))
        return cls(id, -1, (under_in, over_in, under_out, over_out))

    def switched(self) -> Crossing:
        """Same strands, over and under exchanged (sign flips)."""
        return Crossing.from_strands(self.id, -self.sign, self.over_in, self.over_out, self.under_in, self.under_out)

    def relabeled(self, mapping: dict[int, int]) -> Crossing:
        return Crossing(self.id, self.sign, tuple(mapping.get(x, x) for x in self.pd))


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[Crossing, ...]
    free_loops: int = 0
    name: str = ""
    cut_arc: int | None = None
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    # -- basic data ---------------------------------------------------------
    @property
    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def arcs(self) -> list[int]:
        return sorted({x for c in self.crossings for x in c.pd})

    def validate(self) -> None:
        """Check label pairing, orientation consistency and planarity."""
        ids = [c.id for c in self.crossings]
        if len(set(ids)) != len(ids):
            raise DiagramError("duplicate crossing ids")
        outs = Counter()
        ins = Counter()
        for c in self.crossings:
            if c.sign not in (1, -1):
                raise DiagramError(f"crossing {c.id}: sign must be +1 or -1")
            ins[c.under_in] += 1
            ins[c.over_in] += 1
            outs[c.under_out] += 1
            outs[c.over_out] += 1
        labels = set(ins) | set(outs)
        for x in labels:
            if ins[x] != 1 or outs[x] != 1:
                raise DiagramError(f"arc {x} must have exactly one incoming and one outgoing end")
        if self.free_loops < 0:
            raise DiagramError("free_loops must be non-negative")
        if self.cut_arc is not None and self.crossings and self.cut_arc not in labels:
            raise DiagramError(f"cut arc {self.cut_arc} is not an arc of the diagram")
        if self.crossings:
            self._check_planar()

    def _check_planar(self) -> None:
        # ribbon graph on crossing vertices; traced faces give V - E + F = 2 per connected piece
        where: dict[int, list[tuple[int, int]]] = {}
        for ci, c in enumerate(self.crossings):
            for s, x in enumerate(c.pd):
                where.setdefault(x, []).append((ci, s))
        seen = set()
        faces = 0
        for ci in range(len(self.crossings)):
            for s in range(4):
                if (ci, s) in seen:
                    continue
                faces += 1
                dart = (ci, s)
                while dart not in seen:
                    seen.add(dart)
                    x = self.crossings[dart[0]].pd[dart[1]]
                    a, b = where[x]
                    other = b if a == dart else a
                    dart = (other[0], (other[1] + 1) % 4)
        # connected pieces of the crossing graph
        parent = list(range(len(self.crossings)))

        def find(u):
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        for occ in where.values():
            (a, _), (b, _) = occ
            parent[find(a)] = find(b)
        pieces = len({find(u) for u in range(len(self.crossings))})
        v = len(self.crossings)
        e = 2 * v
        if v - e + faces != 2 * pieces:
            raise DiagramError(f"encoding is not planar (V={v}, E={e}, F={faces}, pieces={pieces})")

    # -- traversal ----------------------------------------------------------
    def _next_map(self) -> dict[int, tuple[int, bool, int]]:
        # incoming arc -> (crossing index, is_over, outgoing arc)
        nxt = {}
        for ci, c in enumerate(self.crossings):
            nxt[c.under_in] = (ci, False, c.under_out)
            nxt[c.over_in] = (ci, True, c.over_out)
        return nxt

    def components(self) -> list[list[int]]:
        """Arc labels of each component in traversal order, starting from its smallest label."""
        nxt = self._next_map()
        left = set(nxt)
        comps = []
        while left:
            start = min(left)
            comp = []
            x = start
            while True:
                comp.append(x)
                left.discard(x)
                x = nxt[x][2]
                if x == start:
                    break
            comps.append(comp)
        return comps

    def num_components(self) -> int:
        return len(self.components()) + self.free_loops

    def first_undercrossing(self) -> int | None:
        """Index of the first crossing met first from below; ``None`` if the diagram is descending."""
        nxt = self._next_map()
        met = set()
        for comp in self.components():
            for x in comp:
                ci, is_over, _ = nxt[x]
                if ci in met:
                    continue
                met.add(ci)
                if not is_over:
                    return ci
        return None

    # -- local moves ----------------------------------------------------------
    def switch(self, index: int) -> Diagram:
        cs = list(self.crossings)
        cs[index] = cs[index].switched()
        return replace(self, crossings=tuple(cs), meta={})

    def set_sign(self, index: int, sign: int) -> Diagram:
        c = self.crossings[index]
        return self if c.sign == sign else self.switch(index)

    def smooth(self, index: int) -> Diagram:
        """Oriented smoothing of one crossing."""
        c = self.crossings[index]
        rest = [x for i, x in enumerate(self.crossings) if i != index]
        loops = self.free_loops
        # join (under_in -> over_out) and (over_in -> under_out)
        merges = [(c.under_in, c.over_out), (c.over_in, c.under_out)]
        for k in range(2):
            keep, drop = merges[k]
            if keep == drop:
                loops += 1
                continue
            rest = [x.relabeled({drop: keep}) for x in rest]
            for j in range(k + 1, 2):
                merges[j] = tuple(keep if y == drop else y for y in merges[j])
        cut = self.cut_arc
        if cut is not None:
            for keep, drop in [(c.under_in, c.over_out), (c.over_in, c.under_out)]:
                if cut == drop:
                    cut = keep
            left = {x for cr in rest for x in cr.pd}
            if cut not in left:
                # the cut component closed up into a free loop
                cut = min(left) if left else None
        return Diagram(tuple(rest), loops, self.name, cut)

    def mirror(self) -> Diagram:
        """Mirror image: every crossing switched."""
        return Diagram(tuple(c.switched() for c in self.crossings), self.free_loops, self.name + "*", self.cut_arc)

    def canonical_key(self) -> tuple:
        """Relabel arcs in traversal order; diagrams equal up to relabeling share a key."""
        relabel = {}
        for comp in self.components():
            for x in comp:
                relabel[x] = len(relabel)
        cs = sorted((c.sign, tuple(relabel[x] for x in c.pd)) for c in self.crossings)
        return (tuple(cs), self.free_loops)

    # -- (de)serialization ------------------------------------------------------
    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "free_loops": self.free_loops,
            "cut_arc": self.cut_arc,
            "crossings": [{"id": c.id, "sign": c.sign, "pd": list(c.pd)} for c in self.crossings],
        }
        if self.meta:
            d["meta"] = self.meta
        return d

    @classmethod
    def from_dict(cls, d: dict) -> Diagram:
        try:
            crossings = tuple(Crossing(int(c["id"]), int(c["sign"]), tuple(int(x) for x in c["pd"])) for c in d["crossings"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DiagramError(f"malformed diagram record: {exc}") from exc
        if any(len(c.pd) != 4 for c in crossings):
            raise DiagramError("each crossing needs four arc labels")
        diag = cls(crossings, int(d.get("free_loops", 0)), d.get("name", ""), d.get("cut_arc"), d.get("meta", {}))
        diag.validate()
        return diag

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def load(cls, path: str | Path) -> Diagram:
        return cls.from_dict(json.loads(Path(path).read_text()))


UNKNOT = Diagram((), free_loops=1, name="unknot")
