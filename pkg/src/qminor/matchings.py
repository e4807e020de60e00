"""Feasible (planar, color-respecting) perfect matchings on a cortege's ground set."""
from __future__ import annotations

from dataclasses import dataclass

from .cortege import Cortege, Couple, Elem, couple_kind, elem_key, make_couple, render_elem


@dataclass(frozen=True)
class CircularMatching:
    couples: tuple

    def __post_init__(self):
        cs = tuple(sorted((make_couple(*c) for c in self.couples),
                          key=lambda c: (elem_key(c[0]), elem_key(c[1]))))
        object.__setattr__(self, "couples", cs)

    def __iter__(self):
        return iter(self.couples)

    def __len__(self):
        return len(self.couples)

    def partner(self, e: Elem) -> Elem:
        for a, b in self.couples:
            if a == e:
                return b
            if b == e:
                return a
        raise KeyError(e)

    def render(self) -> str:
        return "{" + ",".join(f"({render_elem(a)},{render_elem(b)})" for a, b in self.couples) + "}"

    def to_json(self) -> list:
        return [[list(a), list(b)] for a, b in self.couples]

    @classmethod
    def from_json(cls, data) -> "CircularMatching":
        return cls(tuple((tuple(a), tuple(b)) for a, b in data))


def _color_ok(c: Cortege, p: Couple) -> bool:
    same = c.color(p[0]) == c.color(p[1])
    return same if couple_kind(p) == "RC" else not same


def _crossing(p, q, pos) -> bool:
    a, b = sorted((pos[p[0]], pos[p[1]]))
    x, y = sorted((pos[q[0]], pos[q[1]]))
    return a < x < b < y or x < a < y < b


def is_feasible(M, c: Cortege) -> bool:
    """Perfect on the ground set, color rules hold, and no two chords cross."""
    elems = c.elements()
    pos = {e: k for k, e in enumerate(elems)}
    couples = [make_couple(*p) for p in M]
    covered = [e for p in couples for e in p]
    if sorted(covered, key=elem_key) != sorted(elems, key=elem_key):
        return False
    if not all(_color_ok(c, p) for p in couples):
        return False
    return not any(_crossing(couples[a], couples[b], pos)
                   for a in range(len(couples)) for b in range(a + 1, len(couples)))


def enumerate_feasible(c: Cortege) -> list[CircularMatching]:
    """Every feasible matching, by splitting the circle at the first element's partner."""
    elems = c.elements()

    def rec(seq):
        if not seq:
            yield ()
            return
        first = seq[0]
        for k in range(1, len(seq), 2):
            p = make_couple(first, seq[k])
            if not _color_ok(c, p):
                continue
            for inner in rec(seq[1:k]):
                for outer in rec(seq[k + 1:]):
                    yield (p,) + inner + outer

    return [CircularMatching(m) for m in rec(elems)]


def greedy_feasible(c: Cortege) -> CircularMatching:
    """A feasible matching built by repeatedly joining the closest opposite-colored pair."""
    couples = []
    rest = {}
    for kind, w, b in (("R", c.Iw, c.Ib), ("C", c.Jw, c.Jb)):
        w, b = list(w), list(b)
        while w and b:
            _, x, y = min((abs(x - y), x, y) for x in w for y in b)
            couples.append(((kind, x), (kind, y)))
            w.remove(x)
            b.remove(y)
        rest[kind] = w or b
    if len(rest["R"]) != len(rest["C"]):
        raise ValueError("unbalanced cortege")
    couples += [(("R", i), ("C", j)) for i, j in zip(rest["R"], rest["C"])]
    return CircularMatching(tuple(couples))
