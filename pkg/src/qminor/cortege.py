"""Corteges (pairs of row/column index sets) and their colored refinement.

An element of the ground set is ('R', i) for a row or ('C', j) for a column.
White elements come from the first pair (I|J), black ones from (I'|J').
"""
from __future__ import annotations

from dataclasses import dataclass

Elem = tuple  # ('R', i) or ('C', j)
Couple = tuple  # two elements in canonical order


def elem_key(e: Elem) -> tuple:
    return (0 if e[0] == "R" else 1, e[1])


def make_couple(a: Elem, b: Elem) -> Couple:
    return tuple(sorted((a, b), key=elem_key))


def couple_kind(c: Couple) -> str:
    """'R', 'C' or 'RC'."""
    kinds = {c[0][0], c[1][0]}
    return kinds.pop() if len(kinds) == 1 else "RC"


def render_elem(e: Elem) -> str:
    return f"r{e[1]}" if e[0] == "R" else f"c{e[1]}'"


def _norm(s, name):
    t = tuple(sorted(int(x) for x in s))
    if len(set(t)) != len(t):
        raise ValueError(f"{name} has repeated entries")
    if t and t[0] < 1:
        raise ValueError(f"{name} must contain positive indices")
    return t


@dataclass(frozen=True)
class Cortege:
    I: tuple
    J: tuple
    Ip: tuple
    Jp: tuple

    def __post_init__(self):
        for name in ("I", "J", "Ip", "Jp"):
            object.__setattr__(self, name, _norm(getattr(self, name), name))
        if len(self.I) != len(self.J) or len(self.Ip) != len(self.Jp):
            raise ValueError("each minor needs as many rows as columns")

    @property
    def Iw(self) -> tuple:
        return tuple(sorted(set(self.I) - set(self.Ip)))

    @property
    def Ib(self) -> tuple:
        return tuple(sorted(set(self.Ip) - set(self.I)))

    @property
    def Jw(self) -> tuple:
        return tuple(sorted(set(self.J) - set(self.Jp)))

    @property
    def Jb(self) -> tuple:
        return tuple(sorted(set(self.Jp) - set(self.J)))

    @property
    def YR(self) -> tuple:
        return tuple(sorted(set(self.I) ^ set(self.Ip)))

    @property
    def YC(self) -> tuple:
        return tuple(sorted(set(self.J) ^ set(self.Jp)))

    @property
    def XR(self) -> tuple:
        return tuple(sorted(set(self.I) & set(self.Ip)))

    @property
    def XC(self) -> tuple:
        return tuple(sorted(set(self.J) & set(self.Jp)))

    def ground(self) -> tuple:
        """Row and column multisets, invariant under the operations on corteges."""
        return (tuple(sorted(self.I + self.Ip)), tuple(sorted(self.J + self.Jp)))

    def elements(self) -> list[Elem]:
        """Ground elements in circle order: rows ascending, then columns descending."""
        return [("R", i) for i in self.YR] + [("C", j) for j in reversed(self.YC)]

    def color(self, e: Elem) -> str:
        kind, x = e
        if kind == "R":
            if x in self.Iw:
                return "w"
            if x in self.Ib:
                return "b"
        else:
            if x in self.Jw:
                return "w"
            if x in self.Jb:
                return "b"
        raise ValueError(f"{render_elem(e)} is not in the ground set")

    def reversed(self) -> "Cortege":
        return Cortege(self.Ip, self.Jp, self.I, self.J)

    def transposed(self) -> "Cortege":
        return Cortege(self.J, self.I, self.Jp, self.Ip)

    def render(self) -> str:
        f = lambda s: "{" + ",".join(map(str, s)) + "}"
        return f"({f(self.I)}|{f(self.J)}, {f(self.Ip)}|{f(self.Jp)})"

    def to_json(self) -> dict:
        return {"I": list(self.I), "J": list(self.J), "Ip": list(self.Ip), "Jp": list(self.Jp)}


def _check_couples(c: Cortege, pi) -> list[Couple]:
    pi = [make_couple(*p) for p in pi]
    seen = set()
    for p in pi:
        for e in p:
            c.color(e)
            if e in seen:
                raise ValueError(f"{render_elem(e)} is covered twice")
            seen.add(e)
    return pi


def zeta(c: Cortege, pi) -> tuple[int, int]:
    """(white count, black count) of R- and C-couples by the color of their smaller end."""
    white = black = 0
    for p in _check_couples(c, pi):
        if couple_kind(p) == "RC":
            continue
        if c.color(p[0]) == "w":
            white += 1
        else:
            black += 1
    return white, black


def index_exchange(c: Cortege, pi) -> Cortege:
    """Swap the colors of every element covered by the couples in pi."""
    rows, cols = set(), set()
    for p in _check_couples(c, pi):
        for kind, x in p:
            (rows if kind == "R" else cols).add(x)
    return Cortege(set(c.I) ^ rows, set(c.J) ^ cols, set(c.Ip) ^ rows, set(c.Jp) ^ cols)
