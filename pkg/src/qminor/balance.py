"""Combinatorial decision procedure for quadratic identities.

A family is a list of (cortege, exponent) pairs standing for
sum q^exponent [I|J][I'|J'].  Two families are q-balanced when their
configurations (cortege, feasible matching) can be paired up with equal
matchings so that every pair is related by an index exchange whose
exponent shift is accounted for by the zeta counts.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

import networkx as nx

from .cortege import Cortege, index_exchange, zeta
from .matchings import CircularMatching, enumerate_feasible

DEFAULT_CAP = 2000


@dataclass(frozen=True)
class Configuration:
    side: str  # "lhs" or "rhs"
    term: int  # position of the term in its family
    cortege: Cortege
    exponent: int
    matching: CircularMatching

    def label(self) -> str:
        return f"{self.side}[{self.term}]"


@dataclass
class BalanceReport:
    verdict: str  # "q-balanced", "balanced-but-not-q", "unbalanced" or "balanced"
    pairs: dict = field(default_factory=dict)  # matching text -> [(lhs label, rhs label, Pi text)]
    witness: dict | None = None

    @property
    def ok(self) -> bool:
        return self.verdict in ("q-balanced", "balanced")

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "pairs": self.pairs, "witness": self.witness}


def ground_data(c: Cortege) -> tuple:
    return (c.XR, c.YR, c.XC, c.YC)


def check_homogeneous(lhs, rhs):
    grounds = {ground_data(c) for c, _ in list(lhs) + list(rhs)}
    if len(grounds) > 1:
        raise ValueError("family is not homogeneous: corteges have different ground sets")


def configurations(family, side="lhs") -> list[Configuration]:
    out = []
    for k, (c, e) in enumerate(family):
        for M in enumerate_feasible(c):
            out.append(Configuration(side, k, c, int(e), M))
    return out


def pi_between(S: Cortege, T: Cortege, M: CircularMatching):
    """The couples of M whose colors differ between S and T, when T is the
    exchange of S along them; otherwise None."""
    if ground_data(S) != ground_data(T):
        return None
    pi = []
    for p in M:
        flips = [S.color(e) != T.color(e) for e in p]
        if flips[0] != flips[1]:
            return None
        if flips[0]:
            pi.append(p)
    if index_exchange(S, pi) != T:
        return None
    return tuple(pi)


def _render_pi(pi) -> str:
    return CircularMatching(tuple(pi)).render()


def _delta(S, M, T):
    pi = pi_between(S, T, M)
    if pi is None:
        return None, None
    w, b = zeta(S, pi)
    return pi, w - b


def _by_matching(confs):
    out = defaultdict(list)
    for x in confs:
        out[x.matching].append(x)
    return out


def _sorted_keys(*dicts):
    keys = set().union(*dicts)
    return sorted(keys, key=lambda M: M.render())


def check_q_balanced(lhs, rhs) -> BalanceReport:
    lhs, rhs = list(lhs), list(rhs)
    check_homogeneous(lhs, rhs)
    L = _by_matching(configurations(lhs, "lhs"))
    R = _by_matching(configurations(rhs, "rhs"))
    report = BalanceReport("q-balanced")
    failure = None
    for M in _sorted_keys(L, R):
        ls, rs = L.get(M, []), R.get(M, [])
        if len(ls) != len(rs):
            report.verdict = "unbalanced"
            report.witness = {"kind": "count-mismatch", "matching": M.render(),
                              "lhs": [x.label() for x in ls], "rhs": [x.label() for x in rs]}
            report.pairs = {}
            _add_pair_witness(report, lhs, rhs)
            return report
        G = nx.Graph()
        G.add_nodes_from(("l", a) for a in range(len(ls)))
        G.add_nodes_from(("r", b) for b in range(len(rs)))
        pis = {}
        for a, x in enumerate(ls):
            for b, y in enumerate(rs):
                pi, d = _delta(x.cortege, M, y.cortege)
                if pi is not None and y.exponent - x.exponent == d:
                    G.add_edge(("l", a), ("r", b))
                    pis[(a, b)] = pi
        match = nx.bipartite.hopcroft_karp_matching(G, top_nodes=[("l", a) for a in range(len(ls))])
        got = [(a, match[("l", a)][1]) for a in range(len(ls)) if ("l", a) in match]
        if len(got) < len(ls):
            if failure is None:
                failure = {"kind": "no-perfect-matching", "matching": M.render(),
                           "lhs": [x.label() for x in ls], "rhs": [x.label() for x in rs]}
            continue
        report.pairs[M.render()] = [(ls[a].label(), rs[b].label(), _render_pi(pis[(a, b)]))
                                    for a, b in sorted(got)]
    if failure is not None:
        report.verdict = "balanced-but-not-q"
        report.witness = failure
        report.pairs = {}
        _add_pair_witness(report, lhs, rhs)
    return report


def _add_pair_witness(report: BalanceReport, lhs, rhs):
    """Record a cortege with two matchings reaching the same cortege with different shifts."""
    for S, _ in lhs:
        for T, _ in rhs:
            seen = {}
            for M in enumerate_feasible(S):
                pi, d = _delta(S, M, T)
                if pi is None:
                    continue
                for M2, d2 in seen.items():
                    if d2 != d:
                        report.witness["pair"] = {"cortege": S.render(), "target": T.render(),
                                                  "matchings": [M2.render(), M.render()],
                                                  "shifts": [d2, d]}
                        return
                seen[M] = d


def check_balanced(lhs, rhs) -> BalanceReport:
    """Compare the multisets of matchings, ignoring exponents."""
    lhs, rhs = list(lhs), list(rhs)
    check_homogeneous(lhs, rhs)
    L = _by_matching(configurations(lhs, "lhs"))
    R = _by_matching(configurations(rhs, "rhs"))
    for M in _sorted_keys(L, R):
        if len(L.get(M, [])) != len(R.get(M, [])):
            return BalanceReport("unbalanced", witness={
                "kind": "count-mismatch", "matching": M.render(),
                "lhs": [x.label() for x in L.get(M, [])],
                "rhs": [x.label() for x in R.get(M, [])]})
    return BalanceReport("balanced")


def exists_exponents(lhs_corteges, rhs_corteges, cap: int = DEFAULT_CAP):
    """Integer exponents making the two families q-balanced, or None.

    Returns (alpha, beta) with alpha[0] = 0 when lhs is nonempty.  The search
    pairs configurations matching by matching while keeping the difference
    constraints beta - alpha = shift consistent.
    """
    lhs, rhs = list(lhs_corteges), list(rhs_corteges)
    check_homogeneous([(c, 0) for c in lhs], [(c, 0) for c in rhs])
    L = _by_matching(configurations([(c, 0) for c in lhs], "lhs"))
    R = _by_matching(configurations([(c, 0) for c in rhs], "rhs"))
    total = sum(len(v) for v in L.values()) + sum(len(v) for v in R.values())
    if total > cap:
        raise ValueError(f"{total} configurations exceed the cap of {cap}")
    keys = _sorted_keys(L, R)
    if any(len(L.get(M, [])) != len(R.get(M, [])) for M in keys):
        return None
    # unknowns: ("a", k) for lhs terms, ("b", k) for rhs terms; value[x] relative to a root
    slots = []  # (lhs conf, candidate rhs confs with shifts) per lhs configuration
    for M in keys:
        for x in L[M]:
            cands = []
            for y in R[M]:
                pi, d = _delta(x.cortege, M, y.cortege)
                if pi is not None:
                    cands.append((y, d))
            if not cands:
                return None
            slots.append((M, x, cands))
    slots.sort(key=lambda s: len(s[2]))

    parent: dict = {}
    used: set = set()

    def find(v):
        # returns (root, offset) with value[v] = value[root] + offset
        off = 0
        while parent.get(v, (v, 0))[0] != v:
            v, o = parent[v]
            off += o
        return v, off

    def solve(k):
        if k == len(slots):
            return True
        M, x, cands = slots[k]
        a = ("a", x.term)
        for y, d in cands:
            key = (M, y.term)
            if key in used:
                continue
            b = ("b", y.term)
            ra, oa = find(a)
            rb, ob = find(b)
            undo = None
            if ra == rb:
                if ob - oa != d:
                    continue
            else:
                # value[b] - value[a] = d
                parent[rb] = (ra, oa + d - ob)
                undo = rb
            used.add(key)
            if solve(k + 1):
                return True
            used.discard(key)
            if undo is not None:
                del parent[undo]
        return False

    if not solve(0):
        return None
    alpha = [find(("a", k)) for k in range(len(lhs))]
    beta = [find(("b", k)) for k in range(len(rhs))]
    base = {}
    if lhs:
        base[alpha[0][0]] = -alpha[0][1]
    return ([o + base.get(r, 0) for r, o in alpha], [o + base.get(r, 0) for r, o in beta])
