"""Sweep drivers shared by the test suite and the scripts in scripts/.

Each driver returns plain counters plus a short list of failures, so that
callers can assert on them or print a report.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import chain, combinations, product

from .algebra import poly_qpower_ratio
from .balance import check_q_balanced
from .cortege import Cortege, couple_kind
from .double_flow import (DegenerateError, DoubleFlow, decompose, exchange_ratio,
                          predicted_exponent, snake_gamma)
from .flows import check_manin, enumerate_flows, path_matrix, qminor_det, qminor_flows
from .identities import (IdentityTerm, QuadraticIdentity, commutes, dodgson, general_r1,
                         general_r2, lz, manin, pad, plucker3a, plucker3b, plucker4, quasicommute,
                         relabel, reverse, rotate, rotation_in_range, transpose, verify_on_graph,
                         verify_universal, weakly_separated, commuting_subminor)
from .matchings import enumerate_feasible
from .se_graph import SEGraph, grid, random_cauchon

MAX_FAILURES = 10


@dataclass
class Tally:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, good: bool, info=None):
        self.checked += 1
        if not good and len(self.failures) < MAX_FAILURES:
            self.failures.append(info)

    def merge(self, other: "Tally"):
        self.checked += other.checked
        self.failures.extend(other.failures[: MAX_FAILURES - len(self.failures)])


def subsets(xs, max_size=None):
    xs = list(xs)
    top = len(xs) if max_size is None else min(max_size, len(xs))
    return chain.from_iterable(combinations(xs, k) for k in range(top + 1))


# ---------------------------------------------------------------- graphs

def lindstrom_corpus(seed: int = 0, n_random: int = 10) -> list[SEGraph]:
    """Grids up to 3x3 and a few random Cauchon graphs up to 3x4."""
    graphs = [grid(m, n) for m in range(1, 4) for n in range(1, 4)]
    rng = random.Random(seed)
    for _ in range(n_random):
        graphs.append(random_cauchon(rng.randint(2, 3), rng.randint(2, 4), rng))
    return graphs


def minor_index_sets(m: int, n: int, max_size: int = 3):
    for k in range(1, min(m, n, max_size) + 1):
        for I in combinations(range(1, m + 1), k):
            for J in combinations(range(1, n + 1), k):
                yield I, J


def lindstrom_check(g: SEGraph, max_size: int = 3) -> Tally:
    """q-determinant of the path matrix against the flow sum, for every minor."""
    x = path_matrix(g)
    t = Tally()
    for I, J in minor_index_sets(g.m, g.n, max_size):
        t.record(qminor_det(x, I, J, g.table) == qminor_flows(g, I, J), (I, J))
    return t


def manin_check(g: SEGraph) -> Tally:
    rep = check_manin(g)
    t = Tally(rep.checked)
    if not rep.ok:
        t.failures.append(rep.failure)
    return t


# ---------------------------------------------------------------- double flows

def corteges(m: int, n: int, max_ground: int | None = None):
    """Every cortege with rows in [m], columns in [n]."""
    minors = [(I, J) for k in range(min(m, n) + 1)
              for I in combinations(range(1, m + 1), k) for J in combinations(range(1, n + 1), k)]
    for (I, J), (Ip, Jp) in product(minors, repeat=2):
        c = Cortege(I, J, Ip, Jp)
        if max_ground is None or len(c.YR) + len(c.YC) <= max_ground:
            yield c


def double_flows(g: SEGraph, c: Cortege):
    for phi in enumerate_flows(g, c.I, c.J):
        for phip in enumerate_flows(g, c.Ip, c.Jp):
            yield DoubleFlow(phi, phip)


def exchange_sweep(g: SEGraph, max_ground: int = 6, all_subsets: bool = True):
    """Compare exchange ratios with the zeta prediction.

    Returns (single, multi): single couples, where the ratio must be +1, -1
    or 0 by couple kind and color, and arbitrary sets of couples, where it
    must equal zeta_white - zeta_black.  Every exchange is also checked to be
    an involution.
    """
    single, multi = Tally(), Tally()
    for c in corteges(g.m, g.n, max_ground):
        for df in double_flows(g, c):
            paths, _ = decompose(g, df)
            couples = [p.couple for p in paths]
            for p in couples:
                d, new = exchange_ratio(g, df, [p])
                if couple_kind(p) == "RC":
                    want = 0
                else:
                    want = 1 if c.color(p[0]) == "w" else -1
                back, _ = exchange_ratio(g, new, [p])
                single.record(d == want and back == -d, (c.render(), p, d, want))
            if not all_subsets:
                continue
            for pi in subsets(couples):
                if len(pi) < 2:
                    continue
                d, _ = exchange_ratio(g, df, pi)
                multi.record(d == predicted_exponent(c, pi), (c.render(), pi, d))
    return single, multi


def gamma_sweep(g: SEGraph, max_ground: int = 6):
    """Bend sums of exchange paths: 1 for R- and C-couples whose smaller end
    is white (-1 when it is black), 0 for RC-couples.

    Returns (tally, degenerate count); degenerate paths are skipped.
    """
    t, degenerate = Tally(), 0
    for c in corteges(g.m, g.n, max_ground):
        for df in double_flows(g, c):
            for Z in decompose(g, df)[0]:
                try:
                    gam = snake_gamma(g, df, Z.couple)
                except DegenerateError:
                    degenerate += 1
                    continue
                if couple_kind(Z.couple) == "RC":
                    want = 0
                else:
                    want = 1 if c.color(Z.couple[0]) == "w" else -1
                t.record(gam == want, (c.render(), Z.couple, gam))
    return t, degenerate


# ---------------------------------------------------------------- classifiers

def classifier_sweep(N: int = 4, max_size: int = 2) -> Tally:
    """quasicommute vs unique feasible matching vs the symbolic ratio on the
    smallest grid holding the cortege; commutes vs ratio 0."""
    minors = [(I, J) for k in range(max_size + 1)
              for I in combinations(range(1, N + 1), k) for J in combinations(range(1, N + 1), k)]
    graphs: dict = {}
    t = Tally()
    for a in range(len(minors)):
        for b in range(a, len(minors)):
            (I, J), (Ip, Jp) = minors[a], minors[b]
            m, n = max(I + Ip + (1,)), max(J + Jp + (1,))
            g = graphs.setdefault((m, n), grid(m, n))
            A, B = qminor_flows(g, I, J), qminor_flows(g, Ip, Jp)
            d = poly_qpower_ratio(A * B, B * A)
            for c, dd in ((Cortege(I, J, Ip, Jp), d),
                          (Cortege(Ip, Jp, I, J), None if d is None else -d)):
                qc = quasicommute(c)
                unique = len(enumerate_feasible(c)) == 1
                com = commutes(c)
                t.record(qc == dd and unique == (dd is not None) and com == (dd == 0),
                         (c.render(), qc, dd, unique, com))
    return t


# ---------------------------------------------------------------- catalog

def catalog_instances() -> list[QuadraticIdentity]:
    """Builder outputs with small ground sets."""
    out = []
    for k in range(1, 4):
        for I in combinations(range(1, 4), k):
            for J in combinations(range(1, 4), k):
                for kk in range(k):
                    for Ip in combinations(I, kk):
                        for Jp in combinations(J, kk):
                            out.append(commuting_subminor(I, J, Ip, Jp))
    for I, J in combinations(list(subsets(range(1, 5), 3)), 2):
        if I and J and weakly_separated(I, J):
            out.append(lz(I, J))
    for i in range(1, 3):
        for j, jp in combinations(range(1, 4), 2):
            out.append(manin("row", i, j, jp=jp))
            out.append(manin("column", j, i, ip=jp))
    for i, j in ((1, 1), (1, 2), (2, 1)):
        out.append(manin("commute", i, j, i + 1, j + 1))
        out.append(manin("diagonal", i, j, i + 1, j + 1))
    for i, j, k in combinations(range(1, 5), 3):
        for X in subsets(set(range(1, 5)) - {i, j, k}, 1):
            out.append(plucker3a(X, i, j, k))
            out.append(plucker3b(X, i, j, k))
    for X in ((), (5,), (3,)):
        idx = [x for x in range(1, 6) if x not in X][:4]
        out.append(plucker4(X, *idx))
    for X, Xp in (((), ()), ((3,), (3,)), ((1,), (2,)), ((2,), (1,))):
        rows = [x for x in range(1, 4) if x not in X][:2]
        cols = [x for x in range(1, 4) if x not in Xp][:2]
        out.append(dodgson(X, *rows, Xp, *cols))
    for I in subsets(range(1, 5)):
        for J in subsets(range(1, 5)):
            if I and 0 <= len(J) - len(I) <= 2:
                out.append(general_r1(I, J))
            if len(I) - len(J) == 2:
                out.append(general_r2(I, J))
    return out


def representative_catalog() -> list[QuadraticIdentity]:
    """One instance per builder shape."""
    return [
        commuting_subminor((1, 2), (1, 2), (1,), (2,)),
        lz((1, 2), (1, 3)),
        manin("row", 1, 1, jp=2),
        manin("column", 1, 1, ip=2),
        manin("commute", 1, 1, 2, 2),
        manin("diagonal", 1, 1, 2, 2),
        plucker3a((), 1, 2, 3),
        plucker3b((), 1, 2, 3),
        plucker4((), 1, 2, 3, 4),
        dodgson((), 1, 2, (), 1, 2),
        general_r1((1,), (2, 3)),
        general_r2((1, 2, 3), (4,)),
    ]


def identity_grid(identity: QuadraticIdentity) -> SEGraph:
    return grid(identity.m, identity.n)


def check_catalog(identities) -> Tally:
    t = Tally()
    for idt in identities:
        good = verify_universal(idt).ok and verify_on_graph(identity_grid(idt), idt)
        t.record(good, (idt.name, idt.render()))
    return t


# ---------------------------------------------------------------- refuted families

def perturbed_families(count: int = 10, seed: int = 0) -> list[QuadraticIdentity]:
    """Catalog identities with one exponent moved, one term dropped, or one
    sign flipped; none of these is a valid identity."""
    rng = random.Random(seed)
    pool = [x for x in representative_catalog() if x.lhs and x.rhs]
    out = []
    while len(out) < count:
        base = rng.choice(pool)
        side = rng.choice(["lhs", "rhs"])
        terms = list(getattr(base, side))
        k = rng.randrange(len(terms))
        how = rng.choice(["exponent", "drop", "sign"])
        t = terms[k]
        if how == "exponent":
            terms[k] = IdentityTerm(t.cortege, t.sign, t.qexp + rng.choice([-2, -1, 1, 2]))
        elif how == "drop":
            if len(base.lhs) + len(base.rhs) <= 2:
                continue
            del terms[k]
        else:
            terms[k] = IdentityTerm(t.cortege, -t.sign, t.qexp)
        lhs, rhs = (terms, list(base.rhs)) if side == "lhs" else (list(base.lhs), terms)
        out.append(QuadraticIdentity(base.m, base.n, lhs, rhs, f"{base.name}~{how}"))
    return out


def quasicommutation_13_24(c: int) -> QuadraticIdentity:
    """[13][24] = q^c [24][13] for flag minors with columns {1,3} and {2,4}."""
    a = Cortege((1, 2), (1, 3), (1, 2), (2, 4))
    return QuadraticIdentity(2, 4, [IdentityTerm(a)], [IdentityTerm(a.reversed(), 1, c)],
                             f"13-24 c={c}")


def refutation_check(identities) -> Tally:
    t = Tally()
    for idt in identities:
        refuted = not check_q_balanced(*idt.canonical()).ok
        nonzero = not verify_on_graph(identity_grid(idt), idt)
        t.record(refuted and nonzero, (idt.name, idt.render(), refuted, nonzero))
    return t


# ---------------------------------------------------------------- transforms

def spread(identity: QuadraticIdentity) -> QuadraticIdentity:
    """Relabel onto non-consecutive indices: arcs on even positions, common parts after."""
    from .identities import _ground
    XR, YR, XC, YC = _ground(identity)
    A = [2 * (k + 1) for k in range(len(YR))]
    S = [2 * len(YR) + 1 + k for k in range(len(XR))]
    B = [2 * (k + 1) for k in range(len(YC))]
    T = [2 * len(YC) + 1 + k for k in range(len(XC))]
    return relabel(identity, A, S, B, T)


def transformed(identities, max_rot: int = 2):
    """(label, identity) for every transform of every identity."""
    for idt in identities:
        yield "reverse", reverse(idt)
        yield "transpose", transpose(idt)
        yield "relabel", spread(idt)
        yield "pad", pad(idt, 1)
        padded = pad(idt, max_rot)
        for g in range(-max_rot, max_rot + 1):
            for h in range(-max_rot, max_rot + 1):
                if abs(g) + abs(h) <= max_rot and rotation_in_range(padded, g, h):
                    yield f"rotate({g},{h})", rotate(padded, g, h)


def transform_check(identities, symbolic: bool = False, max_rot: int = 2) -> Tally:
    t = Tally()
    for label, idt in transformed(identities, max_rot):
        good = verify_universal(idt).ok
        if symbolic:
            good = good and verify_on_graph(identity_grid(idt), idt)
        t.record(good, (label, idt.name, idt.render()))
    return t


def refuted_transform_check(identities, max_rot: int = 2) -> Tally:
    """Transforms of identities that are not q-balanced stay not q-balanced."""
    t = Tally()
    for label, idt in transformed(identities, max_rot):
        t.record(not verify_universal(idt).ok, (label, idt.name, idt.render()))
    return t
