"""Quadratic identities on quantum minors: catalog, verification, transforms,
and the quasicommutation classifiers.

An identity is sum_lhs sign q^qexp [I|J][I'|J'] = sum_rhs sign q^qexp [I|J][I'|J'].
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from itertools import combinations

from .algebra import LaurentScalar, NCPolynomial
from .balance import BalanceReport, check_q_balanced, ground_data
from .cortege import Cortege, couple_kind, make_couple, zeta
from .flows import qminor_flows
from .matchings import CircularMatching, enumerate_feasible, greedy_feasible, is_feasible
from .se_graph import SEGraph


@dataclass(frozen=True)
class IdentityTerm:
    cortege: Cortege
    sign: int = 1
    qexp: int = 0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def to_json(self) -> dict:
        return {**self.cortege.to_json(), "sign": self.sign, "qexp": self.qexp}


@dataclass(frozen=True)
class QuadraticIdentity:
    m: int
    n: int
    lhs: tuple
    rhs: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        for t in self.lhs + self.rhs:
            c = t.cortege
            rows, cols = c.I + c.Ip, c.J + c.Jp
            if (rows and max(rows) > self.m) or (cols and max(cols) > self.n):
                raise ValueError(f"term {c.render()} exceeds the {self.m}x{self.n} frame")

    def canonical(self) -> tuple[list, list]:
        """Families with only positive terms: negative terms change sides."""
        lhs = [(t.cortege, t.qexp) for t in self.lhs if t.sign > 0]
        lhs += [(t.cortege, t.qexp) for t in self.rhs if t.sign < 0]
        rhs = [(t.cortege, t.qexp) for t in self.rhs if t.sign > 0]
        rhs += [(t.cortege, t.qexp) for t in self.lhs if t.sign < 0]
        return lhs, rhs

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "lhs": [t.to_json() for t in self.lhs],
                "rhs": [t.to_json() for t in self.rhs]}

    def render(self) -> str:
        def side(ts):
            if not ts:
                return "0"
            out = []
            for t in ts:
                s = LaurentScalar.q(t.qexp, t.sign).render()
                s = "" if s == "1" else "-" if s == "-1" else s + " "
                out.append(f"{s}{t.cortege.render()}")
            return " + ".join(out)
        return f"{side(self.lhs)} = {side(self.rhs)}"


def identity_from_json(data) -> QuadraticIdentity:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        def term(d):
            return IdentityTerm(Cortege(d["I"], d["J"], d["Ip"], d["Jp"]),
                                int(d.get("sign", 1)), int(d.get("qexp", 0)))
        return QuadraticIdentity(int(data["m"]), int(data["n"]),
                                 [term(d) for d in data["lhs"]], [term(d) for d in data["rhs"]])
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"malformed identity: {exc}") from exc


def _frame(terms, name=""):
    lhs, rhs = terms
    rows = [x for t in lhs + rhs for x in t.cortege.I + t.cortege.Ip] or [1]
    cols = [x for t in lhs + rhs for x in t.cortege.J + t.cortege.Jp] or [1]
    return QuadraticIdentity(max(rows), max(cols), lhs, rhs, name)


def _flag(cols) -> tuple:
    cols = tuple(sorted(cols))
    return tuple(range(1, len(cols) + 1)), cols


def _t(first, second, sign=1, qexp=0) -> IdentityTerm:
    return IdentityTerm(Cortege(first[0], first[1], second[0], second[1]), sign, qexp)


def _distinct(*xs):
    flat = [x for s in xs for x in (s if isinstance(s, (tuple, list, set, frozenset)) else [s])]
    if len(set(flat)) != len(flat):
        raise ValueError("indices must be distinct")


def _increasing(*xs):
    if list(xs) != sorted(xs) or len(set(xs)) != len(xs):
        raise ValueError(f"indices {xs} must be strictly increasing")


# ---------------------------------------------------------------- catalog

def commuting_subminor(I, J, Ip, Jp) -> QuadraticIdentity:
    """[I|J][I'|J'] = [I'|J'][I|J] for a submatrix (I'|J') of (I|J)."""
    if not (set(Ip) <= set(I) and set(Jp) <= set(J)):
        raise ValueError("(I'|J') must be a submatrix of (I|J)")
    c = Cortege(I, J, Ip, Jp)
    return _frame(([IdentityTerm(c)], [IdentityTerm(c.reversed())]), "commuting_subminor")


def inv(A, B) -> int:
    return sum(1 for a in A for b in B if a > b)


def _split(X, mid):
    """(X1, X2) with X = X1 u X2 and X1 < mid < X2, or None."""
    X = sorted(X)
    if not mid:
        return ([], X) if not X else None
    lo, hi = min(mid), max(mid)
    X1 = [x for x in X if x < lo]
    X2 = [x for x in X if x > hi]
    return (X1, X2) if len(X1) + len(X2) == len(X) else None


def _ws_oriented(I, J):
    """c = |J2| - |J1| when |I| >= |J| and J - I splits around I - J, else None."""
    I, J = set(I), set(J)
    if len(I) < len(J):
        return None
    s = _split(J - I, I - J)
    return None if s is None else len(s[1]) - len(s[0])


def weakly_separated(I, J) -> bool:
    return _ws_oriented(I, J) is not None or _ws_oriented(J, I) is not None


def lz(I, J) -> QuadraticIdentity:
    """[I][J] = q^c [J][I] for weakly separated column sets of flag minors."""
    c = _ws_oriented(I, J)
    if c is None:
        c2 = _ws_oriented(J, I)
        if c2 is None:
            raise ValueError("column sets are not weakly separated")
        c = -c2
    return _frame(([_t(_flag(I), _flag(J))], [_t(_flag(J), _flag(I), qexp=c)]), "lz")


def manin(kind, i, j, ip=None, jp=None) -> QuadraticIdentity:
    """Relations between the entries of a quantum matrix, as quadratic identities.

    kind 'row': [i|j][i|j'] = q [i|j'][i|j]; 'column': [i|j][i'|j] = q [i'|j][i|j];
    'commute': [i|j'][i'|j] = [i'|j][i|j']; 'diagonal': the 2x2 exchange relation.
    """
    e = lambda r, c: ((r,), (c,))
    needs = {"row": (jp,), "column": (ip,), "commute": (ip, jp), "diagonal": (ip, jp)}
    if any(x is None for x in needs.get(kind, ())):
        raise ValueError(f"Manin relation {kind!r} needs both indices of each pair")
    if kind == "row":
        _increasing(j, jp)
        terms = [_t(e(i, j), e(i, jp))], [_t(e(i, jp), e(i, j), qexp=1)]
    elif kind == "column":
        _increasing(i, ip)
        terms = [_t(e(i, j), e(ip, j))], [_t(e(ip, j), e(i, j), qexp=1)]
    elif kind == "commute":
        _increasing(i, ip)
        _increasing(j, jp)
        terms = [_t(e(i, jp), e(ip, j))], [_t(e(ip, j), e(i, jp))]
    elif kind == "diagonal":
        _increasing(i, ip)
        _increasing(j, jp)
        terms = ([_t(e(i, j), e(ip, jp)), _t(e(i, jp), e(ip, j), qexp=-1)],
                 [_t(e(i, jp), e(ip, j), qexp=1), _t(e(ip, jp), e(i, j))])
    else:
        raise ValueError(f"unknown Manin relation kind {kind!r}")
    return _frame(terms, f"manin-{kind}")


def plucker3a(X, i, j, k) -> QuadraticIdentity:
    """[Xj][Xik] = [Xij][Xk] + [Xjk][Xi]."""
    _increasing(i, j, k)
    _distinct(X, [i, j, k])
    X = set(X)
    f = lambda *a: _flag(X | set(a))
    return _frame(([_t(f(j), f(i, k))], [_t(f(i, j), f(k)), _t(f(j, k), f(i))]), "plucker3a")


def plucker3b(X, i, j, k) -> QuadraticIdentity:
    """[Xik][Xj] = q^-1 [Xij][Xk] + q [Xjk][Xi]."""
    _increasing(i, j, k)
    _distinct(X, [i, j, k])
    X = set(X)
    f = lambda *a: _flag(X | set(a))
    return _frame(([_t(f(i, k), f(j))],
                   [_t(f(i, j), f(k), qexp=-1), _t(f(j, k), f(i), qexp=1)]), "plucker3b")


def plucker4(X, i, j, k, l) -> QuadraticIdentity:
    """[Xik][Xjl] = q^-1 [Xij][Xkl] + q [Xil][Xjk]."""
    _increasing(i, j, k, l)
    _distinct(X, [i, j, k, l])
    X = set(X)
    f = lambda *a: _flag(X | set(a))
    return _frame(([_t(f(i, k), f(j, l))],
                   [_t(f(i, j), f(k, l), qexp=-1), _t(f(i, l), f(j, k), qexp=1)]), "plucker4")


def dodgson(X, i, k, Xp, ip, kp) -> QuadraticIdentity:
    """[Xi|X'i'][Xk|X'k'] = q [Xi|X'k'][Xk|X'i'] + [Xik|X'i'k'][X|X']."""
    _increasing(i, k)
    _increasing(ip, kp)
    _distinct(X, [i, k])
    _distinct(Xp, [ip, kp])
    if len(X) != len(Xp):
        raise ValueError("|X| must equal |X'|")
    X, Xp = set(X), set(Xp)
    m = lambda a, b: (tuple(sorted(X | set(a))), tuple(sorted(Xp | set(b))))
    return _frame(([_t(m([i], [ip]), m([k], [kp]))],
                   [_t(m([i], [kp]), m([k], [ip]), qexp=1),
                    _t(m([i, k], [ip, kp]), m([], []))]), "dodgson")


def general_r1(I, J) -> QuadraticIdentity:
    """[I][J] = sum over mu in J - I with |mu| = |J| - |I| of
    (-q)^e(mu) [I u mu][J - mu], where e(mu) = inv(mu, J - mu) - inv(mu, I).

    The exponent counts pairs (x, y) in mu x (J - mu), resp. mu x I, with
    x > y.  Counting the pairs the other way round negates e and gives a
    false identity already for [1][23].
    """
    I, J = set(I), set(J)
    if len(I) > len(J):
        raise ValueError("needs |I| <= |J|")
    rhs = []
    for mu in combinations(sorted(J - I), len(J) - len(I)):
        mu = set(mu)
        e = inv(mu, J - mu) - inv(mu, I)
        rhs.append(_t(_flag(I | mu), _flag(J - mu), sign=(-1) ** e, qexp=e))
    return _frame(([_t(_flag(I), _flag(J))], rhs), "general_r1")


def general_r2(I, J) -> QuadraticIdentity:
    """sum over a in I - J of (-q)^(inv(a, I - a) - inv(a, J)) [Ja][I - a] = 0."""
    I, J = set(I), set(J)
    if len(I) - len(J) < 2:
        raise ValueError("needs |I| - |J| >= 2")
    lhs = []
    for a in sorted(I - J):
        e = inv([a], I - {a}) - inv([a], J)
        lhs.append(_t(_flag(J | {a}), _flag(I - {a}), sign=(-1) ** e, qexp=e))
    return _frame((lhs, []), "general_r2")


CATALOG = {
    "commuting_subminor": commuting_subminor,
    "lz": lz,
    "manin": manin,
    "plucker3a": plucker3a,
    "plucker3b": plucker3b,
    "plucker4": plucker4,
    "dodgson": dodgson,
    "general_r1": general_r1,
    "general_r2": general_r2,
}


# ---------------------------------------------------------------- checking

def verify_universal(identity: QuadraticIdentity) -> BalanceReport:
    return check_q_balanced(*identity.canonical())


def identity_difference(g: SEGraph, identity: QuadraticIdentity) -> NCPolynomial:
    """LHS - RHS evaluated on the path matrix of g."""
    if identity.m > g.m or identity.n > g.n:
        raise ValueError(f"identity needs a {identity.m}x{identity.n} graph")
    total = NCPolynomial.zero(g.table)
    for side, ts in ((1, identity.lhs), (-1, identity.rhs)):
        for t in ts:
            c = t.cortege
            prod = qminor_flows(g, c.I, c.J) * qminor_flows(g, c.Ip, c.Jp)
            total = total + prod.scale(LaurentScalar.q(t.qexp, side * t.sign))
    return total


def verify_on_graph(g: SEGraph, identity: QuadraticIdentity) -> bool:
    return identity_difference(g, identity).is_zero()


# ---------------------------------------------------------------- transforms

def _map_terms(identity, fn, m=None, n=None, name=None):
    lhs = [fn(t) for t in identity.lhs]
    rhs = [fn(t) for t in identity.rhs]
    return QuadraticIdentity(identity.m if m is None else m, identity.n if n is None else n,
                             lhs, rhs, identity.name if name is None else name)


def reverse(identity: QuadraticIdentity) -> QuadraticIdentity:
    """Swap the two minors in every product and negate the q-exponents."""
    return _map_terms(identity, lambda t: IdentityTerm(t.cortege.reversed(), t.sign, -t.qexp))


def transpose(identity: QuadraticIdentity) -> QuadraticIdentity:
    return _map_terms(identity, lambda t: replace(t, cortege=t.cortege.transposed()),
                      m=identity.n, n=identity.m)


def _ground(identity):
    terms = identity.lhs + identity.rhs
    if not terms:
        raise ValueError("empty identity")
    grounds = {ground_data(t.cortege) for t in terms}
    if len(grounds) > 1:
        raise ValueError("identity is not homogeneous")
    return grounds.pop()  # (XR, YR, XC, YC)


def relabel(identity, new_A, new_S, new_B, new_T, m=None, n=None) -> QuadraticIdentity:
    """Move the row ground sets A = I^I', S = I&I' to new_A, new_S (and columns
    B, T to new_B, new_T), keeping the order inside A and inside B."""
    XR, YR, XC, YC = _ground(identity)
    new_A, new_S, new_B, new_T = (tuple(sorted(x)) for x in (new_A, new_S, new_B, new_T))
    if len(new_A) != len(YR) or len(new_B) != len(YC):
        raise ValueError("new symmetric-difference sets must keep their sizes")
    if set(new_A) & set(new_S) or set(new_B) & set(new_T):
        raise ValueError("new ground sets must be disjoint")
    if len(new_S) - len(new_T) != len(XR) - len(XC):
        raise ValueError("|S~| - |T~| must equal |S| - |T|")
    nu, mu = dict(zip(YR, new_A)), dict(zip(YC, new_B))

    def fn(t):
        c = t.cortege
        return replace(t, cortege=Cortege(
            set(new_S) | {nu[i] for i in c.I if i in nu}, set(new_T) | {mu[j] for j in c.J if j in mu},
            set(new_S) | {nu[i] for i in c.Ip if i in nu}, set(new_T) | {mu[j] for j in c.Jp if j in mu}))

    rows = list(new_A + new_S) or [1]
    cols = list(new_B + new_T) or [1]
    return _map_terms(identity, fn, m=m or max(rows), n=n or max(cols))


def pad(identity, r: int, s: int | None = None) -> QuadraticIdentity:
    """Shift all rows up by r and columns by s, leaving r (s) free indices on each side."""
    s = r if s is None else s
    XR, YR, XC, YC = _ground(identity)
    sh = lambda xs, d: [x + d for x in xs]
    return relabel(identity, sh(YR, r), sh(XR, r), sh(YC, s), sh(XC, s),
                   m=identity.m + 2 * r, n=identity.n + 2 * s)


def _free(lo, hi, avoid, count, descending):
    rng = range(hi, lo - 1, -1) if descending else range(lo, hi + 1)
    out = [x for x in rng if x not in avoid][:count]
    if len(out) < count:
        raise ValueError("not enough free indices for the rotation")
    return sorted(out)


def rotation_in_range(identity: QuadraticIdentity, g: int, h: int) -> bool:
    """Whether the arcs hold enough elements for a (g, h) rotation."""
    _, YR, _, YC = _ground(identity)
    k, kp = len(YR), len(YC)
    return ((g >= 0 and h >= 0 and g + h <= k) or (g <= 0 and h <= 0 and -g - h <= kp)
            or (g >= 0 >= h and g <= k and -h <= kp) or (g <= 0 <= h and -g <= kp and h <= k))


def rotate(identity: QuadraticIdentity, g: int, h: int) -> QuadraticIdentity:
    """Rotate the ground circle by g steps at the left end and h at the right end.

    Elements leaving the row arc enter the column arc (and vice versa) with the
    opposite color; q-exponents shift accordingly.  The common row and column
    parts are then shrunk or extended by fresh indices so that every product
    is again a product of square minors.
    """
    XR, YR, XC, YC = _ground(identity)
    k, kp = len(YR), len(YC)
    if not rotation_in_range(identity, g, h):
        raise ValueError(f"rotation ({g}, {h}) out of range for |Y_R|={k}, |Y_C|={kp}")
    m, n = identity.m, identity.n
    # new indices: next to the arc they extend; an empty arc takes both ends
    # from the lowest free indices, keeping the left end below the right end
    new_rows = _free(1, m, set(XR), max(-g, 0) + max(-h, 0), descending=False) if not YR else None
    new_cols = _free(1, n, set(XC), max(g, 0) + max(h, 0), descending=False) if not YC else None
    if g >= 0:
        A = list(YR[:g])
        Ap = new_cols[:g] if new_cols is not None else _free(1, YC[0] - 1, set(XC), g, True)
    else:
        Ap = list(YC[:-g])
        A = new_rows[:-g] if new_rows is not None else _free(1, YR[0] - 1, set(XR), -g, True)
    if h >= 0:
        B = list(YR[k - h:]) if h else []
        Bp = (new_cols[max(g, 0):] if new_cols is not None
              else _free(YC[-1] + 1, n, set(XC), h, False))
    else:
        Bp = list(YC[kp + h:])
        B = (new_rows[max(-g, 0):] if new_rows is not None
             else _free(YR[-1] + 1, m, set(XR), -h, False))
    xi = dict(zip(A, reversed(Ap)))
    eta = dict(zip(B, reversed(Bp)))

    def fn(t):
        c = t.cortege
        colors = {("R", i): c.color(("R", i)) for i in YR}
        colors.update({("C", j): c.color(("C", j)) for j in YC})
        flip = {"w": "b", "b": "w"}
        for rows_moved, pairing in ((g >= 0, xi), (h >= 0, eta)):
            for r, col in pairing.items():
                if rows_moved:
                    colors[("C", col)] = flip[colors.pop(("R", r))]
                else:
                    colors[("R", r)] = flip[colors.pop(("C", col))]
        omega = (sum(1 for i in A if i in c.Iw) + sum(1 for j in Ap if j in c.Jw)
                 - sum(1 for i in B if i in c.Iw) - sum(1 for j in Bp if j in c.Jw))
        pick = lambda kind, col: {x for (kd, x), cl in colors.items() if kd == kind and cl == col}
        return pick("R", "w"), pick("R", "b"), pick("C", "w"), pick("C", "b"), t, omega

    lhs = [fn(t) for t in identity.lhs]
    rhs = [fn(t) for t in identity.rhs]
    rw, rb, cw, cb, _, _ = (lhs + rhs)[0]
    # resize the common parts so that both minors of every product are square
    new_yr, new_yc = rw | rb, cw | cb
    xr, xc = sorted(XR), sorted(XC)
    need = (len(cw) - len(rw)) - (len(xr) - len(xc))
    while need > 0 and xc:
        xc.pop()
        need -= 1
    while need < 0 and xr:
        xr.pop()
        need += 1
    grow_r = _fresh(set(xr) | new_yr, max(need, 0))
    grow_c = _fresh(set(xc) | new_yc, max(-need, 0))
    xr, xc = set(xr) | set(grow_r), set(xc) | set(grow_c)

    def build(entry):
        rw, rb, cw, cb, t, omega = entry
        return IdentityTerm(Cortege(xr | rw, xc | cw, xr | rb, xc | cb), t.sign, t.qexp + omega)

    rows = list(xr | new_yr) + [identity.m]
    cols = list(xc | new_yc) + [identity.n]
    return QuadraticIdentity(max(rows), max(cols), [build(e) for e in lhs],
                             [build(e) for e in rhs], identity.name)


def _fresh(used, count):
    out, x = [], 1
    while len(out) < count:
        if x not in used:
            out.append(x)
        x += 1
    return out


# ---------------------------------------------------------------- classifiers

def _lt(A, B) -> bool:
    return not A or not B or max(A) < min(B)


def _qc_oriented(c: Cortege) -> int | None:
    # assumes |I| >= |I'|
    if not (weakly_separated(c.I, c.Ip) and weakly_separated(c.J, c.Jp)):
        return None
    Iw, Ib, Jw, Jb = c.Iw, c.Ib, c.Jw, c.Jb
    if not Ib:
        s = _split(Jb, Jw)
        return None if s is None else len(s[1]) - len(s[0])
    if not Jb:
        s = _split(Ib, Iw)
        return None if s is None else len(s[1]) - len(s[0])
    if _lt(Iw, Ib) and _lt(Jb, Jw):
        return len(Ib) - len(Jb)
    if _lt(Ib, Iw) and _lt(Jw, Jb):
        return len(Jb) - len(Ib)
    return None


def quasicommute(c: Cortege) -> int | None:
    """c with [I|J][I'|J'] = q^c [I'|J'][I|J], or None when they do not quasicommute.

    When both minors have the same size either one may play the larger role.
    """
    if len(c.I) > len(c.Ip):
        return _qc_oriented(c)
    r = _qc_oriented(c.reversed())
    if r is not None:
        return -r
    return _qc_oriented(c) if len(c.I) == len(c.Ip) else None


def _commutes_oriented(c: Cortege) -> bool:
    Iw, Ib, Jw, Jb = c.Iw, c.Ib, c.Jw, c.Jb
    if len(Iw) == len(Jw) and ((_lt(Iw, Ib) and _lt(Jb, Jw)) or (_lt(Ib, Iw) and _lt(Jw, Jb))):
        return True
    if not Ib:
        s = _split(Jb, Jw)
        if s is not None and len(s[0]) == len(s[1]):
            return True
    if not Jb:
        s = _split(Ib, Iw)
        if s is not None and len(s[0]) == len(s[1]):
            return True
    return False


def commutes(c: Cortege) -> bool:
    """Sufficient conditions for [I|J] and [I'|J'] to commute (either
    orientation is tried when the minors have equal size)."""
    if len(c.I) > len(c.Ip):
        return _commutes_oriented(c)
    if len(c.I) < len(c.Ip):
        return _commutes_oriented(c.reversed())
    return _commutes_oriented(c) or _commutes_oriented(c.reversed())


def total_shift(c: Cortege, M) -> int:
    """Exponent shift of the exchange along every couple of M (the swapped product)."""
    w, b = zeta(c, list(M))
    return w - b


def _two_couple_swaps(c: Cortege, M: CircularMatching):
    cs = list(M)
    for a in range(len(cs)):
        for b in range(a + 1, len(cs)):
            (x, y), (u, v) = cs[a], cs[b]
            rest = cs[:a] + cs[a + 1:b] + cs[b + 1:]
            for new in ((make_couple(x, u), make_couple(y, v)), (make_couple(x, v), make_couple(y, u))):
                M2 = CircularMatching(tuple(rest) + new)
                if is_feasible(M2, c):
                    yield M2


def non_quasicommute_witness(I, J):
    """For flag minors [I], [J] with column sets not weakly separated: the
    cortege and two feasible matchings whose total shifts differ.

    Starts from the greedy matching and tries every exchange of partners
    between two couples; falls back to scanning all feasible matchings.
    """
    if weakly_separated(I, J):
        raise ValueError("column sets are weakly separated")
    (A, I2), (B, J2) = _flag(I), _flag(J)
    c = Cortege(A, I2, B, J2)
    M = greedy_feasible(c)
    d = total_shift(c, M)
    for M2 in _two_couple_swaps(c, M):
        if total_shift(c, M2) != d:
            return c, M, M2
    allm = enumerate_feasible(c)
    for M1, M2 in combinations(allm, 2):
        if total_shift(c, M1) != total_shift(c, M2):
            return c, M1, M2
    raise RuntimeError("no witness found")
