"""Laurent polynomials in q and quasi-commuting noncommutative polynomials.

Generators u, v of a :class:`CommutationTable` satisfy ``u v = q^c(u,v) v u``
with ``c`` antisymmetric and valued in {-1, 0, 1}.  Polynomials are kept in
normal form: each monomial is a product of generator powers in ascending
table order, and the q-powers produced by reordering are moved into the
scalar coefficient.

Internally a polynomial is three numpy arrays (exponent rows, q-exponents and
integer coefficients) sorted and merged, which makes bulk products cheap.
"""
from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

# A monomial in normal form: ((generator, exponent), ...) ascending in table order.
NCMonomial = tuple


class LaurentScalar:
    """Element of Z[q, q^-1], stored as {exponent: coefficient}."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms = {int(k): int(c) for k, c in (terms or {}).items() if c != 0}

    @classmethod
    def q(cls, k: int = 1, coef: int = 1) -> "LaurentScalar":
        return cls({k: coef})

    @classmethod
    def coerce(cls, x) -> "LaurentScalar":
        if isinstance(x, LaurentScalar):
            return x
        if isinstance(x, (int, np.integer)):
            return cls({0: int(x)})
        raise TypeError(f"cannot use {type(x).__name__} as a Laurent scalar")

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def at_one(self) -> int:
        return sum(self._terms.values())

    def __add__(self, other):
        other = LaurentScalar.coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-LaurentScalar.coerce(other))

    def __mul__(self, other):
        other = LaurentScalar.coerce(other)
        out: dict[int, int] = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                out[a + b] = out.get(a + b, 0) + ca * cb
        return LaurentScalar(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            other = LaurentScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, reverse=True):
            c = self._terms[k]
            body = _qpow_str(k)
            if abs(c) != 1:
                body = str(abs(c)) if k == 0 else f"{abs(c)}*{body}"
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentScalar({self.render()})"


def _qpow_str(k: int) -> str:
    if k == 0:
        return "1"
    if k == 1:
        return "q"
    return f"q^{k}"


class CommutationTable:
    """Generators in a fixed total order together with the exponents c(u, v).

    ``pairs`` maps (u, v) to c(u, v); the value for (v, u) is filled in as
    -c(u, v).  Missing pairs commute.
    """

    def __init__(self, order: Iterable[str], pairs: Mapping[tuple[str, str], int] | None = None):
        self.order = tuple(order)
        if len(set(self.order)) != len(self.order):
            raise ValueError("duplicate generator names")
        self.index = {g: i for i, g in enumerate(self.order)}
        size = len(self.order)
        mat = np.zeros((size, size), dtype=np.int64)
        for (u, v), c in (pairs or {}).items():
            if c not in (-1, 0, 1):
                raise ValueError(f"c({u},{v}) = {c} is not in {{-1, 0, 1}}")
            if u == v and c != 0:
                raise ValueError(f"c({u},{u}) must be 0")
            a, b = self.index[u], self.index[v]
            if mat[a, b] not in (0, c) or mat[b, a] not in (0, -c):
                raise ValueError(f"inconsistent entries for ({u}, {v})")
            mat[a, b], mat[b, a] = c, -c
        self.matrix = mat
        # entries with u after v in the order: the pairs that get swapped
        self.lower = np.tril(mat, -1)

    def __len__(self):
        return len(self.order)

    def c(self, u: str, v: str) -> int:
        return int(self.matrix[self.index[u], self.index[v]])

    def vector(self, mono) -> np.ndarray:
        """Exponent vector of a monomial given as a mapping or (gen, exp) pairs."""
        items = mono.items() if isinstance(mono, Mapping) else mono
        vec = np.zeros(len(self.order), dtype=np.int64)
        for gname, e in items:
            if gname not in self.index:
                raise KeyError(f"unknown generator {gname!r}")
            vec[self.index[gname]] += e
        return vec

    def monomial(self, vec) -> NCMonomial:
        return tuple((self.order[i], int(e)) for i, e in enumerate(vec) if e != 0)

    def reorder_power(self, a: np.ndarray, b: np.ndarray) -> int:
        """q-power picked up when rewriting (normal a)(normal b) in normal form."""
        return int(a @ self.lower @ b)

    def same_as(self, other: "CommutationTable") -> bool:
        return self is other or (
            self.order == other.order and np.array_equal(self.matrix, other.matrix)
        )


def nc_mul_mono(a, b, table: CommutationTable) -> tuple[NCMonomial, int]:
    """Product of two normal-form monomials: returns (normal form, q-power)."""
    va, vb = table.vector(a), table.vector(b)
    return table.monomial(va + vb), table.reorder_power(va, vb)


def _canonical(exps, qexp, coef):
    g = exps.shape[1]
    if len(coef) == 0:
        return (np.zeros((0, g), dtype=np.int64), np.zeros(0, dtype=np.int64),
                np.zeros(0, dtype=np.int64))
    keys = np.column_stack([exps, qexp])
    order = np.lexsort(keys.T[::-1])
    keys, coef = keys[order], coef[order]
    new = np.ones(len(coef), dtype=bool)
    new[1:] = np.any(keys[1:] != keys[:-1], axis=1)
    starts = np.flatnonzero(new)
    sums = np.add.reduceat(coef, starts)
    keys = keys[starts]
    keep = sums != 0
    keys = keys[keep]
    return (np.ascontiguousarray(keys[:, :g]), np.ascontiguousarray(keys[:, g]),
            sums[keep])


class NCPolynomial:
    """Finite sum of scalar * normal-form monomial over a commutation table."""

    __slots__ = ("table", "exps", "qexp", "coef")

    # rows per chunk when forming products, to bound memory
    CHUNK = 1 << 20

    def __init__(self, table: CommutationTable, exps=None, qexp=None, coef=None, *, canonical=False):
        self.table = table
        g = len(table)
        if exps is None:
            exps = np.zeros((0, g), dtype=np.int64)
            qexp = np.zeros(0, dtype=np.int64)
            coef = np.zeros(0, dtype=np.int64)
        exps = np.asarray(exps, dtype=np.int64).reshape(-1, g)
        qexp = np.asarray(qexp, dtype=np.int64).ravel()
        coef = np.asarray(coef, dtype=np.int64).ravel()
        if not canonical:
            exps, qexp, coef = _canonical(exps, qexp, coef)
        self.exps, self.qexp, self.coef = exps, qexp, coef

    # constructors
    @classmethod
    def zero(cls, table):
        return cls(table)

    @classmethod
    def constant(cls, table, scalar=1):
        s = LaurentScalar.coerce(scalar)
        ks = list(s.terms.items())
        return cls(table, np.zeros((len(ks), len(table))), [k for k, _ in ks], [c for _, c in ks])

    @classmethod
    def monomial(cls, table, mono, scalar=1):
        vec = table.vector(mono)
        return cls.constant(table, scalar)._times_vector(vec)

    @classmethod
    def generator(cls, table, name, exp=1):
        return cls.monomial(table, {name: exp})

    @classmethod
    def from_rows(cls, table, rows):
        """Build from (exponent vector, q-exponent, coefficient) rows."""
        rows = list(rows)
        g = len(table)
        if not rows:
            return cls(table)
        return cls(table, np.array([r[0] for r in rows]).reshape(-1, g),
                   [r[1] for r in rows], [r[2] for r in rows])

    def _times_vector(self, vec):
        return NCPolynomial(self.table, self.exps + vec, self.qexp + self.exps @ self.table.lower @ vec,
                            self.coef, canonical=False)

    def _check(self, other):
        if not self.table.same_as(other.table):
            raise ValueError("polynomials over different commutation tables")

    def __len__(self):
        return len(self.coef)

    def is_zero(self) -> bool:
        return len(self.coef) == 0

    def __add__(self, other):
        if not isinstance(other, NCPolynomial):
            other = NCPolynomial.constant(self.table, other)
        self._check(other)
        return NCPolynomial(self.table, np.vstack([self.exps, other.exps]),
                            np.concatenate([self.qexp, other.qexp]),
                            np.concatenate([self.coef, other.coef]))

    __radd__ = __add__

    def __neg__(self):
        return NCPolynomial(self.table, self.exps, self.qexp, -self.coef, canonical=True)

    def __sub__(self, other):
        if not isinstance(other, NCPolynomial):
            other = NCPolynomial.constant(self.table, other)
        return self + (-other)

    def shift(self, d: int) -> "NCPolynomial":
        """Multiply by q^d."""
        return NCPolynomial(self.table, self.exps, self.qexp + d, self.coef, canonical=True)

    def scale(self, s) -> "NCPolynomial":
        s = LaurentScalar.coerce(s)
        out = NCPolynomial.zero(self.table)
        for k, c in s.terms.items():
            out = out + NCPolynomial(self.table, self.exps, self.qexp + k, self.coef * c, canonical=True)
        return out

    def __mul__(self, other):
        if not isinstance(other, NCPolynomial):
            return self.scale(other)
        self._check(other)
        g = len(self.table)
        if self.is_zero() or other.is_zero():
            return NCPolynomial.zero(self.table)
        B, bq, bc = other.exps, other.qexp, other.coef
        AL = self.exps @ self.table.lower
        step = max(1, self.CHUNK // max(1, len(bc)))
        acc = None
        for s in range(0, len(self.coef), step):
            A = self.exps[s:s + step]
            exps = (A[:, None, :] + B[None, :, :]).reshape(-1, g)
            qexp = (self.qexp[s:s + step, None] + bq[None, :] + AL[s:s + step] @ B.T).ravel()
            coef = (self.coef[s:s + step, None] * bc[None, :]).ravel()
            part = NCPolynomial(self.table, exps, qexp, coef)
            acc = part if acc is None else acc + part
        return acc

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return (self.table.same_as(other.table) and np.array_equal(self.exps, other.exps)
                and np.array_equal(self.qexp, other.qexp) and np.array_equal(self.coef, other.coef))

    __hash__ = None

    @property
    def terms(self) -> dict[NCMonomial, LaurentScalar]:
        out: dict[NCMonomial, dict[int, int]] = {}
        for row, k, c in zip(self.exps, self.qexp, self.coef):
            out.setdefault(self.table.monomial(row), {})[int(k)] = int(c)
        return {m: LaurentScalar(t) for m, t in out.items()}

    def at_one(self) -> dict[tuple, int]:
        """Specialize q to 1: {exponent tuple: integer coefficient}."""
        out: dict[tuple, int] = {}
        for row, c in zip(self.exps, self.coef):
            key = tuple(int(x) for x in row)
            out[key] = out.get(key, 0) + int(c)
        return {k: v for k, v in out.items() if v}

    def render(self) -> str:
        """Canonical text: monomials in descending exponent order."""
        if self.is_zero():
            return "0"
        groups = self.terms
        pieces = []
        for mono in sorted(groups, key=lambda m: tuple(self.table.vector(m)), reverse=True):
            scal = groups[mono]
            word = "*".join(g if e == 1 else f"{g}^{e}" for g, e in mono)
            ts = scal.terms
            if len(ts) == 1:
                (k, c), = ts.items()
                sign = "-" if c < 0 else "+"
                body = _qpow_str(k)
                if abs(c) != 1:
                    body = str(abs(c)) if k == 0 else f"{abs(c)}*{body}"
                if word:
                    body = word if body == "1" else f"{body}*{word}"
            else:
                sign = "+"
                body = f"({scal.render()})" + (f"*{word}" if word else "")
            pieces.append((sign, body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"NCPolynomial({self.render()})"


def poly_add(p: NCPolynomial, r: NCPolynomial) -> NCPolynomial:
    return p + r


def poly_mul(p: NCPolynomial, r: NCPolynomial) -> NCPolynomial:
    return p * r


def poly_scale(p: NCPolynomial, s) -> NCPolynomial:
    return p.scale(s)


def poly_is_zero(p: NCPolynomial) -> bool:
    return p.is_zero()


def poly_qpower_ratio(p: NCPolynomial, r: NCPolynomial) -> int | None:
    """The integer d with p = q^d r, or None when no such d exists.

    Two zero polynomials give 0.
    """
    p._check(r)
    if p.is_zero() and r.is_zero():
        return 0
    if len(p) != len(r) or not np.array_equal(p.exps, r.exps) or not np.array_equal(p.coef, r.coef):
        return None
    diff = p.qexp - r.qexp
    if np.all(diff == diff[0]):
        return int(diff[0])
    return None
