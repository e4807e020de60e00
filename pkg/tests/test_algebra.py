import pytest
from hypothesis import given, strategies as st

from qminor.algebra import (CommutationTable, LaurentScalar, NCPolynomial, nc_mul_mono, poly_add,
                            poly_is_zero, poly_mul, poly_qpower_ratio, poly_scale)
from qminor.flows import qminor_det
from qminor.se_graph import grid


def bubble_normal_form(letters, table):
    """Sort a word of (generator, exponent) letters by adjacent swaps.

    Independent of the vectorised product: each swap of u^a v^b with u after
    v contributes q^(a b c(u, v)).
    """
    word = [list(x) for x in letters if x[1]]
    qp = 0
    changed = True
    while changed:
        changed = False
        k = 0
        while k + 1 < len(word):
            (u, a), (v, b) = word[k], word[k + 1]
            if u == v:
                word[k][1] = a + b
                del word[k + 1]
                if word[k][1] == 0:
                    del word[k]
                changed = True
                continue
            if table.index[u] > table.index[v]:
                qp += a * b * table.c(u, v)
                word[k], word[k + 1] = word[k + 1], word[k]
                changed = True
            k += 1
    return tuple((u, a) for u, a in word), qp


GENS = ("a", "b", "c", "d")


@st.composite
def tables(draw):
    pairs = {}
    for i in range(len(GENS)):
        for j in range(i + 1, len(GENS)):
            pairs[(GENS[i], GENS[j])] = draw(st.sampled_from([-1, 0, 1]))
    return CommutationTable(GENS, pairs)


monomials = st.dictionaries(st.sampled_from(GENS), st.integers(-2, 2).filter(bool), max_size=4)


def normal(mono, table):
    return tuple(sorted(mono.items(), key=lambda x: table.index[x[0]]))


@st.composite
def polys(draw, table):
    rows = draw(st.lists(st.tuples(monomials, st.integers(-2, 2), st.integers(-3, 3)), max_size=4))
    p = NCPolynomial.zero(table)
    for mono, e, c in rows:
        p = p + NCPolynomial.monomial(table, mono, LaurentScalar.q(e, c))
    return p


def test_swap_of_two_generators():
    t = CommutationTable(["u", "v"], {("u", "v"): 1})
    assert nc_mul_mono({"v": 1}, {"u": 1}, t) == ((("u", 1), ("v", 1)), -1)


def test_inverse_cancels():
    t = CommutationTable(["u"])
    assert nc_mul_mono({"u": 1}, {"u": -1}, t) == ((), 0)


def test_grid_2x2_product_against_bubble_sort():
    t = grid(2, 2).table
    assert t.c("t11", "t21") == 1 and t.c("t11", "t12") == 1
    mono, qp = nc_mul_mono({"t11": 1}, (("t12", 1), ("t21", 1)), t)
    want = bubble_normal_form([("t11", 1), ("t21", 1), ("t12", 1)], t)
    # t21 t12 commute, so the word t11 t21 t12 is already normal up to that swap
    assert (mono, qp) == want == ((("t11", 1), ("t12", 1), ("t21", 1)), 0)


@given(tables(), monomials, monomials)
def test_nc_mul_mono_matches_bubble_sort(t, a, b):
    got = nc_mul_mono(a, b, t)
    assert got == bubble_normal_form(list(normal(a, t)) + list(normal(b, t)), t)


@given(st.data())
def test_associativity_and_distributivity(data):
    t = data.draw(tables())
    p, r, s = (data.draw(polys(t)) for _ in range(3))
    assert (p * r) * s == p * (r * s)
    assert p * (r + s) == p * r + p * s
    assert (p + r) * s == p * s + r * s


@given(st.data())
def test_additive_inverse_and_unit(data):
    t = data.draw(tables())
    p = data.draw(polys(t))
    assert poly_is_zero(poly_add(p, poly_scale(p, -1)))
    assert poly_mul(p, NCPolynomial.constant(t)) == p
    assert poly_scale(p, LaurentScalar.q(0)) == p
    assert poly_is_zero(poly_mul(NCPolynomial.zero(t), p))


@given(st.data(), st.integers(-4, 4))
def test_qpower_ratio_recovers_shift(data, d):
    t = data.draw(tables())
    p = data.draw(polys(t))
    if p.is_zero():
        assert poly_qpower_ratio(p, p) == 0
    else:
        assert poly_qpower_ratio(p.shift(d), p) == d
        assert poly_qpower_ratio(p, p.shift(d)) == -d


def test_qpower_ratio_absent():
    t = CommutationTable(["u", "v"])
    u, v = NCPolynomial.generator(t, "u"), NCPolynomial.generator(t, "v")
    assert poly_qpower_ratio(u, v) is None
    assert poly_qpower_ratio(u + v.shift(1), u + v) is None
    assert poly_qpower_ratio(u, NCPolynomial.zero(t)) is None


def generic_table(m, n):
    names = [f"x{i}{j}" for i in range(1, m + 1) for j in range(1, n + 1)]
    pairs = {}
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            for k in range(j + 1, n + 1):
                pairs[(f"x{i}{j}", f"x{i}{k}")] = 1
            for l in range(i + 1, m + 1):
                pairs[(f"x{i}{j}", f"x{l}{j}")] = 1
    return CommutationTable(names, pairs)


def test_generic_2x2_determinant():
    t = generic_table(2, 2)
    x = [[NCPolynomial.generator(t, f"x{i}{j}") for j in (1, 2)] for i in (1, 2)]
    det = qminor_det(x, (1, 2), (1, 2), t)
    by_hand = x[0][0] * x[1][1] + (x[0][1] * x[1][0]).scale(LaurentScalar.q(1, -1))
    assert det == by_hand
    assert det.render() == "x11*x22 - q*x12*x21"


def test_laurent_scalar():
    a = LaurentScalar({1: 1, -1: -1})
    assert (a * a).terms == {2: 1, 0: -2, -2: 1}
    assert a.at_one() == 0
    assert (a - a).is_zero()
    assert a.render() == "q - q^-1"
