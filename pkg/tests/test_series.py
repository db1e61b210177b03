import pytest
from hypothesis import given, settings, strategies as st

from qgenus.scalars import QQ, Scalar, I, PI
from qgenus.series import VarSpace, GradedPoly, QZSeries, eisenstein, euler_product


def space(degree_cap=4, zeta_cap=0, nvars=2):
    names = ["x%d" % (i + 1) for i in range(nvars)]
    groups = ["T"] * nvars
    if zeta_cap:
        names.append("zeta")
        groups.append("Z")
    return VarSpace(names, groups, degree_cap, zeta_cap)


def var(vs, name, power=1, coeff=1):
    return GradedPoly.var(vs, name, power, coeff)


# ---- GradedPoly -------------------------------------------------------------


def test_difference_of_squares():
    vs = space()
    x1 = var(vs, "x1")
    assert (1 + x1) * (1 - x1) == 1 - x1 * x1


def test_cap_truncates_product_to_zero():
    vs = space(degree_cap=2)
    x1, x2 = var(vs, "x1"), var(vs, "x2")
    assert ((x1 + x2) * (x1 * x2)).is_zero()


def test_scalar_coefficients_square():
    vs = space()
    iota = PI * I
    p = GradedPoly.const(vs, 1) + var(vs, "x1").scale(iota)
    sq = p * p
    assert sq.constant_term() == 1
    assert sq.coefficient((1, 0)) == 2 * iota
    assert sq.coefficient((2, 0)) == -(PI * PI)


def test_exp_examples():
    vs = space(degree_cap=3)
    assert GradedPoly.zero(vs).exp() == GradedPoly.const(vs, 1)
    x1 = var(vs, "x1")
    e = x1.exp()
    assert e.coefficient((0, 0)) == 1
    assert e.coefficient((1, 0)) == 1
    assert e.coefficient((2, 0)) == QQ(1, 2)
    assert e.coefficient((3, 0)) == QQ(1, 6)


def test_exp_is_homomorphism():
    vs = space(degree_cap=5)
    x1, x2 = var(vs, "x1"), var(vs, "x2")
    assert (x1 + x2).exp() == x1.exp() * x2.exp()


def test_exp_requires_zero_constant():
    vs = space()
    with pytest.raises(ValueError):
        (GradedPoly.const(vs, 1)).exp()


def test_invert_geometric_series():
    vs = space(degree_cap=3)
    x1 = var(vs, "x1")
    inv = (1 - x1).inverse()
    assert inv == 1 + x1 + x1 ** 2 + x1 ** 3


def test_invert_constant():
    vs = space()
    assert GradedPoly.const(vs, 2).inverse() == GradedPoly.const(vs, QQ(1, 2))


def test_invert_of_exp():
    vs = space(degree_cap=5)
    x1 = var(vs, "x1")
    assert x1.exp().inverse() == (-x1).exp()
    assert x1.exp() * (-x1).exp() == 1


def test_invert_requires_unit():
    vs = space()
    with pytest.raises(ValueError):
        var(vs, "x1").inverse()


def test_mismatched_universes_rejected():
    a = GradedPoly.const(space(nvars=2), 1)
    b = GradedPoly.const(space(nvars=3), 1)
    with pytest.raises(ValueError):
        a * b


def test_zeta_grading_and_extraction():
    vs = space(degree_cap=3, zeta_cap=2)
    z = var(vs, "zeta")
    x1 = var(vs, "x1")
    p = (1 + z * x1) ** 3
    # zeta cap 2 kills the cubic term
    assert p.zeta_coefficient(3).is_zero()
    assert p.zeta_coefficient(2) == (3 * x1 * x1).extract(2)
    assert p.zeta_coefficient(1) == 3 * x1
    q = 1 + x1 + x1 * x1
    assert q.extract(2) == x1 * x1
    assert q.extract(1) == x1


small_rationals = st.builds(QQ, st.integers(-6, 6), st.integers(1, 4))


def random_poly(vs, draw_terms):
    p = GradedPoly.zero(vs)
    for exps, c in draw_terms:
        p = p + GradedPoly(vs, {vs.pack(exps): c})
    return p


@st.composite
def polys(draw, nvars=2, degree_cap=4):
    vs = space(degree_cap=degree_cap, nvars=nvars)
    n = draw(st.integers(0, 5))
    terms = []
    for _ in range(n):
        exps = tuple(draw(st.integers(0, 2)) for _ in range(nvars))
        terms.append((exps, draw(small_rationals)))
    return random_poly(vs, terms)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_truncation_closure(a, b):
    vs = a.vs
    for p in (a + b, a * b, a - b):
        for k in p.terms:
            assert VarSpace.root_degree(k) <= vs.degree_cap
            assert all(e <= 31 for e in vs.unpack(k))
        for ccoef in p.terms.values():
            assert ccoef


# ---- QZSeries ---------------------------------------------------------------


def qone(vs, qcap24=96):
    return QZSeries.one(vs, qcap24)


def test_half_power_product():
    vs = space()
    q12 = QZSeries.qpow(vs, 12, 96)
    assert q12 * q12 == QZSeries.qpow(vs, 24, 96)


def test_q24_product():
    vs = space()
    a = QZSeries.qpow(vs, 1, 96)
    b = QZSeries.qpow(vs, 23, 96)
    assert a * b == QZSeries.qpow(vs, 24, 96)


def test_geometric_q_series():
    vs = space()
    qcap = 96
    geo = QZSeries(vs, qcap, {24 * n: GradedPoly.const(vs, 1) for n in range(5)})
    one_minus_q = QZSeries(vs, qcap, {0: GradedPoly.const(vs, 1),
                                      24: GradedPoly.const(vs, -1)})
    assert one_minus_q * geo == qone(vs)
    assert geo == one_minus_q.inverse()


def test_series_pow_negative():
    vs = space()
    c = euler_product(vs, 4)
    assert c ** 0 == qone(vs)
    assert c ** -2 * c ** 2 == qone(vs)


def test_eisenstein_paper_values():
    vs = space()
    e4 = eisenstein(vs, 4, 3)
    assert [e4.coefficient(n).constant_term() for n in range(4)] == [1, 240, 2160, 6720]
    e6 = eisenstein(vs, 6, 3)
    assert [e6.coefficient(n).constant_term() for n in range(4)] == [1, -504, -16632, -122976]


def test_eisenstein_e2_divisor_oracle():
    # independent oracle: sigma_1 by explicit divisor enumeration
    def sigma1(n):
        return sum(d for d in range(1, n + 1) if n % d == 0)

    vs = space()
    e2 = eisenstein(vs, 2, 6)
    for n in range(1, 7):
        assert e2.coefficient(n).constant_term() == -24 * sigma1(n)
    assert [e2.coefficient(n).constant_term() for n in range(4)] == [1, -24, -72, -96]


def test_eisenstein_rejects_odd_weight():
    with pytest.raises(ValueError):
        eisenstein(space(), 3, 4)


def test_euler_product_pentagonal_oracle():
    # c = sum_k (-1)^k q^(k(3k-1)/2) over all integers k (Euler)
    vs = space()
    cap = 12
    c = euler_product(vs, cap)
    expected = {}
    for k in range(-10, 11):
        e = k * (3 * k - 1) // 2
        if 0 <= e <= cap:
            expected[e] = expected.get(e, 0) + (-1) ** k
    for n in range(cap + 1):
        assert c.coefficient(n).constant_term() == expected.get(n, 0)


def test_eta24_leading_coefficient():
    vs = space()
    c = euler_product(vs, 4)
    eta24_over_q = c ** 24
    assert eta24_over_q.coefficient(0).constant_term() == 1


def test_rational_exponent_product_matches_q24_substitution():
    # multiply on the 1/24 lattice, then compare against integer-exponent
    # arithmetic after substituting q -> q^24
    vs = space()
    qcap = 96
    a = QZSeries(vs, qcap, {1: GradedPoly.const(vs, 2), 12: GradedPoly.const(vs, 3)})
    b = QZSeries(vs, qcap, {11: GradedPoly.const(vs, 5), 23: GradedPoly.const(vs, 7)})
    ab = a * b
    # integer-exponent model: dict keyed by raw 24ths
    conv = {}
    for ea, ca in ((1, 2), (12, 3)):
        for eb, cb in ((11, 5), (23, 7)):
            if ea + eb <= qcap:
                conv[ea + eb] = conv.get(ea + eb, 0) + ca * cb
    for e, c in conv.items():
        assert ab.coeff24(e).constant_term() == c


def test_integer_exponent_check():
    vs = space()
    assert QZSeries.qpow(vs, 24, 96).has_integer_exponents()
    assert not QZSeries.qpow(vs, 12, 96).has_integer_exponents()
