import pytest

from qgenus.scalars import QQ
from qgenus.series import GradedPoly, QZSeries, VarSpace
from qgenus.bundles import VirtualBundle
from qgenus.genera import (GenusInstance, a_n_series, ahat, assemble,
                           ch_delta, extract, genus_form, holomorphic_tangent,
                           aux_bundle, line_bundle_pair, make_instance,
                           tangent_bundle, todd)


def _bernoulli_plus(kmax):
    """Bernoulli numbers with B1 = +1/2, by the defining recurrence."""
    from math import comb
    b = [QQ(1)]
    for m in range(1, kmax + 1):
        s = QQ(0)
        for k in range(m):
            s += QQ(comb(m + 1, k)) * b[k]
        b.append(-s / (m + 1))
    b[1] = QQ(1, 2)
    return b


def test_ahat_empty_and_pair():
    vs = VarSpace(["x1"], ["T"], 6)
    assert ahat(vs, []) == GradedPoly.const(vs, 1)
    a = ahat(vs, ["x1"])
    assert a.constant_term() == 1
    assert a.coefficient((2,)) == QQ(-1, 24)
    assert a.coefficient((4,)) == QQ(7, 5760)
    assert a.coefficient((1,)) == 0 and a.coefficient((3,)) == 0


def test_ahat_multiplicative():
    vs = VarSpace(["x1", "x2"], ["T", "T"], 4)
    assert ahat(vs, ["x1", "x2"]) == ahat(vs, ["x1"]) * ahat(vs, ["x2"])


def test_todd_bernoulli_oracle():
    vs = VarSpace(["x1"], ["T"], 8)
    t = todd(vs, ["x1"])
    b = _bernoulli_plus(8)
    fact = 1
    for k in range(9):
        if k:
            fact *= k
        assert t.coefficient((k,)) == b[k] / fact
    assert t.coefficient((1,)) == QQ(1, 2)
    assert t.coefficient((2,)) == QQ(1, 12)
    assert t.coefficient((3,)) == 0
    assert t.coefficient((4,)) == QQ(-1, 720)


def test_todd_reflection_identity():
    # Td(x) * Td(-x) equals the square of the A-hat pair factor
    vs = VarSpace(["x1"], ["T"], 8)
    tp = todd(vs, ["x1"])
    x = GradedPoly.var(vs, "x1")
    tm_series = GradedPoly.zero(vs)
    term = GradedPoly.const(vs, 1)
    fact = 1
    for k in range(9):
        if k:
            fact *= k
        tm_series = tm_series + term.scale(QQ(1, fact * (k + 1)))
        term = term * x
    tm = tm_series.inverse()  # (-x)/(1 - e^x) expanded directly
    a = ahat(vs, ["x1"])
    assert tp * tm == a * a


def test_ch_delta():
    vs = VarSpace(["x1", "x2"], ["T", "T"], 4)
    assert ch_delta(vs, []) == GradedPoly.const(vs, 1)
    d1 = ch_delta(vs, ["x1"])
    assert d1.constant_term() == 2
    assert d1.coefficient((2, 0)) == QQ(1, 4)
    assert d1.coefficient((4, 0)) == QQ(1, 192)
    assert ch_delta(vs, ["x1", "x2"]).constant_term() == 4


def test_instance_validation():
    with pytest.raises(ValueError):
        make_instance("Q", 4)
    with pytest.raises(ValueError):
        make_instance("Qtilde", 6)
    with pytest.raises(ValueError):
        make_instance("Qhat", 6)
    with pytest.raises(ValueError):
        make_instance("Qc", 8)
    with pytest.raises(ValueError):
        make_instance("Q1", 5, j=1)
    with pytest.raises(ValueError):
        make_instance("Q1", 6, j=2)  # r+j odd
    with pytest.raises(ValueError):
        make_instance("nope", 6)
    inst = make_instance("Q", 6)
    assert inst.extract_degree == 8 and inst.weight == 4
    assert inst.pair_names == ("x1", "x2", "x3")
    inst = make_instance("Qtilde", 5)
    assert inst.extract_degree == 8 and len(inst.pair_names) == 2
    inst = make_instance("Qhat", 7)
    assert inst.extract_degree == 8 and len(inst.pair_names) == 3
    inst = make_instance("Ell", 6, l=2)
    assert inst.d == 4 and inst.extract_degree == 8
    inst = make_instance("Elltilde", 5, l=2, zeta_cap=4)
    assert inst.d == 4 and len(inst.pair_names) == 2 and inst.zero_root


def _a0_a1_bundles(inst):
    tt = tangent_bundle(inst).tilde()
    lam2 = tt.lambda_power(2)
    a0 = 2 * tt + lam2 + tt.tensor(tt) + tt.sym_power(2)
    a1 = tt.lambda_power(4) + lam2.tensor(tt) + tt.tensor(tt) \
        + tt.sym_power(2) + tt
    return tt, a0, a1


@pytest.mark.parametrize("dim,const", [(6, 16), (10, 64)])
def test_assembled_Q_matches_printed_expansion(dim, const):
    inst = make_instance("Q", dim)
    series = assemble(inst)
    tt, a0, a1 = _a0_a1_bundles(inst)
    one = GradedPoly.const(inst.vs, 1)
    q0 = genus_form(inst, one, with_delta=True) \
        + genus_form(inst, one).scale(const)
    assert series.coefficient(0) == q0
    q1 = genus_form(inst, tt.ch(), with_delta=True).scale(2) \
        + genus_form(inst, (tt + tt.lambda_power(2)).ch()).scale(const)
    assert series.coefficient(1) == q1
    q2 = genus_form(inst, a0.ch(), with_delta=True) \
        + genus_form(inst, a1.ch()).scale(const)
    assert series.coefficient(2) == q2


def test_assembled_Qtilde_dim5_q0():
    inst = make_instance("Qtilde", 5)
    series = assemble(inst)
    one = GradedPoly.const(inst.vs, 1)
    q0 = genus_form(inst, one, with_delta=True) + genus_form(inst, one).scale(8)
    assert series.coefficient(0) == q0


def test_uniform_sector_weight_rule():
    # q^0 constant of the integrand equals the spinor constant 2^(pairs)
    # plus twice the 2^(pairs) sector weight
    from qgenus.genera import assemble_integrand
    for gid, dim, j in (("Q", 6, None), ("Qtilde", 5, None), ("Qhat", 7, None),
                        ("Q1", 4, 2), ("Q2", 5, 2)):
        inst = make_instance(gid, dim, j=j)
        np = len(inst.pair_names)
        got = assemble_integrand(inst).coefficient(0).constant_term()
        assert got == 2 ** np + 2 ** (np + 1)


def test_assembled_Qc_matches_printed_expansion_dim6():
    inst = make_instance("Qc", 6)
    series = assemble(inst)
    vs = inst.vs
    one = GradedPoly.const(vs, 1)
    tt = tangent_bundle(inst).tilde()
    lt = line_bundle_pair(inst).tilde()
    assert series.coefficient(0) == genus_form(inst, one)
    b1 = tt + 2 * lt.lambda_power(2) - lt.tensor(lt) + lt
    assert series.coefficient(1) == genus_form(inst, b1.ch())
    b2 = (tt.sym_power(2) + tt
          + (2 * lt.lambda_power(2) - lt.tensor(lt) + lt).tensor(tt)
          + lt.lambda_power(2).tensor(lt.lambda_power(2))
          + 2 * lt.lambda_power(4)
          - 2 * lt.tensor(lt.lambda_power(3))
          + 2 * lt.tensor(lt.lambda_power(2))
          - lt.tensor(lt).tensor(lt)
          + lt + lt.lambda_power(2))
    assert series.coefficient(2) == genus_form(inst, b2.ch())


def test_assembled_Qcstar_matches_printed_expansion_dim6():
    inst = make_instance("Qcstar", 6)
    series = assemble(inst)
    vs = inst.vs
    tt = tangent_bundle(inst).tilde()
    lt = line_bundle_pair(inst).tilde()
    assert series.coefficient(0) == genus_form(inst, GradedPoly.const(vs, 1))
    assert series.coefficient(1) == genus_form(inst, (tt - lt).ch())
    b4 = lt.lambda_power(2) - lt - lt.tensor(tt) + tt.sym_power(2) + tt
    assert series.coefficient(2) == genus_form(inst, b4.ch())


def test_ell_l0_reduces_to_todd():
    inst = make_instance("Ell", 4, l=0)  # d = 3, two holomorphic roots
    series = assemble(inst)
    q0 = series.coefficient(0).zeta_coefficient(0)
    assert q0 == genus_form(inst, GradedPoly.const(inst.vs, 1))


def test_a0_q0_is_todd_chi_y_form():
    inst = make_instance("Ell", 6, l=2, zeta_cap=2)
    a0 = a_n_series(inst, 0)
    w = aux_bundle(inst)
    lam = w.dual().lambda_powers(2)
    lm1 = lam[0] - lam[1] + lam[2]
    assert a0.coefficient(0) == genus_form(inst, lm1.ch())


def test_a0_q1_uses_a2_twist():
    inst = make_instance("Ell", 6, l=2, zeta_cap=2)
    a0 = a_n_series(inst, 0)
    t = holomorphic_tangent(inst)
    w = aux_bundle(inst)
    lam = w.dual().lambda_powers(2)
    lm1 = lam[0] - lam[1] + lam[2]
    m = inst.d - 1 - inst.l
    a2 = t + t.dual() - VirtualBundle.trivial(inst.vs, 2 * m) - w - w.dual()
    assert a0.coefficient(1) == genus_form(inst, lm1.tensor(a2).ch())


def test_extract_op():
    vs = VarSpace(["x1"], ["T"], 3)
    p = GradedPoly.const(vs, 1) + GradedPoly.var(vs, "x1", 2)
    s = QZSeries.from_poly(p, 24)
    assert extract(s, 4).coefficient(0) == GradedPoly.var(vs, "x1", 2)
    assert extract(s, 2).coefficient(0).is_zero()
    with pytest.raises(ValueError):
        extract(s, 3)
    with pytest.raises(ValueError):
        extract(s, 40)
