"""Formal q-expansions of the Jacobi theta products with line-root arguments.

The trigonometric prefactors are rewritten through hyperbolic series of the
root form (sin maps to sinh of the half-root, cos to cosh), which keeps every
coefficient rational; the leftover constant factors of that rewriting cancel
in all the product identities checked against these series.
"""

from __future__ import annotations

from .scalars import QQ
from .series import GradedPoly, QZSeries, VarSpace, euler_product


def _halfroot(vs, root) -> GradedPoly:
    if isinstance(root, dict):
        root = {n: QQ(c) for n, c in root.items()}
        return GradedPoly.linear_form(vs, {n: c / 2 for n, c in root.items()})
    return GradedPoly(vs, {k: c / 2 for k, c in root.terms.items()})


def _sinh_over_half(vs, half: GradedPoly) -> GradedPoly:
    """sinh(h)/h as an even series in the form h."""
    out = GradedPoly.const(vs, 1)
    term = GradedPoly.const(vs, 1)
    fact = 1
    k = 1
    while True:
        term = term * half * half
        if not term:
            break
        fact *= (2 * k) * (2 * k + 1)
        out = out + term.scale(QQ(1, fact))
        k += 1
    return out


def _tails(vs, root, q_cap, plus: bool, half_shift: bool) -> QZSeries:
    """prod over n of (1 -+ q^e exp(root))(1 -+ q^e exp(-root)) with
    e = n or n-1/2."""
    qcap24 = 24 * q_cap
    pos = GradedPoly.linear_form(vs, root) if isinstance(root, dict) else root
    ep = pos.exp()
    em = (-pos).exp()
    sign = QQ(1) if plus else QQ(-1)
    out = QZSeries.one(vs, qcap24)
    n = 1
    while True:
        e24 = 24 * n - (12 if half_shift else 0)
        if e24 > qcap24:
            break
        for p in (ep, em):
            out = out * QZSeries(vs, qcap24, {
                0: GradedPoly.const(vs, 1), e24: p.scale(sign)})
        n += 1
    return out


def theta_over_v(vs: VarSpace, root, q_cap: int) -> QZSeries:
    """theta(V)/V: q^(1/8) * (sinh(V/2)/(V/2)) * c * tails, exact over Q."""
    half = _halfroot(vs, root)
    lead = QZSeries.from_poly(_sinh_over_half(vs, half), 24 * q_cap, 3)
    return lead * euler_product(vs, q_cap) * _tails(vs, root, q_cap, False, False)


def theta_q(vs: VarSpace, root, q_cap: int) -> QZSeries:
    """theta(V) = 2 q^(1/8) sinh(V/2) c prod (1-q^n e^V)(1-q^n e^-V)."""
    half = _halfroot(vs, root)
    sinh = (half.exp() - (-half).exp()).scale(QQ(1, 2))
    lead = QZSeries.from_poly(sinh.scale(2), 24 * q_cap, 3)
    return lead * euler_product(vs, q_cap) * _tails(vs, root, q_cap, False, False)


def theta1_q(vs: VarSpace, root, q_cap: int) -> QZSeries:
    half = _halfroot(vs, root)
    cosh = (half.exp() + (-half).exp())
    lead = QZSeries.from_poly(cosh, 24 * q_cap, 3)
    return lead * euler_product(vs, q_cap) * _tails(vs, root, q_cap, True, False)


def theta2_q(vs: VarSpace, root, q_cap: int) -> QZSeries:
    return euler_product(vs, q_cap) * _tails(vs, root, q_cap, False, True)


def theta3_q(vs: VarSpace, root, q_cap: int) -> QZSeries:
    return euler_product(vs, q_cap) * _tails(vs, root, q_cap, True, True)


def theta_prime0_q(vs: VarSpace, q_cap: int) -> QZSeries:
    """Leading V-derivative of theta at V=0: q^(1/8) c^3 (the eta cube)."""
    return QZSeries.qpow(vs, 3, 24 * q_cap) * euler_product(vs, q_cap) ** 3


def eta_power(vs: VarSpace, m: int, q_cap: int) -> QZSeries:
    """eta^m = q^(m/24) c^m for m >= 0."""
    if m < 0:
        raise ValueError("negative eta powers are not on the q lattice here")
    return QZSeries.qpow(vs, m, 24 * q_cap) * euler_product(vs, q_cap) ** m
