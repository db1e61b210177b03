"""Chern characters of the q-indexed tensor-product bundles.

Every sector is a product of elementary factors attached to single lines:
  S-factor at t = s*q^e:      sum_k s^k q^(k e) exp(k*root)
  Lambda-factor at t = s*q^e: 1 + s q^e exp(root)
Negative multiplicities swap the two shapes.  Infinite products truncate at
the q cap; factors whose leading exponent exceeds the cap are identity.

Factors are grouped per line root before multiplying, so intermediate
products stay as small as the variable support allows.
"""

from __future__ import annotations

from .scalars import QQ
from .series import GradedPoly, QZSeries, VarSpace
from .bundles import VirtualBundle, LineElement, ch_line


def line_factor(vs, root, kind: str, e24: int, sign: int, qcap24: int) -> QZSeries:
    """ch of S_t or Lambda_t of a single line with t = sign * q^(e24/24)."""
    if kind == "L":
        f = QZSeries.one(vs, qcap24)
        if e24 <= qcap24:
            f = f + QZSeries.from_poly(
                ch_line(vs, root).scale(sign), qcap24, e24)
        return f
    if kind == "S":
        if e24 <= 0:
            raise ValueError("S-factor requires a positive q exponent")
        terms = {0: GradedPoly.const(vs, 1)}
        k = 1
        while k * e24 <= qcap24:
            terms[k * e24] = ch_line(
                vs, tuple(QQ(k) * c for c in root)).scale(sign ** k)
            k += 1
        return QZSeries(vs, qcap24, terms)
    raise ValueError("unknown factor kind %r" % kind)


def _support(root):
    return tuple(i for i, c in enumerate(root) if c)


def product_over_lines(vs, factor_specs, qcap24: int) -> QZSeries:
    """Multiply line factors grouped by variable support.

    factor_specs: iterable of (root, kind, e24, sign, power).
    """
    groups = {}
    order = []
    for root, kind, e24, sign, power in factor_specs:
        key = _support(root)
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append((root, kind, e24, sign, power))
    out = QZSeries.one(vs, qcap24)
    for key in sorted(order):
        acc = QZSeries.one(vs, qcap24)
        for root, kind, e24, sign, power in groups[key]:
            f = line_factor(vs, root, kind, e24, sign, qcap24)
            acc = acc * (f if power == 1 else f ** power)
        out = out * acc
    return out


def sym_lambda_series(v: VirtualBundle, kind: str, t_exp, sign: int,
                      q_cap: int) -> QZSeries:
    """ch(S_t(v)) or ch(Lambda_t(v)) with t = sign*q^t_exp, t_exp rational.

    kind 'S' or 'L'; negative line multiplicities use Lambda_t(-L)=1/Lambda_t(L)
    and S_t(-L) = Lambda_(-t)(L).
    """
    if kind not in ("S", "L"):
        raise ValueError("kind must be 'S' or 'L'")
    if sign not in (1, -1):
        raise ValueError("sign must be +-1")
    e = QQ(t_exp) * 24
    if e != int(e):
        raise ValueError("t exponent must lie on the 1/24 lattice")
    e24 = int(e)
    qcap24 = 24 * q_cap
    specs = []
    for root, mult in v.lines.items():
        if mult > 0:
            specs.append((root, kind, e24, sign, mult))
        else:
            # swap shape and sign for the inverse factors
            if kind == "L":
                specs.append((root, "S", e24, -sign, -mult))
            else:
                specs.append((root, "L", e24, -sign, -mult))
    return product_over_lines(v.vs, specs, qcap24)


# ---- Witten-type sectors ---------------------------------------------------


def _tilde_specs(roots, kind, e24, sign, rank):
    """Factor specs for S_t/Lambda_t of (sum of lines) - rank*trivial."""
    specs = [(r, kind, e24, sign, 1) for r in roots]
    zero = tuple(QQ(0) for _ in roots[0])
    if kind == "L":
        specs.append((zero, "S", e24, -sign, rank))
    else:
        specs.append((zero, "L", e24, -sign, rank))
    return specs


def witten_sector(vs: VarSpace, kind: str, pair_names, l_name=None,
                  q_cap: int = 4) -> QZSeries:
    """ch of the infinite tensor product for one sector.

    kind: 'theta1' | 'theta2' | 'theta3' over the reduced complexified
    tangent roots, or 'theta_c' | 'theta_c_star' which add the line-bundle
    sectors over the reduced L_R x C (roots +-u).
    """
    qcap24 = 24 * q_cap
    troots = []
    for n in pair_names:
        troots.append(LineElement(vs, {n: 1}).coeffs)
        troots.append(LineElement(vs, {n: -1}).coeffs)
    specs = []
    if troots:
        rank = len(troots)
        for n in range(1, q_cap + 1):
            specs += _tilde_specs(troots, "S", 24 * n, 1, rank)
    if kind in ("theta1", "theta2", "theta3"):
        if troots:
            if kind == "theta1":
                for m in range(1, q_cap + 1):
                    specs += _tilde_specs(troots, "L", 24 * m, 1, len(troots))
            else:
                sign = -1 if kind == "theta2" else 1
                m = 1
                while 24 * m - 12 <= qcap24:
                    specs += _tilde_specs(troots, "L", 24 * m - 12, sign,
                                          len(troots))
                    m += 1
    elif kind in ("theta_c", "theta_c_star"):
        if l_name is None:
            raise ValueError("spin-c sectors need the line root name")
        lroots = [LineElement(vs, {l_name: 1}).coeffs,
                  LineElement(vs, {l_name: -1}).coeffs]
        if kind == "theta_c":
            for m in range(1, q_cap + 1):
                specs += _tilde_specs(lroots, "L", 24 * m, 1, 2)
            m = 1
            while 24 * m - 12 <= qcap24:
                specs += _tilde_specs(lroots, "L", 24 * m - 12, -1, 2)
                specs += _tilde_specs(lroots, "L", 24 * m - 12, 1, 2)
                m += 1
        else:
            for m in range(1, q_cap + 1):
                specs += _tilde_specs(lroots, "L", 24 * m, -1, 2)
    else:
        raise ValueError("unknown sector kind %r" % kind)
    return product_over_lines(vs, specs, qcap24)


def ell_sector(vs: VarSpace, kind: str, t_names, w_names, d: int, l: int,
               q_cap: int = 4, zero_root: bool = False) -> QZSeries:
    """ch of the two-variable elliptic sector, including the Euler-product
    power prefactor and the y^(-l/2) twist realized as exp(-l/2 * zeta).

    kind 'even': symmetric powers of the holomorphic roots and their duals,
    prefactor power 2(d-1-l).  kind 'odd_tilde' / 'odd_bar': symmetric powers
    of the full complexified real tangent (pairs, plus a zero root when
    zero_root is set), prefactor powers 2(d-l)-3 and 2(d-l)-1.
    """
    from .series import euler_product

    qcap24 = 24 * q_cap
    specs = []
    if kind == "even":
        cpow = 2 * (d - 1 - l)
        roots = []
        for n in t_names:
            roots.append(LineElement(vs, {n: 1}).coeffs)
            roots.append(LineElement(vs, {n: -1}).coeffs)
        for n in range(1, q_cap + 1):
            specs += [(r, "S", 24 * n, 1, 1) for r in roots]
    elif kind in ("odd_tilde", "odd_bar"):
        cpow = 2 * (d - l) - 3 if kind == "odd_tilde" else 2 * (d - l) - 1
        roots = []
        for n in t_names:
            roots.append(LineElement(vs, {n: 1}).coeffs)
            roots.append(LineElement(vs, {n: -1}).coeffs)
        if zero_root:
            roots.append(tuple(QQ(0) for _ in vs.names))
        for n in range(1, q_cap + 1):
            specs += [(r, "S", 24 * n, 1, 1) for r in roots]
    else:
        raise ValueError("unknown elliptic sector kind %r" % kind)

    # twist sectors: lines zeta - w_j at exponents n-1, lines w_j - zeta at n
    for w in w_names:
        up = LineElement(vs, {"zeta": 1, w: -1}).coeffs
        dn = LineElement(vs, {w: 1, "zeta": -1}).coeffs
        for n in range(0, q_cap + 1):
            specs.append((up, "L", 24 * n, -1, 1))
        for n in range(1, q_cap + 1):
            specs.append((dn, "L", 24 * n, -1, 1))

    out = product_over_lines(vs, specs, qcap24)
    out = out * (euler_product(vs, q_cap) ** cpow)
    half_l = GradedPoly.linear_form(vs, {"zeta": QQ(-l, 2)}).exp()
    return out * half_l
