"""Assembly of the twisted genera: multiplicative characteristic series, the
genus instances, the q-series assembly with degree extraction, and the
two-variable expansion coefficients.

All genera are built as products of per-variable factors (each univariate in
one root), folded in variable order so that intermediate polynomials stay as
small as the variable support allows.
"""

from __future__ import annotations

from .scalars import QQ, Scalar, TWO_PI_I
from .series import GradedPoly, QZSeries, VarSpace, eisenstein, euler_product
from .bundles import LineElement, VirtualBundle
from .sectors import line_factor

GENUS_IDS = ("Q", "Qtilde", "Qhat", "Qc", "Qcstar",
             "Ell", "Elltilde", "Ellbar", "Q1", "Q2")

_SPIN = ("Q", "Qtilde", "Qhat", "Q1", "Q2")
_SPINC = ("Qc", "Qcstar")
_ELL = ("Ell", "Elltilde", "Ellbar")


# ---- multiplicative series ---------------------------------------------------


def _ahat_pair(vs: VarSpace, name: str) -> GradedPoly:
    # (x/2)/sinh(x/2), inverted from the even series sinh(x/2)/(x/2)
    half = GradedPoly.var(vs, name, coeff=QQ(1, 2))
    s = GradedPoly.const(vs, 1)
    term = GradedPoly.const(vs, 1)
    fact = 1
    k = 1
    while True:
        term = term * half * half
        if not term:
            break
        fact *= (2 * k) * (2 * k + 1)
        s = s + term.scale(QQ(1, fact))
        k += 1
    return s.inverse()


def ahat(vs: VarSpace, pair_names) -> GradedPoly:
    """A-hat series of a real bundle with root pairs +-x, one factor per pair."""
    out = GradedPoly.const(vs, 1)
    for n in pair_names:
        out = out * _ahat_pair(vs, n)
    return out


def _todd_factor(vs: VarSpace, name: str) -> GradedPoly:
    # x/(1-e^(-x)), inverted from (1-e^(-x))/x = sum (-1)^k x^k/(k+1)!
    s = GradedPoly.zero(vs)
    x = GradedPoly.var(vs, name)
    term = GradedPoly.const(vs, 1)
    fact = 1
    k = 0
    while True:
        s = s + term.scale(QQ((-1) ** k, fact * (k + 1)))
        term = term * x
        if not term:
            break
        k += 1
        fact *= k
    return s.inverse()


def todd(vs: VarSpace, names) -> GradedPoly:
    """Todd series over complex roots."""
    out = GradedPoly.const(vs, 1)
    for n in names:
        out = out * _todd_factor(vs, n)
    return out


def _chdelta_pair(vs: VarSpace, name: str) -> GradedPoly:
    half = GradedPoly.var(vs, name, coeff=QQ(1, 2))
    return half.exp() + (-half).exp()


def ch_delta(vs: VarSpace, pair_names) -> GradedPoly:
    """Chern character of the spinor bundle: prod (e^(x/2) + e^(-x/2))."""
    out = GradedPoly.const(vs, 1)
    for n in pair_names:
        out = out * _chdelta_pair(vs, n)
    return out


# ---- genus instances -----------------------------------------------------------


class GenusInstance:
    """One concrete genus evaluation: root universe, extraction degree, and
    the constraint list under which its modularity holds."""

    __slots__ = ("genus_id", "dim", "l", "r", "j", "k", "d",
                 "pair_names", "w_names", "l_name", "zero_root",
                 "extract_degree", "weight", "constraints", "family",
                 "q_cap", "zeta_cap", "vs")

    def __init__(self, genus_id, dim, l, r, j, k, d, pair_names, w_names,
                 l_name, zero_root, extract_degree, weight, constraints,
                 family, q_cap, zeta_cap, vs):
        self.genus_id = genus_id
        self.dim = dim
        self.l = l
        self.r = r
        self.j = j
        self.k = k
        self.d = d
        self.pair_names = pair_names
        self.w_names = w_names
        self.l_name = l_name
        self.zero_root = zero_root
        self.extract_degree = extract_degree
        self.weight = weight
        self.constraints = constraints
        self.family = family
        self.q_cap = q_cap
        self.zeta_cap = zeta_cap
        self.vs = vs

    def weight_of_a(self, n: int) -> int:
        if self.family not in ("ell_even", "ell_odd"):
            raise ValueError("a_n weights only apply to elliptic instances")
        return self.d - self.l + n

    def __repr__(self):
        bits = ["%s dim=%d" % (self.genus_id, self.dim)]
        if self.l:
            bits.append("l=%d" % self.l)
        if self.j is not None:
            bits.append("j=%d" % self.j)
        return "<%s extract=%d>" % (" ".join(bits), self.extract_degree)


def make_instance(genus_id: str, dim: int, l: int = 0, j=None,
                  q_cap: int = 4, zeta_cap: int = 0) -> GenusInstance:
    """Validate and build a genus instance; raises ValueError on bad pairings."""
    if genus_id not in GENUS_IDS:
        raise ValueError("unknown genus %r" % genus_id)
    if dim <= 0:
        raise ValueError("fiber dimension must be positive")
    r = k = d = None
    w_names = ()
    l_name = None
    zero_root = False
    constraints = ()

    if genus_id in ("Q", "Qtilde", "Qhat", "Qc", "Qcstar"):
        if genus_id == "Q" and dim % 4 != 2:
            raise ValueError("Q needs fiber dimension 4k-2")
        if genus_id == "Qtilde" and dim % 4 != 1:
            raise ValueError("Qtilde needs fiber dimension 4k-3")
        if genus_id == "Qhat" and dim % 4 != 3:
            raise ValueError("Qhat needs fiber dimension 4k-1")
        if genus_id in _SPINC and dim % 4 == 0:
            raise ValueError("spin-c genera need dimension not divisible by 4")
        k = (dim + 3) // 4
        npairs = dim // 2
        extract_degree = 4 * k
        weight = 2 * k
        family = "spinc" if genus_id in _SPINC else "spin"
        if genus_id == "Qc":
            constraints = ("p1T=3p1L",)
        elif genus_id == "Qcstar":
            # the dual genus extracts two degrees higher at the same weight:
            # the odd component of exp(c/2) is the modular combination there
            constraints = ("p1T=p1L",)
            extract_degree = 4 * k + 2
        if family == "spinc":
            l_name = "u"
    elif genus_id in ("Q1", "Q2"):
        if j is None:
            raise ValueError("section-4 genera need the degree index j")
        if genus_id == "Q1":
            if dim % 2:
                raise ValueError("Q1 needs even fiber dimension 2r")
            r = dim // 2
        else:
            if dim % 2 == 0:
                raise ValueError("Q2 needs odd fiber dimension 2r+1")
            r = (dim - 1) // 2
        if (r + j) % 2:
            raise ValueError("r+j must be even")
        npairs = r
        extract_degree = 2 * (r + j)
        weight = r + j
        family = "spin"
    else:
        if genus_id == "Ell":
            if dim % 2:
                raise ValueError("Ell needs even fiber dimension 2d-2")
            d = dim // 2 + 1
            npairs = d - 1
            family = "ell_even"
            constraints = ("c1W=0", "c1T=0", "p1T=p1W")
        else:
            if dim % 2 == 0:
                raise ValueError("odd elliptic genera need odd dimension")
            d = (dim + 3) // 2 if genus_id == "Elltilde" else (dim + 1) // 2
            npairs = d - 2 if genus_id == "Elltilde" else d - 1
            family = "ell_odd"
            zero_root = True
            constraints = ("c1W=0", "p1T=p1W")
        if npairs < 0:
            raise ValueError("dimension too small for %s" % genus_id)
        extract_degree = 2 * d
        weight = d - l
        w_names = tuple("w%d" % (i + 1) for i in range(l))
    if l and genus_id not in _ELL:
        raise ValueError("only elliptic genera carry an auxiliary bundle")

    pair_names = tuple("x%d" % (i + 1) for i in range(npairs))
    names = list(pair_names) + list(w_names)
    groups = ["T"] * len(pair_names) + ["W"] * len(w_names)
    if l_name:
        names.append(l_name)
        groups.append("L")
    if genus_id in _ELL:
        names.append("zeta")
        groups.append("Z")
    vs = VarSpace(names, groups, extract_degree // 2, zeta_cap)
    return GenusInstance(genus_id, dim, l, r, j, k, d, pair_names, w_names,
                         l_name, zero_root, extract_degree, weight,
                         constraints, family, q_cap, zeta_cap, vs)


# ---- assembly -------------------------------------------------------------------


def _fold(vs, keyed_factors, qcap24: int) -> QZSeries:
    groups = {}
    for key, f in keyed_factors:
        groups.setdefault(key, []).append(f)
    out = QZSeries.one(vs, qcap24)
    for key in sorted(groups):
        acc = None
        for f in groups[key]:
            acc = f if acc is None else acc * f
        out = out * acc
    return out


def _pair_S_factors(vs, name, qcap24, tilde):
    """S_(q^n) factors of one +-x pair (tilde-reduced when asked)."""
    up = LineElement(vs, {name: 1}).coeffs
    dn = LineElement(vs, {name: -1}).coeffs
    zero = LineElement(vs, {}).coeffs
    out = []
    n = 1
    while 24 * n <= qcap24:
        out.append(line_factor(vs, up, "S", 24 * n, 1, qcap24))
        out.append(line_factor(vs, dn, "S", 24 * n, 1, qcap24))
        if tilde:
            out.append(line_factor(vs, zero, "L", 24 * n, -1, qcap24) ** 2)
        n += 1
    return out


def _pair_L_factors(vs, name, qcap24, e24_of, sign):
    up = LineElement(vs, {name: 1}).coeffs
    dn = LineElement(vs, {name: -1}).coeffs
    zero = LineElement(vs, {}).coeffs
    out = []
    m = 1
    while e24_of(m) <= qcap24:
        e24 = e24_of(m)
        out.append(line_factor(vs, up, "L", e24, sign, qcap24))
        out.append(line_factor(vs, dn, "L", e24, sign, qcap24))
        out.append(line_factor(vs, zero, "S", e24, -sign, qcap24) ** 2)
        m += 1
    return out


def _spin_sector(inst, theta: int) -> QZSeries:
    """A-hat times one of the three sector characters, with the spinor factor
    on sector 1 and the uniform 2-per-pair weight on sectors 2 and 3."""
    vs = inst.vs
    qcap24 = 24 * inst.q_cap
    factors = []
    for i, name in enumerate(inst.pair_names):
        key = (i,)
        pair_poly = _ahat_pair(vs, name)
        if theta == 1:
            pair_poly = pair_poly * _chdelta_pair(vs, name)
        else:
            pair_poly = pair_poly.scale(2)
        factors.append((key, QZSeries.from_poly(pair_poly, qcap24)))
        for f in _pair_S_factors(vs, name, qcap24, tilde=True):
            factors.append((key, f))
        if theta == 1:
            for f in _pair_L_factors(vs, name, qcap24, lambda m: 24 * m, 1):
                factors.append((key, f))
        else:
            sign = -1 if theta == 2 else 1
            for f in _pair_L_factors(vs, name, qcap24,
                                     lambda m: 24 * m - 12, sign):
                factors.append((key, f))
    return _fold(vs, factors, qcap24)


def _spinc_product(inst) -> QZSeries:
    vs = inst.vs
    qcap24 = 24 * inst.q_cap
    factors = []
    for i, name in enumerate(inst.pair_names):
        key = (i,)
        factors.append((key, QZSeries.from_poly(_ahat_pair(vs, name), qcap24)))
        for f in _pair_S_factors(vs, name, qcap24, tilde=True):
            factors.append((key, f))
    ukey = (len(inst.pair_names),)
    half_u = GradedPoly.linear_form(vs, {inst.l_name: QQ(1, 2)}).exp()
    factors.append((ukey, QZSeries.from_poly(half_u, qcap24)))
    if inst.genus_id == "Qc":
        for f in _pair_L_factors(vs, inst.l_name, qcap24, lambda m: 24 * m, 1):
            factors.append((ukey, f))
        for sign in (-1, 1):
            for f in _pair_L_factors(vs, inst.l_name, qcap24,
                                     lambda m: 24 * m - 12, sign):
                factors.append((ukey, f))
    else:
        for f in _pair_L_factors(vs, inst.l_name, qcap24, lambda m: 24 * m, -1):
            factors.append((ukey, f))
    return _fold(vs, factors, qcap24)


def _ell_product(inst) -> QZSeries:
    vs = inst.vs
    qcap24 = 24 * inst.q_cap
    factors = []
    for i, name in enumerate(inst.pair_names):
        key = (i,)
        if inst.family == "ell_even":
            # Todd factor with the half first-Chern shift of the base
            pair_poly = _todd_factor(vs, name) * GradedPoly.linear_form(
                vs, {name: QQ(-1, 2)}).exp()
        else:
            pair_poly = _ahat_pair(vs, name)
        factors.append((key, QZSeries.from_poly(pair_poly, qcap24)))
        for f in _pair_S_factors(vs, name, qcap24, tilde=False):
            factors.append((key, f))
    zero = LineElement(vs, {}).coeffs
    if inst.zero_root:
        n = 1
        while 24 * n <= qcap24:
            factors.append(((), line_factor(vs, zero, "S", 24 * n, 1, qcap24)))
            n += 1
    nw = len(inst.pair_names)
    for jw, w in enumerate(inst.w_names):
        key = (nw + jw,)
        half_w = GradedPoly.linear_form(vs, {w: QQ(1, 2)}).exp()
        factors.append((key, QZSeries.from_poly(half_w, qcap24)))
        up = LineElement(vs, {"zeta": 1, w: -1}).coeffs
        dn = LineElement(vs, {w: 1, "zeta": -1}).coeffs
        for n in range(0, inst.q_cap + 1):
            factors.append((key, line_factor(vs, up, "L", 24 * n, -1, qcap24)))
        for n in range(1, inst.q_cap + 1):
            factors.append((key, line_factor(vs, dn, "L", 24 * n, -1, qcap24)))
    if inst.genus_id == "Ell":
        cpow = 2 * (inst.d - 1 - inst.l)
    elif inst.genus_id == "Elltilde":
        cpow = 2 * (inst.d - inst.l) - 3
    else:
        cpow = 2 * (inst.d - inst.l) - 1
    factors.append(((), euler_product(vs, inst.q_cap) ** cpow))
    half_l = GradedPoly.linear_form(vs, {"zeta": QQ(-inst.l, 2)}).exp()
    factors.append(((), QZSeries.from_poly(half_l, qcap24)))
    return _fold(vs, factors, qcap24)


def assemble(inst: GenusInstance) -> QZSeries:
    """The genus q-series with every coefficient degree-extracted."""
    if inst.family == "spin":
        total = _spin_sector(inst, 1) + _spin_sector(inst, 2) \
            + _spin_sector(inst, 3)
    elif inst.family == "spinc":
        total = _spinc_product(inst)
    else:
        total = _ell_product(inst)
    return total.extract(inst.extract_degree // 2)


def assemble_integrand(inst: GenusInstance) -> QZSeries:
    """The genus integrand before degree extraction (for identity checks)."""
    if inst.family == "spin":
        return _spin_sector(inst, 1) + _spin_sector(inst, 2) \
            + _spin_sector(inst, 3)
    if inst.family == "spinc":
        return _spinc_product(inst)
    return _ell_product(inst)


def extract(series: QZSeries, cohomological_degree: int) -> QZSeries:
    """Per-coefficient homogeneous component of the given cohomological degree."""
    if cohomological_degree % 2:
        raise ValueError("cohomological degree must be even")
    rd = cohomological_degree // 2
    if rd > series.vs.degree_cap:
        raise ValueError("degree exceeds the truncation cap")
    return series.extract(rd)


# ---- two-variable expansion coefficients ------------------------------------------


def quasimodular_correction(inst: GenusInstance) -> QZSeries:
    """exp(-(l/24) E2 zeta^2): the factor that restores pure modularity of the
    zeta-expansion coefficients.  The weight-2 series enters with the -1/24
    normalization; with the bare E2 the n>=2 coefficients fail to decompose."""
    vs = inst.vs
    qcap24 = 24 * inst.q_cap
    e2 = eisenstein(vs, 2, inst.q_cap)
    z2 = QZSeries.from_poly(GradedPoly.var(vs, "zeta", 2), qcap24)
    out = QZSeries.one(vs, qcap24)
    term = QZSeries.one(vs, qcap24)
    kmax = inst.zeta_cap // 2
    coeff = QQ(-inst.l, 24)
    for k in range(1, kmax + 1):
        term = term * e2 * z2
        if term.is_zero():
            break
        out = out + term.scale(coeff ** k * QQ(1, _factorial(k)))
    return out


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def a_n_series(inst: GenusInstance, n: int) -> QZSeries:
    """The zeta^n coefficient of the corrected elliptic genus, as extracted
    forms; the printed normalization carries an extra (2 pi i)^n, available
    from `paper_scale`."""
    if inst.family not in ("ell_even", "ell_odd"):
        raise ValueError("a_n requires an elliptic instance")
    if n > inst.zeta_cap:
        raise ValueError("n exceeds the zeta cap")
    corrected = assemble(inst) * quasimodular_correction(inst)
    return corrected.zeta_coefficient(n)


def paper_scale(n: int) -> Scalar:
    """(2 pi i)^n, the factor between engine and printed normalizations."""
    return TWO_PI_I ** n


# ---- characteristic-form builder for the theorem records -----------------------------


def genus_form(inst: GenusInstance, twist_ch: GradedPoly,
               with_delta: bool = False) -> GradedPoly:
    """Degree-extracted characteristic form of the instance's base factor
    times a twist Chern character."""
    vs = inst.vs
    if inst.family == "spin":
        base = ahat(vs, inst.pair_names)
        if with_delta:
            base = base * ch_delta(vs, inst.pair_names)
    elif inst.family == "spinc":
        base = ahat(vs, inst.pair_names) * GradedPoly.linear_form(
            vs, {inst.l_name: QQ(1, 2)}).exp()
    elif inst.family == "ell_even":
        shift = {w: QQ(1, 2) for w in inst.w_names}
        for x in inst.pair_names:
            shift[x] = QQ(-1, 2)
        base = todd(vs, inst.pair_names) * GradedPoly.linear_form(vs, shift).exp()
    else:
        shift = {w: QQ(1, 2) for w in inst.w_names}
        base = ahat(vs, inst.pair_names) * GradedPoly.linear_form(vs, shift).exp()
    return (base * twist_ch).extract(inst.extract_degree // 2)


# ---- standard bundles of an instance ----------------------------------------------


def tangent_bundle(inst: GenusInstance) -> VirtualBundle:
    """Complexified tangent roots: +-x per pair (plus the odd zero root)."""
    v = VirtualBundle.real_pairs(inst.vs, inst.pair_names)
    if inst.zero_root:
        v = v + VirtualBundle.trivial(inst.vs, 1)
    return v


def holomorphic_tangent(inst: GenusInstance) -> VirtualBundle:
    if inst.family != "ell_even":
        raise ValueError("holomorphic tangent requires the even elliptic case")
    return VirtualBundle.complex_lines(inst.vs, inst.pair_names)


def aux_bundle(inst: GenusInstance) -> VirtualBundle:
    return VirtualBundle.complex_lines(inst.vs, inst.w_names)


def line_bundle_pair(inst: GenusInstance) -> VirtualBundle:
    """L_R x C as the pair of lines +-u."""
    if not inst.l_name:
        raise ValueError("instance has no spin-c line bundle")
    return VirtualBundle.real_pairs(inst.vs, [inst.l_name])
