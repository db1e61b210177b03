"""Truncated graded polynomials over named root variables and q-series on the
1/24-exponent lattice.

Monomial keys are packed integers: bits 0-5 hold the total root degree, bits
6-9 the zeta degree, and five bits per variable follow in declaration order.
Packed keys add like exponent vectors, which keeps the multiplication kernel a
plain integer-keyed dict convolution.
"""

from __future__ import annotations

from .scalars import QQ, Scalar, rat

_DEG_MASK = 63
_ZSHIFT = 6
_ZMASK = 15
_VSHIFT = 10
_VBITS = 5
_VMASK = 31


class VarSpace:
    """Ordered variable universe with group tags and truncation caps.

    Groups: 'T' (tangent roots), 'W' (auxiliary bundle roots), 'L' (the
    spin-c line class), 'Z' (the zeta parameter).  At most one 'Z' variable.
    """

    __slots__ = ("names", "groups", "degree_cap", "zeta_cap", "_index", "_zpos")

    def __init__(self, names, groups, degree_cap, zeta_cap=0):
        names = tuple(names)
        groups = tuple(groups)
        if len(names) != len(groups):
            raise ValueError("names and groups differ in length")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        if degree_cap < 0 or degree_cap > _VMASK:
            raise ValueError("degree_cap out of range")
        if zeta_cap < 0 or zeta_cap > _ZMASK // 2:
            raise ValueError("zeta_cap out of range")
        zpos = [i for i, g in enumerate(groups) if g == "Z"]
        if len(zpos) > 1:
            raise ValueError("at most one zeta variable")
        for g in groups:
            if g not in ("T", "W", "L", "Z"):
                raise ValueError("unknown group tag %r" % g)
        self.names = names
        self.groups = groups
        self.degree_cap = int(degree_cap)
        self.zeta_cap = int(zeta_cap)
        self._index = {n: i for i, n in enumerate(names)}
        self._zpos = zpos[0] if zpos else -1

    def __eq__(self, other):
        return (isinstance(other, VarSpace)
                and self.names == other.names and self.groups == other.groups
                and self.degree_cap == other.degree_cap
                and self.zeta_cap == other.zeta_cap)

    def __hash__(self):
        return hash((self.names, self.groups, self.degree_cap, self.zeta_cap))

    def __repr__(self):
        return "VarSpace(%s, degree_cap=%d, zeta_cap=%d)" % (
            ",".join(self.names), self.degree_cap, self.zeta_cap)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError("unknown variable %r" % name) from None

    def group_vars(self, group: str):
        return [n for n, g in zip(self.names, self.groups) if g == group]

    def with_caps(self, degree_cap=None, zeta_cap=None) -> "VarSpace":
        return VarSpace(self.names, self.groups,
                        self.degree_cap if degree_cap is None else degree_cap,
                        self.zeta_cap if zeta_cap is None else zeta_cap)

    # ---- packed monomial keys -------------------------------------------

    def pack(self, exps) -> int:
        if len(exps) != len(self.names):
            raise ValueError("exponent vector has wrong length")
        key = 0
        rootdeg = 0
        zdeg = 0
        for i, e in enumerate(exps):
            e = int(e)
            if e < 0 or e > _VMASK:
                raise ValueError("exponent out of range")
            key |= e << (_VSHIFT + _VBITS * i)
            if i == self._zpos:
                zdeg = e
            else:
                rootdeg += e
        return key | rootdeg | (zdeg << _ZSHIFT)

    def unpack(self, key: int):
        return tuple((key >> (_VSHIFT + _VBITS * i)) & _VMASK
                     for i in range(len(self.names)))

    def var_key(self, name: str, power: int = 1) -> int:
        i = self.index(name)
        e = [0] * len(self.names)
        e[i] = power
        return self.pack(e)

    @staticmethod
    def root_degree(key: int) -> int:
        return key & _DEG_MASK

    @staticmethod
    def zeta_degree(key: int) -> int:
        return (key >> _ZSHIFT) & _ZMASK


def _check_same(a: VarSpace, b: VarSpace):
    if a is not b and a != b:
        raise ValueError("mismatched variable universes")


class GradedPoly:
    """Sparse truncated polynomial; coefficients are rationals or Scalars.

    Terms above the root-degree cap or the zeta cap are discarded; zero
    coefficients are pruned after every operation.
    """

    __slots__ = ("vs", "terms")

    def __init__(self, vs: VarSpace, terms=None):
        self.vs = vs
        if terms is None:
            self.terms = {}
        else:
            cap = vs.degree_cap
            zcap = vs.zeta_cap
            self.terms = {
                k: c for k, c in terms.items()
                if c and (k & _DEG_MASK) <= cap and ((k >> _ZSHIFT) & _ZMASK) <= zcap
            }

    @classmethod
    def _raw(cls, vs, terms):
        """Trusted constructor: terms already pruned and within caps."""
        p = cls.__new__(cls)
        p.vs = vs
        p.terms = terms
        return p

    # ---- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, vs) -> "GradedPoly":
        return cls._raw(vs, {})

    @classmethod
    def const(cls, vs, c) -> "GradedPoly":
        if not isinstance(c, Scalar):
            c = QQ(c)
        if not c:
            return cls._raw(vs, {})
        return cls._raw(vs, {0: c})

    @classmethod
    def var(cls, vs, name, power=1, coeff=1) -> "GradedPoly":
        return cls(vs, {vs.var_key(name, power): QQ(coeff)})

    @classmethod
    def linear_form(cls, vs, coeffs) -> "GradedPoly":
        """Sum of coeff * variable over a {name: coeff} mapping."""
        terms = {}
        for name, c in coeffs.items():
            c = QQ(c)
            if c:
                terms[vs.var_key(name)] = c
        return cls(vs, terms)

    # ---- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def constant_term(self):
        return self.terms.get(0, QQ(0))

    def coefficient(self, exps):
        return self.terms.get(self.vs.pack(exps), QQ(0))

    def max_root_degree(self) -> int:
        return max((k & _DEG_MASK for k in self.terms), default=0)

    def is_homogeneous(self, degree: int) -> bool:
        return all((k & _DEG_MASK) == degree for k in self.terms)

    def __eq__(self, other):
        if isinstance(other, GradedPoly):
            return self.vs == other.vs and self.terms == other.terms
        if isinstance(other, (int, QQ, Scalar)):
            return self == GradedPoly.const(self.vs, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.vs, frozenset(self.terms.items())))

    # ---- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, QQ, Scalar)):
            other = GradedPoly.const(self.vs, other)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        _check_same(self.vs, other.vs)
        t = dict(self.terms)
        for k, c in other.terms.items():
            if k in t:
                v = t[k] + c
                if v:
                    t[k] = v
                else:
                    del t[k]
            else:
                t[k] = c
        return GradedPoly._raw(self.vs, t)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly._raw(self.vs, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, QQ, Scalar)):
            other = GradedPoly.const(self.vs, other)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "GradedPoly":
        if not isinstance(c, Scalar):
            c = QQ(c)
        if not c:
            return GradedPoly.zero(self.vs)
        return GradedPoly._raw(self.vs, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, QQ, Scalar)):
            return self.scale(other)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        _check_same(self.vs, other.vs)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        if not a or not b:
            return GradedPoly.zero(self.vs)
        cap = self.vs.degree_cap
        zcap = self.vs.zeta_cap
        # bucket the larger factor by root degree for early cutoff
        bydeg = {}
        for k, c in b.items():
            bydeg.setdefault(k & _DEG_MASK, []).append((k, c))
        degs = sorted(bydeg)
        out = {}
        for ka, ca in a.items():
            da = ka & _DEG_MASK
            za = (ka >> _ZSHIFT) & _ZMASK
            for db in degs:
                if da + db > cap:
                    break
                for kb, cb in bydeg[db]:
                    if za + ((kb >> _ZSHIFT) & _ZMASK) > zcap:
                        continue
                    nk = ka + kb
                    v = ca * cb
                    if nk in out:
                        out[nk] = out[nk] + v
                    else:
                        out[nk] = v
        return GradedPoly._raw(self.vs, {k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        out = GradedPoly.const(self.vs, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # ---- series operations ---------------------------------------------

    def exp(self) -> "GradedPoly":
        """exp of a polynomial with zero constant term, truncated at the caps."""
        if 0 in self.terms:
            raise ValueError("exp requires zero constant term")
        out = GradedPoly.const(self.vs, 1)
        term = GradedPoly.const(self.vs, 1)
        kmax = self.vs.degree_cap + self.vs.zeta_cap
        for k in range(1, kmax + 1):
            term = term * self
            if not term:
                break
            term = term.scale(QQ(1, k))
            out = out + term
        return out

    def inverse(self) -> "GradedPoly":
        """Multiplicative inverse up to the caps (constant term must be a unit)."""
        c0 = self.terms.get(0)
        if not c0:
            raise ValueError("inverse requires nonzero constant term")
        if isinstance(c0, Scalar):
            inv0 = c0.inverse()
        else:
            inv0 = QQ(1) / c0
        out = GradedPoly.const(self.vs, inv0)
        # Newton iteration b <- b*(2 - a*b); error degree doubles each round
        steps = 1
        total = self.vs.degree_cap + self.vs.zeta_cap
        while (1 << steps) <= total + 1:
            steps += 1
        two = GradedPoly.const(self.vs, 2)
        for _ in range(steps):
            out = out * (two - self * out)
        return out

    # ---- structure ---------------------------------------------------------

    def extract(self, root_degree: int) -> "GradedPoly":
        """Homogeneous component of the given total root degree."""
        return GradedPoly._raw(self.vs, {
            k: c for k, c in self.terms.items() if (k & _DEG_MASK) == root_degree})

    def zeta_coefficient(self, zdeg: int) -> "GradedPoly":
        """Coefficient of zeta^zdeg, with the zeta exponent removed."""
        zpos = self.vs._zpos
        if zpos < 0:
            return self if zdeg == 0 else GradedPoly.zero(self.vs)
        out = {}
        strip = (zdeg << _ZSHIFT) | (zdeg << (_VSHIFT + _VBITS * zpos))
        for k, c in self.terms.items():
            if ((k >> _ZSHIFT) & _ZMASK) == zdeg:
                out[k - strip] = c
        return GradedPoly._raw(self.vs, out)

    def map_coefficients(self, fn) -> "GradedPoly":
        return GradedPoly(self.vs, {k: fn(c) for k, c in self.terms.items()})

    def __iter__(self):
        for k in sorted(self.terms):
            yield self.vs.unpack(k), self.terms[k]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self:
            mono = "*".join(
                n if e == 1 else "%s^%d" % (n, e)
                for n, e in zip(self.vs.names, exps) if e)
            cs = str(c) if not isinstance(c, Scalar) else "(%s)" % c
            parts.append(cs if not mono else "%s*%s" % (cs, mono))
        return " + ".join(parts)

    __repr__ = __str__


class QZSeries:
    """Formal series in q with exponents on the (1/24)Z lattice and GradedPoly
    coefficients, truncated above q_cap.

    Exponents are stored internally as integer multiples of 1/24.
    """

    __slots__ = ("vs", "qcap24", "terms")

    def __init__(self, vs: VarSpace, qcap24: int, terms=None):
        self.vs = vs
        self.qcap24 = int(qcap24)
        if terms is None:
            self.terms = {}
        else:
            self.terms = {int(e): p for e, p in terms.items()
                          if p and int(e) <= self.qcap24}

    @classmethod
    def _raw(cls, vs, qcap24, terms):
        s = cls.__new__(cls)
        s.vs = vs
        s.qcap24 = qcap24
        s.terms = terms
        return s

    # ---- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, vs, qcap24) -> "QZSeries":
        return cls._raw(vs, qcap24, {})

    @classmethod
    def one(cls, vs, qcap24) -> "QZSeries":
        return cls._raw(vs, qcap24, {0: GradedPoly.const(vs, 1)})

    @classmethod
    def from_poly(cls, poly: GradedPoly, qcap24: int, e24: int = 0) -> "QZSeries":
        if not poly or e24 > qcap24:
            return cls.zero(poly.vs, qcap24)
        return cls._raw(poly.vs, qcap24, {int(e24): poly})

    @classmethod
    def qpow(cls, vs, e24: int, qcap24: int) -> "QZSeries":
        return cls.from_poly(GradedPoly.const(vs, 1), qcap24, e24)

    # ---- queries ------------------------------------------------------------

    def coeff24(self, e24: int) -> GradedPoly:
        return self.terms.get(int(e24), GradedPoly.zero(self.vs))

    def coefficient(self, q_exp) -> GradedPoly:
        """Coefficient of q**q_exp, q_exp rational with denominator dividing 24."""
        e = QQ(q_exp) * 24
        if e != int(e):
            raise ValueError("q exponent %s not on the 1/24 lattice" % q_exp)
        return self.coeff24(int(e))

    def exponents24(self):
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def has_integer_exponents(self) -> bool:
        return all(e % 24 == 0 for e in self.terms)

    def __eq__(self, other):
        if not isinstance(other, QZSeries):
            return NotImplemented
        return (self.vs == other.vs and self.qcap24 == other.qcap24
                and self.terms == other.terms)

    # ---- arithmetic -----------------------------------------------------------

    def _check(self, other):
        _check_same(self.vs, other.vs)
        if self.qcap24 != other.qcap24:
            raise ValueError("mismatched q caps")

    def __add__(self, other):
        if isinstance(other, (int, QQ, Scalar, GradedPoly)):
            other = QZSeries.from_poly(
                other if isinstance(other, GradedPoly)
                else GradedPoly.const(self.vs, other), self.qcap24)
        if not isinstance(other, QZSeries):
            return NotImplemented
        self._check(other)
        t = dict(self.terms)
        for e, p in other.terms.items():
            if e in t:
                v = t[e] + p
                if v:
                    t[e] = v
                else:
                    del t[e]
            else:
                t[e] = p
        return QZSeries._raw(self.vs, self.qcap24, t)

    __radd__ = __add__

    def __neg__(self):
        return QZSeries._raw(self.vs, self.qcap24,
                             {e: -p for e, p in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, QQ, Scalar, GradedPoly)):
            other = QZSeries.from_poly(
                other if isinstance(other, GradedPoly)
                else GradedPoly.const(self.vs, other), self.qcap24)
        if not isinstance(other, QZSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "QZSeries":
        t = {}
        for e, p in self.terms.items():
            v = p.scale(c)
            if v:
                t[e] = v
        return QZSeries._raw(self.vs, self.qcap24, t)

    def __mul__(self, other):
        if isinstance(other, (int, QQ, Scalar)):
            return self.scale(other)
        if isinstance(other, GradedPoly):
            other = QZSeries.from_poly(other, self.qcap24)
        if not isinstance(other, QZSeries):
            return NotImplemented
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        cap = self.qcap24
        out = {}
        bitems = sorted(b.items())
        for ea, pa in sorted(a.items()):
            for eb, pb in bitems:
                e = ea + eb
                if e > cap:
                    break
                v = pa * pb
                if not v:
                    continue
                if e in out:
                    w = out[e] + v
                    if w:
                        out[e] = w
                    else:
                        del out[e]
                else:
                    out[e] = v
        return QZSeries._raw(self.vs, self.qcap24, out)

    __rmul__ = __mul__

    def inverse(self) -> "QZSeries":
        """Inverse of a series whose q^0 coefficient is invertible."""
        p0 = self.terms.get(0)
        if p0 is None:
            raise ValueError("inverse requires a q^0 term")
        out = QZSeries.from_poly(p0.inverse(), self.qcap24)
        steps = 1
        while (1 << steps) <= self.qcap24 + 1:
            steps += 1
        steps += 1
        two = QZSeries.one(self.vs, self.qcap24).scale(2)
        for _ in range(steps):
            out = out * (two - self * out)
        return out

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise ValueError("series powers must be integers")
        if n < 0:
            return self.inverse() ** (-n)
        out = QZSeries.one(self.vs, self.qcap24)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # ---- structure -------------------------------------------------------------

    def extract(self, root_degree: int) -> "QZSeries":
        return QZSeries(self.vs, self.qcap24,
                        {e: p.extract(root_degree) for e, p in self.terms.items()})

    def zeta_coefficient(self, zdeg: int) -> "QZSeries":
        return QZSeries(self.vs, self.qcap24,
                        {e: p.zeta_coefficient(zdeg) for e, p in self.terms.items()})

    def map_coefficients(self, fn) -> "QZSeries":
        return QZSeries(self.vs, self.qcap24,
                        {e: fn(p) for e, p in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in self.exponents24():
            if e == 0:
                qs = ""
            elif e % 24 == 0:
                qs = "q" if e == 24 else "q^%d" % (e // 24)
            else:
                qs = "q^(%s)" % QQ(e, 24)
            body = str(self.terms[e])
            if " + " in body or " - " in body:
                body = "(%s)" % body
            parts.append(body if not qs else "%s*%s" % (qs, body))
        return " + ".join(parts)

    __repr__ = __str__


# ---- standard q-series constants -------------------------------------------


def _sigma(power: int, n: int) -> int:
    return sum(d ** power for d in range(1, n + 1) if n % d == 0)


def eisenstein(vs: VarSpace, k: int, q_cap: int) -> QZSeries:
    """Normalized Eisenstein series E2, E4 or E6 as a scalar q-series."""
    weights = {2: (-24, 1), 4: (240, 3), 6: (-504, 5)}
    if k not in weights:
        raise ValueError("unsupported Eisenstein weight %d" % k)
    mult, power = weights[k]
    qcap24 = 24 * q_cap
    terms = {0: GradedPoly.const(vs, 1)}
    for n in range(1, q_cap + 1):
        terms[24 * n] = GradedPoly.const(vs, mult * _sigma(power, n))
    return QZSeries(vs, qcap24, terms)


def euler_product(vs: VarSpace, q_cap: int) -> QZSeries:
    """The Euler product c = prod_{j>=1} (1 - q^j), truncated at q_cap."""
    if q_cap < 0:
        raise ValueError("q_cap must be nonnegative")
    qcap24 = 24 * q_cap
    out = QZSeries.one(vs, qcap24)
    for j in range(1, q_cap + 1):
        factor = QZSeries(vs, qcap24, {
            0: GradedPoly.const(vs, 1),
            24 * j: GradedPoly.const(vs, -1)})
        out = out * factor
    return out
