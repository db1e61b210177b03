"""Exact scalar field: Gaussian rationals extended by a formal transcendental pi.

A Scalar is a finite sum of terms (a + b*i) * pi^k with a, b rational and
k any integer (negative pi powers are allowed).  i*i is always reduced to -1;
no relation is ever applied to pi.
"""

from __future__ import annotations

import math

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    from fractions import Fraction as QQ


def rat(x) -> QQ:
    """Coerce an int, string, Fraction or QQ into the rational type."""
    if isinstance(x, Scalar):
        return x.rational()
    return QQ(x)


_Z = QQ(0)
_ONE = QQ(1)


class Scalar:
    """Element of Q(i)[pi, 1/pi], stored as {pi_power: (re, im)}."""

    __slots__ = ("_t",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for k, (re, im) in terms.items():
                re = QQ(re)
                im = QQ(im)
                if re or im:
                    t[int(k)] = (re, im)
        self._t = t

    # ---- constructors -------------------------------------------------

    @classmethod
    def from_rational(cls, x) -> "Scalar":
        return cls({0: (QQ(x), _Z)})

    @classmethod
    def gaussian(cls, re, im=0, pi_power=0) -> "Scalar":
        return cls({pi_power: (QQ(re), QQ(im))})

    # ---- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._t

    def is_rational(self) -> bool:
        if not self._t:
            return True
        if set(self._t) != {0}:
            return False
        return not self._t[0][1]

    def rational(self) -> QQ:
        """The purely rational value; raises if pi or i survives."""
        if not self._t:
            return _Z
        if not self.is_rational():
            raise ValueError("scalar is not rational: %s" % self)
        return self._t[0][0]

    def terms(self):
        return dict(self._t)

    # ---- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, QQ)):
            return Scalar({0: (QQ(other), _Z)})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self._t)
        for k, (re, im) in o._t.items():
            if k in t:
                a, b = t[k]
                t[k] = (a + re, b + im)
            else:
                t[k] = (re, im)
        return Scalar(t)

    __radd__ = __add__

    def __neg__(self):
        return Scalar({k: (-re, -im) for k, (re, im) in self._t.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = {}
        for k1, (a, b) in self._t.items():
            for k2, (c, d) in o._t.items():
                k = k1 + k2
                re = a * c - b * d
                im = a * d + b * c
                if k in t:
                    x, y = t[k]
                    t[k] = (x + re, y + im)
                else:
                    t[k] = (re, im)
        return Scalar(t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = Scalar({0: (_ONE, _Z)})
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "Scalar":
        """Inverse of a single-term scalar (a+bi)*pi^k; general sums of
        distinct pi powers are not invertible in this ring."""
        if len(self._t) != 1:
            raise ValueError("only monomial scalars are invertible: %s" % self)
        (k, (a, b)), = self._t.items()
        n = a * a + b * b
        return Scalar({-k: (a / n, -b / n)})

    # ---- comparison / hashing ------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._t == o._t

    def __ne__(self, other):
        r = self.__eq__(other)
        if r is NotImplemented:
            return r
        return not r

    def __hash__(self):
        if self.is_rational():
            return hash(self.rational())
        return hash(frozenset(self._t.items()))

    def __bool__(self):
        return bool(self._t)

    # ---- conversion / display ------------------------------------------

    def to_complex(self, pi_value: float = math.pi) -> complex:
        out = 0j
        for k, (re, im) in self._t.items():
            out += complex(float(re), float(im)) * pi_value ** k
        return out

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for k in sorted(self._t):
            re, im = self._t[k]
            if im == 0:
                g = str(re)
            elif re == 0:
                g = "%s*i" % im
            else:
                g = "(%s%s%s*i)" % (re, "+" if im > 0 else "-", abs(im))
            if k == 0:
                parts.append(g)
            elif k == 1:
                parts.append("%s*pi" % g)
            else:
                parts.append("%s*pi^%d" % (g, k))
        return " + ".join(parts)

    __repr__ = __str__


#: i with i^2 = -1
I = Scalar.gaussian(0, 1)
#: the formal symbol pi
PI = Scalar.gaussian(1, 0, 1)
#: 2*pi*i, the root normalization constant
TWO_PI_I = Scalar.gaussian(0, 2, 1)
