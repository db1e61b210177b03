"""Virtual bundles over explicit line elements and their lambda-ring algebra.

A line element is a rational-linear form in the root variables (the zeta
variable may appear through the elliptic constructions); a virtual bundle is a
finite multiset of lines with integer multiplicities, negative allowed.
"""

from __future__ import annotations

from .scalars import QQ
from .series import GradedPoly, VarSpace


class LineElement:
    """A formal line, identified by its root: a rational-linear form."""

    __slots__ = ("vs", "coeffs")

    def __init__(self, vs: VarSpace, coeffs):
        self.vs = vs
        if isinstance(coeffs, dict):
            vec = [QQ(0)] * len(vs.names)
            for name, c in coeffs.items():
                vec[vs.index(name)] = QQ(c)
            self.coeffs = tuple(vec)
        else:
            self.coeffs = tuple(QQ(c) for c in coeffs)
            if len(self.coeffs) != len(vs.names):
                raise ValueError("root vector has wrong length")

    def __neg__(self):
        return LineElement(self.vs, tuple(-c for c in self.coeffs))

    def __add__(self, other):
        if not isinstance(other, LineElement):
            return NotImplemented
        return LineElement(self.vs, tuple(a + b for a, b in
                                          zip(self.coeffs, other.coeffs)))

    def scaled(self, k) -> "LineElement":
        k = QQ(k)
        return LineElement(self.vs, tuple(k * c for c in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, LineElement)
                and self.vs == other.vs and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        parts = []
        for name, c in zip(self.vs.names, self.coeffs):
            if not c:
                continue
            if c == 1:
                parts.append("+%s" % name)
            elif c == -1:
                parts.append("-%s" % name)
            else:
                parts.append("%+s*%s" % (c, name))
        return "".join(parts) or "0"

    __repr__ = __str__


_EXP_CACHE = {}


def ch_line(vs: VarSpace, coeffs) -> GradedPoly:
    """exp of the linear form with the given root coefficients, truncated."""
    key = (vs, coeffs)
    got = _EXP_CACHE.get(key)
    if got is None:
        form = GradedPoly(vs, {
            vs.var_key(n): c for n, c in zip(vs.names, coeffs) if c})
        got = form.exp()
        _EXP_CACHE[key] = got
    return got


class VirtualBundle:
    """Integer-multiplicity multiset of line elements."""

    __slots__ = ("vs", "lines")

    def __init__(self, vs: VarSpace, lines=None):
        self.vs = vs
        self.lines = {}
        if lines:
            for root, mult in lines.items():
                if not isinstance(root, tuple):
                    root = LineElement(vs, root).coeffs
                mult = int(mult)
                if mult:
                    self.lines[root] = self.lines.get(root, 0) + mult
            self.lines = {r: m for r, m in self.lines.items() if m}

    # ---- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, vs) -> "VirtualBundle":
        return cls(vs)

    @classmethod
    def line(cls, vs, coeffs, mult=1) -> "VirtualBundle":
        root = coeffs.coeffs if isinstance(coeffs, LineElement) \
            else LineElement(vs, coeffs).coeffs
        return cls(vs, {root: mult})

    @classmethod
    def trivial(cls, vs, n=1) -> "VirtualBundle":
        return cls(vs, {tuple(QQ(0) for _ in vs.names): n})

    @classmethod
    def real_pairs(cls, vs, names) -> "VirtualBundle":
        """Complexification of a real bundle with root pairs +-x per name."""
        v = cls.zero(vs)
        for n in names:
            v = v + cls.line(vs, {n: 1}) + cls.line(vs, {n: -1})
        return v

    @classmethod
    def complex_lines(cls, vs, names) -> "VirtualBundle":
        v = cls.zero(vs)
        for n in names:
            v = v + cls.line(vs, {n: 1})
        return v

    # ---- queries -------------------------------------------------------------

    def rank(self) -> int:
        return sum(self.lines.values())

    def items(self):
        return self.lines.items()

    def __eq__(self, other):
        return (isinstance(other, VirtualBundle)
                and self.vs == other.vs and self.lines == other.lines)

    def __hash__(self):
        return hash(frozenset(self.lines.items()))

    def __bool__(self):
        return bool(self.lines)

    # ---- lambda-ring operations -----------------------------------------------

    def __add__(self, other):
        if not isinstance(other, VirtualBundle):
            return NotImplemented
        t = dict(self.lines)
        for r, m in other.lines.items():
            t[r] = t.get(r, 0) + m
        return VirtualBundle(self.vs, t)

    def __neg__(self):
        return VirtualBundle(self.vs, {r: -m for r, m in self.lines.items()})

    def __sub__(self, other):
        if not isinstance(other, VirtualBundle):
            return NotImplemented
        return self + (-other)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return VirtualBundle(self.vs, {r: k * m for r, m in self.lines.items()})

    __rmul__ = __mul__

    def tensor(self, other: "VirtualBundle") -> "VirtualBundle":
        t = {}
        for r1, m1 in self.lines.items():
            for r2, m2 in other.lines.items():
                r = tuple(a + b for a, b in zip(r1, r2))
                t[r] = t.get(r, 0) + m1 * m2
        return VirtualBundle(self.vs, t)

    def dual(self) -> "VirtualBundle":
        return VirtualBundle(self.vs, {
            tuple(-c for c in r): m for r, m in self.lines.items()})

    def tilde(self) -> "VirtualBundle":
        """Reduced bundle: subtract a trivial bundle of equal rank."""
        return self - VirtualBundle.trivial(self.vs, self.rank())

    # ---- exterior / symmetric powers ---------------------------------------------

    def _power_series(self, pmax: int, exterior: bool):
        one = VirtualBundle.trivial(self.vs, 1)
        arr = [one] + [VirtualBundle.zero(self.vs)] * pmax
        for root, mult in sorted(self.lines.items()):
            line = VirtualBundle.line(self.vs, LineElement(self.vs, root))
            if (mult > 0) == exterior:
                # Lambda_t(L) = 1 + t*L, and S_t(-L) = 1 - t*L
                factor = [one, line if exterior else -line]
            else:
                # S_t(L) = sum_k t^k L^k, and Lambda_t(-L) = sum_k (-t)^k L^k
                sgn = -1 if exterior else 1
                factor = [one]
                for k in range(1, pmax + 1):
                    factor.append(
                        VirtualBundle.line(
                            self.vs, LineElement(self.vs, root).scaled(k),
                            sgn ** k))
            for _ in range(abs(mult)):
                new = [VirtualBundle.zero(self.vs) for _ in range(pmax + 1)]
                for i in range(pmax + 1):
                    ai = arr[i]
                    if not ai:
                        continue
                    for j, f in enumerate(factor):
                        if i + j > pmax:
                            break
                        new[i + j] = new[i + j] + ai.tensor(f)
                arr = new
        return arr

    def lambda_powers(self, pmax: int):
        """[Lambda^0 V, ..., Lambda^pmax V] for the virtual bundle V."""
        return self._power_series(pmax, exterior=True)

    def sym_powers(self, pmax: int):
        """[S^0 V, ..., S^pmax V] for the virtual bundle V."""
        return self._power_series(pmax, exterior=False)

    def lambda_power(self, p: int) -> "VirtualBundle":
        return self.lambda_powers(p)[p]

    def sym_power(self, p: int) -> "VirtualBundle":
        return self.sym_powers(p)[p]

    # ---- Chern character ------------------------------------------------------------

    def ch(self) -> GradedPoly:
        """Sum over lines of multiplicity * exp(root), truncated at the caps."""
        out = GradedPoly.zero(self.vs)
        for root, mult in self.lines.items():
            out = out + ch_line(self.vs, root).scale(mult)
        return out

    def __str__(self):
        if not self.lines:
            return "0"
        return " ".join("%+d[%s]" % (m, LineElement(self.vs, r))
                        for r, m in sorted(self.lines.items(),
                                           key=lambda kv: str(kv[0])))

    __repr__ = __str__


def bundle_algebra(op: str, *operands) -> VirtualBundle:
    """Dispatch surface for the basic bundle operations."""
    if op == "sum":
        out = operands[0]
        for v in operands[1:]:
            out = out + v
        return out
    if op == "tensor":
        out = operands[0]
        for v in operands[1:]:
            out = out.tensor(v)
        return out
    if op == "dual":
        (v,) = operands
        return v.dual()
    if op == "tilde":
        (v,) = operands
        return v.tilde()
    raise ValueError("unknown bundle operation %r" % op)
