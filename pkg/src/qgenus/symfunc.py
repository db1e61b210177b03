"""Faithful reduction of per-group-symmetric polynomials to characteristic
class generators, and substitution of the constraint relations.

Complex groups reduce to elementary symmetric generators e1..em of the roots;
real groups (whose polynomials are invariant under permutations and sign flips
of the roots) reduce to Pontryagin generators p1..pm, the elementary symmetric
functions of the squared roots.  The single line class u passes through as a
power basis.  Reduction is triangular elimination against the lexicographic
leading monomial, so the representation is exact and unique: re-expanding
reproduces the input identically.
"""

from __future__ import annotations

from .scalars import QQ
from .series import GradedPoly, VarSpace


class SymGroup:
    __slots__ = ("kind", "tag", "indices", "gen_names")

    def __init__(self, kind, tag, indices):
        if kind not in ("complex", "real", "single"):
            raise ValueError("unknown group kind %r" % kind)
        self.kind = kind
        self.tag = tag
        self.indices = tuple(indices)
        if kind == "single":
            self.gen_names = (tag,)
        else:
            prefix = "e" if kind == "complex" else "p"
            self.gen_names = tuple("%s%d(%s)" % (prefix, i + 1, tag)
                                   for i in range(len(indices)))


class GroupSpec:
    """Ordered symmetric-group structure over a variable universe."""

    __slots__ = ("vs", "groups", "gen_names")

    def __init__(self, vs: VarSpace, groups):
        self.vs = vs
        self.groups = tuple(groups)
        names = []
        for g in self.groups:
            names.extend(g.gen_names)
        self.gen_names = tuple(names)

    @classmethod
    def for_instance(cls, inst) -> "GroupSpec":
        vs = inst.vs
        groups = []
        tidx = [vs.index(n) for n in inst.pair_names]
        if tidx:
            kind = "complex" if inst.family == "ell_even" else "real"
            groups.append(SymGroup(kind, "T", tidx))
        widx = [vs.index(n) for n in inst.w_names]
        if widx:
            groups.append(SymGroup("complex", "W", widx))
        if inst.l_name:
            groups.append(SymGroup("single", inst.l_name,
                                   [vs.index(inst.l_name)]))
        return cls(vs, groups)


class ClassPoly:
    """Polynomial in the characteristic-class generators of a GroupSpec."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: GroupSpec, terms=None):
        self.spec = spec
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if c:
                    self.terms[tuple(k)] = c

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, ClassPoly) and self.terms == other.terms
                and self.spec.gen_names == other.spec.gen_names)

    def __add__(self, other):
        t = dict(self.terms)
        for k, c in other.terms.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return ClassPoly(self.spec, t)

    def __neg__(self):
        return ClassPoly(self.spec, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return ClassPoly(self.spec, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                v = out.get(k, 0) + c1 * c2
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return ClassPoly(self.spec, out)

    def __pow__(self, n: int):
        out = ClassPoly.one(self.spec)
        for _ in range(n):
            out = out * self
        return out

    @classmethod
    def one(cls, spec):
        return cls(spec, {tuple(0 for _ in spec.gen_names): QQ(1)})

    @classmethod
    def generator(cls, spec, name, power=1, coeff=1):
        k = [0] * len(spec.gen_names)
        try:
            k[spec.gen_names.index(name)] = power
        except ValueError:
            raise ValueError("unknown generator %r" % name) from None
        return cls(spec, {tuple(k): QQ(coeff)})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            mono = "*".join(
                n if e == 1 else "%s^%d" % (n, e)
                for n, e in zip(self.spec.gen_names, k) if e)
            parts.append(str(c) if not mono else "%s*%s" % (c, mono))
        return " + ".join(parts)

    __repr__ = __str__


# ---- elementary symmetric expansions --------------------------------------------


_E_CACHE = {}


def _elementary(m: int, k: int):
    """e_k in m variables as {exponent tuple: 1}."""
    key = (m, k)
    got = _E_CACHE.get(key)
    if got is None:
        from itertools import combinations
        got = {}
        for combo in combinations(range(m), k):
            e = [0] * m
            for i in combo:
                e[i] = 1
            got[tuple(e)] = 1
        _E_CACHE[key] = got
    return got


_EMONO_CACHE = {}


def _expand_e_monomial(gen, m: int):
    """Product e1^gen[0] * ... * em^gen[m-1] as {exponent tuple: int}."""
    key = (m, tuple(gen))
    got = _EMONO_CACHE.get(key)
    if got is not None:
        return got
    out = {tuple(0 for _ in range(m)): 1}
    for k, power in enumerate(gen, start=1):
        ek = _elementary(m, k)
        for _ in range(power):
            new = {}
            for e1, c1 in out.items():
                for e2, c2 in ek.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    new[e] = new.get(e, 0) + c1 * c2
            out = new
    _EMONO_CACHE[key] = out
    return out


def _reduce_symmetric(bucket, m: int, tag: str):
    """Triangular elimination of a symmetric polynomial in m variables into
    elementary-symmetric exponents.  bucket: {exponent tuple: coeff}."""
    out = {}
    work = dict(bucket)
    while work:
        lead = max(work)
        c = work.pop(lead)
        for i in range(m - 1):
            if lead[i] < lead[i + 1]:
                raise ValueError(
                    "polynomial is not symmetric in group %s: leading "
                    "monomial %s vs transposition (%d %d)" % (tag, lead, i + 1, i + 2))
        gen = tuple(lead[i] - lead[i + 1] for i in range(m - 1)) + (lead[m - 1],)
        expansion = _expand_e_monomial(gen, m)
        for exps, k in expansion.items():
            if exps == lead:
                continue
            v = work.get(exps, 0) - c * k
            if v:
                work[exps] = v
            else:
                work.pop(exps, None)
        out[gen] = out.get(gen, 0) + c
    return out


def _check_group_symmetry(poly: GradedPoly, group: SymGroup):
    """Exact invariance under adjacent transpositions (and sign flips for
    real groups); raises with the offending operation."""
    vs = poly.vs
    idx = group.indices
    items = [(vs.unpack(k), c) for k, c in poly.terms.items()]
    if group.kind == "real":
        for pos, i in enumerate(idx):
            for exps, _ in items:
                if exps[i] % 2:
                    raise ValueError(
                        "polynomial is odd under the sign flip of %s"
                        % vs.names[i])
    for pos in range(len(idx) - 1):
        i, j = idx[pos], idx[pos + 1]
        swapped = {}
        for exps, c in items:
            e = list(exps)
            e[i], e[j] = e[j], e[i]
            swapped[tuple(e)] = c
        original = {exps: c for exps, c in items}
        if swapped != original:
            raise ValueError(
                "polynomial is not symmetric under the transposition (%s %s)"
                % (vs.names[i], vs.names[j]))


def to_class_basis(poly: GradedPoly, spec: GroupSpec) -> ClassPoly:
    """Unique representation of a per-group-symmetric polynomial in the
    elementary-symmetric / Pontryagin / power generators."""
    vs = poly.vs
    grouped_idx = [i for g in spec.groups for i in g.indices]
    for k in poly.terms:
        exps = vs.unpack(k)
        for i, e in enumerate(exps):
            if e and i not in grouped_idx:
                raise ValueError(
                    "variable %s is outside every symmetric group" % vs.names[i])
    for g in spec.groups:
        if g.kind != "single":
            _check_group_symmetry(poly, g)

    # work representation: {(done gens..., remaining exps): coeff}
    work = {}
    for k, c in poly.terms.items():
        work[((), vs.unpack(k))] = c
    for g in spec.groups:
        idx = g.indices
        m = len(idx)
        new = {}
        buckets = {}
        for (done, exps), c in work.items():
            gexp = tuple(exps[i] for i in idx)
            rest = tuple(0 if i in idx else e for i, e in enumerate(exps))
            bkey = (done, rest)
            buckets.setdefault(bkey, {})
            buckets[bkey][gexp] = buckets[bkey].get(gexp, 0) + c
        for (done, rest), bucket in buckets.items():
            if g.kind == "single":
                for gexp, c in bucket.items():
                    key = (done + (gexp[0],), rest)
                    new[key] = new.get(key, 0) + c
                continue
            if g.kind == "real":
                bucket = {tuple(e // 2 for e in gexp): c
                          for gexp, c in bucket.items()}
            reduced = _reduce_symmetric(bucket, m, g.tag)
            for gen, c in reduced.items():
                if not c:
                    continue
                key = (done + gen, rest)
                new[key] = new.get(key, 0) + c
        work = new
    terms = {}
    for (done, rest), c in work.items():
        if any(rest):
            raise AssertionError("unreduced variables survived")
        if c:
            terms[done] = terms.get(done, 0) + c
    return ClassPoly(spec, terms)


def expand(cp: ClassPoly) -> GradedPoly:
    """Re-expand a class polynomial into root variables (round-trip inverse)."""
    vs = cp.spec.vs
    out = GradedPoly.zero(vs)
    nvars = len(vs.names)
    for key, c in cp.terms.items():
        mono = {tuple(0 for _ in range(nvars)): QQ(c)}
        pos = 0
        for g in cp.spec.groups:
            m = len(g.indices)
            if g.kind == "single":
                gen = (key[pos],)
                pos += 1
                exp_map = {(key[pos - 1],): 1}
            else:
                gen = key[pos:pos + m]
                pos += m
                exp_map = _expand_e_monomial(gen, m)
            new = {}
            for e1, c1 in mono.items():
                for e2, c2 in exp_map.items():
                    e = list(e1)
                    for slot, i in enumerate(g.indices):
                        step = e2[slot] if g.kind != "single" else e2[0]
                        if g.kind == "real":
                            step *= 2
                        e[i] += step
                    e = tuple(e)
                    new[e] = new.get(e, QQ(0)) + c1 * c2
            mono = new
        out = out + GradedPoly(vs, {vs.pack(e): v for e, v in mono.items()})
    return out


# ---- constraint substitution ----------------------------------------------------


_KNOWN_CONSTRAINTS = ("c1W=0", "c1T=0", "p1T=p1W", "p1T=3p1L", "p1T=p1L")


def _gen_or_zero(spec, name, power=1, coeff=1):
    if name in spec.gen_names:
        return ClassPoly.generator(spec, name, power, coeff)
    return ClassPoly(spec)


def _substitution(spec: GroupSpec, constraint: str):
    """(eliminated generator, replacement) for one constraint, or None when
    the generator does not occur in this universe."""
    tkind = None
    for g in spec.groups:
        if g.tag == "T":
            tkind = g.kind
    if constraint == "c1W=0":
        return ("e1(W)", ClassPoly(spec)) if "e1(W)" in spec.gen_names else None
    if constraint == "c1T=0":
        return ("e1(T)", ClassPoly(spec)) if "e1(T)" in spec.gen_names else None
    if constraint == "p1T=p1W":
        p1w = _gen_or_zero(spec, "e1(W)", 2) - _gen_or_zero(spec, "e2(W)", 1, 2)
        if tkind == "real":
            if "p1(T)" not in spec.gen_names:
                return None
            return ("p1(T)", p1w)
        if "e2(T)" not in spec.gen_names:
            return None
        # p1 = e1^2 - 2 e2 on the complex side; eliminate e2(T)
        repl = (_gen_or_zero(spec, "e1(T)", 2) - p1w).scale(QQ(1, 2))
        return ("e2(T)", repl)
    if constraint in ("p1T=3p1L", "p1T=p1L"):
        if "p1(T)" not in spec.gen_names:
            return None
        mult = 3 if constraint == "p1T=3p1L" else 1
        lname = None
        for g in spec.groups:
            if g.kind == "single":
                lname = g.gen_names[0]
        if lname is None:
            raise ValueError("constraint %s needs a line class" % constraint)
        return ("p1(T)", ClassPoly.generator(spec, lname, 2, mult))
    raise ValueError("unknown constraint %r" % constraint)


def _substitute(cp: ClassPoly, gen: str, repl: ClassPoly) -> ClassPoly:
    gi = cp.spec.gen_names.index(gen)
    acc = ClassPoly(cp.spec)
    pow_cache = {}
    for key, coeff in cp.terms.items():
        k = key[gi]
        base = list(key)
        base[gi] = 0
        mono = ClassPoly(cp.spec, {tuple(base): coeff})
        if k:
            if k not in pow_cache:
                pow_cache[k] = repl ** k
            mono = mono * pow_cache[k]
        acc = acc + mono
    return acc


def apply_constraints(cp: ClassPoly, constraints) -> ClassPoly:
    """Substitute the constraint relations; c1 eliminations run first, and
    each replacement polynomial is reduced by the constraints already applied
    so the result is canonical modulo the whole constraint ideal."""
    for c in constraints:
        if c not in _KNOWN_CONSTRAINTS:
            raise ValueError("unknown constraint %r" % c)
    ordered = [c for c in constraints if c.startswith("c1")] + \
              [c for c in constraints if not c.startswith("c1")]
    subs = []
    for c in ordered:
        sub = _substitution(cp.spec, c)
        if sub is None:
            continue
        gen, repl = sub
        for g0, r0 in subs:
            repl = _substitute(repl, g0, r0)
        subs.append((gen, repl))
    out = cp
    for gen, repl in subs:
        out = _substitute(out, gen, repl)
    return out
