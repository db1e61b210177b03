"""Eisenstein-basis decomposition, the theorem catalog records, and the
record verifier.

A ratio record checks one printed coefficient identity between characteristic
forms; a modularity record checks that an assembled q-series of forms lies in
the span of the weight's Eisenstein monomials; a vanishing record checks that
a series is identically zero.  All checks are exact: forms are reduced to the
class basis, constraints substituted, and compared coefficient by coefficient.
"""

from __future__ import annotations

import json
import time

from .scalars import QQ, Scalar, TWO_PI_I
from .series import GradedPoly, QZSeries, eisenstein
from .genera import (GenusInstance, a_n_series, assemble, genus_form,
                     make_instance)
from .symfunc import GroupSpec, apply_constraints, expand, to_class_basis
from .twists import twist_ch


# ---- Eisenstein basis and decomposition -----------------------------------------


def eisenstein_basis(vs, weight: int, q_cap: int):
    """All monomials E4^a E6^b with 4a + 6b = weight, q-expanded."""
    if weight % 2 or weight < 0:
        return []
    out = []
    e4 = eisenstein(vs, 4, q_cap)
    e6 = eisenstein(vs, 6, q_cap)
    for a in range(weight // 4, -1, -1):
        rem = weight - 4 * a
        if rem % 6 == 0:
            out.append(e4 ** a * e6 ** (rem // 6))
    return out


def _solve(matrix, rhs_polys):
    """Solve the small exact linear system M x = rhs with form-valued rhs."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    v = list(rhs_polys)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise ValueError("Eisenstein basis matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        v[col], v[piv] = v[piv], v[col]
        inv = QQ(1) / m[col][col]
        m[col] = [x * inv for x in m[col]]
        v[col] = v[col].scale(inv)
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
                v[r] = v[r] - v[col].scale(f)
    return v


def decompose(series: QZSeries, weight: int, q_cap: int):
    """Form-valued coefficients on the weight's Eisenstein monomials plus the
    exact residual; the series is modular iff the residual vanishes."""
    if not series.has_integer_exponents():
        raise ValueError(
            "half-integer q-exponents survived assembly; the paired sectors "
            "did not cancel")
    basis = eisenstein_basis(series.vs, weight, q_cap)
    if not basis:
        return [], series
    n = len(basis)
    matrix = [[b.coefficient(i).constant_term() for b in basis]
              for i in range(n)]
    rhs = [series.coefficient(i) for i in range(n)]
    coeffs = _solve(matrix, rhs)
    residual = series
    for c, b in zip(coeffs, basis):
        residual = residual - b * c
    return coeffs, residual


def residue_scale(n: int, j: int, parity: str) -> Scalar:
    """The exact scalar factors of the superconnection Chern-form identities."""
    if parity == "even":
        if n % 2:
            raise ValueError("even parity needs an even fiber dimension")
        fact = 1
        for i in range(2, j + 1):
            fact *= i
        return Scalar.from_rational(QQ((-1) ** j * fact)) * TWO_PI_I ** (-(n // 2))
    if parity == "odd":
        if n % 2 == 0:
            raise ValueError("odd parity needs an odd fiber dimension")
        dfact = 1
        for i in range(1, 2 * j, 2):
            dfact *= i
        val = Scalar.from_rational(QQ((-1) ** j * dfact, 2 ** (j - 1)) if j >= 1
                                   else QQ(2))
        return val * TWO_PI_I ** (-((n + 1) // 2))
    raise ValueError("parity must be 'even' or 'odd'")


# ---- records ---------------------------------------------------------------------


class TheoremRecord:
    """One catalog entry; see data/catalog.json for the shipped set."""

    __slots__ = ("id", "kind", "context", "genus", "constraints", "weight",
                 "q_slot", "an", "basis_factor", "lhs", "rhs", "paper_coeff",
                 "instances", "notes")

    def __init__(self, rid, kind, genus, instances, context="", constraints=(),
                 weight=None, q_slot=None, an=None, basis_factor=1,
                 lhs=(), rhs=(), paper_coeff=None, notes=""):
        self.id = rid
        self.kind = kind
        self.genus = genus
        self.instances = list(instances)
        self.context = context
        self.constraints = tuple(constraints)
        self.weight = weight
        self.q_slot = q_slot
        self.an = an
        self.basis_factor = QQ(basis_factor)
        self.lhs = list(lhs)
        self.rhs = list(rhs)
        self.paper_coeff = None if paper_coeff is None else QQ(paper_coeff)
        self.notes = notes

    @classmethod
    def from_dict(cls, d) -> "TheoremRecord":
        return cls(d["id"], d["kind"], d["genus"], d["instances"],
                   d.get("context", ""), d.get("constraints", ()),
                   d.get("weight"), d.get("q_slot"), d.get("an"),
                   d.get("basis_factor", 1), d.get("lhs", ()),
                   d.get("rhs", ()), d.get("paper_coeff"), d.get("notes", ""))

    def to_dict(self):
        d = {"id": self.id, "kind": self.kind, "genus": self.genus,
             "instances": self.instances}
        if self.context:
            d["context"] = self.context
        if self.constraints:
            d["constraints"] = list(self.constraints)
        if self.weight is not None:
            d["weight"] = self.weight
        if self.q_slot is not None:
            d["q_slot"] = self.q_slot
        if self.an is not None:
            d["an"] = self.an
        if self.basis_factor != 1:
            d["basis_factor"] = str(self.basis_factor)
        if self.lhs:
            d["lhs"] = self.lhs
        if self.rhs:
            d["rhs"] = self.rhs
        if self.paper_coeff is not None:
            d["paper_coeff"] = str(self.paper_coeff)
        if self.notes:
            d["notes"] = self.notes
        return d


class VerifyReport:
    __slots__ = ("id", "kind", "context", "weight", "constraints", "status",
                 "derived_coeffs", "paper_coeffs", "derived_basis_ratio",
                 "residual_witness", "wall_time_ms", "notes")

    def __init__(self, rid, kind, context, weight, constraints, status,
                 derived_coeffs, paper_coeffs, derived_basis_ratio,
                 residual_witness, wall_time_ms, notes=""):
        self.id = rid
        self.kind = kind
        self.context = context
        self.weight = weight
        self.constraints = list(constraints)
        self.status = status
        self.derived_coeffs = derived_coeffs
        self.paper_coeffs = paper_coeffs
        self.derived_basis_ratio = derived_basis_ratio
        self.residual_witness = residual_witness
        self.wall_time_ms = wall_time_ms
        self.notes = notes

    def to_dict(self):
        return {
            "id": self.id, "kind": self.kind, "context": self.context,
            "weight": self.weight, "constraints": self.constraints,
            "status": self.status,
            "derived_coeffs": self.derived_coeffs,
            "paper_coeffs": self.paper_coeffs,
            "derived_basis_ratio": self.derived_basis_ratio,
            "residual_witness": self.residual_witness,
            "wall_time_ms": self.wall_time_ms,
            "notes": self.notes,
        }

    @classmethod
    def from_dict(cls, d) -> "VerifyReport":
        return cls(d["id"], d["kind"], d["context"], d["weight"],
                   d["constraints"], d["status"], d["derived_coeffs"],
                   d["paper_coeffs"], d["derived_basis_ratio"],
                   d["residual_witness"], d["wall_time_ms"],
                   d.get("notes", ""))


# ---- verification ----------------------------------------------------------------


_INSTANCES = {}
_REDUCED = {}


def _instance(genus, spec, q_cap, zeta_cap) -> GenusInstance:
    key = (genus, tuple(sorted(spec.items())), q_cap, zeta_cap)
    got = _INSTANCES.get(key)
    if got is None:
        got = make_instance(genus, spec["dim"], spec.get("l", 0),
                            spec.get("j"), q_cap, zeta_cap)
        _INSTANCES[key] = got
    return got


def _reduced_side(inst, side, constraints):
    """Class-basis form of a weighted twist combination, constraints applied."""
    spec = GroupSpec.for_instance(inst)
    total = None
    for entry in side:
        mult = _parse_mult(entry.get("mult", "1"), inst)
        form = genus_form(inst, twist_ch(inst, entry["twist"]),
                          entry.get("delta", False))
        form = form.scale(mult)
        total = form if total is None else total + form
    cp = to_class_basis(total, spec)
    return apply_constraints(cp, constraints)


def _parse_mult(text, inst):
    text = str(text)
    if text.startswith("2^np"):
        rest = text[4:]
        offset = int(rest) if rest else 0
        return QQ(2) ** (len(inst.pair_names) + offset)
    return QQ(text)


def _first_term(cp):
    if not cp.terms:
        return None
    key = min(cp.terms)
    return key, cp.terms[key]


def _proportionality(lhs, rhs):
    """The unique c with lhs = c*rhs, or None when no such c exists."""
    if rhs.is_zero():
        return None
    key, val = _first_term(rhs)
    lv = lhs.terms.get(key)
    if lv is None:
        if lhs.is_zero():
            return QQ(0)
        return None
    c = lv / val
    return c if (lhs - rhs.scale(c)).is_zero() else None


def _witness(cp_or_series):
    if isinstance(cp_or_series, QZSeries):
        for e in cp_or_series.exponents24():
            p = cp_or_series.terms[e]
            if p:
                k = min(p.terms)
                return "q^(%s): %s -> %s" % (QQ(e, 24), p.vs.unpack(k),
                                             p.terms[k])
        return None
    if cp_or_series.is_zero():
        return None
    key, val = _first_term(cp_or_series)
    mono = "*".join("%s^%d" % (n, e) for n, e in
                    zip(cp_or_series.spec.gen_names, key) if e)
    return "%s -> %s" % (mono or "1", val)


def _an_zeta_cap(n):
    return n or 0


def _assembled(inst) -> QZSeries:
    key = ("assembled", id(inst))
    got = _REDUCED.get(key)
    if got is None:
        got = assemble(inst)
        _REDUCED[key] = got
    return got


def _an(inst, n) -> QZSeries:
    key = ("an", id(inst), n)
    got = _REDUCED.get(key)
    if got is None:
        got = a_n_series(inst, n)
        _REDUCED[key] = got
    return got


def _canonicalize(series: QZSeries, inst, constraints) -> QZSeries:
    """Replace every q-coefficient by its canonical representative modulo the
    constraint ideal (identity when there are no constraints)."""
    if not constraints:
        return series
    spec = GroupSpec.for_instance(inst)

    def reduce_poly(p):
        return expand(apply_constraints(to_class_basis(p, spec), constraints))

    return series.map_coefficients(reduce_poly)


def verify_theorem(record: TheoremRecord, q_cap: int = 4) -> VerifyReport:
    """Verify one record; never asserts the source is wrong, only reports the
    derived value next to the printed one."""
    t0 = time.monotonic()
    if record.kind == "ratio":
        report = _verify_ratio(record, q_cap)
    elif record.kind == "modularity":
        report = _verify_modularity(record, q_cap)
    elif record.kind == "vanishing":
        report = _verify_vanishing(record, q_cap)
    else:
        raise ValueError("unknown record kind %r" % record.kind)
    report.wall_time_ms = int((time.monotonic() - t0) * 1000)
    return report


def _verify_ratio(record, q_cap):
    derived = []
    status = "match"
    witness = None
    for spec in record.instances:
        zc = _an_zeta_cap(record.an) if record.an is not None else 0
        inst = _instance(record.genus, spec, q_cap, zc)
        gspec = GroupSpec.for_instance(inst)
        if record.an is not None:
            series = _an(inst, record.an)
            lhs_p = series.coefficient(record.q_slot)
            rhs_p = series.coefficient(0)
            lhs = apply_constraints(to_class_basis(lhs_p, gspec),
                                    record.constraints)
            rhs = apply_constraints(to_class_basis(rhs_p, gspec),
                                    record.constraints)
        else:
            lhs = _reduced_side(inst, record.lhs, record.constraints)
            rhs = _reduced_side(inst, record.rhs, record.constraints)
        if rhs.is_zero() and lhs.is_zero():
            raise ValueError("record %s instance %s is degenerate (0 = c*0)"
                             % (record.id, spec))
        c = _proportionality(lhs, rhs)
        if c is None:
            status = "residual-nonzero"
            witness = _witness(lhs - rhs.scale(record.paper_coeff))
            derived.append(None)
            continue
        derived.append(c)
        if c != record.paper_coeff:
            status = "mismatch" if status != "residual-nonzero" else status
    ok = [c for c in derived if c is not None]
    if ok and any(c != ok[0] for c in ok):
        raise ValueError("record %s derives unstable coefficients %s"
                         % (record.id, derived))
    ratio = None
    if ok:
        ratio = str(ok[0] * record.basis_factor)
    return VerifyReport(
        record.id, record.kind, record.context, record.weight,
        record.constraints, status,
        [None if c is None else str(c) for c in derived],
        [str(record.paper_coeff)], ratio, witness, 0, record.notes)


def _verify_modularity(record, q_cap):
    status = "match"
    witness = None
    weights = []
    for spec in record.instances:
        if record.an is not None:
            zc = _an_zeta_cap(record.an)
            inst = _instance(record.genus, spec, q_cap, zc)
            series = _an(inst, record.an)
            weight = inst.weight_of_a(record.an)
        else:
            inst = _instance(record.genus, spec, q_cap, 0)
            series = _assembled(inst)
            weight = inst.weight
        weights.append(weight)
        series = _canonicalize(series, inst, record.constraints)
        _, residual = decompose(series, weight, q_cap)
        if not residual.is_zero():
            status = "residual-nonzero"
            witness = _witness(residual)
    return VerifyReport(
        record.id, record.kind, record.context,
        weights[0] if weights else record.weight, record.constraints, status,
        [], [], None, witness, 0, record.notes)


def _verify_vanishing(record, q_cap):
    status = "match"
    witness = None
    for spec in record.instances:
        zc = _an_zeta_cap(record.an)
        inst = _instance(record.genus, spec, q_cap, zc)
        series = _canonicalize(_an(inst, record.an), inst, record.constraints)
        if not series.is_zero():
            status = "residual-nonzero"
            witness = _witness(series)
    return VerifyReport(
        record.id, record.kind, record.context, record.weight,
        record.constraints, status, [], [], None, witness, 0, record.notes)


# ---- catalog I/O -------------------------------------------------------------------


def load_catalog(path=None):
    if path is None:
        from importlib import resources
        text = resources.files("qgenus").joinpath("data/catalog.json") \
            .read_text("utf-8")
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    data = json.loads(text)
    return [TheoremRecord.from_dict(d) for d in data["records"]]


def load_pinned(path=None):
    if path is None:
        from importlib import resources
        text = resources.files("qgenus").joinpath("data/pinned.json") \
            .read_text("utf-8")
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    return json.loads(text)
