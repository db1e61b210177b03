#!/usr/bin/env python3
"""Regenerate src/qgenus/data/catalog.json and pinned.json.

Runs every record once; the pinned file freezes the derived status and
coefficients so the verifier can distinguish expected findings from
regressions.  Aborts if any record that must match its printed value (per the
acceptance contract) fails to.
"""

import json
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from qgenus.modular import TheoremRecord, verify_theorem, residue_scale  # noqa: E402

CE = ["c1W=0", "c1T=0", "p1T=p1W"]
CO = ["c1W=0", "p1T=p1W"]

SPIN_A = {4: "120", 6: "-252", 8: "240", 10: "-132"}
SPIN_B = {4: "2160", 6: "-16632", 8: "61920", 10: "-117288"}
RAW_A = {4: "240", 6: "-504", 8: "480", 10: "-264"}
RAW_B = {4: "2160", 6: "-16632", 8: "61920", 10: "-117288"}
ELL_B = {4: "2160", 6: "-16632", 8: "61920", 10: "-135432"}

records = []
must_match = set()


def add(rid, match=False, **kw):
    kw["id"] = rid
    records.append(kw)
    if match:
        must_match.add(rid)


def spin_lhs_a():
    return [{"twist": "Ttilde", "delta": True, "mult": "1"},
            {"twist": "Ttilde+L2Ttilde", "mult": "2^np"}]


def spin_lhs_b():
    return [{"twist": "A0", "delta": True, "mult": "1"},
            {"twist": "A1", "mult": "2^np+1"}]


def spin_rhs():
    return [{"twist": "one", "delta": True, "mult": "1"},
            {"twist": "one", "mult": "2^np+1"}]


def tw(name):
    return [{"twist": name, "mult": "1"}]


# ---- section 2, spin -----------------------------------------------------

spin_blocks = [
    ("Q", "det-line", {6: "2.4", 10: "2.5", 14: "2.6", 18: "2.7"}),
    ("Qtilde", "gerbe", {5: "2.10", 9: "2.11", 13: "2.12", 17: "2.13"}),
    ("Qhat", "eta", {7: "2.15", 11: "2.16", 15: "2.17", 19: "2.18"}),
]
for genus, context, dims in spin_blocks:
    for dim, thm in dims.items():
        w = 2 * ((dim + 3) // 4)
        note = ""
        if context == "eta":
            note = ("additive integration constants of the underlying "
                    "invariants are not visible at form level")
        add("THM-%sa" % thm, match=True, kind="ratio", genus=genus,
            instances=[{"dim": dim}], context=context, weight=w, q_slot=1,
            basis_factor="2", lhs=spin_lhs_a(), rhs=spin_rhs(),
            paper_coeff=SPIN_A[w], notes=note)
        add("THM-%sb" % thm, match=(w < 10), kind="ratio", genus=genus,
            instances=[{"dim": dim}], context=context, weight=w, q_slot=2,
            lhs=spin_lhs_b(), rhs=spin_rhs(), paper_coeff=SPIN_B[w],
            notes=note)

# ---- section 2, spin-c -----------------------------------------------------

spinc_dims = {"2.20": (6, "det-line"), "2.21": (5, "gerbe"),
              "2.22": (7, "eta"), "2.23": (10, "det-line"),
              "2.24": (9, "gerbe"), "2.25": (11, "eta"),
              "2.26": (14, "det-line"), "2.27": (13, "gerbe"),
              "2.28": (15, "eta"), "2.29": (18, "det-line"),
              "2.30": (17, "gerbe"), "2.31": (19, "eta")}
for thm, (dim, context) in spinc_dims.items():
    w = 2 * ((dim + 3) // 4)
    for sub, genus, cons, twist, slot, table in (
            ("a", "Qc", ["p1T=3p1L"], "B1", 1, RAW_A),
            ("b", "Qc", ["p1T=3p1L"], "B2", 2, RAW_B),
            ("c", "Qcstar", ["p1T=p1L"], "B3", 1, RAW_A),
            ("d", "Qcstar", ["p1T=p1L"], "B4", 2, RAW_B)):
        expect = w < 10 or slot == 1
        add("THM-%s%s" % (thm, sub), match=expect, kind="ratio", genus=genus,
            instances=[{"dim": dim}], context=context, weight=w, q_slot=slot,
            constraints=cons, lhs=tw(twist), rhs=tw("one"),
            paper_coeff=table[w])

# ---- section 3 ---------------------------------------------------------------

ell_a0 = {  # d-l -> (weight, instances as (d, l))
    4: [(6, 2), (7, 3)], 6: [(6, 0), (8, 2)], 8: [(8, 0), (10, 2)],
    10: [(10, 0)]}
ell_a1 = {3: [(6, 3), (7, 4)], 5: [(6, 1), (8, 3)], 7: [(8, 1)],
          9: [(10, 1)]}

for case, (dl, pairs) in enumerate(sorted(ell_a0.items()), start=1):
    w = dl
    inst = [{"dim": 2 * d - 2, "l": l} for d, l in pairs]
    add("THM-3.6-%da" % case, match=True, kind="ratio", genus="Ell",
        instances=inst, context="det-line", weight=w, q_slot=1,
        constraints=CE, lhs=tw("Lm1Wd*A2"), rhs=tw("Lm1Wd"),
        paper_coeff=RAW_A[w])
    add("THM-3.6-%db" % case, match=True, kind="ratio", genus="Ell",
        instances=inst, context="det-line", weight=w, q_slot=2,
        constraints=CE, lhs=tw("Lm1Wd*A3"), rhs=tw("Lm1Wd"),
        paper_coeff=ELL_B[w])
for case, (dl, pairs) in enumerate(sorted(ell_a1.items()), start=1):
    w = dl + 1
    inst = [{"dim": 2 * d - 2, "l": l} for d, l in pairs]
    add("THM-3.7-%d" % case, match=True, kind="ratio", genus="Ell",
        instances=inst, context="det-line", weight=w, q_slot=1, an=1,
        constraints=CE, paper_coeff=RAW_A[w],
        notes="first zeta coefficient, assembled route")

odd_a0 = {4: [(4, 0), (6, 2)], 6: [(6, 0), (8, 2)], 8: [(8, 0), (10, 2)],
          10: [(10, 0), (12, 2)]}
odd_a1 = {3: [(4, 1), (6, 3)], 5: [(6, 1), (8, 3)], 7: [(8, 1), (10, 3)],
          9: [(10, 1), (12, 3)]}
for tag, genus, dim_of, context in (
        ("T", "Elltilde", lambda d: 2 * d - 3, "gerbe"),
        ("B", "Ellbar", lambda d: 2 * d - 1, "eta")):
    for case, (dl, pairs) in enumerate(sorted(odd_a0.items()), start=1):
        w = dl
        inst = [{"dim": dim_of(d), "l": l} for d, l in pairs]
        a_tw, b_tw = ("Lm1Wd*A8", "Lm1Wd*A9") if tag == "T" else \
            ("Lm1Wd*A11", "Lm1Wd*A12")
        add("THM-3.6%s-%da" % (tag, case), match=True, kind="ratio",
            genus=genus, instances=inst, context=context, weight=w, q_slot=1,
            constraints=CO, lhs=tw(a_tw), rhs=tw("Lm1Wd"),
            paper_coeff=RAW_A[w])
        add("THM-3.6%s-%db" % (tag, case), match=True, kind="ratio",
            genus=genus, instances=inst, context=context, weight=w, q_slot=2,
            constraints=CO, lhs=tw(b_tw), rhs=tw("Lm1Wd"),
            paper_coeff=ELL_B[w])
    for case, (dl, pairs) in enumerate(sorted(odd_a1.items()), start=1):
        w = dl + 1
        inst = [{"dim": dim_of(d), "l": l} for d, l in pairs]
        add("THM-3.7%s-%d" % (tag, case), match=True, kind="ratio",
            genus=genus, instances=inst, context=context, weight=w, q_slot=1,
            an=1, constraints=CO, paper_coeff=RAW_A[w],
            notes="first zeta coefficient, assembled route")

# ---- section 4 ------------------------------------------------------------------

s4_inst = {4: [(3, 1), (2, 2)], 6: [(5, 1), (4, 2)], 8: [(6, 2), (4, 4)],
           10: [(6, 4), (8, 2)]}
S4_A = {4: "120", 6: "-252", 8: "480", 10: "-132"}
for genus, parity, dim_of in (("Q1", "even", lambda r: 2 * r),
                              ("Q2", "odd", lambda r: 2 * r + 1)):
    thm = "4.2" if genus == "Q1" else "4.3"
    for w, pairs in sorted(s4_inst.items()):
        inst = [{"dim": dim_of(r), "j": j} for r, j in pairs]
        scales = "; ".join(
            "scale(n=%d,j=%d)=%s" % (dim_of(r), j,
                                     residue_scale(dim_of(r), j, parity))
            for r, j in pairs)
        add("THM-%s-%da" % (thm, w), match=(w in (4, 6) or w == 10),
            kind="ratio", genus=genus, instances=inst,
            context="residue-" + parity, weight=w, q_slot=1,
            basis_factor="2", lhs=spin_lhs_a(), rhs=spin_rhs(),
            paper_coeff=S4_A[w], notes=scales)
        add("THM-%s-%db" % (thm, w), match=(w < 10), kind="ratio",
            genus=genus, instances=inst, context="residue-" + parity,
            weight=w, q_slot=2, lhs=spin_lhs_b(), rhs=spin_rhs(),
            paper_coeff=SPIN_B[w], notes=scales)

# ---- modularity ---------------------------------------------------------------

for genus, dims in (("Q", (6, 10, 14, 18)), ("Qtilde", (5, 9, 13, 17)),
                    ("Qhat", (7, 11, 15, 19))):
    for dim in dims:
        add("MOD-%s-%d" % (genus.upper(), dim), match=True,
            kind="modularity", genus=genus, instances=[{"dim": dim}])
for genus, cons in (("Qc", ["p1T=3p1L"]), ("Qcstar", ["p1T=p1L"])):
    for dim in (5, 6, 7, 9, 10, 11, 13, 14, 15, 17, 18, 19):
        add("MOD-%s-%d" % ("QC" if genus == "Qc" else "QCS", dim),
            match=True, kind="modularity", genus=genus,
            instances=[{"dim": dim}], constraints=cons)
for tag, genus, dim, cons in (("E52", "Ell", 8, CE), ("E62", "Ell", 10, CE),
                              ("T62", "Elltilde", 9, CO),
                              ("B62", "Ellbar", 11, CO)):
    for n in range(5):
        add("MOD-AN-%s-n%d" % (tag, n), match=True, kind="modularity",
            genus=genus, instances=[{"dim": dim, "l": 2}], an=n,
            constraints=cons)

# ---- vanishing -----------------------------------------------------------------

vanishing = [
    ("VAN-E-41-n0", "Ell", 6, 1, 0, CE, "weight 3 (odd)"),
    ("VAN-E-32-n1", "Ell", 4, 2, 1, CE, "weight 2 (nonzero, <= 2)"),
    ("VAN-E-34-n0", "Ell", 4, 4, 0, CE, "weight -1 (negative)"),
    ("VAN-E-52-n2", "Ell", 8, 2, 2, CE, "weight 5 (odd)"),
    ("VAN-T-41-n0", "Elltilde", 5, 1, 0, CO, "weight 3 (odd)"),
    ("VAN-T-32-n1", "Elltilde", 3, 2, 1, CO, "weight 2 (nonzero, <= 2)"),
    ("VAN-B-41-n0", "Ellbar", 7, 1, 0, CO, "weight 3 (odd)"),
    ("VAN-B-32-n1", "Ellbar", 5, 2, 1, CO, "weight 2 (nonzero, <= 2)"),
]
for rid, genus, dim, l, n, cons, note in vanishing:
    add(rid, match=True, kind="vanishing", genus=genus,
        instances=[{"dim": dim, "l": l}], an=n, constraints=cons, notes=note)


def main():
    out_dir = os.path.join(os.path.dirname(__file__), "..", "src", "qgenus",
                           "data")
    pinned = {}
    failures = []
    t_total = time.time()
    for raw in records:
        rec = TheoremRecord.from_dict(raw)
        t0 = time.time()
        rep = verify_theorem(rec)
        dt = time.time() - t0
        pinned[rec.id] = {
            "status": rep.status,
            "derived_coeffs": rep.derived_coeffs,
            "derived_basis_ratio": rep.derived_basis_ratio,
        }
        flag = ""
        if raw["id"] in must_match and rep.status != "match":
            failures.append(raw["id"])
            flag = "  <-- EXPECTED MATCH"
        print("%-18s %-16s %6.1fs %s%s" %
              (rec.id, rep.status, dt,
               ",".join(c or "?" for c in rep.derived_coeffs or []), flag))
    print("total %.1fs" % (time.time() - t_total))
    if failures:
        print("ABORT: records failed that must match:", failures)
        sys.exit(1)
    with open(os.path.join(out_dir, "catalog.json"), "w") as fh:
        json.dump({"records": records}, fh, indent=1)
        fh.write("\n")
    with open(os.path.join(out_dir, "pinned.json"), "w") as fh:
        json.dump(pinned, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print("wrote catalog (%d records) and pinned expectations" % len(records))


if __name__ == "__main__":
    main()
