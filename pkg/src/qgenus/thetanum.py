"""Double-precision evaluation of the four Jacobi theta functions via their
triple products, the v-derivative of the first one, and numeric checks of the
S and T transformation laws."""

from __future__ import annotations

import cmath
import math
import random

_TWO_PI_I = 2j * math.pi


class ThetaSample:
    """One evaluation point: argument v, modulus tau (Im > 0), and the
    truncation count of the infinite products."""

    __slots__ = ("v", "tau", "n_terms")

    def __init__(self, v, tau, n_terms=80):
        tau = complex(tau)
        if tau.imag <= 0:
            raise ValueError("tau must lie in the upper half plane")
        if n_terms < 1:
            raise ValueError("n_terms must be positive")
        self.v = complex(v)
        self.tau = tau
        self.n_terms = int(n_terms)


KINDS = ("theta", "theta1", "theta2", "theta3", "theta_prime")


def _qpow(tau: complex, e: float) -> complex:
    """exp(2 pi i tau e): fractional q powers as functions of tau, so that the
    tau -> tau+1 monodromy is kept (a principal branch of q**e would lose it)."""
    return cmath.exp(_TWO_PI_I * tau * e)


def theta_eval(kind: str, sample: ThetaSample) -> complex:
    """Truncated product value; the truncation error is controlled by the
    first omitted factor's distance from 1 (q^n_terms-sized)."""
    v, tau, n = sample.v, sample.tau, sample.n_terms
    q = cmath.exp(_TWO_PI_I * tau)
    ep = cmath.exp(_TWO_PI_I * v)
    em = 1 / ep
    if kind == "theta":
        out = 2 * _qpow(tau, 0.125) * cmath.sin(math.pi * v)
        for j in range(1, n + 1):
            qj = q ** j
            out *= (1 - qj) * (1 - ep * qj) * (1 - em * qj)
        return out
    if kind == "theta1":
        out = 2 * _qpow(tau, 0.125) * cmath.cos(math.pi * v)
        for j in range(1, n + 1):
            qj = q ** j
            out *= (1 - qj) * (1 + ep * qj) * (1 + em * qj)
        return out
    if kind in ("theta2", "theta3"):
        s = -1 if kind == "theta2" else 1
        out = 1 + 0j
        for j in range(1, n + 1):
            qj = q ** j
            qh = _qpow(tau, j - 0.5)
            out *= (1 - qj) * (1 + s * ep * qh) * (1 + s * em * qh)
        return out
    if kind == "theta_prime":
        # product rule on 2 q^(1/8) sin(pi v) * prod f_j(v)
        prod = 1 + 0j
        dlog = 0j  # sum f_j'/f_j
        for j in range(1, n + 1):
            qj = q ** j
            fp = 1 - ep * qj
            fm = 1 - em * qj
            prod *= (1 - qj) * fp * fm
            dlog += (-_TWO_PI_I * ep * qj) / fp + (_TWO_PI_I * em * qj) / fm
        sin = cmath.sin(math.pi * v)
        cos = cmath.cos(math.pi * v)
        return 2 * _qpow(tau, 0.125) * (math.pi * cos * prod + sin * prod * dlog)
    raise ValueError("unknown theta kind %r" % kind)


def _root_quarter(tau: complex) -> complex:
    """(tau / i)^(1/2) on the principal branch."""
    return cmath.exp(0.5 * cmath.log(tau / 1j))


LAWS = ("T-shift", "S-inversion")


def check_law(kind: str, law: str, sample: ThetaSample) -> float:
    """|LHS - RHS| for the printed transformation law of one theta kind."""
    v, tau, n = sample.v, sample.tau, sample.n_terms
    e8 = cmath.exp(1j * math.pi / 4)
    if law == "T-shift":
        lhs = theta_eval(kind, ThetaSample(v, tau + 1, n))
        if kind in ("theta", "theta1", "theta_prime"):
            rhs = e8 * theta_eval(kind, sample)
        elif kind == "theta2":
            rhs = theta_eval("theta3", sample)
        else:
            rhs = theta_eval("theta2", sample)
        return abs(lhs - rhs)
    if law == "S-inversion":
        stau = -1 / tau
        factor = _root_quarter(tau) * cmath.exp(1j * math.pi * tau * v * v)
        scaled = ThetaSample(tau * v, tau, n)
        if kind == "theta":
            lhs = theta_eval("theta", ThetaSample(v, stau, n))
            rhs = (1 / 1j) * factor * theta_eval("theta", scaled)
        elif kind == "theta1":
            lhs = theta_eval("theta1", ThetaSample(v, stau, n))
            rhs = factor * theta_eval("theta2", scaled)
        elif kind == "theta2":
            lhs = theta_eval("theta2", ThetaSample(v, stau, n))
            rhs = factor * theta_eval("theta1", scaled)
        elif kind == "theta3":
            lhs = theta_eval("theta3", ThetaSample(v, stau, n))
            rhs = factor * theta_eval("theta3", scaled)
        else:
            # derivative law is stated at v = 0
            lhs = theta_eval("theta_prime", ThetaSample(0.0, stau, n))
            rhs = (1 / 1j) * _root_quarter(tau) * tau \
                * theta_eval("theta_prime", ThetaSample(0.0, tau, n))
        return abs(lhs - rhs)
    raise ValueError("unknown law %r" % law)


def random_samples(count: int = 20, n_terms: int = 80, seed: int = 2024):
    """Pseudo-random sample points bounded away from the real axis."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 2.0))
        v = complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5))
        out.append(ThetaSample(v, tau, n_terms))
    return out


def run_law_checks(count: int = 20, n_terms: int = 80, seed: int = 2024):
    """Worst residual per (kind, law) over the sample set."""
    samples = random_samples(count, n_terms, seed)
    results = {}
    for kind in KINDS:
        for law in LAWS:
            worst = 0.0
            for s in samples:
                if kind == "theta_prime" and law == "S-inversion":
                    s = ThetaSample(0.0, s.tau, s.n_terms)
                worst = max(worst, check_law(kind, law, s))
            results[(kind, law)] = worst
    return results
