"""Closed-form chains and complexities for the symmetry-algebra families.

Each family has Lanczos coefficients that stay in closed form along a flow:
SU2 / HEISENBERG_WEYL / SL2R_* under the first flow (tau1), the alternating
families under the second flow (tau2). Coefficients always satisfy the flow
equations exactly; tests verify this against `toda.toda_derivatives`.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np
from scipy.special import expit

from .errors import DomainError, InvalidParameter
from .krylov import TridiagonalOperator
from .measure import Deformation


class Family(str, Enum):
    SU2 = "su2"
    HEISENBERG_WEYL = "heisenberg_weyl"
    SL2R_STABLE = "sl2r_stable"
    SL2R_UNSTABLE = "sl2r_unstable"
    SL2R_MARGINAL = "sl2r_marginal"
    ALTERNATING = "alternating"
    ALTERNATING_MARGINAL = "alternating_marginal"


_FIRST_FLOW = {Family.SU2, Family.HEISENBERG_WEYL, Family.SL2R_STABLE,
               Family.SL2R_UNSTABLE, Family.SL2R_MARGINAL}


@dataclass(frozen=True)
class AlgebraSpec:
    """Parameters of one closed-form family.

    gamma0: rate/energy scale (for ALTERNATING it is the initial gamma(0)
    coupling of the odd b's). theta0: mixing angle (SU2: in (0, pi);
    SL2R_STABLE: > 0; SL2R_UNSTABLE: >= 0). alpha0: initial coupling
    (HEISENBERG_WEYL and the alternating families). delta: diagonal offset.
    h: positive weight (SL2R families). d: chain length (SU2). cutoff:
    truncation length for the infinite-dimensional families.

    Convention note: SL2R_MARGINAL has chain coupling gamma0/(2 + gamma0*tau1),
    i.e. gamma0/2 at tau1 = 0; this is the parameterization under which the
    marginal closed-form complexity below is exact.
    """

    family: Family
    gamma0: float = None
    theta0: float = None
    alpha0: float = None
    delta: float = 0.0
    h: float = None
    d: int = None
    cutoff: int = 256

    def __post_init__(self):
        f = Family(self.family)
        object.__setattr__(self, "family", f)
        need_pos = {"gamma0": self.gamma0}
        if f is Family.SU2:
            if self.d is None or self.d < 2:
                raise InvalidParameter("SU2 needs chain length d >= 2")
            if self.theta0 is None or not (0.0 < self.theta0 < math.pi):
                raise InvalidParameter("SU2 needs theta0 in (0, pi)")
        elif f is Family.HEISENBERG_WEYL:
            if self.alpha0 is None or self.alpha0 <= 0:
                raise InvalidParameter("HEISENBERG_WEYL needs alpha0 > 0")
        elif f in (Family.SL2R_STABLE, Family.SL2R_UNSTABLE, Family.SL2R_MARGINAL):
            if self.h is None or self.h <= 0:
                raise InvalidParameter("SL2R families need h > 0")
            if f is Family.SL2R_STABLE and (self.theta0 is None or self.theta0 <= 0):
                raise InvalidParameter("SL2R_STABLE needs theta0 > 0")
            if f is Family.SL2R_UNSTABLE and (self.theta0 is None or self.theta0 < 0):
                raise InvalidParameter("SL2R_UNSTABLE needs theta0 >= 0")
        elif f is Family.ALTERNATING:
            if self.alpha0 is None or self.alpha0 <= 0:
                raise InvalidParameter("ALTERNATING needs alpha0 > 0 (initial even coupling)")
            # gamma0 here is gamma(0); equality with alpha0 is the marginal family
            if self.gamma0 is not None and self.gamma0 == self.alpha0:
                raise InvalidParameter("alpha0 == gamma0 is ALTERNATING_MARGINAL")
        elif f is Family.ALTERNATING_MARGINAL:
            if self.alpha0 is None or self.alpha0 <= 0:
                raise InvalidParameter("ALTERNATING_MARGINAL needs alpha0 > 0")
            need_pos = {}
        if f is not Family.ALTERNATING_MARGINAL:
            for name, v in need_pos.items():
                if v is None or v <= 0:
                    raise InvalidParameter(f"{f.value} needs {name} > 0")
        if f is not Family.SU2 and (self.cutoff is None or self.cutoff < 64):
            raise InvalidParameter("infinite-chain families need cutoff >= 64")

    def chain_length(self):
        return self.d if self.family is Family.SU2 else self.cutoff

    def tau1_pole(self):
        """Location of the closed form's pole on the tau1 axis (None if none
        for tau1 >= 0)."""
        if self.family is Family.SL2R_UNSTABLE:
            return (0.5 * math.pi + math.atan(math.sinh(self.theta0))) / self.gamma0
        return None

    def validity_window(self):
        """(lo, hi) range of the flow parameter where the closed forms hold."""
        f = self.family
        if f is Family.SU2 or f is Family.HEISENBERG_WEYL:
            return (-math.inf, math.inf)
        if f is Family.SL2R_STABLE:
            return (-math.atanh(1.0 / math.cosh(self.theta0)) / self.gamma0, math.inf)
        if f is Family.SL2R_UNSTABLE:
            s0 = math.sinh(self.theta0)
            phi = math.atan(s0)
            return ((phi - 0.5 * math.pi) / self.gamma0, (phi + 0.5 * math.pi) / self.gamma0)
        if f is Family.SL2R_MARGINAL:
            return (-2.0 / self.gamma0, math.inf)
        if f is Family.ALTERNATING:
            q = self.alpha0**2 - self.gamma0**2
            c0 = (self.alpha0**2 + self.gamma0**2) / abs(q)
            return (-math.atanh(1.0 / c0) / abs(q), math.inf)
        return (-0.5 / self.alpha0**2, math.inf)  # ALTERNATING_MARGINAL


def _check_tau(spec, tau):
    if not isinstance(tau, Deformation):
        raise InvalidParameter("tau must be a Deformation")
    first = spec.family in _FIRST_FLOW
    if first and tau.tau2 != 0.0:
        raise DomainError(f"{spec.family.value} closed forms hold for tau2 = 0 only")
    if not first and tau.tau1 != 0.0:
        raise DomainError(f"{spec.family.value} closed forms hold for tau1 = 0 only")
    s = tau.tau1 if first else tau.tau2
    lo, hi = spec.validity_window()
    if not (lo < s < hi):
        raise DomainError(
            f"{spec.family.value}: flow parameter {s:g} outside validity window ({lo:g}, {hi:g})")
    return s


def alternating_couplings(alpha0, gamma0, tau2):
    """alpha^2(tau2), gamma^2(tau2) of the alternating chain along the second
    flow, from initial couplings (alpha0, gamma0); alpha^2 - gamma^2 is
    conserved. Raises DomainError past the blow-up point."""
    a2, g2 = alpha0**2, gamma0**2
    if a2 == g2:
        den = 1.0 + 2.0 * a2 * tau2
        if den <= 0.0:
            raise DomainError("marginal alternating chain blows up at tau2 = -1/(2 alpha0^2)")
        s = a2 / den
        return s, s
    q = a2 - g2
    c0 = (a2 + g2) / abs(q)
    t = math.tanh(abs(q) * tau2)
    if 1.0 + c0 * t <= 0.0:
        raise DomainError("alternating chain outside its tau2 validity window")
    c = (c0 + t) / (1.0 + c0 * t)
    hi, lo = 0.5 * abs(q) * (c + 1.0), 0.5 * abs(q) * (c - 1.0)
    return (hi, lo) if a2 > g2 else (lo, hi)


def _alternating_couplings(spec, tau2):
    g0 = spec.gamma0 if spec.family is Family.ALTERNATING else spec.alpha0
    return alternating_couplings(spec.alpha0, g0, tau2)


def exact_coefficients(spec, tau):
    """Chain coefficients of the family at deformation tau (closed form)."""
    s = _check_tau(spec, tau)
    f = spec.family
    if f is Family.SU2:
        d = spec.d
        u = spec.gamma0 * s
        c0 = math.cos(spec.theta0)
        den = math.cosh(u) + c0 * math.sinh(u)
        sin_th = math.sin(spec.theta0) / den
        cos_th = (c0 + math.tanh(u)) / (1.0 + c0 * math.tanh(u))
        gam, alp = spec.gamma0 * cos_th, spec.gamma0 * sin_th
        n = np.arange(d)
        a = 2.0 * gam * (n - 0.5 * (d - 1)) + spec.delta
        nb = np.arange(1, d)
        b = alp * np.sqrt(nb * (d - nb))
        return TridiagonalOperator(a, b)
    if f is Family.HEISENBERG_WEYL:
        d = spec.cutoff
        alp = spec.alpha0 * math.exp(-spec.gamma0 * s)
        dlt = spec.delta - (spec.alpha0**2 / (2.0 * spec.gamma0)) * (
            1.0 - math.exp(-2.0 * spec.gamma0 * s))
        n = np.arange(d)
        a = 2.0 * spec.gamma0 * n + dlt
        b = alp * np.sqrt(np.arange(1, d))
        return TridiagonalOperator(a, b)
    if f in (Family.SL2R_STABLE, Family.SL2R_UNSTABLE, Family.SL2R_MARGINAL):
        d, h = spec.cutoff, spec.h
        if f is Family.SL2R_STABLE:
            u = spec.gamma0 * s
            c0 = math.cosh(spec.theta0)
            den = math.cosh(u) + c0 * math.sinh(u)
            alp = spec.gamma0 * math.sinh(spec.theta0) / den
            gam = spec.gamma0 * (c0 + math.tanh(u)) / (1.0 + c0 * math.tanh(u))
        elif f is Family.SL2R_UNSTABLE:
            u = spec.gamma0 * s
            s0 = math.sinh(spec.theta0)
            den = math.cos(u) + s0 * math.sin(u)
            alp = spec.gamma0 * math.cosh(spec.theta0) / den
            gam = spec.gamma0 * (s0 * math.cos(u) - math.sin(u)) / den
        else:
            gam = alp = spec.gamma0 / (2.0 + spec.gamma0 * s)
        n = np.arange(d)
        a = 2.0 * gam * (n + h) + spec.delta
        nb = np.arange(1, d)
        b = alp * np.sqrt(nb * (nb + 2.0 * h - 1.0))
        return TridiagonalOperator(a, b)
    # alternating families: zero diagonal, parity-split couplings
    a2, g2 = _alternating_couplings(spec, s)
    d = spec.cutoff
    i = np.arange(1, d)
    b = np.sqrt(np.where(i % 2 == 1, g2, a2) * i)
    return TridiagonalOperator(np.zeros(d), b)


def exact_complexity(spec, tau, t):
    """Closed-form spread complexity K(t) at deformation tau.

    ALTERNATING (non-marginal) has no closed form for the full chain and
    raises DomainError; evolve its coefficients numerically instead (the
    paired SUSY sector complexities in `susy` do stay closed).
    """
    s = _check_tau(spec, tau)
    t = np.asarray(t, dtype=np.float64)
    f = spec.family
    g0 = spec.gamma0
    if f is Family.SU2:
        u = g0 * s
        den = math.cosh(u) + math.cos(spec.theta0) * math.sinh(u)
        return (spec.d - 1) * (math.sin(spec.theta0) * np.sin(g0 * t) / den) ** 2
    if f is Family.HEISENBERG_WEYL:
        return (spec.alpha0 / g0 * math.exp(-g0 * s) * np.sin(g0 * t)) ** 2
    if f is Family.SL2R_STABLE:
        u = g0 * s
        den = math.cosh(u) + math.cosh(spec.theta0) * math.sinh(u)
        return 2.0 * spec.h * (math.sinh(spec.theta0) * np.sin(g0 * t) / den) ** 2
    if f is Family.SL2R_UNSTABLE:
        u = g0 * s
        den = math.cos(u) + math.sinh(spec.theta0) * math.sin(u)
        return 2.0 * spec.h * (math.cosh(spec.theta0) * np.sinh(g0 * t) / den) ** 2
    if f is Family.SL2R_MARGINAL:
        return 2.0 * spec.h * (g0 * t / (2.0 + g0 * s)) ** 2
    if f is Family.ALTERNATING_MARGINAL:
        a2, _ = _alternating_couplings(spec, s)
        return a2 * t**2
    raise DomainError("ALTERNATING has no closed-form complexity; evolve numerically")


class TwoLevelExact(NamedTuple):
    a0: float
    a1: float
    b1: float
    K: np.ndarray
    Kbar: float


def two_level_exact(e0, e1, tau, t):
    """All chain data of a deformed two-level measure in closed form.

    Weights p follow exp(-f(E, tau)); K(t) = 4 p0 p1 sin^2(omega t / 2) and
    its time average is 2 p0 p1.
    """
    if e1 <= e0:
        raise InvalidParameter("need e1 > e0")
    if not isinstance(tau, Deformation):
        raise InvalidParameter("tau must be a Deformation")
    df = tau.exponent(e1) - tau.exponent(e0)
    p0 = expit(df)  # 1 / (1 + exp(-df))
    p1 = expit(-df)
    omega = e1 - e0
    a0 = e0 * p0 + e1 * p1
    a1 = e1 * p0 + e0 * p1
    b1 = omega * math.sqrt(p0 * p1)
    k = 4.0 * p0 * p1 * np.sin(0.5 * omega * np.asarray(t, dtype=np.float64)) ** 2
    return TwoLevelExact(float(a0), float(a1), float(b1), k, 2.0 * p0 * p1)
