"""Deformation flows of Krylov chains and their Lax representation.

First flow (tau1) and second flow (tau2):

    da_n/dtau1 = -(b_{n+1}^2 - b_n^2)
    db_n/dtau1 = -b_n (a_n - a_{n-1}) / 2
    da_n/dtau2 = -[b_{n+1}^2 (a_{n+1} + a_n) - b_n^2 (a_n + a_{n-1})]
    db_n/dtau2 = -b_n (b_{n+1}^2 - b_{n-1}^2 + a_n^2 - a_{n-1}^2) / 2

with b_0 = b_d = 0. Both are generated by commutators with the antisymmetric
Lax matrices returned by lax_pair, and both preserve the spectrum.
"""
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.integrate as sint
import scipy.linalg as sla

from .errors import InvalidParameter
from .krylov import TridiagonalOperator
from .measure import Deformation

_METHODS = {"RK45": sint.RK45, "DOP853": sint.DOP853}

# b values below this are treated as numerically dead in diagnostics fits.
_B_FLOOR = 1e-280


@dataclass
class LaxPair:
    """Antisymmetric generators of the two flows (dense matrices)."""

    m1: np.ndarray
    m2: np.ndarray


def lax_pair(t):
    """Lax generators of the two flows for a chain.

    m1 is tridiagonal antisymmetric with entries b_n/2; m2 is pentadiagonal
    with (a_n + a_{n-1}) b_n / 2 on the first band and b_n b_{n+1} / 2 on the
    second. dT/dtau_k = [m_k, T].
    """
    d = t.d
    a, b = t.a, t.b
    m1 = np.zeros((d, d))
    m2 = np.zeros((d, d))
    for n in range(1, d):
        m1[n, n - 1] = 0.5 * b[n - 1]
        m1[n - 1, n] = -0.5 * b[n - 1]
        c = 0.5 * (a[n] + a[n - 1]) * b[n - 1]
        m2[n, n - 1] = c
        m2[n - 1, n] = -c
    for n in range(1, d - 1):
        c = 0.5 * b[n - 1] * b[n]
        m2[n + 1, n - 1] = c
        m2[n - 1, n + 1] = -c
    return LaxPair(m1, m2)


def toda_derivatives(a, b):
    """Right-hand sides of both flows: (da1, db1, da2, db2)."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    d = a.size
    bb = np.zeros(d + 1)
    bb[1:d] = b
    b2 = bb * bb
    da1 = -(b2[1:] - b2[:-1])
    db1 = -0.5 * b * (a[1:] - a[:-1])
    a_next = np.concatenate([a[1:], [0.0]])  # multiplied by b_d = 0
    a_prev = np.concatenate([[0.0], a[:-1]])
    da2 = -(b2[1:] * (a_next + a) - b2[:-1] * (a + a_prev))
    db2 = -0.5 * b * (b2[2:] - b2[:-2] + a[1:] ** 2 - a[:-1] ** 2)
    return da1, db1, da2, db2


@dataclass
class FlowResult:
    """Trajectory of a flow: one operator per requested waypoint plus
    isospectrality and step diagnostics."""

    path: list
    operators: list
    drift: np.ndarray  # max |eig shift| vs start, per waypoint
    spectral_radius: float
    n_steps: int
    step_min: float
    step_max: float
    success: bool
    message: str = ""
    log_b: bool = False

    @property
    def trajectory(self):
        """(tau, operator) pairs, one per requested waypoint."""
        return list(zip(self.path, self.operators))

    def diagnostics_dict(self):
        return {
            "success": self.success,
            "message": self.message,
            "n_steps": self.n_steps,
            "step_min": self.step_min,
            "step_max": self.step_max,
            "spectral_radius": self.spectral_radius,
            "log_b": self.log_b,
            "waypoints": [[p.tau1, p.tau2] for p in self.path],
            "eigenvalue_drift": [float(x) for x in self.drift],
        }


def _as_deformation(p):
    if isinstance(p, Deformation):
        return p
    return Deformation(float(p[0]), float(p[1]))


def _eigs(a, b):
    if a.size == 1:
        return a.copy()
    return sla.eigh_tridiagonal(a, np.abs(b), eigvals_only=True)


def flow(t0, path, rtol=1e-9, atol=1e-12, max_step=np.inf, method="RK45", log_b=False):
    """Integrate a chain along a piecewise-linear path in (tau1, tau2).

    path: sequence of Deformation (or (tau1, tau2) pairs); path[0] is where t0
    lives, one operator is recorded per waypoint. log_b integrates
    (a, ln b) instead of (a, b), which is exact for the same equations and
    keeps b positive, but requires all b > 0 at the start.

    Step-size underflow does not raise: the result carries success=False and
    the waypoints reached so far.
    """
    if method not in _METHODS:
        raise InvalidParameter(f"method must be one of {sorted(_METHODS)}")
    path = [_as_deformation(p) for p in path]
    d = t0.d
    a0, b0 = t0.a.copy(), t0.b.copy()
    if log_b and b0.size and b0.min() <= 0.0:
        raise InvalidParameter("log_b requires strictly positive b")
    eig0 = np.sort(_eigs(a0, b0))
    rho = max(t0.spectral_radius(), np.finfo(float).tiny)

    operators = [t0]
    drift = [0.0]
    n_steps = 0
    step_min = np.inf
    step_max = 0.0
    success = True
    message = ""

    if len(path) <= 1:
        return FlowResult(path or [Deformation()], operators, np.array(drift), rho,
                          0, 0.0, 0.0, True, "", log_b)

    # isospectral flows keep b <= spectral radius; capping the exponent far
    # above that bound leaves accepted steps untouched while keeping rejected
    # trial steps finite instead of overflowing to inf - inf
    lb_cap = math.log(rho) + 40.0

    def rhs(w1, w2):
        if log_b:
            def fun(_s, y):
                a = y[:d]
                b = np.exp(np.minimum(y[d:], lb_cap))
                da1, db1, da2, db2 = toda_derivatives(a, b)
                # d(ln b) = db/b; the b factor in db1/db2 cancels analytically
                dlb1 = -0.5 * (a[1:] - a[:-1])
                bb = np.zeros(d + 1)
                bb[1:d] = b
                b2 = bb * bb
                dlb2 = -0.5 * (b2[2:] - b2[:-2] + a[1:] ** 2 - a[:-1] ** 2)
                return np.concatenate([w1 * da1 + w2 * da2, w1 * dlb1 + w2 * dlb2])
        else:
            def fun(_s, y):
                a = y[:d]
                b = y[d:]
                da1, db1, da2, db2 = toda_derivatives(a, b)
                return np.concatenate([w1 * da1 + w2 * da2, w1 * db1 + w2 * db2])
        return fun

    y = np.concatenate([a0, np.log(b0) if log_b else b0])
    for k in range(1, len(path)):
        d1 = path[k].tau1 - path[k - 1].tau1
        d2 = path[k].tau2 - path[k - 1].tau2
        leg = float(np.hypot(d1, d2))
        if leg > 0.0:
            solver = _METHODS[method](rhs(d1, d2), 0.0, y, 1.0,
                                      rtol=rtol, atol=atol, max_step=max_step)
            while solver.status == "running":
                t_prev = solver.t
                msg = solver.step()
                if solver.status == "failed":
                    success = False
                    message = msg or "integrator step failed"
                    break
                h = (solver.t - t_prev) * leg
                n_steps += 1
                step_min = min(step_min, h)
                step_max = max(step_max, h)
            y = solver.y
        a = y[:d].copy()
        b = np.exp(y[d:]) if log_b else np.maximum(y[d:], 0.0)
        operators.append(TridiagonalOperator(a, b))
        drift.append(float(np.max(np.abs(np.sort(_eigs(a, b)) - eig0))) if d > 1 else
                     float(abs(a[0] - eig0[0])))
        if not success:
            path = path[: k + 1]
            break

    if not np.isfinite(step_min):
        step_min = 0.0
    return FlowResult(list(path), operators, np.array(drift), rho,
                      n_steps, step_min, step_max, success, message, log_b)


@dataclass
class FixedPointReport:
    """Decay-rate fit of ln b_n along a flow tail vs the spectral prediction."""

    flow_parameter: str  # "tau1" or "tau2"
    slopes_measured: np.ndarray
    slopes_predicted: np.ndarray
    ratios: np.ndarray
    defined: np.ndarray  # False where the fit window was unusable
    a_limits: np.ndarray
    n_tail_points: int

    def to_dict(self):
        def lst(x):
            return [None if not np.isfinite(v) else float(v) for v in np.asarray(x, dtype=float)]

        return {
            "flow_parameter": self.flow_parameter,
            "slopes_measured": lst(self.slopes_measured),
            "slopes_predicted": lst(self.slopes_predicted),
            "ratios": lst(self.ratios),
            "defined": [bool(v) for v in self.defined],
            "a_limits": [float(v) for v in self.a_limits],
            "n_tail_points": self.n_tail_points,
        }


def fixed_point_diagnostics(result, flow_parameter=None, tail_fraction=0.5, min_points=10):
    """Fit per-n exponential decay rates of b along the trajectory tail.

    Predictions: -(e_n - e_{n-1})/2 for the first flow with eigenvalues
    ascending, -(e_n^2 - e_{n-1}^2)/2 for the second flow with eigenvalues
    ordered by |e|. Entries whose window has fewer than min_points usable
    values (b above the float floor) are flagged undefined.
    """
    taus1 = np.array([p.tau1 for p in result.path])
    taus2 = np.array([p.tau2 for p in result.path])
    if flow_parameter is None:
        flow_parameter = "tau1" if np.ptp(taus1) >= np.ptp(taus2) else "tau2"
    if flow_parameter not in ("tau1", "tau2"):
        raise InvalidParameter("flow_parameter must be 'tau1' or 'tau2'")
    x_all = taus1 if flow_parameter == "tau1" else taus2
    if np.ptp(x_all) == 0.0:
        raise InvalidParameter("trajectory does not move along the requested parameter")

    t0 = result.operators[0]
    eig = np.sort(_eigs(t0.a, t0.b))
    if flow_parameter == "tau1":
        mu = eig
        pred = -0.5 * np.diff(mu)
    else:
        mu = eig[np.argsort(np.abs(eig), kind="stable")]
        pred = -0.5 * np.diff(mu**2)

    n_b = t0.d - 1
    start = int(np.floor(len(x_all) * (1.0 - tail_fraction)))
    start = min(start, len(x_all) - 2)
    slopes = np.full(n_b, np.nan)
    defined = np.zeros(n_b, dtype=bool)
    bmat = np.array([op.b for op in result.operators])  # (n_way, n_b)
    tail_len = 0
    for j in range(n_b):
        bj = bmat[start:, j]
        xj = x_all[start:]
        ok = bj > _B_FLOOR
        if ok.sum() < min_points or np.ptp(xj[ok]) == 0.0:
            continue
        coef = np.polyfit(xj[ok], np.log(bj[ok]), 1)
        slopes[j] = coef[0]
        defined[j] = True
        tail_len = max(tail_len, int(ok.sum()))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = slopes / pred
    return FixedPointReport(flow_parameter, slopes, pred, ratios, defined,
                            result.operators[-1].a.copy(), tail_len)
