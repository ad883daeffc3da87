"""Dynamical and time-averaged observables.

Survival amplitudes, rate functions and overlaps are computed directly from
the spectral measure in log space, so they stay finite for weights spanning
thousands of orders of magnitude. Spread complexity and Krylov entropy act
on evolved amplitude vectors. The time-averaged complexity uses the exact
spectral formula; a finite-window quadrature is provided for validation.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidParameter
from .krylov import KrylovState, TridiagonalOperator, eigendecompose, evolve_grid
from .measure import Deformation, SpectralMeasure, deform, log_partition

_KBAR_CONSISTENCY = 1e-10


@dataclass(frozen=True)
class TimeSeries:
    """A sampled observable: values over a strictly increasing time grid."""

    times: np.ndarray
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        t = np.asarray(self.times, dtype=np.float64)
        v = np.asarray(self.values)
        if not np.iscomplexobj(v):
            v = v.astype(np.float64)
        if t.ndim != 1 or v.ndim != 1 or t.size != v.size:
            raise InvalidParameter("times and values must be 1d of equal length")
        if t.size and not np.all(np.diff(t) > 0):
            raise InvalidParameter("times must be strictly increasing")
        if not np.all(np.isfinite(t)):
            raise InvalidParameter("times must be finite")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)
        t.setflags(write=False)
        v.setflags(write=False)

    @property
    def is_complex(self):
        return np.iscomplexobj(self.values)

    def __len__(self):
        return self.times.size


def _amplitudes(state):
    if isinstance(state, KrylovState):
        return state.amplitudes
    return np.asarray(state)


def survival_amplitude(m, tau, t):
    """Survival amplitude of the deformed measure, Z_tau(it)/Z_tau(0).

    `t` may be a scalar or an array; equals amplitude 0 of the evolved
    Krylov state built from the same measure.
    """
    md = m if tau is None else deform(m, tau)
    t_arr = np.asarray(t, dtype=np.float64)
    z = 1j * t_arr
    out = np.exp(log_partition(md, z) - log_partition(md, 0.0))
    return complex(out) if t_arr.ndim == 0 else out


def spread_complexity(state):
    """Mean Krylov level Sum_n n |phi_n|^2 (last axis indexes levels)."""
    amp = _amplitudes(state)
    p = np.abs(amp) ** 2
    k = p @ np.arange(p.shape[-1])
    return float(k) if np.ndim(k) == 0 else k


def krylov_entropy(state):
    """Shannon entropy of the Krylov occupation distribution (0 ln 0 := 0)."""
    amp = _amplitudes(state)
    p = np.abs(amp) ** 2
    s = -np.sum(np.where(p > 0.0, p * np.log(np.where(p > 0.0, p, 1.0)), 0.0), axis=-1)
    return float(s) if np.ndim(s) == 0 else s


@dataclass(frozen=True)
class AveragedComplexity:
    """Infinite-time average of the spread complexity with its level
    decomposition: kbar = Sum_m weight_m * k_levels_m, where weight_m is the
    squared first eigenvector component and k_levels_m the mean Krylov level
    of eigenstate m."""

    kbar: float
    energies: np.ndarray
    weights: np.ndarray
    k_levels: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.energies, dtype=np.float64)
        w = np.asarray(self.weights, dtype=np.float64)
        k = np.asarray(self.k_levels, dtype=np.float64)
        if not (e.shape == w.shape == k.shape) or e.ndim != 1:
            raise InvalidParameter("per-level arrays must share one shape")
        d = e.size
        if np.any(k < -1e-12) or np.any(k > d - 1 + 1e-12):
            raise InvalidParameter("per-level complexities must lie in [0, d-1]")
        if abs(self.kbar - float(w @ k)) > _KBAR_CONSISTENCY * max(1.0, abs(self.kbar)):
            raise InvalidParameter("kbar inconsistent with its level decomposition")
        for arr in (e, w, k):
            arr.setflags(write=False)
        object.__setattr__(self, "energies", e)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "k_levels", k)

    @property
    def per_level(self):
        return list(zip(self.energies, self.weights, self.k_levels))


def time_averaged_complexity(t_op, eigsys=None):
    """Exact infinite-time average of K(t) from the eigensystem.

    Valid for non-degenerate spectra (automatic for b_n > 0): cross terms
    dephase and only diagonal weights survive.
    """
    if not isinstance(t_op, TridiagonalOperator):
        raise InvalidParameter("expected a TridiagonalOperator")
    es = eigsys if eigsys is not None else eigendecompose(t_op)
    u = es.vectors
    weights = u[0] ** 2
    k_levels = np.arange(t_op.d) @ (u**2)
    kbar = float(weights @ k_levels)
    return AveragedComplexity(kbar, es.eigenvalues.copy(), weights, k_levels)


def time_averaged_complexity_quadrature(t_op, total_time=None, samples_per_period=20,
                                        eigsys=None, max_chunk=1 << 22):
    """Finite-window trapezoid average of K(t); validation for the spectral
    formula. Default window is 1e4 / (minimum level gap), sampled at
    `samples_per_period` points per shortest oscillation period."""
    if t_op.d == 1:
        return 0.0
    es = eigsys if eigsys is not None else eigendecompose(t_op)
    ev = es.eigenvalues
    omega_max = float(ev[-1] - ev[0])
    if omega_max == 0.0:
        return 0.0
    if total_time is None:
        min_gap = float(np.min(np.diff(ev)))
        if min_gap <= 0.0:
            raise DomainError("degenerate spectrum has no finite dephasing time")
        total_time = 1e4 / min_gap
    dt = (2.0 * math.pi / omega_max) / samples_per_period
    n_pts = int(math.ceil(total_time / dt)) + 1
    times = np.linspace(0.0, total_time, n_pts)
    n = np.arange(t_op.d)
    acc = 0.0
    rows = max(1, max_chunk // t_op.d)
    for lo in range(0, n_pts, rows):
        chunk = times[lo:lo + rows]
        amp = evolve_grid(t_op, chunk, eigsys=es)
        k = (np.abs(amp) ** 2) @ n
        if lo == 0:
            k[0] *= 0.5
        if lo + rows >= n_pts:
            k[-1] *= 0.5
        acc += float(np.sum(k))
    return acc / (n_pts - 1)


def rate_function(m, beta, t, n_sites):
    """Dynamical free-energy rate -(1/N) ln |Z(beta+it)/Z(beta)|^2."""
    if n_sites <= 0:
        raise InvalidParameter("n_sites must be positive")
    t_arr = np.asarray(t, dtype=np.float64)
    lz_beta = np.real(log_partition(m, beta))
    lz_t = log_partition(m, beta + 1j * t_arr)
    out = -(2.0 / n_sites) * (np.real(lz_t) - lz_beta)
    return float(out) if t_arr.ndim == 0 else out


def overlap_with_undeformed(m, beta, t):
    """Overlap of the coherent-Gibbs state at inverse temperature beta with
    the undeformed (infinite-temperature) state after time t:
    Z(beta/2 + it) / sqrt(Z(0) Z(beta)).

    `beta` may be a plain number or a first-flow Deformation; a nonzero
    second-flow component is rejected (no closed overlap identity there).
    """
    if isinstance(beta, Deformation):
        if beta.tau2 != 0.0:
            raise DomainError("overlap identity requires a pure first-flow deformation")
        beta = beta.tau1
    beta = float(beta)
    t_arr = np.asarray(t, dtype=np.float64)
    lz0 = np.real(log_partition(m, 0.0))
    lz_beta = np.real(log_partition(m, beta))
    num = log_partition(m, 0.5 * beta + 1j * t_arr)
    out = np.exp(num - 0.5 * (lz0 + lz_beta))
    return complex(out) if t_arr.ndim == 0 else out


def _bisect_monotone(g, lo, hi, tol=1e-12, iters=200):
    """Root of monotone g on [lo, hi]; assumes g(lo), g(hi) straddle zero."""
    glo = g(lo)
    if glo == 0.0:
        return lo
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0.0 or hi - lo < tol:
            return mid
        if (gm < 0.0) == (glo < 0.0):
            lo, glo = mid, gm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def lee_yang_boundary(coupling, beta_grid):
    """Zeros of the dynamical partition function in the complex-temperature
    strip: points (t, beta) with |sinh(2J(beta+it))| = 1, t in (0, pi/2J].

    For each beta the modulus is monotone on the two half-segments split at
    t = pi/(4J), so each root is found by bisection there; betas whose
    modulus never reaches 1 contribute no points. Returns an (n, 2) array
    with columns (t, beta)."""
    if coupling <= 0:
        raise InvalidParameter("coupling must be positive")
    j2 = 2.0 * coupling
    t_half = math.pi / (2.0 * j2)  # pi/(4J), peak of sin^2
    points = []
    for beta in np.atleast_1d(np.asarray(beta_grid, dtype=np.float64)):
        s2 = math.sinh(j2 * beta) ** 2

        def g(t, s2=s2):
            return s2 + math.sin(j2 * t) ** 2 - 1.0

        if s2 > 1.0:
            continue
        roots = []
        # rising segment (0, pi/4J]: g goes from s2-1 <= 0 up to s2
        if g(t_half) >= 0.0:
            roots.append(_bisect_monotone(g, 0.0, t_half))
        # falling segment [pi/4J, pi/2J]: g goes from s2 down to s2-1
        if g(t_half) > 0.0 >= g(2.0 * t_half):
            roots.append(_bisect_monotone(g, t_half, 2.0 * t_half))
        for r in roots:
            if r > 0.0:
                points.append((r, float(beta)))
    if not points:
        return np.empty((0, 2))
    return np.asarray(points, dtype=np.float64)


def lee_yang_beta_c(coupling):
    """Inverse temperature where the zero boundary touches the real axis
    (sinh 2J beta = 1), found by bisection."""
    if coupling <= 0:
        raise InvalidParameter("coupling must be positive")
    j2 = 2.0 * coupling

    def g(beta):
        return math.sinh(j2 * beta) - 1.0

    hi = 1.0 / coupling
    while g(hi) < 0.0:
        hi *= 2.0
    return _bisect_monotone(g, 0.0, hi, tol=1e-15)
