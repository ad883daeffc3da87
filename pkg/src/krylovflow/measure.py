"""Spectral measures on finite energy supports and their deformations.

A measure is a list of (energy, log weight) pairs. Weights are kept
unnormalized in log space so that partition-function data survives
deformations with exponents of order 10^3; normalization happens on demand
via log-sum-exp.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, ResourceLimit

# Two support points closer than this (relative to max(1, |e|)) are one level.
MERGE_RTOL = 1e-10

# Hard caps for the lattice builders.
BRUTE_MAX_SITES = 24
TRANSFER_MAX_COLS = 10


@dataclass(frozen=True)
class Deformation:
    """Flow-parameter pair (tau1, tau2) weighting E and E^2 in the exponent.

    The deformed weight of a level at energy E is exp(log_w - tau1*E - tau2*E^2);
    a coherent Gibbs deformation is (beta, 0).
    """

    tau1: float = 0.0
    tau2: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.tau1) and math.isfinite(self.tau2)):
            raise InvalidParameter("deformation parameters must be finite")

    def __add__(self, other):
        return Deformation(self.tau1 + other.tau1, self.tau2 + other.tau2)

    def exponent(self, energies):
        """f(E, tau) = tau1*E + tau2*E^2 evaluated on an energy array."""
        e = np.asarray(energies)
        return self.tau1 * e + self.tau2 * e * e


class SpectralMeasure:
    """Point measure: strictly increasing energies with log weights.

    Instances are immutable; `meta` carries builder provenance for
    serialization and is not used in any numerics.
    """

    def __init__(self, energies, log_weights, meta=None):
        e = np.array(energies, dtype=np.float64)
        lw = np.array(log_weights, dtype=np.float64)
        if e.ndim != 1 or lw.shape != e.shape:
            raise InvalidParameter("energies and log_weights must be equal-length 1d arrays")
        if e.size == 0:
            raise InvalidParameter("measure needs at least one level")
        if not np.all(np.isfinite(e)) or not np.all(np.isfinite(lw)):
            raise InvalidParameter("energies and log_weights must be finite")
        gaps = np.diff(e)
        if np.any(gaps <= 0):
            raise InvalidParameter("energies must be strictly increasing; use from_points to sort/merge")
        tol = MERGE_RTOL * np.maximum(1.0, np.abs(e[1:]))
        if np.any(gaps <= tol):
            raise InvalidParameter("energies closer than the merge tolerance; use from_points")
        e.setflags(write=False)
        lw.setflags(write=False)
        self.energies = e
        self.log_weights = lw
        self.meta = dict(meta) if meta else {}

    @classmethod
    def from_points(cls, energies, log_weights, meta=None):
        """Sort levels and merge any within the relative tolerance,
        adding their weights (log-sum-exp)."""
        e = np.asarray(energies, dtype=np.float64)
        lw = np.asarray(log_weights, dtype=np.float64)
        if e.size == 0:
            raise InvalidParameter("measure needs at least one level")
        order = np.argsort(e, kind="stable")
        e = e[order]
        lw = lw[order]
        out_e = [e[0]]
        out_lw = [lw[0]]
        for i in range(1, e.size):
            if e[i] - out_e[-1] <= MERGE_RTOL * max(1.0, abs(e[i])):
                out_lw[-1] = np.logaddexp(out_lw[-1], lw[i])
            else:
                out_e.append(e[i])
                out_lw.append(lw[i])
        return cls(out_e, out_lw, meta=meta)

    @classmethod
    def from_eigenvalues(cls, eigenvalues, meta=None):
        """Measure with unit weight per eigenvalue (degeneracies merge)."""
        eig = np.asarray(eigenvalues, dtype=np.float64)
        return cls.from_points(eig, np.zeros(eig.shape), meta=meta)

    @property
    def d(self):
        return self.energies.size

    @property
    def log_norm(self):
        """log sum of weights."""
        m = self.log_weights.max()
        return m + np.log(np.sum(np.exp(self.log_weights - m)))

    @property
    def weights(self):
        """Normalized weights (sum to 1)."""
        w = np.exp(self.log_weights - self.log_norm)
        return w / w.sum()  # renormalize away the last ulp

    def spectral_radius(self):
        return float(np.max(np.abs(self.energies)))

    def __eq__(self, other):
        return (
            isinstance(other, SpectralMeasure)
            and np.array_equal(self.energies, other.energies)
            and np.array_equal(self.log_weights, other.log_weights)
        )

    def __repr__(self):
        return f"SpectralMeasure(d={self.d}, E in [{self.energies[0]:g}, {self.energies[-1]:g}])"


def deform(m, d):
    """Apply a Deformation: log_w -> log_w - tau1*E - tau2*E^2.

    Energies are untouched, so deformations compose additively and commute.
    """
    if not isinstance(d, Deformation):
        raise InvalidParameter("d must be a Deformation")
    meta = dict(m.meta)
    tau = meta.get("deformation", (0.0, 0.0))
    meta["deformation"] = (tau[0] + d.tau1, tau[1] + d.tau2)
    return SpectralMeasure(m.energies, m.log_weights - d.exponent(m.energies), meta=meta)


def log_partition(m, z):
    """log Z(z) = log sum_n exp(log_w_n - z*E_n) for complex z.

    Evaluated with a shifted sum (anchor at the max real exponent) so it is
    finite wherever float64 allows. Accepts scalar or array z; complex return.
    """
    z = np.asarray(z, dtype=np.complex128)
    scalar = z.ndim == 0
    zf = z.reshape(-1)
    r = m.log_weights[None, :] - zf[:, None] * m.energies[None, :]
    anchor = r.real.max(axis=1)
    with np.errstate(divide="ignore"):
        out = anchor + np.log(np.sum(np.exp(r - anchor[:, None]), axis=1))
    return out[0] if scalar else out.reshape(z.shape)


# ---------------------------------------------------------------------------
# Ising model builders. Degeneracy helpers return exact integer counts; the
# measure builders take logs of those integers (math.log handles big ints).
# ---------------------------------------------------------------------------


def fully_connected_degeneracies(n_sites):
    """Exact degeneracy per |magnetization| sector of the zero-field
    fully-connected model, keyed by M = |sum sigma| in {N, N-2, ..., 0}.

    Sectors +-M are combined (factor 2 for M > 0)."""
    if n_sites < 2 or n_sites % 2 != 0:
        raise InvalidParameter("n_sites must be even and >= 2")
    out = {}
    for m_abs in range(0, n_sites + 1, 2):
        k = (n_sites - m_abs) // 2
        c = math.comb(n_sites, k)
        out[m_abs] = c if m_abs == 0 else 2 * c
    return out


def fully_connected_ising(n_sites, coupling):
    """Measure of H = -(J/2N)(M^2 - N) over magnetization sectors.

    d = N/2 + 1 levels; weights are exact sector dimensions.
    """
    if coupling == 0:
        raise InvalidParameter("coupling must be nonzero")
    deg = fully_connected_degeneracies(n_sites)
    energies = []
    logw = []
    for m_abs, g in deg.items():
        energies.append(-(coupling / (2.0 * n_sites)) * (m_abs * m_abs - n_sites))
        logw.append(math.log(g))
    meta = {"model": "fully_connected_ising", "params": {"n_sites": n_sites, "coupling": coupling}}
    return SpectralMeasure.from_points(energies, logw, meta=meta)


def _row_bond_sums(cols):
    # horizontal bond sum sum(sigma_i sigma_{i+1}) for each of the 2^cols row states
    n_states = 1 << cols
    mask = (1 << (cols - 1)) - 1
    out = np.empty(n_states, dtype=np.int64)
    for s in range(n_states):
        x = (s ^ (s >> 1)) & mask
        out[s] = (cols - 1) - 2 * x.bit_count()
    return out


def ising_2d_degeneracies(rows, cols, method="transfer"):
    """Exact integer degeneracy per bond sum s = sum_bonds sigma*sigma on the
    open-boundary rows x cols lattice. Energy of a class is -J*s.

    method 'brute' enumerates all 2^(rows*cols) configurations (<= 24 sites);
    'transfer' runs an exact row-by-row counting pass (lattice is transposed
    so the transfer state lives on the smaller side).
    """
    if rows < 1 or cols < 1:
        raise InvalidParameter("rows and cols must be >= 1")
    if rows * cols < 2:
        raise InvalidParameter("need at least one bond (>= 2 sites)")
    if method == "brute":
        return _ising_2d_brute(rows, cols)
    if method == "transfer":
        if cols > rows:
            rows, cols = cols, rows
        if cols > TRANSFER_MAX_COLS:
            raise ResourceLimit(f"transfer method capped at {TRANSFER_MAX_COLS} columns")
        return _ising_2d_transfer(rows, cols)
    raise InvalidParameter("method must be 'brute' or 'transfer'")


def _ising_2d_brute(rows, cols):
    n = rows * cols
    if n > BRUTE_MAX_SITES:
        raise ResourceLimit(f"brute enumeration capped at {BRUTE_MAX_SITES} sites")
    bonds = []
    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            if c + 1 < cols:
                bonds.append((i, i + 1))
            if r + 1 < rows:
                bonds.append((i, i + cols))
    n_bonds = len(bonds)
    counts = {}
    chunk = 1 << 20
    for start in range(0, 1 << n, chunk):
        idx = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        anti = np.zeros(idx.size, dtype=np.int32)
        for i, j in bonds:
            anti += ((idx >> i) ^ (idx >> j)).astype(np.int32) & 1
        binc = np.bincount(anti, minlength=n_bonds + 1)
        for n_anti, c in enumerate(binc):
            if c:
                s = n_bonds - 2 * n_anti
                counts[s] = counts.get(s, 0) + int(c)
    return counts


def _ising_2d_transfer(rows, cols):
    n_states = 1 << cols
    horiz = _row_bond_sums(cols)
    # table[state] = {bond_sum: exact count}; Python ints, counts exceed 2^63
    table = [{int(horiz[s]): 1} for s in range(n_states)]
    for _ in range(1, rows):
        new = [dict() for _ in range(n_states)]
        for s1 in range(n_states):
            src = table[s1]
            for s2 in range(n_states):
                shift = int(horiz[s2]) + cols - 2 * (s1 ^ s2).bit_count()
                tgt = new[s2]
                for s, c in src.items():
                    key = s + shift
                    if key in tgt:
                        tgt[key] += c
                    else:
                        tgt[key] = c
        table = new
    counts = {}
    for per_state in table:
        for s, c in per_state.items():
            counts[s] = counts.get(s, 0) + c
    return counts


def ising_2d_dos(rows, cols, coupling, method="transfer"):
    """Measure of the open-boundary 2D lattice H = -J sum_<ij> sigma_i sigma_j."""
    if coupling == 0:
        raise InvalidParameter("coupling must be nonzero")
    deg = ising_2d_degeneracies(rows, cols, method=method)
    energies = [-coupling * s for s in deg]
    logw = [math.log(g) for g in deg.values()]
    meta = {
        "model": "ising_2d",
        "params": {"rows": rows, "cols": cols, "coupling": coupling, "method": method},
    }
    return SpectralMeasure.from_points(energies, logw, meta=meta)
