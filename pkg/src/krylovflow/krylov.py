"""Krylov chains: tridiagonal generators, their spectra, and state evolution.

stieltjes_lanczos turns a point measure into the Jacobi (tridiagonal) operator
of its orthogonal polynomials; eigendecompose/evolve propagate the boundary
state |0> of the chain.
"""
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .errors import InvalidParameter
from .kernels import stieltjes

# b entries at or below TERMINATION_RTOL * spectral_radius end the chain.
TERMINATION_RTOL = 1e-12


class TridiagonalOperator:
    """Symmetric tridiagonal operator: diagonal a (length d), off-diagonal b
    (length d-1, nonnegative; an entry at 0 only occurs on flowed chains at a
    fixed point, a freshly built Krylov chain has all b > 0)."""

    def __init__(self, a, b):
        a = np.array(a, dtype=np.float64)
        b = np.array(b, dtype=np.float64)
        if a.ndim != 1 or a.size == 0:
            raise InvalidParameter("a must be a nonempty 1d array")
        if b.shape != (a.size - 1,):
            raise InvalidParameter("b must have length len(a) - 1")
        if not np.all(np.isfinite(a)) or not np.all(np.isfinite(b)):
            raise InvalidParameter("coefficients must be finite")
        if b.size and b.min() < 0:
            raise InvalidParameter("b must be nonnegative")
        a.setflags(write=False)
        b.setflags(write=False)
        self.a = a
        self.b = b

    @property
    def d(self):
        return self.a.size

    def spectral_radius(self):
        # Gershgorin bound is enough for tolerance scales
        pads = np.concatenate(([0.0], self.b, [0.0]))
        return float(np.max(np.abs(self.a) + pads[1:] + pads[:-1]))

    def matrix(self):
        m = np.diag(self.a)
        if self.b.size:
            m += np.diag(self.b, 1) + np.diag(self.b, -1)
        return m

    def __eq__(self, other):
        return (
            isinstance(other, TridiagonalOperator)
            and np.array_equal(self.a, other.a)
            and np.array_equal(self.b, other.b)
        )

    def __repr__(self):
        return f"TridiagonalOperator(d={self.d})"


@dataclass
class EigenSystem:
    """Spectral data of a TridiagonalOperator: ascending eigenvalues and the
    orthogonal eigenvector matrix (columns)."""

    eigenvalues: np.ndarray
    vectors: np.ndarray

    @property
    def first_row_weights(self):
        """U_{0m}^2: the Gauss-quadrature weights of the chain's measure."""
        return self.vectors[0] ** 2


@dataclass
class KrylovState:
    """Complex amplitudes over the chain basis at one time."""

    amplitudes: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=np.complex128)
        norm = np.sum(np.abs(amp) ** 2)
        if not np.isfinite(norm) or abs(norm - 1.0) > 1e-10:
            raise InvalidParameter(f"state norm deviates from 1 by {abs(norm - 1.0):.3e}")
        self.amplitudes = amp

    @property
    def d(self):
        return self.amplitudes.size


def stieltjes_lanczos(m, termination_rtol=TERMINATION_RTOL):
    """Jacobi operator of a spectral measure via the discrete Stieltjes
    procedure with full reorthogonalization.

    Runs on the normalized weights obtained from the log weights (the
    unnormalized weights are never exponentiated), so severely deformed
    measures are handled; levels whose weight underflows simply truncate the
    chain early, signalled by the returned operator's smaller d.
    """
    rho = m.spectral_radius()
    tol = termination_rtol * max(rho, np.finfo(float).tiny)
    a, b = stieltjes(m.energies, m.weights, tol)
    return TridiagonalOperator(a, b)


def eigendecompose(t):
    """Full spectrum and eigenvectors, eigenvalues ascending."""
    if t.d == 1:
        return EigenSystem(t.a.copy(), np.ones((1, 1)))
    ev, u = sla.eigh_tridiagonal(t.a, t.b)
    return EigenSystem(ev, u)


def evolve(t, time, eigsys=None):
    """exp(-i T time)|0> as a KrylovState."""
    es = eigsys if eigsys is not None else eigendecompose(t)
    amp = es.vectors @ (np.exp(-1j * es.eigenvalues * time) * es.vectors[0])
    return KrylovState(amp, time=float(time))


def evolve_grid(t, times, eigsys=None):
    """Amplitudes over a time grid, shape (len(times), d)."""
    es = eigsys if eigsys is not None else eigendecompose(t)
    times = np.asarray(times, dtype=np.float64)
    phases = np.exp(-1j * np.outer(times, es.eigenvalues))
    return (phases * es.vectors[0]) @ es.vectors.T
