"""Random-matrix ensembles and ensemble-averaged chain experiments.

Three families: dense Gaussian matrices (orthogonal/unitary), chiral
two-block matrices with a +/- symmetric spectrum, and the 2x2 level-spacing
surmise. Entry variances follow the weight exp(-c Tr H^2) with
c = d * dyson * pi^2 / (4 delta^2), which pins the mean level spacing at the
band center to delta. Sampling is deterministic per (seed, sample_index) so
ensemble runs are reproducible under any thread count.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from .errors import InvalidParameter
from .krylov import evolve_grid, stieltjes_lanczos
from .measure import Deformation, SpectralMeasure, deform
from .observables import krylov_entropy, spread_complexity, time_averaged_complexity

OBSERVABLES = ("kbar", "spread", "entropy", "survival_prob")


class EnsembleFamily(str, Enum):
    GAUSSIAN_DENSE = "gaussian_dense"
    CHIRAL_DENSE = "chiral_dense"
    TWO_LEVEL_SURMISE = "two_level_surmise"


@dataclass(frozen=True)
class EnsembleSpec:
    family: EnsembleFamily
    dyson: int
    dim: int
    samples: int
    seed: int
    delta: float = 1.0

    def __post_init__(self):
        f = EnsembleFamily(self.family)
        object.__setattr__(self, "family", f)
        allowed = {1, 2, 4} if f is EnsembleFamily.TWO_LEVEL_SURMISE else {1, 2}
        if self.dyson not in allowed:
            raise InvalidParameter(
                f"{f.value} supports dyson index in {sorted(allowed)}, got {self.dyson}")
        if f is EnsembleFamily.TWO_LEVEL_SURMISE and self.dim != 2:
            raise InvalidParameter("two_level_surmise is a 2x2 family; dim must be 2")
        if f is EnsembleFamily.CHIRAL_DENSE and self.dim % 2:
            raise InvalidParameter("chiral_dense needs even dim")
        if self.dim < 2:
            raise InvalidParameter("dim must be >= 2")
        if self.samples < 1:
            raise InvalidParameter("samples must be >= 1")
        if not (0 <= self.seed < 2**64):
            raise InvalidParameter("seed must fit in 64 bits")
        if not (self.delta > 0 and math.isfinite(self.delta)):
            raise InvalidParameter("delta must be positive and finite")


def surmise_constants(dyson):
    """(A, B) of the spacing density A w^dyson exp(-B w^2) in units of the
    mean spacing; both follow from normalization and <w> = 1."""
    if dyson not in (1, 2, 4):
        raise InvalidParameter("dyson index must be 1, 2 or 4")
    b = (math.gamma(0.5 * (dyson + 2)) / math.gamma(0.5 * (dyson + 1))) ** 2
    a = 2.0 * b ** (0.5 * (dyson + 1)) / math.gamma(0.5 * (dyson + 1))
    return a, b


def _rng(spec, sample_index):
    if sample_index < 0:
        raise InvalidParameter("sample_index must be >= 0")
    return np.random.default_rng(np.random.SeedSequence(spec.seed,
                                                        spawn_key=(sample_index,)))


def _entry_scale(spec):
    # c in exp(-c Tr H^2); each independent real component has variance 1/(4c),
    # diagonal entries of the symmetric/Hermitian case 1/(2c)
    return spec.dim * spec.dyson * math.pi**2 / (4.0 * spec.delta**2)


def sample_spectrum(spec, sample_index):
    """Sorted eigenvalues of one realization, deterministic in
    (spec.seed, sample_index)."""
    rng = _rng(spec, sample_index)
    f = spec.family
    if f is EnsembleFamily.TWO_LEVEL_SURMISE:
        a, b = surmise_constants(spec.dyson)
        gap2 = rng.gamma(shape=0.5 * (spec.dyson + 1), scale=spec.delta**2 / b)
        omega = math.sqrt(gap2)
        center = rng.normal(0.0, spec.delta / math.sqrt(8.0 * a))
        return np.array([center - 0.5 * omega, center + 0.5 * omega])
    c = _entry_scale(spec)
    sigma = math.sqrt(1.0 / (4.0 * c))
    if f is EnsembleFamily.GAUSSIAN_DENSE:
        d = spec.dim
        if spec.dyson == 1:
            h = np.zeros((d, d))
            iu = np.triu_indices(d, 1)
            h[iu] = rng.normal(0.0, sigma, size=iu[0].size)
            h += h.T
            h[np.diag_indices(d)] = rng.normal(0.0, math.sqrt(1.0 / (2.0 * c)), size=d)
        else:
            h = np.zeros((d, d), dtype=np.complex128)
            iu = np.triu_indices(d, 1)
            h[iu] = (rng.normal(0.0, sigma, size=iu[0].size)
                     + 1j * rng.normal(0.0, sigma, size=iu[0].size))
            h += h.conj().T
            h[np.diag_indices(d)] = rng.normal(0.0, math.sqrt(1.0 / (2.0 * c)), size=d)
        return np.sort(np.linalg.eigvalsh(h))
    # chiral: H = [[0, W], [W^dag, 0]], spectrum is +/- singular values of W
    n = spec.dim // 2
    if spec.dyson == 1:
        w = rng.normal(0.0, sigma, size=(n, n))
    else:
        w = rng.normal(0.0, sigma, size=(n, n)) + 1j * rng.normal(0.0, sigma, size=(n, n))
    sv = np.linalg.svd(w, compute_uv=False)
    return np.sort(np.concatenate([-sv, sv]))


def semicircle_density(energies, dim, delta):
    """Bulk average density of states of the dense Gaussian families,
    (dim/delta) sqrt(1 - (pi E / 2 delta)^2) on its support."""
    e = np.asarray(energies, dtype=np.float64)
    arg = 1.0 - (math.pi * e / (2.0 * delta)) ** 2
    return (dim / delta) * np.sqrt(np.clip(arg, 0.0, None))


@dataclass(frozen=True)
class Experiment:
    """Grid description for an ensemble run: one observable evaluated on a
    deformation grid, and for time-resolved observables also a time grid."""

    observable: str
    deformations: tuple
    times: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.observable not in OBSERVABLES:
            raise InvalidParameter(f"observable must be one of {OBSERVABLES}")
        defs = tuple(self.deformations)
        if not defs or not all(isinstance(d, Deformation) for d in defs):
            raise InvalidParameter("deformations must be a non-empty tuple of Deformation")
        object.__setattr__(self, "deformations", defs)
        if self.observable == "kbar":
            object.__setattr__(self, "times", None)
        else:
            if self.times is None:
                raise InvalidParameter(f"{self.observable} needs a time grid")
            t = np.asarray(self.times, dtype=np.float64)
            if t.ndim != 1 or t.size == 0 or not np.all(np.diff(t) > 0):
                raise InvalidParameter("times must be 1d strictly increasing")
            t.setflags(write=False)
            object.__setattr__(self, "times", t)

    @property
    def shape(self):
        nd = len(self.deformations)
        return (nd,) if self.times is None else (nd, self.times.size)


@dataclass(frozen=True)
class EnsembleResult:
    experiment: Experiment
    mean: np.ndarray
    stderr: np.ndarray
    n_samples: int
    n_failed: int


def _one_sample(spec, experiment, index):
    eigenvalues = sample_spectrum(spec, index)
    m = SpectralMeasure.from_eigenvalues(eigenvalues)
    out = np.empty(experiment.shape)
    for j, tau in enumerate(experiment.deformations):
        t_op = stieltjes_lanczos(deform(m, tau))
        if experiment.observable == "kbar":
            out[j] = time_averaged_complexity(t_op).kbar
            continue
        amps = evolve_grid(t_op, experiment.times)
        if experiment.observable == "spread":
            out[j] = spread_complexity(amps)
        elif experiment.observable == "entropy":
            out[j] = krylov_entropy(amps)
        else:
            out[j] = np.abs(amps[:, 0]) ** 2
    return out


def ensemble_average(spec, experiment, threads=1):
    """Sample mean and standard error of an observable over the ensemble.

    Per-sample pipeline: eigenvalues -> uniform-weight measure -> deform ->
    tridiagonalize -> observable. Samples run on a thread pool; results are
    accumulated by sample index, so the reduction is independent of thread
    scheduling. Failed samples are excluded and counted."""
    if threads < 1:
        raise InvalidParameter("threads must be >= 1")
    results = [None] * spec.samples
    failures = [None] * spec.samples

    def work(i):
        try:
            results[i] = _one_sample(spec, experiment, i)
        except Exception as exc:  # noqa: BLE001 - per-sample isolation is the contract
            failures[i] = exc

    if threads == 1:
        for i in range(spec.samples):
            work(i)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(work, range(spec.samples)))
    good = [r for r in results if r is not None]
    n_failed = spec.samples - len(good)
    if not good:
        raise InvalidParameter(
            f"all {spec.samples} samples failed; first error: {next(f for f in failures if f)}")
    stack = np.stack(good)
    mean = np.mean(stack, axis=0)
    if len(good) > 1:
        stderr = np.std(stack, axis=0, ddof=1) / math.sqrt(len(good))
    else:
        stderr = np.zeros_like(mean)
    return EnsembleResult(experiment, mean, stderr, len(good), n_failed)


class PowerLawFit(NamedTuple):
    exponent: float
    prefactor: float
    stderr: float


def fit_power_law(xs, ys, window):
    """Least-squares line through (ln x, ln y) restricted to
    window = (xmin, xmax); returns exponent, prefactor and the exponent's
    standard error."""
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise InvalidParameter("xs and ys must be 1d of equal length")
    lo, hi = window
    mask = (x >= lo) & (x <= hi)
    if np.count_nonzero(mask) < 6:
        raise InvalidParameter("need at least 6 points inside the window")
    x, y = x[mask], y[mask]
    if np.any(x <= 0) or np.any(y <= 0):
        raise InvalidParameter("power-law fit needs positive values in the window")
    lx, ly = np.log(x), np.log(y)
    n = lx.size
    dx = lx - lx.mean()
    sxx = float(dx @ dx)
    slope = float(dx @ (ly - ly.mean())) / sxx
    intercept = float(ly.mean() - slope * lx.mean())
    resid = ly - (intercept + slope * lx)
    var = float(resid @ resid) / (n - 2) if n > 2 else 0.0
    return PowerLawFit(slope, math.exp(intercept), math.sqrt(var / sxx))
