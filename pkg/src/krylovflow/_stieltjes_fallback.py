"""Pure-NumPy implementation of the weighted Stieltjes/Lanczos kernel.

Used when the compiled extension is unavailable (or forced via
KRYLOVFLOW_BACKEND=python). Must stay algorithmically identical to
_stieltjes.pyx: three-term recurrence on the diagonal operator with the
sqrt-weight starting vector and two classical Gram-Schmidt passes of full
reorthogonalization per step.
"""
import numpy as np


def stieltjes(energies, weights, tol):
    """Tridiagonalize the multiplication operator of a point measure.

    energies, weights: float64 arrays of equal length d (weights normalized).
    tol: absolute termination threshold on the off-diagonal norm.

    Returns (a, b) with len(a) = effective chain length <= d and
    len(b) = len(a) - 1.
    """
    e = np.ascontiguousarray(energies, dtype=np.float64)
    w = np.ascontiguousarray(weights, dtype=np.float64)
    d = e.shape[0]
    a = np.zeros(d)
    b = np.zeros(d - 1 if d > 1 else 0)
    V = np.zeros((d, d))
    # Vectors carry sqrt(w)*P_k(e); all inner products are then plain dot
    # products and every entry stays bounded by 1, so nothing overflows even
    # for weights spanning the full float64 range.
    u = np.sqrt(w)
    nrm = np.linalg.norm(u)
    if nrm == 0.0:
        raise ValueError("measure has zero total weight")
    u = u / nrm
    uprev = np.zeros(d)
    bk = 0.0
    m = d
    for k in range(d):
        V[k] = u
        r = e * u
        a[k] = u @ r
        if k == d - 1:
            break
        r -= a[k] * u + bk * uprev
        Vk = V[: k + 1]
        for _ in range(2):  # CGS2: two passes restore orthogonality to roundoff
            r -= Vk.T @ (Vk @ r)
        bn = np.linalg.norm(r)
        if bn <= tol:
            m = k + 1
            break
        b[k] = bn
        uprev = u
        u = r / bn
        bk = bn
    return a[:m], b[: max(m - 1, 0)]
