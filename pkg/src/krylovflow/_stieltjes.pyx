# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled weighted Stieltjes/Lanczos kernel.

Mirror of _stieltjes_fallback.stieltjes; keep both in sync.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


def stieltjes(object energies, object weights, double tol):
    e_arr = np.ascontiguousarray(energies, dtype=np.float64)
    w_arr = np.ascontiguousarray(weights, dtype=np.float64)
    # const views: callers pass write-protected arrays
    cdef const double[::1] e = e_arr
    cdef const double[::1] w = w_arr
    cdef Py_ssize_t d = e.shape[0]

    a_arr = np.zeros(d)
    b_arr = np.zeros(d - 1 if d > 1 else 0)
    V_arr = np.zeros((d, d))
    u_arr = np.empty(d)
    up_arr = np.zeros(d)
    r_arr = np.empty(d)
    cdef double[::1] a = a_arr
    cdef double[::1] b = b_arr
    cdef double[:, ::1] V = V_arr
    cdef double[::1] u = u_arr
    cdef double[::1] uprev = up_arr
    cdef double[::1] r = r_arr

    cdef Py_ssize_t i, j, k, m
    cdef double s, ak, bn, bk, c
    cdef int ip

    s = 0.0
    for i in range(d):
        u[i] = sqrt(w[i])
        s += u[i] * u[i]
    if s == 0.0:
        raise ValueError("measure has zero total weight")
    s = sqrt(s)
    for i in range(d):
        u[i] /= s

    bk = 0.0
    m = d
    for k in range(d):
        ak = 0.0
        for i in range(d):
            V[k, i] = u[i]
            r[i] = e[i] * u[i]
            ak += u[i] * r[i]
        a[k] = ak
        if k == d - 1:
            break
        for i in range(d):
            r[i] -= ak * u[i] + bk * uprev[i]
        for ip in range(2):
            for j in range(k + 1):
                c = 0.0
                for i in range(d):
                    c += V[j, i] * r[i]
                for i in range(d):
                    r[i] -= c * V[j, i]
        bn = 0.0
        for i in range(d):
            bn += r[i] * r[i]
        bn = sqrt(bn)
        if bn <= tol:
            m = k + 1
            break
        b[k] = bn
        for i in range(d):
            uprev[i] = u[i]
            u[i] = r[i] / bn
        bk = bn

    return a_arr[:m], b_arr[: max(m - 1, 0)]
