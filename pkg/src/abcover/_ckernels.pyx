# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; same contracts as :mod:`abcover._pykernels`."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs
from libc.stdint cimport uint64_t

cnp.import_array()

cdef extern from "complex.h":
    double cabs(double complex)
    double creal(double complex)
    double complex conj(double complex)


def jacobi_eigvalsh(a, double tol=1e-15, int max_sweeps=100):
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] arr = np.array(a, dtype=np.complex128, order="C")
    cdef double complex[:, ::1] m = arr
    cdef Py_ssize_t n = m.shape[0]
    cdef Py_ssize_t p, q, k
    cdef double scale = 0.0, off, g, tau, t, c, s
    cdef double complex apq, ph, phc, akp, akq, apk, aqk
    cdef int sweep
    for p in range(n):
        for q in range(n):
            scale += cabs(m[p, q]) * cabs(m[p, q])
    scale = sqrt(scale)
    if scale == 0.0:
        scale = 1.0
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += cabs(m[p, q]) * cabs(m[p, q])
        if sqrt(off) <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p, q]
                g = cabs(apq)
                if g <= 1e-300:
                    continue
                ph = apq / g
                tau = (creal(m[q, q]) - creal(m[p, p])) / (2.0 * g)
                if tau >= 0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                phc = conj(ph)
                for k in range(n):
                    akp = m[k, p]
                    akq = m[k, q]
                    m[k, p] = c * akp - s * phc * akq
                    m[k, q] = s * akp + c * phc * akq
                for k in range(n):
                    apk = m[p, k]
                    aqk = m[q, k]
                    m[p, k] = c * apk - s * ph * aqk
                    m[q, k] = s * apk + c * ph * aqk
                m[p, q] = 0
                m[q, p] = 0
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    for p in range(n):
        o[p] = creal(m[p, p])
    out.sort()
    return out


cdef extern int __builtin_popcountll(unsigned long long) nogil

cdef inline int _popcount(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef class _Scan:
    cdef int n, max_size
    cdef uint64_t nbr[64]
    cdef uint64_t mult[64]
    cdef uint64_t loops
    # comps[depth][i]: component masks of the current set at each depth
    cdef uint64_t comps[65][64]
    cdef int ncomp[65]
    cdef list out

    cdef void rec(self, uint64_t s, uint64_t reach, int start, int size):
        cdef int cc, v, i, k, ok
        cdef uint64_t boundary, nb, merged, hit, c
        if size:
            boundary = reach & ~s
            cc = self.ncomp[size]
            if _popcount(boundary) < cc:
                self.out.append((s, cc, boundary))
        if size == self.max_size:
            return
        for v in range(start, self.n):
            if (self.loops >> v) & 1 or (self.mult[v] & s):
                continue
            nb = self.nbr[v] & s
            merged = (<uint64_t>1) << v
            k = 0
            ok = 1
            for i in range(self.ncomp[size]):
                c = self.comps[size][i]
                hit = c & nb
                if hit:
                    if hit & (hit - 1):
                        ok = 0
                        break
                    merged |= c
                else:
                    self.comps[size + 1][k] = c
                    k += 1
            if not ok:
                continue
            self.comps[size + 1][k] = merged
            self.ncomp[size + 1] = k + 1
            self.rec(s | ((<uint64_t>1) << v), reach | self.nbr[v], v + 1, size + 1)


def forest_scan(int n, nbr, mult_nbr, loop_mask, int max_size):
    if n > 64:
        raise ValueError("compiled forest_scan supports at most 64 vertices")
    cdef _Scan sc = _Scan()
    cdef int v
    sc.n = n
    sc.max_size = max_size
    sc.loops = <uint64_t>loop_mask
    for v in range(n):
        sc.nbr[v] = <uint64_t>nbr[v]
        sc.mult[v] = <uint64_t>mult_nbr[v]
    sc.ncomp[0] = 0
    sc.out = []
    sc.rec(0, 0, 0, 0)
    return sc.out
