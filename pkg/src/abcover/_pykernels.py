"""Pure-Python versions of the hot kernels.

Selected automatically by :mod:`abcover.kernels` when the compiled
extension is missing.  Signatures and results match ``_ckernels`` exactly.
"""

import math

import numpy as np


def jacobi_eigvalsh(a, tol=1e-15, max_sweeps=100):
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations."""
    a = np.array(a, dtype=np.complex128)
    n = a.shape[0]
    m = [[complex(a[i, j]) for j in range(n)] for i in range(n)]
    scale = math.sqrt(sum(abs(x) ** 2 for row in m for x in row)) or 1.0
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += abs(m[p][q]) ** 2
        if math.sqrt(off) <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p][q]
                g = abs(apq)
                if g <= 1e-300:
                    continue
                ph = apq / g
                tau = (m[q][q].real - m[p][p].real) / (2.0 * g)
                if tau >= 0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                phc = ph.conjugate()
                # A <- A V with V = diag-phase * rotation
                for k in range(n):
                    akp = m[k][p]
                    akq = m[k][q]
                    m[k][p] = c * akp - s * phc * akq
                    m[k][q] = s * akp + c * phc * akq
                # A <- V^* A
                for k in range(n):
                    apk = m[p][k]
                    aqk = m[q][k]
                    m[p][k] = c * apk - s * ph * aqk
                    m[q][k] = s * apk + c * ph * aqk
                m[p][q] = 0j
                m[q][p] = 0j
    return np.sort(np.array([m[i][i].real for i in range(n)], dtype=np.float64))


def _popcount(x):
    return bin(x).count("1")


def forest_scan(n, nbr, mult_nbr, loop_mask, max_size):
    """Vertex sets S inducing a simple forest with |boundary(S)| < cc(S).

    ``nbr[v]``: mask of neighbors u != v; ``mult_nbr[v]``: neighbors joined
    to v by two or more edges; ``loop_mask``: vertices carrying a loop.
    Returns an unordered list of (S, cc, boundary) triples.
    """
    out = []

    def rec(s, comps, reach, start, size):
        if size:
            boundary = reach & ~s
            cc = len(comps)
            if _popcount(boundary) < cc:
                out.append((s, cc, boundary))
        if size == max_size:
            return
        for v in range(start, n):
            if (loop_mask >> v) & 1 or mult_nbr[v] & s:
                continue
            nb = nbr[v] & s
            merged = 1 << v
            keep = []
            ok = True
            for c in comps:
                hit = c & nb
                if hit:
                    if hit & (hit - 1):
                        ok = False
                        break
                    merged |= c
                else:
                    keep.append(c)
            if not ok:
                continue
            keep.append(merged)
            rec(s | (1 << v), keep, reach | nbr[v], v + 1, size + 1)

    rec(0, [], 0, 0, 0)
    return out
