"""Compiled vs pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Prints one line per kernel and size with the best-of-N wall time for each
backend and the speedup.  Results are also checked for agreement.
"""

import argparse
import timeit

import numpy as np

from abcover import _pykernels
from abcover.bgvm import _scan_inputs
from abcover.generators import SplitMix64, random_multigraph

try:
    from abcover import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None


def hermitian(n, seed):
    r = SplitMix64(seed)
    a = np.array([[r.uniform() - 0.5 + 1j * (r.uniform() - 0.5) for _ in range(n)]
                  for _ in range(n)])
    return a + a.conj().T


def bench(label, fn_py, fn_c, args, repeat):
    t_py = min(timeit.repeat(lambda: fn_py(*args), number=1, repeat=repeat))
    t_c = min(timeit.repeat(lambda: fn_c(*args), number=1, repeat=repeat))
    print(f"{label:<28} python {t_py * 1e3:9.3f} ms   cython {t_c * 1e3:9.3f} ms"
          f"   x{t_py / t_c:6.1f}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        raise SystemExit("compiled extension not built; run pip install -e . first")

    for n in (4, 8, 16, 32):
        a = hermitian(n, n)
        assert np.allclose(_pykernels.jacobi_eigvalsh(a), _ckernels.jacobi_eigvalsh(a))
        bench(f"jacobi_eigvalsh n={n}", _pykernels.jacobi_eigvalsh,
              _ckernels.jacobi_eigvalsh, (a,), args.repeat)

    for n, m in ((8, 12), (12, 18), (16, 24)):
        g = random_multigraph(n, m, seed=n, connected=True)
        nbr, mult, loops = _scan_inputs(g)
        scan_args = (n, list(nbr), mult, loops, n)
        assert sorted(_pykernels.forest_scan(*scan_args)) == sorted(
            tuple(map(int, t)) for t in _ckernels.forest_scan(*scan_args))
        bench(f"forest_scan n={n} m={m}", _pykernels.forest_scan, _ckernels.forest_scan,
              scan_args, args.repeat)


if __name__ == "__main__":
    main()
