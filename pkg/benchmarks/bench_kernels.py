"""Compare the compiled kernels with the pure-Python fallback.

Usage::

    python benchmarks/bench_kernels.py [--repeat 3]

Times sparse Laurent multiplication (one and two variables) and the
Aberth root iteration at a few degrees, and checks the backends agree.
"""
import argparse
import time

import numpy as np

from twistalex import _purepy
from twistalex.kernels import backends


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def _random_terms(rng, nterms, nvars, span):
    keys = {tuple(int(x) for x in rng.integers(-span, span + 1, nvars)) for _ in range(nterms)}
    return {k: int(rng.integers(-9, 10)) or 1 for k in keys}


def mul_cases(rng):
    for nvars, nterms, span in ((1, 200, 400), (1, 1000, 2000), (2, 200, 30), (2, 600, 60)):
        a = _random_terms(rng, nterms, nvars, span)
        b = _random_terms(rng, nterms, nvars, span)
        yield f"mul_sparse nvars={nvars} terms={nterms}", (lambda impl, a=a, b=b, n=nvars: impl.mul_sparse(a, b, n))


def aberth_cases(rng):
    for deg in (100, 400, 1000):
        coeffs = rng.integers(-3, 4, deg + 1).astype(complex)
        coeffs[0] = coeffs[-1] = 1
        z0 = 0.95 * np.exp(2j * np.pi * (np.arange(deg) + 0.3) / deg)
        yield f"aberth degree={deg}", (lambda impl, c=coeffs, z=z0: impl.aberth(c, z)[0])


def _agree(x, y):
    if isinstance(x, dict):
        return x == y
    dist = np.abs(x[:, None] - y[None, :])
    return max(dist.min(axis=1).max(), dist.min(axis=0).max()) < 1e-8


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    impls = backends()
    if "compiled" not in impls:
        print("compiled backend not built; timing the pure-Python fallback only")
    rng = np.random.default_rng(args.seed)
    print(f"{'case':38s} {'python [s]':>11s} {'compiled [s]':>13s} {'speedup':>8s} agree")
    for label, fn in list(mul_cases(rng)) + list(aberth_cases(rng)):
        tp = _best(lambda: fn(_purepy), args.repeat)
        if "compiled" in impls:
            comp = impls["compiled"]
            tc = _best(lambda: fn(comp), args.repeat)
            ok = _agree(fn(comp), fn(_purepy))
            print(f"{label:38s} {tp:11.4f} {tc:13.4f} {tp / tc:8.1f} {ok}")
        else:
            print(f"{label:38s} {tp:11.4f} {'-':>13s} {'-':>8s} -")


if __name__ == "__main__":
    main()
