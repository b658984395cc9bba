"""Compare the numba and pure-Python paths of the integer kernels.

Micro: each ``py_*`` kernel against ``numba.njit`` of the same function on
inputs taken from a real hull computation. Macro: a full quotient-chain
hull run in a subprocess with and without ``TOPOSHULL_DISABLE_NUMBA=1``.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--size 5]
"""
from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time

import numba
import numpy as np

from toposhull import _kernels
from toposhull.monoid import right_zero_monoid
from toposhull.mset import product, regular
from toposhull.samples import random_mset
from toposhull.topos import omega, power_object, singleton


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workload(size: int):
    M = right_zero_monoid()
    rng = random.Random(3)
    A = random_mset(M, rng, max_size=size)
    while A.size != size:
        A = random_mset(M, rng, max_size=size)
    W = power_object(A)
    s = singleton(A, W)
    shape, _, _ = product(regular(M), A)
    return A, W, s, shape


def micro(size: int, repeat: int):
    A, W, s, shape = workload(size)
    Om = np.ascontiguousarray(omega(A.monoid).as_mset.action)
    dom = np.ascontiguousarray(shape.action)
    act = np.ascontiguousarray(W.as_mset.action)
    mask = np.zeros(len(act), dtype=np.bool_)
    mask[s.mapping] = True
    pairs = np.array([[0, len(act) - 1]], dtype=np.int64)
    init = np.full(shape.size, -1, dtype=np.int64)
    cases = {
        "enumerate_maps": (lambda k: k(dom, Om, init, False, 0, 10**7), "M x A -> Omega"),
        "congruence_closure": (lambda k: k(act, pairs), "one pair in Omega^A"),
        "first_collapsible_pair": (lambda k: k(act, mask), "Omega^A scan"),
    }
    # all pairs of a smaller power object: quadratic, so keep it modest
    A3, W3, s3, _ = workload(3)
    act3 = np.ascontiguousarray(W3.as_mset.action)
    mask3 = np.zeros(len(act3), dtype=np.bool_)
    mask3[s3.mapping] = True
    cases["pair_witnesses"] = (lambda k: k(act3, mask3), f"{len(act3)}-elt Omega^A3")
    print(f"A: {A.size} elements over the right-zero monoid; |Omega^A| = {W.as_mset.size}")
    print(f"{'kernel':<24}{'input':<22}{'pure [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for name, (call, label) in cases.items():
        py = getattr(_kernels, f"py_{name}")
        jit = numba.njit(py)
        call(jit)  # compile
        t_py = best_of(lambda: call(py), repeat)
        t_jit = best_of(lambda: call(jit), repeat)
        print(f"{name:<24}{label:<22}{t_py:>12.4f}{t_jit:>12.4f}{t_py / t_jit:>9.1f}x")


SCRIPT = """
import random, time
from toposhull.hull import injective_hull_quotient
from toposhull.monoid import right_zero_monoid
from toposhull.samples import random_mset
rng = random.Random(3)
A = random_mset(right_zero_monoid(), rng, max_size={size})
while A.size != {size}:
    A = random_mset(right_zero_monoid(), rng, max_size={size})
injective_hull_quotient(A, verify=False, cross_check=False)  # warm up
t0 = time.perf_counter()
c = injective_hull_quotient(A, verify=False, cross_check=False)
print(time.perf_counter() - t0, c.step_count)
"""


def macro(size: int):
    print(f"\nquotient-chain hull end to end (|A| = {size}, subprocess per path)")
    for label, flag in (("numba", "0"), ("pure", "1")):
        env = {**os.environ, "TOPOSHULL_DISABLE_NUMBA": flag}
        out = subprocess.run([sys.executable, "-c", SCRIPT.format(size=size)], env=env,
                             capture_output=True, text=True, check=True).stdout.split()
        print(f"  {label:<6} {float(out[0]):8.3f}s  ({out[1]} proper epis)")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=5)
    args = ap.parse_args()
    micro(args.size, args.repeat)
    macro(args.size)


if __name__ == "__main__":
    main()
