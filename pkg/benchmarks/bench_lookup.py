"""Benchmark the two lookup-sweep kernels on one compiled system.

Draws a fixed batch of (address, bits) queries, runs the batch through the
numba loop and the vectorized numpy path, checks that every record agrees,
and reports per-query timings.

    python3 benchmarks/bench_lookup.py --system counter4 --queries 2000
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from tileworks import kernels
from tileworks.corpus import GENERATORS
from tileworks.encoding import compile_system


def _time_batch(fn, index, batch, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        for addr, b in batch:
            fn(index, addr, b)
        times.append(time.perf_counter() - start)
    return min(times)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--system",
        default="counter4",
        choices=sorted(GENERATORS),
        help="corpus system to compile (default: counter4)",
    )
    parser.add_argument("--queries", type=int, default=2000, help="batch size")
    parser.add_argument("--repeat", type=int, default=5, help="timed passes, best-of")
    parser.add_argument("--seed", type=int, default=0, help="rng seed for the batch")
    args = parser.parse_args()

    cs = compile_system(GENERATORS[args.system](), force=True)
    index = cs.table.index
    rng = random.Random(args.seed)
    addresses = sorted(cs.addresses)
    batch = [
        (rng.choice(addresses), rng.getrandbits(cs.random_width))
        for _ in range(args.queries)
    ]

    print(
        f"system {args.system}: table {len(cs.table.symbols)} columns, "
        f"{len(addresses)} live addresses, batch {args.queries}, "
        f"best of {args.repeat}"
    )

    impls = []
    try:
        kernels.resolve_kernel("numba")
        impls.append("numba")
    except Exception as exc:
        print(f"numba unavailable ({exc}); timing numpy only")
    impls.append("numpy")

    # warm up: jit compile and fill caches, and verify the paths agree
    for addr, b in batch[:50]:
        records = [kernels.sweep(index, addr, b, impl) for impl in impls]
        for other in records[1:]:
            assert np.array_equal(records[0], other), (addr, b)

    results = {}
    for impl in impls:
        _, fn = kernels.resolve_kernel(impl)
        best = _time_batch(fn, index, batch, args.repeat)
        results[impl] = best
        per_query = best / args.queries * 1e6
        print(f"  {impl:>5}: {best * 1e3:8.2f} ms total, {per_query:8.2f} us/query")

    if len(results) == 2:
        ratio = results["numpy"] / results["numba"]
        faster = "numba" if ratio > 1 else "numpy"
        print(f"  {faster} is {max(ratio, 1 / ratio):.1f}x faster on this batch")

    # sanity: whole-batch agreement on a sample spread across the table
    sample = batch[:: max(1, len(batch) // 200)]
    mism = sum(
        not np.array_equal(
            kernels.sweep(index, a, b, impls[0]), kernels.sweep(index, a, b, impls[-1])
        )
        for a, b in sample
    )
    print(f"  agreement check: {len(sample) - mism}/{len(sample)} records identical")
    return 0 if mism == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
