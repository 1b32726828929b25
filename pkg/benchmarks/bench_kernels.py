"""Time the attack-mining kernel under each available backend.

    python3 benchmarks/bench_kernels.py --cases 100 200 400 --m 1 4
"""
import argparse
import statistics
import time

from aacbrp import kernels
from aacbrp.engine import _outcome_codes, comparison_tensor
from aacbrp.evaluation import bench_base, replicate_tiers


def time_kernel(cmp, y, backend, repeats):
    runs = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        kernels.mine_attacks(cmp, y, backend)
        runs.append(time.perf_counter() - t0)
    return statistics.median(runs)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--cases", type=int, nargs="+", default=[100, 200, 400])
    parser.add_argument("--m", type=int, nargs="+", default=[1, 4])
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    backends = sorted(kernels.BACKENDS)
    print("cases\tm\t" + "\t".join(f"{b}_s" for b in backends) + ("\tspeedup" if len(backends) > 1 else ""))
    for n in args.cases:
        base = bench_base(n, args.seed)
        for m in args.m:
            cb, P = replicate_tiers(base, m)
            cases = cb.all_cases()
            cmp = comparison_tensor(P, [c.x for c in cases])
            y = _outcome_codes(cases)
            results = {b: time_kernel(cmp, y, b, args.repeats) for b in backends}
            row = f"{n}\t{m}\t" + "\t".join(f"{results[b]:.5f}" for b in backends)
            if "compiled" in results:
                row += f"\t{results['python'] / results['compiled']:.1f}x"
            print(row)


if __name__ == "__main__":
    main()
