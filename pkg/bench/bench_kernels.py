"""Compare the compiled and pure-Python kernels.

    python bench/bench_kernels.py [--max-n 18] [--repeat 3] [--json out.json]
"""

import argparse
import json
import random
import time

from synclab import cerny_family
from synclab.kernels import all_perms, available_backends


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t)
    return min(times), result


def bfs_cases(max_n):
    for n in range(10, max_n + 1, 2):
        dfa = cerny_family(n)
        yield f"bfs cerny_{n}", (dfa.flat(), n, dfa.k, 1 << 30), "shortest_sync"


def canon_cases(seed=0):
    rng = random.Random(seed)
    for n, k, count in ((5, 2, 200), (6, 2, 40), (4, 3, 200)):
        tables = [tuple(rng.randrange(n) for _ in range(n * k)) for _ in range(count)]
        yield f"canon n={n} k={k} x{count}", (tables, n, k), "canonical_table"


def run(args, kernel, impl):
    fn = getattr(impl, kernel)
    if kernel == "canonical_table":
        tables, n, k = args
        sp, lp = all_perms(n), all_perms(k)
        return lambda: [fn(t, n, k, sp, lp) for t in tables]
    return lambda: fn(*args)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=18)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--json", dest="json_path")
    opts = parser.parse_args()

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; timing the pure-Python backend only")
    rows = []
    for name, args, kernel in [*bfs_cases(opts.max_n), *canon_cases()]:
        row = {"case": name}
        results = {}
        for label, impl in backends.items():
            row[label], results[label] = best_of(run(args, kernel, impl), opts.repeat)
        if len(results) == 2:
            assert results["python"] == results["cython"], name
            row["speedup"] = row["python"] / row["cython"]
        rows.append(row)

    labels = list(backends)
    print(f"{'case':<26}" + "".join(f"{b:>12}" for b in labels) + ("     speedup" if len(labels) == 2 else ""))
    for row in rows:
        line = f"{row['case']:<26}" + "".join(f"{row[b]:>11.4f}s" for b in labels)
        if "speedup" in row:
            line += f"{row['speedup']:>11.1f}x"
        print(line)
    if opts.json_path:
        with open(opts.json_path, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
