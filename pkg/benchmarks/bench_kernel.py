"""Time the compiled and numpy kernels on the reference scenario.

    python benchmarks/bench_kernel.py [--dx 0.1 0.05] [--repeat 3]
"""

import argparse
import time

from waterhammer import _backend
from waterhammer.core import reference_scenario
from waterhammer.driver import run


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dx", type=float, nargs="+", default=[0.1, 0.05, 0.025])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = ["python"] + (["cython"] if _backend.kernel_c is not None else [])
    if len(backends) == 1:
        print("compiled kernel not built; timing the numpy fallback only")
    print(f"{'dx':>8} {'nodes':>6} {'steps':>6} " + " ".join(f"{b + ' [s]':>12}" for b in backends)
          + ("   speedup" if len(backends) == 2 else ""))
    for dx in args.dx:
        scenario = reference_scenario(dx=dx)
        timings = [best_of(lambda: run(scenario, backend=b), args.repeat) for b in backends]
        steps = round(scenario.t_end * scenario.params.sound_speed / (scenario.courant * dx))
        line = f"{dx:8g} {scenario.grid.n_nodes_full:6d} {steps:6d} " + " ".join(f"{t:12.4f}" for t in timings)
        if len(timings) == 2:
            line += f"   {timings[0] / timings[1]:7.2f}x"
        print(line)


if __name__ == "__main__":
    main()
