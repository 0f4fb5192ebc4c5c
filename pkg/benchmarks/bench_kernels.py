"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 480 960] [--reps 200] [--seed 0]

Reports per-call times for the two hot kernels (the barbell bounce scan used
by the theta-readability check, and the adjacent-LCP pass used for pieces)
and the end-to-end time of a small survey under each backend.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time

from modquot import _pykernels, kernels
from modquot.tuples import RelatorTuple, symmetrized_closure
from modquot.words import random_cyclic

try:
    from modquot import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def _time(fn, cases, reps) -> float:
    start = time.perf_counter()
    for _ in range(reps):
        for args in cases:
            fn(*args)
    return (time.perf_counter() - start) / (reps * len(cases))


def bench_kernels(n: int, reps: int, seed: int) -> list[tuple[str, int, float, float | None]]:
    rng = random.Random(seed)
    words = [random_cyclic(rng, n) for _ in range(20)]
    bounce = [(w, k) for w in words for k in (1, 2, 4)]
    lcp = [(sorted(symmetrized_closure(RelatorTuple.of(w)).members),) for w in words[:5]]
    rows = []
    for name, cases in (("bounce_run", bounce), ("adjacent_lcp", lcp)):
        py = _time(getattr(_pykernels, name), cases, reps)
        c = _time(getattr(_ckernels, name), cases, reps) if _ckernels else None
        rows.append((name, n, py, c))
    return rows


def bench_survey(pure: bool, n: int, trials: int) -> float:
    env = dict(os.environ, MODQUOT_PURE_PYTHON="1" if pure else "0")
    code = (
        "import time;from modquot.genericity import GenericityParams, survey;"
        f"t=time.perf_counter();survey({n},1,{trials},0,GenericityParams.experiment());"
        "print(time.perf_counter()-t)"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[480, 960])
    ap.add_argument("--reps", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--survey-trials", type=int, default=50)
    args = ap.parse_args()

    print(f"active backend: {kernels.BACKEND}")
    print(f"{'kernel':<14}{'n':>6}{'python (us)':>14}{'cython (us)':>14}{'speedup':>10}")
    for n in args.n:
        for name, size, py, c in bench_kernels(n, args.reps, args.seed):
            cs = f"{c * 1e6:14.1f}" if c else f"{'-':>14}"
            sp = f"{py / c:10.1f}" if c else f"{'-':>10}"
            print(f"{name:<14}{size:>6}{py * 1e6:14.1f}{cs}{sp}")
    for n in args.n:
        py = bench_survey(True, n, args.survey_trials)
        c = bench_survey(False, n, args.survey_trials) if _ckernels else None
        cs = f"{c:.2f}s" if c else "-"
        print(f"survey n={n} trials={args.survey_trials}: python {py:.2f}s, compiled {cs}")


if __name__ == "__main__":
    main()
