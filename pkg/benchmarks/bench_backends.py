"""Compare the compiled kernel against the pure-Python fallback.

Runs the same workloads against valex._speedups and valex._pykernel directly
(no re-exec needed), then reports wall times.  Use --grid to include the full
oracle-grid sweep, which exercises the kernels through the whole pipeline.

    python benchmarks/bench_backends.py [--grid]
"""

import argparse
import random
import time


def rand_terms(rng, nt, span=8, coef=10**6):
    d = {}
    for _ in range(nt):
        d[(rng.randint(-span, span), rng.randint(-span, span))] = rng.randint(-coef, coef) or 1
    return {k: v for k, v in d.items() if v}


def bench_kernel(mod, rounds=4000):
    rng = random.Random(42)
    pairs = [(rand_terms(rng, 12), rand_terms(rng, 12)) for _ in range(64)]
    t0 = time.perf_counter()
    for r in range(rounds):
        a, b = pairs[r % len(pairs)]
        mod.mul_terms(a, b)
    t_mul = time.perf_counter() - t0

    prods = [(mod.mul_terms(a, b), b) for a, b in pairs]
    t0 = time.perf_counter()
    for r in range(rounds):
        p, b = prods[r % len(prods)]
        mod.divexact_terms(p, b)
    t_div = time.perf_counter() - t0

    quads = [(rand_terms(rng, 10), rand_terms(rng, 10),
              rand_terms(rng, 10), rand_terms(rng, 10)) for _ in range(64)]
    t0 = time.perf_counter()
    for r in range(rounds):
        a, b, c, d = quads[r % len(quads)]
        mod.fma_terms(a, b, c, d)
    t_fma = time.perf_counter() - t0
    return t_mul, t_fma, t_div


def bench_determinant(backend_mod, reps=20):
    import valex._backend as backend
    from valex.alexander import delta0_diagram
    from valex.twist import TwistSpec, generate_twist

    saved = (backend.mul_terms, backend.fma_terms, backend.divexact_terms)
    backend.mul_terms = backend_mod.mul_terms
    backend.fma_terms = backend_mod.fma_terms
    backend.divexact_terms = backend_mod.divexact_terms
    # alexander binds fma/divexact at import; patch there too
    import valex.alexander as alex
    saved_alex = (alex.fma_terms, alex.divexact_terms)
    alex.fma_terms = backend_mod.fma_terms
    alex.divexact_terms = backend_mod.divexact_terms
    try:
        d = generate_twist(TwistSpec((4, 4, 4)))
        t0 = time.perf_counter()
        for _ in range(reps):
            delta0_diagram(d)
        return time.perf_counter() - t0
    finally:
        backend.mul_terms, backend.fma_terms, backend.divexact_terms = saved
        alex.fma_terms, alex.divexact_terms = saved_alex


def bench_grid(backend_mod):
    import valex._backend as backend
    import valex.alexander as alex
    from valex.verify import acceptance_grid, run_grid

    saved = (backend.mul_terms, backend.fma_terms, backend.divexact_terms)
    saved_alex = (alex.fma_terms, alex.divexact_terms)
    backend.mul_terms = backend_mod.mul_terms
    backend.fma_terms = backend_mod.fma_terms
    backend.divexact_terms = backend_mod.divexact_terms
    alex.fma_terms = backend_mod.fma_terms
    alex.divexact_terms = backend_mod.divexact_terms
    try:
        t0 = time.perf_counter()
        results = run_grid(specs=acceptance_grid(), workers=1)
        dt = time.perf_counter() - t0
        assert all(r.passed for r in results)
        return dt
    finally:
        backend.mul_terms, backend.fma_terms, backend.divexact_terms = saved
        alex.fma_terms, alex.divexact_terms = saved_alex


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--grid", action="store_true",
                        help="also run the full 900-spec oracle grid per backend")
    args = parser.parse_args()

    import valex._pykernel as pure
    try:
        import valex._speedups as compiled
    except ImportError:
        compiled = None
        print("compiled kernel not built; showing pure-Python numbers only")

    rows = [("python", pure)] + ([("c", compiled)] if compiled else [])
    print(f"{'backend':<9} {'mul':>9} {'fma':>9} {'divexact':>9} {'det 26x26':>11}")
    base = None
    for name, mod in rows:
        t_mul, t_fma, t_div = bench_kernel(mod)
        t_det = bench_determinant(mod)
        print(f"{name:<9} {t_mul:>8.3f}s {t_fma:>8.3f}s {t_div:>8.3f}s {t_det:>10.3f}s")
        if base is None:
            base = (t_mul, t_fma, t_div, t_det)
        else:
            speed = [b / t for b, t in zip(base, (t_mul, t_fma, t_div, t_det))]
            print(f"{'speedup':<9} {speed[0]:>8.1f}x {speed[1]:>8.1f}x "
                  f"{speed[2]:>8.1f}x {speed[3]:>9.1f}x")

    if args.grid:
        print()
        for name, mod in rows:
            dt = bench_grid(mod)
            print(f"oracle grid (900 specs, serial), backend={name}: {dt:.2f}s")


if __name__ == "__main__":
    main()
