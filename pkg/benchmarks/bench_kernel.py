"""Compiled vs pure-Python Riccati kernel on hardware doubles.

    python benchmarks/bench_kernel.py --order 8 --repeat 200
"""
import argparse
import timeit

from pslet import kernel
from pslet._kernel_py import solve_orders as solve_py
from pslet.engine import build_expansion
from pslet.potentials import AnharmonicOscillator
from pslet.shift import solve_shift


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--repeat", type=int, default=200)
    args = p.parse_args()

    pot = AnharmonicOscillator("0.5", "1")
    shift = solve_shift(pot, (args.k, 0), digits=16)
    exp = build_expansion(pot, shift, args.order)
    s_max = exp.s_max

    t_py = min(timeit.repeat(lambda: solve_py(exp.v, shift.omega, args.k, s_max), number=args.repeat, repeat=3))
    print(f"python    {1e6 * t_py / args.repeat:10.1f} us/solve")
    if not kernel.HAVE_COMPILED:
        print("compiled  (not built)")
        return
    c = kernel._ckernel
    t_c = min(timeit.repeat(lambda: c.solve_orders(exp.v, shift.omega, args.k, s_max, float("inf")),
                            number=args.repeat, repeat=3))
    print(f"compiled  {1e6 * t_c / args.repeat:10.1f} us/solve")
    print(f"speedup   {t_py / t_c:10.1f}x")


if __name__ == "__main__":
    main()
