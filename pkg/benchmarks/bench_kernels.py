"""Compare the compiled and pure-Python lattice-point kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each row times one kernel call on the same inputs with both backends and
checks that the answers agree.
"""

from __future__ import annotations

import argparse
import timeit

from divlog import kernels
from divlog.fan import Cone
from divlog.monoid import enumeration_box


def hilbert_case(rays):
    cone = Cone.of(len(rays[0]), rays)
    normals = cone.normals
    grading, bound, lower, upper = enumeration_box(len(rays[0]), normals)
    return normals, (grading, bound, lower, upper)


CONES = {
    "rank 2, <(1,0),(1,9)>": [(1, 0), (1, 9)],
    "rank 2, <(1,0),(5,17)>": [(1, 0), (5, 17)],
    "rank 3, <e1,e2,(1,1,6)>": [(1, 0, 0), (0, 1, 0), (1, 1, 6)],
    "rank 3, <e1,e2,(2,3,7)>": [(1, 0, 0), (0, 1, 0), (2, 3, 7)],
    "rank 4, <e1,e2,e3,(1,1,1,3)>": [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, 1, 1, 3)],
}

COMBINATIONS = {
    "<7,11> reaches 1000": ((1000,), [(7,), (11,)], [7, 11], 1000, 1, ()),
    "<(1,0),(1,1),(1,3)> reaches (60,100)": ((60, 100), [(1, 0), (1, 1), (1, 3)],
                                             [1, 1, 1], 60, 2, ()),
    "<5,8> misses 27 (exhaustive)": ((27,), [(5,), (8,)], [5, 8], 27, 1, ()),
}


def _time(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def cases():
    for name, rays in CONES.items():
        normals, (grading, bound, lower, upper) = hilbert_case(rays)

        def run(compiled, normals=normals, g=grading, b=bound, lo=lower, up=upper):
            pts = kernels.cone_points(normals, g, b, lo, up, compiled=compiled)
            return kernels.irreducibles(pts, normals, compiled=compiled)
        yield f"hilbert {name}", run
    for name, args in COMBINATIONS.items():
        yield f"combination {name}", (
            lambda compiled, args=args: kernels.find_combination(*args, compiled=compiled))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if kernels.BACKEND != "cython":
        print("compiled kernels are not built; only the Python backend is available")
        return 1
    print(f"{'case':<52} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for name, run in cases():
        py, cy = run(False), run(True)
        assert py == cy, f"backends disagree on {name}"
        t_py = _time(lambda: run(False), args.repeat)
        t_cy = _time(lambda: run(True), args.repeat)
        print(f"{name:<52} {1e3 * t_py:>10.2f} {1e3 * t_cy:>10.2f} {t_py / t_cy:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
