#!/usr/bin/env python3
"""Enumerate bundle classes with bounded ray values on the bundled fans.

For each fan and block count, walks the full box of ray-value tables with
entries in [-bound, bound], rebuilds the bundle data, and confirms the
count of distinct classes equals (2*bound+1)**(rays * blocks) -- the
parametrization is a bijection on the box.
"""

import argparse
import itertools
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from equitoric import RayValues, check_extension, from_ray_values, to_ray_values
from equitoric.fileio import load_fan

FANS = Path(__file__).resolve().parents[1] / "data" / "fans"


def enumerate_box(fan, r, bound):
    d = len(fan.rays)
    seen = set()
    for combo in itertools.product(range(-bound, bound + 1), repeat=d * r):
        values = tuple(tuple(combo[i * r : (i + 1) * r]) for i in range(d))
        data = from_ray_values(RayValues(fan=fan, r=r, values=values))
        assert check_extension(data).ok
        assert to_ray_values(data).values == values
        seen.add(data.chars)
    return len(seen)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bound", type=int, default=1)
    parser.add_argument("--blocks", type=int, default=1)
    parser.add_argument(
        "--fans",
        nargs="*",
        default=["p1", "p2", "p1xp1", "hirzebruch_f2"],
        help="fan file stems under data/fans/",
    )
    args = parser.parse_args()

    print(f"{'fan':<16} {'rays':>4} {'blocks':>6} {'box':>9} {'classes':>9} {'time':>7}")
    for name in args.fans:
        fan = load_fan(FANS / f"{name}.json")
        d = len(fan.rays)
        expected = (2 * args.bound + 1) ** (d * args.blocks)
        start = time.perf_counter()
        count = enumerate_box(fan, args.blocks, args.bound)
        elapsed = time.perf_counter() - start
        status = "ok" if count == expected else "MISMATCH"
        print(
            f"{name:<16} {d:>4} {args.blocks:>6} {expected:>9} {count:>9} "
            f"{elapsed:>6.2f}s  {status}"
        )
        if count != expected:
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
