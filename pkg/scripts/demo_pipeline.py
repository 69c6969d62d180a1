#!/usr/bin/env python3
"""Walk the full pipeline on the projective plane.

Builds bundle data from ray values, recovers the values, emits and checks
the transition cocycle, and reduces a conjugated matrix homomorphism back
to diagonal form.
"""

import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from equitoric import (
    RayValues,
    check_extension,
    classify,
    from_ray_values,
    split,
    to_ray_values,
    transition_cocycle,
    verify_cocycle,
)
from equitoric.fileio import load_fan, load_rep

ROOT = Path(__file__).resolve().parents[1]


def main() -> int:
    fan = load_fan(ROOT / "data" / "fans" / "p2.json")
    cls = classify(fan, 1)
    print(f"projective plane: classes of line-type data form Z^{cls.rank}")

    values = ((1,), (0,), (0,))
    data = from_ray_values(RayValues(fan=fan, r=1, values=values))
    print(f"ray values {values} ->")
    for i, per_cone in enumerate(data.chars):
        print(f"  cone {i}: character {per_cone[0]}")
    assert check_extension(data).ok
    assert to_ray_values(data).values == values

    coc = transition_cocycle(data)
    print("transition exponents:")
    for (t, s), chars in sorted(coc.entries.items()):
        print(f"  ({t} <- {s}): {chars[0]}")
    print(f"cocycle verification: {verify_cocycle(coc).summary()}")

    rho = load_rep(ROOT / "data" / "reps" / "conjugated_2x2.json")[0]
    dec = split(rho)
    print("matrix homomorphism splits with conjugator columns:")
    for j in range(rho.size):
        col = [dec.conjugator[i][j] for i in range(rho.size)]
        print(f"  weight {dec.diagonal[j]}: column {col}")
    assert dec.conjugator == (
        (Fraction(1), Fraction(1)),
        (Fraction(0), Fraction(1)),
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
