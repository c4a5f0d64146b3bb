"""Sweep the four-point simplex and tabulate the regions.

For every rational grid point (p, q, r) with p + q + r = denom this builds
the class, classifies it, reconstructs the complex, and cross-checks the
bounded shape against the predicted tag. Prints one census row per region.

    python3 scripts/region_atlas.py --denom 12
"""

import argparse
import sys
from collections import Counter, defaultdict
from fractions import Fraction

sys.path.insert(0, "src")

from moebius.complexes import build_complex
from moebius.core import to_log_weights
from moebius.teich import classify4, phi_inverse


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--denom", type=int, default=12,
                    help="grid denominator (default 12)")
    args = ap.parse_args()
    dn = args.denom

    tags = Counter()
    shapes = defaultdict(Counter)
    points = 0
    for p in range(1, dn - 1):
        for q in range(1, dn - p):
            r = dn - p - q
            if r < 1:
                continue
            points += 1
            triple = (Fraction(p, dn), Fraction(q, dn), Fraction(r, dn))
            reg = classify4(phi_inverse(triple))
            tags[reg.tag] += 1
            cx = build_complex(to_log_weights(phi_inverse(triple).to_space()))
            fb = cx.f_vector_bounded
            while fb and fb[-1] == 0:
                fb = fb[:-1]
            shapes[reg.tag][fb] += 1

    print(f"grid 1/{dn}: {points} points")
    for tag in sorted(tags):
        census = ", ".join(
            f"{fv} x{cnt}" for fv, cnt in sorted(shapes[tag].items()))
        print(f"  {tag}: {tags[tag]} points, bounded f-vectors {census}")
    mixed = [tag for tag, c in shapes.items() if len(c) > 1]
    if mixed:
        print(f"regions with mixed shapes: {mixed}")
        return 1
    print("every region reconstructs to a single shape")
    return 0


if __name__ == "__main__":
    sys.exit(main())
