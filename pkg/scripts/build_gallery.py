"""Build the canonical four-point complexes and export them.

Writes complex JSON and a DOT face lattice for three touchstone classes
(the balanced class, a segment class, a rectangle class) into --out-dir.

    python3 scripts/build_gallery.py --out-dir gallery
"""

import argparse
import json
import pathlib
import sys
from fractions import Fraction

sys.path.insert(0, "src")

from moebius.cli import dot_complex, emit_complex
from moebius.complexes import build_complex, r_tilde
from moebius.core import to_log_weights
from moebius.teich import classify4, phi_inverse

GALLERY = {
    "balanced": (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)),
    "segment": (Fraction(1, 5), Fraction(2, 5), Fraction(2, 5)),
    "rectangle": (Fraction(1, 6), Fraction(2, 6), Fraction(3, 6)),
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="gallery")
    args = ap.parse_args()
    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    for name, triple in GALLERY.items():
        na = phi_inverse(triple)
        reg = classify4(na)
        sp = to_log_weights(na.to_space())
        cx = build_complex(sp)
        (out / f"{name}.json").write_text(
            json.dumps(emit_complex(cx), indent=2) + "\n")
        (out / f"{name}.dot").write_text(dot_complex(cx))
        sides = ", ".join(f"{s:.4f}" for s in reg.sides) or "none"
        print(f"{name}: region {reg.tag}, sides {sides}, "
              f"bounded {cx.f_vector_bounded}, unbounded "
              f"{cx.f_vector_unbounded}, r_tilde {float(r_tilde(sp, cx)):.4f}")
    print(f"wrote {2 * len(GALLERY)} files to {out}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
