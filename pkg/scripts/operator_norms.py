#!/usr/bin/env python3
"""Lower bounds for the operator norm of the sphere indicator chi_{C_1}.

Usage: python scripts/operator_norms.py [max_radius] [preset ...]
"""

import sys

from artingeo.harmonic import GroupFunction, operator_norm_profile
from artingeo.largetype import ArtinGroup
from artingeo.presets import load_preset


def main() -> int:
    max_radius = int(sys.argv[1]) if len(sys.argv) > 1 else 7
    presets = sys.argv[2:] or ["dainf", "da3"]
    for name in presets:
        group = ArtinGroup(load_preset(name))
        chi = GroupFunction.sphere_indicator(group, group.ball(1), 1)
        prof = operator_norm_profile(chi, range(2, max_radius + 1), iterations=80)
        print(f"== {name}: certified lower bounds for ||chi_C1||_*")
        for radius, value in prof:
            print(f"   R={radius}: {value:.6f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
