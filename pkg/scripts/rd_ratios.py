#!/usr/bin/env python3
"""Convolution-ratio tables ||(phi_k * psi_l)_m|| / (||phi_k|| ||psi_l||).

Usage: python scripts/rd_ratios.py [radius] [trials] [seed] [preset ...]
"""

import sys

from artingeo.largetype import ArtinGroup
from artingeo.presets import load_preset
from artingeo.sweeps import rd_check


def main() -> int:
    radius = int(sys.argv[1]) if len(sys.argv) > 1 else 5
    trials = int(sys.argv[2]) if len(sys.argv) > 2 else 25
    seed = int(sys.argv[3]) if len(sys.argv) > 3 else 0
    presets = sys.argv[4:] or ["da3"]
    for name in presets:
        group = ArtinGroup(load_preset(name))
        rows, summary = rd_check(group, radius, trials, seed, name)
        print(f"== {name}, radius {radius}, {trials} trials, seed {seed}")
        for _, k, l, m, ratio in rows:
            print(f"   k={k} l={l} m={m}: {ratio}")
        print(f"   envelope by min(k,l): {summary['envelope_by_min_kl']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
