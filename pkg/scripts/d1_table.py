#!/usr/bin/env python3
"""Permissible factorisation counts F_P(k,l) over a ball, one table per preset.

Usage: python scripts/d1_table.py [radius] [preset ...]
"""

import sys

from artingeo.largetype import ArtinGroup
from artingeo.presets import load_preset
from artingeo.sweeps import d1_scan


def main() -> int:
    radius = int(sys.argv[1]) if len(sys.argv) > 1 else 6
    presets = sys.argv[2:] or ["da3", "da4", "triangle444"]
    for name in presets:
        group = ArtinGroup(load_preset(name))
        rows, summary = d1_scan(group, radius, (1, 2, 3), name)
        print(f"== {name}, radius {radius}")
        for _, k, l, _, v in rows:
            print(f"   F_P({k},{l}) = {v}")
        print(f"   max by min(k,l): {summary['max_by_min_kl']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
