#!/usr/bin/env python3
"""Merger sets S(g,k,l), their S0/S1/S2 decomposition and the bound checks.

Usage: python scripts/d2_table.py [radius] [preset]
"""

import sys

from artingeo.largetype import ArtinGroup
from artingeo.presets import load_preset
from artingeo.sweeps import d2_scan


def main() -> int:
    radius = int(sys.argv[1]) if len(sys.argv) > 1 else 4
    name = sys.argv[2] if len(sys.argv) > 2 else "triangle345"
    group = ArtinGroup(load_preset(name))
    rows, summary = d2_scan(group, radius, name)
    worst = max(rows, key=lambda r: r[4], default=None)
    print(f"{name}, radius {radius}: {len(rows)} (g,k,l) cells")
    if worst:
        print(f"largest S: |S|={worst[4]} |T|={worst[5]} at g={worst[1]!r} k={worst[2]} l={worst[3]}")
    print(f"all merger bounds hold: {summary['all_bounds_ok']}")
    print(f"falsified-property events: {len(summary['events'])}")
    for e in summary["events"]:
        print("  EVENT:", e)
    return 0 if summary["all_bounds_ok"] and not summary["events"] else 1


if __name__ == "__main__":
    sys.exit(main())
