#!/usr/bin/env python3
"""Re-run the bundled worked examples and print one line per check."""

import sys

from artingeo.sweeps import repro_paper


def main() -> int:
    results = repro_paper()
    for r in results:
        print(f"{'PASS' if r['ok'] else 'FAIL'}  {r['name']}: {r['detail']} ({r['seconds']}s)")
    return 0 if all(r["ok"] for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
