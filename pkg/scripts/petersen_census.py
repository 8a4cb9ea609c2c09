"""Route all 64 switching classes of the Petersen graph and print a table.

    python3 scripts/petersen_census.py [--base NAME]
"""

import argparse
import sys
import time

from signedflow.census import census, format_census
from signedflow.generators import generate


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--base", default="petersen", help="named cubic graph (default petersen)")
    args = ap.parse_args()
    start = time.perf_counter()
    rows = census(generate(args.base))
    print(format_census(rows))
    print(f"total {time.perf_counter() - start:.1f}s")
    return 0 if all(r.consistent for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
