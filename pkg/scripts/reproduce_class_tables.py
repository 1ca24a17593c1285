"""Per-class tables of the gcd-filtered invariant for F2, F3 and F5 with g handles added."""
import argparse
import json

from shadowmgr.repro import class_tables


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--surfaces", default="F2,F3,F5")
    ap.add_argument("--handles", type=int, nargs="+", default=[0])
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--json", action="store_true", help="print JSON instead of text")
    args = ap.parse_args()
    reports = [class_tables(s, g, args.threads) for s in args.surfaces.split(",") for g in args.handles]
    if args.json:
        print(json.dumps([r.to_json(timing=True) for r in reports], indent=1))
    else:
        print("\n\n".join(r.text(timing=True) for r in reports))


if __name__ == "__main__":
    main()
