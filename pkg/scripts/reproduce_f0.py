"""Compute the invariant of F0 and -F0* over the single-letter pipeline."""
import argparse

from shadowmgr.repro import f0_pair


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    rep = f0_pair(args.threads)
    print(rep.text(timing=True))
    return 0 if rep.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
