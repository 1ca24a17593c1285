"""Compare per-colour counts on a surface and on the same surface with extra handles.

Each added handle multiplies the Q1 counts by 4 and the Q2 counts by 2.
"""
import argparse

from shadowmgr.reference import HANDLE_FACTOR
from shadowmgr.repro import per_q, pipeline, q_classes


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("surface", nargs="?", default="F2")
    ap.add_argument("--max-handles", type=int, default=2)
    args = ap.parse_args()
    classes = q_classes(pipeline("triple-letter"))
    base = per_q(args.surface, 0)
    ok = True
    for g in range(1, args.max_handles + 1):
        more = per_q(args.surface, g)
        for cls, members in classes.items():
            factor = HANDLE_FACTOR[cls] ** g
            good = all(more[q].as_dict() == {v: factor * k for v, k in base[q].counts} for q in members)
            ok &= good
            q = members[0]
            print(f"g={g} {cls}: {base[q]} -> {more[q]}  x{factor}  {'ok' if good else 'MISMATCH'}")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
