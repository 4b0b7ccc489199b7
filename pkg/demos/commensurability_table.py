"""Print commensurability classes of BS(m,n) for 1 <= |m| <= n <= N.

    python3 demos/commensurability_table.py [--max-n 8] [--witness M1 N1 M2 N2]
"""
import argparse
import json

from gbs.commensurability import bs_normalize, commensurable, witness


def classes(max_n: int):
    pairs = [(s * m, n) for n in range(1, max_n + 1) for m in range(1, n + 1) for s in (1, -1)]
    out = []
    for p in pairs:
        for cls in out:
            if commensurable(*p, *cls[0]).commensurable:
                cls.append(p)
                break
        else:
            out.append([p])
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--witness", type=int, nargs=4, metavar=("M1", "N1", "M2", "N2"))
    args = ap.parse_args()

    if args.witness:
        m1, n1, m2, n2 = args.witness
        v = commensurable(m1, n1, m2, n2)
        p1, p2 = bs_normalize(m1, n1), bs_normalize(m2, n2)
        print(f"BS({p1.m},{p1.n}) vs BS({p2.m},{p2.n}): {v}")
        if v.commensurable:
            print(json.dumps(witness(m1, n1, m2, n2).to_dict(), indent=2))
        return

    found = classes(args.max_n)
    print(f"{len(found)} classes among BS(m,n), 1 <= |m| <= n <= {args.max_n}\n")
    for cls in sorted(found, key=len, reverse=True):
        print(f"[{len(cls):2d}] " + " ".join(f"({m},{n})" for m, n in cls))


if __name__ == "__main__":
    main()
