"""Walk the four-sheet cover in data/figure1.json through the normal-form pipeline.

    python3 demos/figure1_walkthrough.py [--n 5]
"""
import argparse
from pathlib import Path

from gbs.covering import cover_from_json, lift_labels
from gbs.graph import betti_number
from gbs.moves import apply_all
from gbs.normalform import collapse_to_bouquet, normal_form_with_moves, plateau_m, positive_spanning_tree

DATA = Path(__file__).parent / "data"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5, help="label n of the base group G^2_{1,n}")
    args = ap.parse_args()

    cover = cover_from_json((DATA / "figure1.json").read_text())
    print(f"cover: d={cover.d}, sheets={cover.n_sheets}, perms={cover.perms}")

    g = lift_labels(cover, 1, args.n)
    print(f"\n1. lifted graph has {len(g.vertices)} vertices, {len(g.edges)} edges, betti {betti_number(g)}")
    for e in g.edges:
        print(f"   {e.id}: {e.source} -> {e.target}  ({e.a}, {e.omega})")

    tree = positive_spanning_tree(cover)
    print("\n2. spanning tree of positive edges, pointing at sheet 0:")
    for petal, src, tgt in tree.edges:
        print(f"   sheet {src} -> sheet {tgt} along petal {petal}")

    bq = collapse_to_bouquet(cover, args.n)
    print(f"\n3. collapsing the tree leaves a bouquet; exponents base {bq.base}:")
    for a, b in bq.petals:
        print(f"   loop ({bq.base}^{a}, {bq.base}^{b})")
    print(f"   plateau m = {plateau_m(bq)}")

    nf, start, moves = normal_form_with_moves(bq)
    print(f"\n4. {len(moves)} slide moves reach the normal form {nf}")
    end = apply_all(start, moves)
    print("   loops: " + ", ".join(f"({e.a},{e.omega})" for e in end.edges))


if __name__ == "__main__":
    main()
