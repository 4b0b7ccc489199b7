"""Deform a normal-form graph at random and watch which quantities stay fixed.

    python3 demos/deformation_invariants.py [--seed 1] [--steps 30]
"""
import argparse

from gbs.graph import betti_number
from gbs.iso import dual_graph, residues_up_to_shift
from gbs.modular import modular_image
from gbs.moves import apply, random_deform
from gbs.normalform import NormalForm


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--steps", type=int, default=30)
    args = ap.parse_args()

    nf = NormalForm(2, 1, 3, (0, 1, 1, 2))
    g = nf.graph()
    print(f"start: {nf}\n       {g}")
    print(f"betti {betti_number(g)}, image {modular_image(g)}")
    print(f"residues up to shift {residues_up_to_shift(nf.residues, nf.m)}\n")

    _, moves = random_deform(g, args.steps, args.seed, keep_reduced=True)
    h = g
    for i, mv in enumerate(moves, 1):
        h = apply(h, mv)
        dg = dual_graph(h, nf.r, nf.l, nf.m)
        res = residues_up_to_shift(dg.potential_values(), nf.m)
        print(f"{i:3d} {type(mv).__name__:14s} betti {betti_number(h)}  image {modular_image(h)}  residues {res}")
    print(f"\nend:   {h}")


if __name__ == "__main__":
    main()
