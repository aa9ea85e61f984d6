"""Counted query cost on structured tetrahedral meshes.

Usage:
    python scripts/counters.py [--sizes 3,6,12] [--samples 8]

For each Kuhn cube mesh and each co-boundary relation Snm, runs the query
from interior seed faces with an operation counter and reports the worst
fitted constant C = ops / (out * log2(out) + 1).  Output-sensitive
queries keep C flat as the mesh grows.
"""

from __future__ import annotations

import argparse
import math
import time

from nmdecomp.counters import OpCounter
from nmdecomp.decompose import decompose
from nmdecomp.meshes import kuhn_cube
from nmdecomp.nonmanifold import build_nm_layer
from nmdecomp.winged import Ewds

RELATIONS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]


def budget(out: int) -> float:
    return out * math.log2(out) + 1 if out > 1 else 1.0


def interior_samples(n: int, count: int) -> tuple[list[int], list[tuple]]:
    """Seed vertices and edges away from the boundary of an n^3 cube."""

    def cid(x, y, z):
        return 1 + x + (n + 1) * (y + (n + 1) * z)

    lo, hi = 1, n - 1
    coords = []
    step = max(1, (hi - lo) // max(1, count - 1)) if hi > lo else 1
    c = lo
    while c <= hi and len(coords) < count:
        coords.append(c)
        c += step
    verts = [cid(c, c, c) for c in coords]
    verts += [cid(coords[0], coords[-1], coords[0])]
    edges = []
    for c in coords:
        if c + 1 <= n:
            edges.append(tuple(sorted((cid(c, c, c), cid(c + 1, c, c)))))
            edges.append(
                tuple(sorted((cid(c, c, c), cid(c + 1, c + 1, c + 1))))
            )
    return verts, edges


def run(sizes: list[int], count: int) -> None:
    fits: dict[tuple, list[float]] = {rel: [] for rel in RELATIONS}
    for n in sizes:
        t0 = time.perf_counter()
        mesh = kuhn_cube(n)
        nm = build_nm_layer(Ewds.build(decompose(mesh)))
        built = time.perf_counter() - t0
        print(f"mesh n={n}: {mesh.num_tops} tets, built in {built:.2f}s")
        verts, edges = interior_samples(n, count)
        for rn, rm in RELATIONS:
            samples = [(v,) for v in verts] if rn == 0 else edges
            worst = 0.0
            worst_out = 0
            for gamma in samples:
                counter = OpCounter()
                out = nm.snm_global(gamma, rn, rm, counter)
                c = counter.total / budget(len(out))
                if c > worst:
                    worst, worst_out = c, len(out)
            fits[(rn, rm)].append(worst)
            print(
                f"  S{rn}{rm}: worst C = {worst:7.3f}"
                f"  (|out| = {worst_out} at the worst seed)"
            )
    print()
    print("relation  C per size  " + "  ".join(f"n={n}" for n in sizes))
    for rel, cs in fits.items():
        spread = max(cs) / min(cs)
        row = "  ".join(f"{c:7.3f}" for c in cs)
        print(f"S{rel[0]}{rel[1]}       {row}   spread {spread:.3f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="3,6,12",
                    help="comma separated Kuhn cube resolutions")
    ap.add_argument("--samples", type=int, default=8,
                    help="seed faces per relation and mesh")
    args = ap.parse_args()
    run([int(s) for s in args.sizes.split(",")], args.samples)


if __name__ == "__main__":
    main()
