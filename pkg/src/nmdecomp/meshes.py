"""Structured tetrahedral test meshes.

kuhn_brick builds an nx x ny x nz block of unit cubes, each cut into the six
tetrahedra around the main diagonal (the standard Kuhn subdivision).  The
result is a manifold ball, hence initial quasi-manifold, and its size is
controlled exactly: 6*nx*ny*nz tetrahedra.  Used by the benchmark scripts and
the complexity tests, where predictable N is what matters.
"""

from __future__ import annotations

import itertools

from .complexes import Complex

# The six tets of the unit cube, as corner triples on the path from (0,0,0)
# to (1,1,1); each permutation of the axes gives one tet.
_PERMS = list(itertools.permutations(range(3)))


def _corner_id(x: int, y: int, z: int, nx: int, ny: int) -> int:
    return 1 + x + (nx + 1) * (y + (ny + 1) * z)


def kuhn_brick(nx: int, ny: int, nz: int) -> Complex:
    rows: dict[int, tuple[int, ...]] = {}
    tid = 1
    for cz in range(nz):
        for cy in range(ny):
            for cx in range(nx):
                base = (cx, cy, cz)
                for perm in _PERMS:
                    corner = list(base)
                    verts = [_corner_id(*corner, nx, ny)]
                    for axis in perm:
                        corner[axis] += 1
                        verts.append(_corner_id(*corner, nx, ny))
                    rows[tid] = tuple(verts)
                    tid += 1
    return Complex(rows, validate=False)


def kuhn_cube(n: int) -> Complex:
    """n x n x n cubes: 6*n**3 tets."""
    return kuhn_brick(n, n, n)
