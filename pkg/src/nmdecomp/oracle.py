"""Brute-force reference implementations.

Everything here trades speed for obviousness: queries scan every top simplex,
the decomposition is rebuilt from first principles (explode, glue along
manifold pairs, read off components), and the random generator produces
complexes by the same explode-and-glue process so results always live in the
decomposition lattice of something.

The oracle deliberately shares no machinery with the main path beyond the
Complex type and the passive result record.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable, Mapping

from .complexes import Complex, Simplex, simplex
from .decompose import DecompositionResult
from .unionfind import UnionFind


def oracle_star(c: Complex, gamma: Iterable[int]) -> set[int]:
    g = set(gamma)
    return {t for t in c.top_ids if g <= set(c.row(t))}


def oracle_snm(c: Complex, gamma: Iterable[int], n: int, m: int) -> set[Simplex]:
    """All m-faces containing gamma, by scanning every top simplex."""
    g = simplex(gamma)
    assert len(g) - 1 == n, "n must be the dimension of gamma"
    gset = set(g)
    out: set[Simplex] = set()
    for t in c.top_ids:
        row = sorted(c.row(t))
        if not gset <= set(row):
            continue
        rest = [v for v in row if v not in gset]
        need = (m + 1) - len(g)
        if need < 0 or need > len(rest):
            continue
        for extra in itertools.combinations(rest, need):
            out.add(tuple(sorted(g + extra)))
    return out


def canonical_pairs(c: Complex) -> set[frozenset]:
    """Unordered top pairs sharing a facet whose star is exactly that pair.

    These are the gluing instructions that any decomposition in the lattice
    must keep applied; applying all of them to the exploded complex yields
    the standard decomposition.
    """
    by_face: dict[Simplex, list[int]] = {}
    for t in c.top_ids:
        srt = sorted(c.row(t))
        if len(srt) < 2:
            continue
        for face in itertools.combinations(srt, len(srt) - 1):
            by_face.setdefault(face, []).append(t)
    pairs: set[frozenset] = set()
    for face, cofs in by_face.items():
        if len(cofs) != 2:
            continue
        t1, t2 = cofs
        if c.dim_of(t1) != c.dim_of(t2):
            continue
        # the facet must be their full intersection and its star just them
        if oracle_star(c, face) == {t1, t2}:
            pairs.add(frozenset((t1, t2)))
    return pairs


def oracle_decompose(c: Complex) -> DecompositionResult:
    """Standard decomposition via explode + canonical pairs + components."""
    uf = UnionFind()
    for t in c.top_ids:
        for v in c.row(t):
            uf.find((t, v))
    for pair in canonical_pairs(c):
        t1, t2 = sorted(pair)
        shared = set(c.row(t1)) & set(c.row(t2))
        for v in shared:
            uf.union((t1, v), (t2, v))

    # copy classes per source vertex, ordered by smallest member top
    classes: dict[int, dict] = {}
    for t in c.top_ids:
        for v in c.row(t):
            root = uf.find((t, v))
            classes.setdefault(v, {}).setdefault(root, set()).add(t)

    next_id = max(c.vertices, default=0) + 1
    copy_id: dict[tuple, int] = {}
    sigma: dict[int, int] = {}
    for v in sorted(classes):
        # class order mirrors the recursion: link dimension, then discovery
        groups = sorted(
            classes[v].values(),
            key=lambda tops: (max(c.dim_of(t) for t in tops), min(tops)),
        )
        for i, tops in enumerate(groups):
            if i == 0:
                new = v
            else:
                new = next_id
                next_id += 1
            sigma[new] = v
            for t in tops:
                copy_id[(t, v)] = new

    rows = {
        t: tuple(copy_id[(t, v)] for v in c.row(t)) for t in c.top_ids
    }
    nabla = Complex(rows, validate=False)
    comps = nabla.h_connected_components(0)
    comps.sort(key=lambda g: (nabla.dim_of(g[0]), g[0]))
    components = [nabla.subcomplex(g) for g in comps]
    return DecompositionResult.from_parts(c, nabla, components, sigma)


def labeled_isomorphic(a: Complex, b: Complex, relabel: Mapping[int, int]) -> bool:
    """Does relabelling a's vertices through the map give b's simplex set?"""
    for v in a.vertices:
        if v not in relabel:
            raise ValueError(f"relabel map not total: missing {v}")
    relabelled = {tuple(sorted(relabel[v] for v in a.row(t))) for t in a.top_ids}
    return relabelled == b.simplex_set()


# -- seeded random complexes -------------------------------------------------


def random_complex(seed: int, max_tops: int, d: int) -> Complex:
    """Deterministic random complex of dimension d with at most max_tops tops.

    Random top simplices over a small vertex pool are exploded and partially
    reglued with a random instruction mix, and the resulting decomposition is
    returned; by construction it is a member of a decomposition lattice.
    """
    rng = random.Random(seed)
    nt = rng.randint(1, max_tops)
    pool = list(range(1, rng.randint(d + 2, 3 * (d + 1)) + 1))

    cand: list[tuple[int, ...]] = []
    for i in range(nt):
        size = d + 1 if i == 0 else rng.randint(1, d + 1)
        row = tuple(rng.sample(pool, min(size, len(pool))))
        cand.append(row)
    # keep only maximal rows, first occurrence wins
    rows: dict[int, tuple[int, ...]] = {}
    kept: list[frozenset] = []
    for row in cand:
        fs = frozenset(row)
        if any(fs <= other for other in kept):
            continue
        kept = [other for other in kept if not other < fs]
        kept.append(fs)
    for i, fs in enumerate(kept, start=1):
        # reuse the candidate order of the first row realizing this set
        row = next(r for r in cand if frozenset(r) == fs)
        rows[i] = row
    source = Complex(rows, validate=False)

    uf = UnionFind()
    for t in source.top_ids:
        for v in source.row(t):
            uf.find((t, v))
    sharing = [
        (t1, t2)
        for t1, t2 in itertools.combinations(source.top_ids, 2)
        if set(source.row(t1)) & set(source.row(t2))
    ]
    if sharing:
        for _ in range(rng.randint(0, 3 * len(source.top_ids))):
            t1, t2 = sharing[rng.randrange(len(sharing))]
            shared = sorted(set(source.row(t1)) & set(source.row(t2)))
            if rng.random() < 0.7:
                for v in shared:
                    uf.union((t1, v), (t2, v))
            else:
                v = shared[rng.randrange(len(shared))]
                uf.union((t1, v), (t2, v))

    classes: dict[int, dict] = {}
    for t in source.top_ids:
        for v in source.row(t):
            root = uf.find((t, v))
            classes.setdefault(v, {}).setdefault(root, set()).add(t)
    new_id: dict[tuple, int] = {}
    counter = 0
    for v in sorted(classes):
        for tops in sorted(classes[v].values(), key=min):
            counter += 1
            for t in tops:
                new_id[(t, v)] = counter
    out_rows = {
        t: tuple(new_id[(t, v)] for v in source.row(t)) for t in source.top_ids
    }
    return Complex(out_rows)


# -- face-number laws used as test invariants --------------------------------


def closed_surface_law(c: Complex) -> bool:
    """3*f2 == 2*f1 on closed surfaces."""
    f = c.face_counts()
    return 3 * f[2] == 2 * f[1]


def pseudo_boundary_law(c: Complex) -> bool:
    """(d+1)*f_d <= 2*f_{d-1} - (d+1) for pseudomanifolds with boundary."""
    d = c.dim
    f = c.face_counts()
    return (d + 1) * f[d] <= 2 * f[d - 1] - (d + 1)
