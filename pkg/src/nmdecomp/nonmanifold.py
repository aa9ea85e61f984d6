"""Non-manifold layer on top of the packed tables.

The packed tables answer everything inside one component.  Queries about
the original complex need two extra ingredients: the vertex copy map
sigma (copies -> original vertex) and the splitmap, which lists for every
simplex that lost uniqueness in the decomposition its copies and one
representative top per adjacency patch of each copy.  Everything else
stays implicit: a simplex absent from the splitmap has a single copy, so
sigma inverts it directly.

Vertex couples are never splitmap keys: the copy map already answers
them, so recording starts at dimension one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .complexes import Simplex, simplex
from .counters import NULL_COUNTER, OpCounter
from .decompose import DecompositionResult
from .errors import IsSplitting, NotIncident, NotInTrie, UnknownVertex
from .trie import FtTrie, build_ft_trie
from .winged import Ewds

Splitmap = dict[Simplex, dict[Simplex, set[int]]]


def travel_star(
    ewds: Ewds,
    gamma: Iterable[int],
    t: int,
    flags: dict[int, int] | None = None,
    counter: OpCounter = NULL_COUNTER,
) -> list[int]:
    """Tops reachable from t across facets containing gamma.

    gamma is given in packed vertex ids and must span part of t's row.
    Crossing only order-2 facets, the walk covers one adjacency patch of
    gamma's star; boundary and higher-order facets stop it.  flags keeps
    one bitmask per top, a bit per vertex-slot subset, so repeated calls
    share the "already harvested" record.
    """
    gset = set(gamma)
    row = set(ewds.row_of(t))
    if not gset <= row:
        raise NotIncident(f"simplex {sorted(gset)} is not spanned by top {t}")
    if flags is None:
        flags = {}
    visited: list[int] = []
    stack = [t]
    while stack:
        u = stack.pop()
        h = ewds.dim_of_top(u)
        base = ewds._addr(h, u, 1)
        idx = 0
        for k in range(h + 1):
            if ewds.tvp[base + k] in gset:
                idx |= 1 << k
        if flags.get(u, 0) >> idx & 1:
            continue
        flags[u] = flags.get(u, 0) | (1 << idx)
        visited.append(u)
        counter.visits += 1
        for k in range(h + 1):
            if idx >> k & 1:
                continue
            counter.expansions += 1
            nbr = ewds.ttp[base + k]
            if nbr > 0:
                stack.append(nbr)
    return visited


@dataclass
class NmLayer:
    """Copy map, splitmap and face trie for global queries."""

    ewds: Ewds
    sigma_n: list[int]  # packed vertex id -> source vertex id, index 0 unused
    copies_of: dict[int, tuple[int, ...]]  # source vertex -> packed copies
    splitmap: Splitmap
    v_nra: list[int]
    trie: FtTrie | None = field(repr=False, default=None)

    # -- copy translation --------------------------------------------------

    def to_source(self, gamma: Iterable[int]) -> Simplex:
        return simplex(self.sigma_n[v] for v in gamma)

    def copy_in_top(self, t: int, gamma: Simplex) -> Simplex | None:
        """The copy of source simplex gamma inside top t, if all of it is there."""
        back = {self.sigma_n[w]: w for w in self.ewds.row_of(t)}
        try:
            return simplex(back[v] for v in gamma)
        except KeyError:
            return None

    def _copy_tops(
        self, gamma_copy: Simplex, counter: OpCounter = NULL_COUNTER
    ) -> list[int]:
        """All tops spanning one particular copy, via its first vertex's star."""
        gset = set(gamma_copy)
        out = []
        for t in self.ewds.s0h(gamma_copy[0], counter):
            counter.comparisons += 1
            if gset <= set(self.ewds.row_of(t)):
                out.append(t)
        return out

    def _locate(
        self, gamma: Simplex, counter: OpCounter = NULL_COUNTER
    ) -> tuple[Simplex, int]:
        """(unique copy, one spanning top) for a non-splitting simplex."""
        for v0 in self.copies_of.get(gamma[0], ()):
            for t in self.ewds.s0h(v0, counter):
                counter.comparisons += 1
                cp = self.copy_in_top(t, gamma)
                if cp is not None:
                    return cp, t
        raise NotIncident(f"{gamma} is not a face of the source complex")

    # -- relation operations -----------------------------------------------

    def sigma_n_inverse(
        self, gamma: Iterable[int], counter: OpCounter = NULL_COUNTER
    ) -> Simplex:
        """The unique packed copy of a source simplex.

        Splitting simplices have several copies, so inversion needs a top
        to disambiguate; asking without one is an error.
        """
        gamma = simplex(gamma)
        if len(gamma) == 1:
            copies = self.copies_of.get(gamma[0])
            if copies is None:
                raise NotIncident(f"unknown source vertex {gamma[0]}")
            if len(copies) > 1:
                raise IsSplitting(f"vertex {gamma[0]} has copies {list(copies)}")
            return (copies[0],)
        if gamma in self.splitmap:
            raise IsSplitting(f"{gamma} has several copies or patches")
        return self._locate(gamma, counter)[0]

    def snh_given(
        self, gamma: Iterable[int], t: int, counter: OpCounter = NULL_COUNTER
    ) -> list[int]:
        """Star tops of the copy of gamma living in top t.

        Floods from the splitmap representatives when gamma is recorded
        there (its star may fall into several patches), from t itself
        otherwise.
        """
        gamma = simplex(gamma)
        cp = self.copy_in_top(t, gamma)
        if cp is None:
            raise NotIncident(f"top {t} spans no copy of {gamma}")
        reps = self.splitmap.get(gamma, {}).get(cp)
        seeds = sorted(reps) if reps else [t]
        flags: dict[int, int] = {}
        visited: list[int] = []
        for s in seeds:
            visited.extend(travel_star(self.ewds, cp, s, flags, counter))
        return sorted(visited)

    def s0m_global(
        self, v: int, m: int, counter: OpCounter = NULL_COUNTER
    ) -> set[Simplex]:
        """m-simplices of the source incident to vertex v, all copies pooled."""
        copies = self.copies_of.get(v)
        if copies is None:
            raise UnknownVertex(f"unknown source vertex {v}")
        out: set[Simplex] = set()
        for vp in copies:
            t0 = self.ewds.vtstar_of(vp)
            if self.ewds.dim_of_top(t0) < m:
                continue  # component too small to hold m-faces
            for t in self.ewds.s0h(vp, counter):
                for face in self.ewds.face_of(m, (vp,), t, counter):
                    out.add(self.to_source(face))
        return out

    def snm_given(
        self,
        gamma: Iterable[int],
        n: int,
        m: int,
        counter: OpCounter = NULL_COUNTER,
    ) -> set[Simplex]:
        """m-simplices of the source incident to the n-simplex gamma.

        gamma must be a face of the source; the splitmap supplies its
        copies when it splits, sigma inversion the single copy otherwise.
        """
        gamma = simplex(gamma)
        if len(gamma) != n + 1:
            raise ValueError(f"gamma has dimension {len(gamma) - 1}, not {n}")
        if n >= m:
            raise ValueError("snm_given answers n < m relations")
        if n == 0:
            return self.s0m_global(gamma[0], m, counter)
        if gamma in self.splitmap:
            copies = list(self.splitmap[gamma])
        else:
            copies = [self.sigma_n_inverse(gamma, counter)]
        out: set[Simplex] = set()
        for cp in copies:
            for t in self._copy_tops(cp, counter):
                for face in self.ewds.face_of(m, cp, t, counter):
                    out.add(self.to_source(face))
        return out

    def snm_global(
        self,
        gamma: Iterable[int],
        n: int,
        m: int,
        counter: OpCounter = NULL_COUNTER,
    ) -> set[Simplex]:
        """Like snm_given, but total: non-faces yield the empty set.

        With a trie the incident top comes from one lookup; without it the
        first vertex's copies are scanned.
        """
        gamma = simplex(gamma)
        if len(gamma) != n + 1:
            raise ValueError(f"gamma has dimension {len(gamma) - 1}, not {n}")
        if n >= m:
            raise ValueError("snm_global answers n < m relations")
        if n == 0:
            if gamma[0] not in self.copies_of:
                return set()
            return self.s0m_global(gamma[0], m, counter)
        if gamma in self.splitmap:
            return self.snm_given(gamma, n, m, counter)
        if self.trie is not None:
            try:
                hint = self.trie.lookup(gamma, counter)
            except NotInTrie:
                return set()
            cp = self.copy_in_top(hint, gamma)
            cps = [cp] if cp is not None else []
        else:
            cps = []
            for v0 in self.copies_of.get(gamma[0], ()):
                for t in self.ewds.s0h(v0, counter):
                    counter.comparisons += 1
                    cp = self.copy_in_top(t, gamma)
                    if cp is not None and cp not in cps:
                        cps.append(cp)
        out: set[Simplex] = set()
        for cp in cps:
            for t in self._copy_tops(cp, counter):
                for face in self.ewds.face_of(m, cp, t, counter):
                    out.add(self.to_source(face))
        return out

    # -- compression accounting --------------------------------------------

    def nsp_tops(self) -> set[int]:
        """Tops incident to a copy of a non-regular-adjacency vertex."""
        out: set[int] = set()
        for v in self.v_nra:
            for vp in self.copies_of.get(v, ()):
                out.update(self.ewds.s0h(vp))
        return out

    def stats(self) -> dict:
        dec = self.ewds.source
        ns = dec.ns if dec is not None else 0
        nc = dec.nc if dec is not None else 0
        d = self.ewds.d
        nsp = len(self.nsp_tops())
        phi = max(0, (2 ** (d + 1) - (d + 3)) * nsp)

        def xlog(x: float) -> float:
            return x * math.log2(x) if x > 0 else 0.0

        h_hat = xlog(ns) + xlog(nc)
        if phi > 0:
            h_hat += phi * (d * math.log2(d * phi) + math.log2(self.ewds.nt))
        return {"NS": ns, "NC": nc, "NSP": nsp, "phi": phi, "H_hat": h_hat}


# -- construction ----------------------------------------------------------


def build_sigma_maps(
    ewds: Ewds, dec: DecompositionResult
) -> tuple[list[int], dict[int, tuple[int, ...]]]:
    """Packed-id copy maps from the decomposition's vertex-level sigma."""
    sigma_n = [0] * (ewds.nv + 1)
    copies: dict[int, list[int]] = {}
    for vp in range(1, ewds.nv + 1):
        src = dec.sigma[ewds.vertex_old[vp]]
        sigma_n[vp] = src
        copies.setdefault(src, []).append(vp)
    copies_of = {v: tuple(sorted(cs)) for v, cs in copies.items()}
    return sigma_n, copies_of


def v_nra_vertices(
    ewds: Ewds,
    sigma_n: list[int],
    copies_of: dict[int, tuple[int, ...]],
    mode: str = "auto",
) -> list[int]:
    """Source vertices whose stars the splitmap must harvest.

    auto: splitting vertices plus vertices of tops with an order>=3 facet
    (a diamond in their adjacency row).  all: every vertex; a superset
    only adds harvesting work, pruning removes the noise again.
    """
    if mode == "all":
        return sorted(copies_of)
    if mode != "auto":
        raise ValueError(f"unknown vnra mode {mode!r}")
    out = {v for v, cs in copies_of.items() if len(cs) > 1}
    for t in range(1, ewds.nt + 1):
        if any(x < 0 for x in ewds.tt_row_of(t)):
            out.update(sigma_n[v] for v in ewds.row_of(t))
    return sorted(out)


def build_splitmap(
    ewds: Ewds,
    sigma_n: list[int],
    copies_of: dict[int, tuple[int, ...]],
    v_nra: Iterable[int],
    counter: OpCounter = NULL_COUNTER,
) -> Splitmap:
    """Harvest split simplices from the stars of the given vertices.

    Every at-least-2-vertex slot subset of every star top is read off
    once: the first top to show a subset becomes the representative of
    that adjacency patch, and walking the patch flags the subset in all
    its other tops.  Keys that end up with one copy and one patch carry
    no information beyond sigma and are dropped.
    """
    flags: dict[int, int] = {}
    smap: Splitmap = {}
    for v in sorted(v_nra):
        for vp in copies_of.get(v, ()):
            for t in ewds.s0h(vp, counter):
                h = ewds.dim_of_top(t)
                row = ewds.row_of(t)
                for idx in range(1, (1 << (h + 1)) - 1):
                    if idx.bit_count() < 2:
                        continue
                    if flags.get(t, 0) >> idx & 1:
                        continue
                    cp = simplex(row[k] for k in range(h + 1) if idx >> k & 1)
                    key = simplex(sigma_n[x] for x in cp)
                    smap.setdefault(key, {}).setdefault(cp, set()).add(t)
                    travel_star(ewds, cp, t, flags, counter)
    for key in list(smap):
        if len(smap[key]) == 1:
            (reps,) = smap[key].values()
            if len(reps) == 1:
                del smap[key]
    return smap


def build_nm_layer(
    ewds: Ewds,
    vnra: str = "auto",
    with_trie: bool = True,
) -> NmLayer:
    """Assemble the full non-manifold layer for a packed decomposition."""
    dec = ewds.source
    if dec is None:
        raise ValueError("the packed tables carry no decomposition")
    sigma_n, copies_of = build_sigma_maps(ewds, dec)
    nra = v_nra_vertices(ewds, sigma_n, copies_of, vnra)
    smap = build_splitmap(ewds, sigma_n, copies_of, nra)
    trie = None
    if with_trie:
        trie = build_ft_trie(dec.source, smap.keys(), ewds.top_new)
    return NmLayer(ewds, sigma_n, copies_of, smap, nra, trie)
