"""Flat global tables for a decomposed complex.

All components share four arrays: TVP (top -> vertices), TTP (top -> tops
across facets), VTSTAR (vertex -> one incident top) and the per-dimension
directories TBase / TBaseAddr.  Top ids are repacked so components of the
same dimension sit in one contiguous block, dimensions ascending; vertex
ids are repacked to 1..NV ascending.  Rows keep the input vertex order of
the decomposition, which the addressing below relies on.

TTP slot k of a top holds its neighbour across the facet opposite vertex
slot k: 0 means the facet is on the boundary, -1 that it has three or more
cofaces and adjacency is not a function there.
"""

from __future__ import annotations

import struct
from bisect import bisect_right
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .complexes import Simplex, simplex
from .counters import NULL_COUNTER, OpCounter
from .decompose import DecompositionResult
from .errors import OutOfRange, UnknownTop, UnknownVertex

BOTTOM = 0    # facet on the boundary
DIAMOND = -1  # facet with three or more cofaces

MAGIC = b"EWD\x00"


@dataclass
class Ewds:
    """Packed decomposition with O(1) top/vertex lookups."""

    d: int
    nt: int
    nv: int
    tbase: list[int]       # block starts per dimension, sentinel nt+1 last
    tbase_addr: list[int]  # flat offsets per dimension block
    tvp: list[int]         # 1-based, index 0 unused
    ttp: list[int]
    vtstar: list[int]      # 1-based, index 0 unused
    top_old: list[int]     # new top id -> decomposition top id, index 0 unused
    vertex_old: list[int]  # new vertex id -> decomposition vertex id
    top_new: dict[int, int] = field(repr=False, default_factory=dict)
    vertex_new: dict[int, int] = field(repr=False, default_factory=dict)
    source: DecompositionResult | None = field(repr=False, default=None)

    # -- construction ------------------------------------------------------

    @classmethod
    def build(
        cls, dec: DecompositionResult, tt_mode: str = "strict"
    ) -> "Ewds":
        nabla = dec.nabla
        d = nabla.dim

        top_old = [0]
        vertex_old = [0] + sorted(
            {v for comp in dec.components for v in comp.vertices}
        )
        counts = [0] * (d + 1)
        for comp in dec.components:
            counts[comp.dim] += comp.num_tops
            top_old.extend(comp.top_ids)
        nt = len(top_old) - 1
        nv = len(vertex_old) - 1
        top_new = {old: new for new, old in enumerate(top_old) if new}
        vertex_new = {old: new for new, old in enumerate(vertex_old) if new}

        tbase = [1]
        for h in range(d + 1):
            tbase.append(tbase[h] + counts[h])
        tbase_addr = [1]
        for h in range(d + 1):
            tbase_addr.append(tbase_addr[h] + (h + 1) * (tbase[h + 1] - tbase[h]))
        size = tbase_addr[d + 1] - 1

        tvp = [0] * (size + 1)
        for t in range(1, nt + 1):
            h = bisect_right(tbase, t, hi=d + 1) - 1
            base = tbase_addr[h] + (t - tbase[h]) * (h + 1)
            for k, v in enumerate(nabla.row(top_old[t])):
                tvp[base + k] = vertex_new[v]

        ew = cls(
            d=d,
            nt=nt,
            nv=nv,
            tbase=tbase,
            tbase_addr=tbase_addr,
            tvp=tvp,
            ttp=[0] * (size + 1),
            vtstar=[0] * (nv + 1),
            top_old=top_old,
            vertex_old=vertex_old,
            top_new=top_new,
            vertex_new=vertex_new,
            source=dec,
        )
        ew.fill_tt(tt_mode)
        return ew

    # -- addressing --------------------------------------------------------

    @property
    def size(self) -> int:
        return self.tbase_addr[self.d + 1] - 1

    def dim_of_top(self, t: int) -> int:
        if not 1 <= t <= self.nt:
            raise UnknownTop(f"top {t} out of range 1..{self.nt}")
        return bisect_right(self.tbase, t, hi=self.d + 1) - 1

    def _addr(self, h: int, t: int, k: int) -> int:
        if not 0 <= h <= self.d:
            raise OutOfRange(f"dimension {h} out of range 0..{self.d}")
        if not self.tbase[h] <= t < self.tbase[h + 1]:
            raise OutOfRange(f"top {t} not in dimension-{h} block")
        if not 1 <= k <= h + 1:
            raise OutOfRange(f"slot {k} out of range 1..{h + 1}")
        return self.tbase_addr[h] + (t - self.tbase[h]) * (h + 1) + k - 1

    def tvp_at(self, h: int, t: int, k: int) -> int:
        return self.tvp[self._addr(h, t, k)]

    def ttp_at(self, h: int, t: int, k: int) -> int:
        return self.ttp[self._addr(h, t, k)]

    def row_of(self, t: int) -> tuple[int, ...]:
        h = self.dim_of_top(t)
        base = self._addr(h, t, 1)
        return tuple(self.tvp[base : base + h + 1])

    def tt_row_of(self, t: int) -> tuple[int, ...]:
        h = self.dim_of_top(t)
        base = self._addr(h, t, 1)
        return tuple(self.ttp[base : base + h + 1])

    def vtstar_of(self, v: int) -> int:
        if not 1 <= v <= self.nv:
            raise UnknownVertex(f"vertex {v} out of range 1..{self.nv}")
        return self.vtstar[v]

    def opposite_slot(self, t: int, face: Iterable[int]) -> int:
        """Slot of the vertex of t outside face (1-based)."""
        face = set(face)
        row = self.row_of(t)
        for k, v in enumerate(row, start=1):
            if v not in face:
                return k
        raise OutOfRange(f"face covers all vertices of top {t}")

    # -- adjacency fill ----------------------------------------------------

    def _block_tops(self, h: int) -> range:
        return range(self.tbase[h], self.tbase[h + 1])

    def facet_cofaces(self, h: int) -> dict[Simplex, list[int]]:
        """(h-1)-face -> ascending cofaces, over the dimension-h block."""
        out: dict[Simplex, list[int]] = {}
        for t in self._block_tops(h):
            srt = sorted(self.row_of(t))
            for face in combinations(srt, h):
                out.setdefault(face, []).append(t)
        return out

    def fill_tt(self, mode: str = "strict") -> None:
        """Populate TTP and VTSTAR.

        strict: order-1 facets get BOTTOM, order-2 mutual references,
        higher orders DIAMOND.  circular: higher orders chain their cofaces
        in a cycle by ascending top id instead.

        VTSTAR[v] is pinned to the smallest coface of the lexicographically
        first facet containing v, which makes the table reproducible.
        """
        if mode not in ("strict", "circular"):
            raise ValueError(f"unknown tt mode {mode!r}")
        for i in range(1, self.size + 1):
            self.ttp[i] = BOTTOM
        for h in range(self.d + 1):
            if h == 0:
                for t in self._block_tops(0):
                    self.vtstar[self.tvp_at(0, t, 1)] = t
                continue
            for face, cofs in sorted(self.facet_cofaces(h).items()):
                for v in face:
                    if not self.vtstar[v]:
                        self.vtstar[v] = cofs[0]
                if len(cofs) == 2:
                    a, b = cofs
                    self.ttp[self._addr(h, a, self.opposite_slot(a, face))] = b
                    self.ttp[self._addr(h, b, self.opposite_slot(b, face))] = a
                elif len(cofs) > 2:
                    if mode == "strict":
                        for t in cofs:
                            self.ttp[self._addr(h, t, self.opposite_slot(t, face))] = DIAMOND
                    else:
                        for i, t in enumerate(cofs):
                            nxt = cofs[(i + 1) % len(cofs)]
                            self.ttp[self._addr(h, t, self.opposite_slot(t, face))] = nxt

    def fill_tt_circular(self) -> None:
        self.fill_tt("circular")

    # -- queries -----------------------------------------------------------

    def s0h(self, v: int, counter: OpCounter = NULL_COUNTER) -> list[int]:
        """All tops of v's component incident to v, by facet flooding.

        Walks top-to-top across facets containing v, so it stays correct
        exactly when the star of v is manifold-connected, which initial
        quasi-manifolds guarantee.
        """
        start = self.vtstar_of(v)
        seen = {start}
        stack = [start]
        while stack:
            t = stack.pop()
            counter.visits += 1
            h = self.dim_of_top(t)
            base = self._addr(h, t, 1)
            for k in range(h + 1):
                counter.expansions += 1
                if self.tvp[base + k] == v:
                    continue  # crossing here would leave the star
                u = self.ttp[base + k]
                if u > 0 and u not in seen:
                    seen.add(u)
                    stack.append(u)
        return sorted(seen)

    def face_of(
        self,
        m: int,
        beta: Iterable[int],
        cotop: int,
        counter: OpCounter = NULL_COUNTER,
    ) -> set[Simplex]:
        """m-faces of cotop containing beta."""
        beta = simplex(beta)
        row = self.row_of(cotop)
        rest = sorted(set(row) - set(beta))
        need = m + 1 - len(beta)
        if need < 0 or need > len(rest):
            return set()
        out = set()
        for extra in combinations(rest, need):
            counter.comparisons += 1
            out.add(simplex(beta + extra))
        return out

    def snm_within(
        self,
        gamma: Iterable[int],
        n: int,
        m: int,
        counter: OpCounter = NULL_COUNTER,
    ) -> set[Simplex]:
        """m-simplices of gamma's component incident to the n-simplex gamma.

        Empty when gamma is not a face of the component.
        """
        gamma = simplex(gamma)
        if len(gamma) != n + 1:
            raise ValueError(f"gamma has dimension {len(gamma) - 1}, not {n}")
        if n >= m:
            raise ValueError("snm_within answers n < m relations")
        gset = set(gamma)
        out: set[Simplex] = set()
        for t in self.s0h(gamma[0], counter):
            counter.comparisons += 1
            if gset <= set(self.row_of(t)):
                out |= self.face_of(m, gamma, t, counter)
        return out

    # -- serialization -----------------------------------------------------

    def dump_bytes(self) -> bytes:
        head = struct.pack("<4sIII", MAGIC, self.d, self.nt, self.nv)
        parts = [head]
        for arr in (
            self.tvp[1:],
            self.ttp[1:],
            self.vtstar[1:],
            self.tbase[: self.d + 1],
            self.tbase_addr[: self.d + 1],
        ):
            parts.append(struct.pack(f"<{len(arr)}i", *arr))
        return b"".join(parts)


def parse_dump(data: bytes) -> dict:
    """Unpack a binary dump back into named integer arrays."""
    magic, d, nt, nv = struct.unpack_from("<4sIII", data, 0)
    if magic != MAGIC:
        raise ValueError("not an extended winged dump")
    off = 16

    def take(n: int) -> list[int]:
        nonlocal off
        vals = list(struct.unpack_from(f"<{n}i", data, off))
        off += 4 * n
        return vals

    # SIZE is derivable only from TBase, which sits after the big arrays,
    # so recover it from the total length instead.
    total_ints = (len(data) - 16) // 4
    size = (total_ints - nv - 2 * (d + 1)) // 2
    return {
        "d": d,
        "nt": nt,
        "nv": nv,
        "tvp": take(size),
        "ttp": take(size),
        "vtstar": take(nv),
        "tbase": take(d + 1),
        "tbase_addr": take(d + 1),
    }
