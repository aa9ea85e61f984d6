"""Abstract simplicial complexes stored as the TV relation.

A complex is a finite map from top-simplex ids to their vertex tuples.  Only
maximal simplices are stored; every face query is answered by enumeration
from the tops.  Rows keep the order in which their vertices were given (the
winged tables inherit that order), while query arguments and results use
sorted vertex tuples.

Vertex ids are positive integers.  Files may label vertices with arbitrary
alphanumeric tokens; the token table is kept so output can speak the file's
labels.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    DimensionUnsupported,
    DuplicateId,
    NotAFace,
    NotClosedSurface,
    NotRegular,
    NotTop,
    ParseError,
    UnknownToken,
    UnknownTop,
)
from .unionfind import UnionFind

Simplex = tuple  # sorted duplicate-free tuple of vertex ids


def simplex(verts: Iterable[int]) -> Simplex:
    """Normalize an iterable of vertex ids into a sorted duplicate-free tuple."""
    return tuple(sorted(set(verts)))


@dataclass(frozen=True)
class ClassifyFlags:
    """Result of Complex.classify().  manifold_le3 is None when d > 3."""

    regular: bool
    pseudomanifold: bool
    quasi_manifold: bool
    iqm: bool
    manifold_le3: bool | None

    def as_dict(self) -> dict:
        m = self.manifold_le3
        return {
            "regular": self.regular,
            "pseudomanifold": self.pseudomanifold,
            "quasi_manifold": self.quasi_manifold,
            "iqm": self.iqm,
            "manifold_le3": "unknown" if m is None else m,
        }


class Complex:
    """Immutable simplicial complex over the TV relation."""

    __slots__ = ("_tv", "_labels", "_vt", "_dim")

    def __init__(
        self,
        tv: Mapping[int, Sequence[int]],
        labels: Mapping[int, str] | None = None,
        validate: bool = True,
    ):
        store: dict[int, tuple[int, ...]] = {}
        for tid, row in tv.items():
            row = tuple(row)
            if not row:
                raise ValueError(f"empty simplex for id {tid}")
            if len(set(row)) != len(row):
                raise ValueError(f"repeated vertex in simplex {tid}")
            store[int(tid)] = row
        self._tv = store
        self._labels = dict(labels) if labels else None
        self._vt: dict[int, set[int]] | None = None
        self._dim: int | None = None
        if validate:
            self._check_maximality()

    # -- construction ------------------------------------------------------

    @classmethod
    def from_tops(
        cls,
        rows: Mapping[int, Sequence[int]],
        labels: Mapping[int, str] | None = None,
        validate: bool = True,
    ) -> "Complex":
        return cls(rows, labels=labels, validate=validate)

    @classmethod
    def empty(cls) -> "Complex":
        return cls({}, validate=False)

    def add_simplex(self, tid: int, verts: Sequence[int]) -> "Complex":
        """Return a new complex with one more top simplex.

        Entries dominated by the new simplex are retired; a new simplex that
        is a face of an existing one is rejected with NotTop.
        """
        if tid in self._tv:
            raise DuplicateId(f"top simplex id {tid} already in use")
        row = tuple(verts)
        if not row:
            raise ValueError("empty simplex")
        new = frozenset(row)
        keep = {}
        for old_id, old_row in self._tv.items():
            old = frozenset(old_row)
            if new <= old:
                raise NotTop(f"{sorted(new)} is a face of top simplex {old_id}")
            if old < new:
                continue  # dominated entry retired
            keep[old_id] = old_row
        keep[tid] = row
        return Complex(keep, labels=self._labels, validate=False)

    def _check_maximality(self) -> None:
        vt = self._vertex_tops()
        for tid, row in self._tv.items():
            cofaces = set.intersection(*(vt[v] for v in row)) if row else set()
            if len(cofaces) > 1:
                other = min(t for t in cofaces if t != tid)
                raise NotTop(
                    f"stored simplex {tid} is a face of stored simplex {other}"
                )

    # -- basic accessors ---------------------------------------------------

    @property
    def top_ids(self) -> list[int]:
        return sorted(self._tv)

    @property
    def num_tops(self) -> int:
        return len(self._tv)

    def __len__(self) -> int:
        return len(self._tv)

    def __contains__(self, tid: int) -> bool:
        return tid in self._tv

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._tv))

    def row(self, tid: int) -> tuple[int, ...]:
        """Vertex tuple of a top simplex, in input order."""
        try:
            return self._tv[tid]
        except KeyError:
            raise UnknownTop(f"no top simplex {tid}") from None

    def simplex_of(self, tid: int) -> Simplex:
        return tuple(sorted(self.row(tid)))

    def dim_of(self, tid: int) -> int:
        return len(self.row(tid)) - 1

    @property
    def dim(self) -> int:
        if self._dim is None:
            self._dim = max((len(r) - 1 for r in self._tv.values()), default=-1)
        return self._dim

    @property
    def vertices(self) -> list[int]:
        return sorted(self._vertex_tops())

    @property
    def num_vertices(self) -> int:
        return len(self._vertex_tops())

    def label_of(self, v: int) -> str:
        if self._labels and v in self._labels:
            return self._labels[v]
        return str(v)

    @property
    def labels(self) -> dict[int, str]:
        return {v: self.label_of(v) for v in self._vertex_tops()}

    def _vertex_tops(self) -> dict[int, set[int]]:
        if self._vt is None:
            vt: dict[int, set[int]] = {}
            for tid, row in self._tv.items():
                for v in row:
                    vt.setdefault(v, set()).add(tid)
            self._vt = vt
        return self._vt

    def tops_of_vertex(self, v: int) -> set[int]:
        return set(self._vertex_tops().get(v, ()))

    # -- stars, links, orders ----------------------------------------------

    def star(self, gamma: Iterable[int]) -> set[int]:
        """Ids of the top simplices containing gamma (empty set allowed)."""
        gamma = tuple(gamma)
        if not gamma:
            raise ValueError("star of the empty simplex is not defined")
        vt = self._vertex_tops()
        try:
            sets = [vt[v] for v in gamma]
        except KeyError:
            return set()
        return set.intersection(*sets)

    def link(self, gamma: Iterable[int]) -> set[Simplex]:
        """Maximal faces of the link of gamma."""
        gamma = simplex(gamma)
        st = self.star(gamma)
        if not st:
            raise NotAFace(f"{list(gamma)} is not a face of any top simplex")
        gset = set(gamma)
        return {tuple(sorted(v for v in self._tv[t] if v not in gset)) for t in st}

    def link_complex(self, gamma: Iterable[int]) -> "Complex":
        """The link as a complex whose top ids are the star's top ids.

        Keying link tops by the star top they came from is what lets the
        decomposer map link components back onto star partitions.
        """
        gamma = simplex(gamma)
        st = self.star(gamma)
        if not st:
            raise NotAFace(f"{list(gamma)} is not a face of any top simplex")
        gset = set(gamma)
        rows = {}
        for t in st:
            rest = tuple(v for v in self._tv[t] if v not in gset)
            if rest:
                rows[t] = rest
        return Complex(rows, labels=self._labels, validate=False)

    def order_of(self, gamma: Iterable[int]) -> int:
        """Number of top cofaces; 0 for a non-face."""
        return len(self.star(gamma))

    # -- face enumeration --------------------------------------------------

    def faces_of_dim(self, m: int) -> set[Simplex]:
        """All m-faces, deduplicated across tops."""
        out: set[Simplex] = set()
        for row in self._tv.values():
            srt = sorted(row)
            if len(srt) >= m + 1:
                out.update(itertools.combinations(srt, m + 1))
        return out

    def all_faces(self) -> set[Simplex]:
        out: set[Simplex] = set()
        for row in self._tv.values():
            srt = sorted(row)
            for k in range(1, len(srt) + 1):
                out.update(itertools.combinations(srt, k))
        return out

    def face_counts(self) -> list[int]:
        """f-vector: counts of k-simplices for k = 0..d."""
        counts = [0] * (self.dim + 1)
        for f in self.all_faces():
            counts[len(f) - 1] += 1
        return counts

    # -- connectivity ------------------------------------------------------

    def h_connected_components(self, h: int) -> list[list[int]]:
        """Partition of top ids by chains of shared h-faces.

        Tops of dimension < h+1 cannot share an h-face with anything bigger
        (they are maximal), so they sit in singleton classes.
        """
        if h < 0:
            raise ValueError("h must be >= 0")
        uf = UnionFind(self._tv)
        first_with: dict[Simplex, int] = {}
        for tid, row in self._tv.items():
            srt = sorted(row)
            if len(srt) < h + 1:
                continue
            for face in itertools.combinations(srt, h + 1):
                other = first_with.setdefault(face, tid)
                if other != tid:
                    uf.union(other, tid)
        return uf.groups()

    def is_connected(self) -> bool:
        return len(self.h_connected_components(0)) <= 1

    def _star_components(
        self, star_ids: set[int], manifold_only: bool, h: int | None = None
    ) -> list[list[int]]:
        """Classes of a star under shared-facet chains.

        Each top contributes its own facets (dimension one below itself); with
        manifold_only, a facet joins two tops only when its order in the whole
        complex is at most 2.
        """
        uf = UnionFind(star_ids)
        by_face: dict[Simplex, list[int]] = {}
        for tid in star_ids:
            srt = sorted(self._tv[tid])
            k = len(srt) - 1 if h is None else h + 1
            if len(srt) < k or k < 1:
                continue
            for face in itertools.combinations(srt, k):
                by_face.setdefault(face, []).append(tid)
        for face, tids in by_face.items():
            if len(tids) < 2:
                continue
            if manifold_only and self.order_of(face) > 2:
                continue
            first = tids[0]
            for other in tids[1:]:
                uf.union(first, other)
        return uf.groups()

    def manifold_connected_components_of_star(
        self, gamma: Iterable[int]
    ) -> list[list[int]]:
        gamma = simplex(gamma)
        st = self.star(gamma)
        if not st:
            raise NotAFace(f"{list(gamma)} is not a face of any top simplex")
        return self._star_components(st, manifold_only=True)

    def star_connected_components(self, gamma: Iterable[int]) -> list[list[int]]:
        """Like the manifold variant but crossing facets of any order."""
        gamma = simplex(gamma)
        st = self.star(gamma)
        if not st:
            raise NotAFace(f"{list(gamma)} is not a face of any top simplex")
        return self._star_components(st, manifold_only=False)

    # -- classification ----------------------------------------------------

    def is_regular(self) -> bool:
        d = self.dim
        return all(len(r) == d + 1 for r in self._tv.values())

    def classify(self) -> ClassifyFlags:
        regular = self.is_regular()
        d = self.dim
        pseudo = regular and self._is_pseudomanifold(d)
        quasi = pseudo and all(
            len(self._star_components(self.tops_of_vertex(v), False)) <= 1
            for v in self._vertex_tops()
        )
        iqm = regular and all(
            len(self._star_components(self.tops_of_vertex(v), True)) <= 1
            for v in self._vertex_tops()
        )
        try:
            manifold = self.is_manifold()
        except DimensionUnsupported:
            manifold = None
        return ClassifyFlags(regular, pseudo, quasi, iqm, manifold)

    def _is_pseudomanifold(self, d: int) -> bool:
        if d >= 1:
            for face, tids in self._facet_orders(d - 1).items():
                if len(tids) > 2:
                    return False
            if len(self.h_connected_components(d - 1)) > 1:
                return False
        return True

    def _facet_orders(self, h: int) -> dict[Simplex, list[int]]:
        by_face: dict[Simplex, list[int]] = {}
        for tid, row in self._tv.items():
            srt = sorted(row)
            if len(srt) >= h + 1:
                for face in itertools.combinations(srt, h + 1):
                    by_face.setdefault(face, []).append(tid)
        return by_face

    def non_pseudomanifold_faces(self) -> dict[Simplex, list[int]]:
        """(d-1)-faces of order > 2 with their sorted coface lists."""
        d = self.dim
        if d < 1:
            return {}
        return {
            f: sorted(ts)
            for f, ts in self._facet_orders(d - 1).items()
            if len(ts) > 2
        }

    def is_manifold(self) -> bool:
        """Combinatorial-manifold test, defined for d <= 3 only."""
        d = self.dim
        if d > 3:
            raise DimensionUnsupported(
                "manifold recognition not attempted for d > 3"
            )
        if not self.is_regular():
            return False
        if d <= 0:
            return True
        for v in self._vertex_tops():
            lk = self.link_complex((v,))
            if d == 1:
                if lk.num_tops > 2:
                    return False
            elif d == 2:
                if not _is_path_or_cycle(lk):
                    return False
            else:
                if _surface_type(lk) not in ("sphere", "disk"):
                    return False
        return True

    # -- boundary and Euler ------------------------------------------------

    def boundary(self) -> set[Simplex]:
        """(d-1)-faces with exactly one top coface."""
        if not self.is_regular():
            raise NotRegular("boundary is defined for regular complexes")
        d = self.dim
        if d == 0:
            return set()
        return {
            f for f, ts in self._facet_orders(d - 1).items() if len(ts) == 1
        }

    def euler_characteristic(self) -> int:
        """f0 - f1 + f2 of a closed 2-complex."""
        if self.dim != 2 or not self.is_regular():
            raise NotClosedSurface("not a regular 2-complex")
        for _, ts in self._facet_orders(1).items():
            if len(ts) != 2:
                raise NotClosedSurface("an edge does not have order 2")
        f0, f1, f2 = self.face_counts()
        return f0 - f1 + f2

    def euler_all_faces(self) -> int:
        """Alternating face-count sum, no closedness requirement."""
        return sum((-1) ** k * n for k, n in enumerate(self.face_counts()))

    # -- misc --------------------------------------------------------------

    def subcomplex(self, top_ids: Iterable[int]) -> "Complex":
        rows = {t: self._tv[t] for t in top_ids}
        return Complex(rows, labels=self._labels, validate=False)

    def with_labels(self, labels: Mapping[int, str]) -> "Complex":
        return Complex(self._tv, labels=labels, validate=False)

    def rows(self) -> dict[int, tuple[int, ...]]:
        return dict(self._tv)

    def simplex_set(self) -> set[Simplex]:
        return {tuple(sorted(r)) for r in self._tv.values()}

    def __eq__(self, other) -> bool:
        return isinstance(other, Complex) and self._tv == other._tv

    def __hash__(self):
        return hash(frozenset((t, frozenset(r)) for t, r in self._tv.items()))

    def __repr__(self) -> str:
        return f"Complex({self.num_tops} tops, d={self.dim})"


# -- 1- and 2-complex helpers for the link classifiers ----------------------


def _is_path_or_cycle(lk: Complex) -> bool:
    """True when a 1-complex is a single simple path or cycle."""
    if lk.dim != 1 or not lk.is_regular():
        return False
    degree: dict[int, int] = {}
    for tid in lk.top_ids:
        for v in lk.row(tid):
            degree[v] = degree.get(v, 0) + 1
    if any(deg > 2 for deg in degree.values()):
        return False
    return lk.is_connected()


def _boundary_cycles(surface: Complex) -> int | None:
    """Number of boundary cycles of a 2-complex, None if not disjoint cycles."""
    bd = {f for f, ts in surface._facet_orders(1).items() if len(ts) == 1}
    if not bd:
        return 0
    degree: dict[int, int] = {}
    for (a, b) in bd:
        degree[a] = degree.get(a, 0) + 1
        degree[b] = degree.get(b, 0) + 1
    if any(deg != 2 for deg in degree.values()):
        return None
    uf = UnionFind(degree)
    for (a, b) in bd:
        uf.union(a, b)
    return len(uf.groups())


def _is_orientable(surface: Complex) -> bool:
    """Orientation propagation across order-2 edges of a 2-complex."""
    by_edge: dict[Simplex, list[int]] = surface._facet_orders(1)
    orient: dict[int, int] = {}
    for seed in surface.top_ids:
        if seed in orient:
            continue
        orient[seed] = 1
        stack = [seed]
        while stack:
            t = stack.pop()
            tri = surface.simplex_of(t)
            for edge in itertools.combinations(tri, 2):
                cofs = by_edge.get(edge, [])
                if len(cofs) != 2:
                    continue
                other = cofs[0] if cofs[1] == t else cofs[1]
                # consistent orientation: the shared edge must be traversed
                # in opposite directions by the two triangles
                need = -orient[t] * _edge_sign(tri, edge) * _edge_sign(
                    surface.simplex_of(other), edge
                )
                if other in orient:
                    if orient[other] != need:
                        return False
                else:
                    orient[other] = need
                    stack.append(other)
    return True


def _edge_sign(tri: Simplex, edge: Simplex) -> int:
    """+1 if the sorted triangle's reference cycle traverses edge low-to-high."""
    a, b, c = tri
    u, v = edge
    # reference cycle a -> b -> c -> a
    if (u, v) in ((a, b), (b, c)):
        return 1
    return -1  # the (a, c) edge is traversed c -> a


def _surface_type(lk: Complex) -> str:
    """Classify a link 2-complex as 'sphere', 'disk', or 'other'."""
    if lk.dim != 2 or not lk.is_regular():
        return "other"
    orders = lk._facet_orders(1)
    if any(len(ts) > 2 for ts in orders.values()):
        return "other"
    if not lk.is_connected():
        return "other"
    chi = lk.euler_all_faces()
    cycles = _boundary_cycles(lk)
    if cycles == 0:
        return "sphere" if chi == 2 else "other"
    if cycles == 1 and chi == 1 and _is_orientable(lk):
        return "disk"
    return "other"


# -- .tv file format ---------------------------------------------------------

_TOKEN_RE = re.compile(r"^[A-Za-z0-9_]+$")
_LINE_RE = re.compile(r"^simplex\s+(\d+)\s*:\s*(.*)$")


def parse_tv(text: str) -> Complex:
    """Parse the `simplex <id>: <tok> ...` format.

    If every token in the file is a decimal number, tokens are taken as the
    vertex ids themselves; otherwise tokens map to 1..NV in lexicographic
    order, so ids are reproducible.
    """
    raw: list[tuple[int, int, list[str]]] = []
    seen_ids: set[int] = set()
    tokens: set[str] = set()
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        m = _LINE_RE.match(stripped)
        if not m:
            raise ParseError(f"expected 'simplex <id>: <tok> ...', got {line!r}", line_no)
        tid = int(m.group(1))
        if tid in seen_ids:
            raise ParseError(f"duplicate simplex id {tid}", line_no)
        seen_ids.add(tid)
        toks = m.group(2).split()
        if not toks:
            raise ParseError("simplex with no vertices", line_no)
        for tok in toks:
            if not _TOKEN_RE.match(tok):
                raise ParseError(f"bad vertex token {tok!r}", line_no)
        if len(set(toks)) != len(toks):
            raise ParseError("repeated vertex token in one simplex", line_no)
        tokens.update(toks)
        raw.append((line_no, tid, toks))

    if all(t.isdigit() for t in tokens):
        to_id = {t: int(t) for t in tokens}
    else:
        to_id = {t: i for i, t in enumerate(sorted(tokens), start=1)}
    labels = {i: t for t, i in to_id.items()}

    rows = {tid: tuple(to_id[t] for t in toks) for _, tid, toks in raw}
    try:
        return Complex(rows, labels=labels)
    except NotTop as exc:
        raise ParseError(str(exc)) from exc


def format_tv(c: Complex) -> str:
    lines = [
        f"simplex {tid}: " + " ".join(c.label_of(v) for v in c.row(tid))
        for tid in c.top_ids
    ]
    return "\n".join(lines) + "\n"


def token_map(c: Complex) -> dict[str, int]:
    """Label -> vertex id, for CLI argument resolution."""
    return {c.label_of(v): v for v in c.vertices}


def resolve_tokens(c: Complex, toks: Sequence[str]) -> Simplex:
    table = token_map(c)
    out = []
    for tok in toks:
        if tok not in table:
            raise UnknownToken(f"unknown vertex token {tok!r}")
        out.append(table[tok])
    return simplex(out)
