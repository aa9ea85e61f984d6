"""Standard decomposition into initial quasi-manifold components.

The algorithm walks the vertices of the input in ascending id order.  For
each vertex it decomposes the link (taken in the original complex, not the
partially split one), and when the decomposed link falls apart it introduces
one vertex copy per link component, rewriting that component's star tops.
Splitting every vertex this way and then taking connected components yields
the unique most-split decomposition that cuts only along non-manifold
simplices.

Copies are fresh ids above the input's maximum; the first component keeps
the original id, so sigma is the identity on non-splitting vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .complexes import Complex, simplex


@dataclass(frozen=True)
class DecompositionResult:
    """The decomposition complex, its components, and the copy map."""

    source: Complex
    nabla: Complex
    components: list[Complex]
    sigma: dict[int, int]          # copy id -> original id, total
    cc: list[int] = field(default_factory=list)  # components per dimension

    @classmethod
    def from_parts(
        cls,
        source: Complex,
        nabla: Complex,
        components: list[Complex],
        sigma: dict[int, int],
    ) -> "DecompositionResult":
        d = nabla.dim
        cc = [0] * (d + 1)
        for comp in components:
            cc[comp.dim] += 1
        return cls(source, nabla, components, dict(sigma), cc)

    # -- sigma views -------------------------------------------------------

    def sigma_inverse(self) -> dict[int, tuple[int, ...]]:
        inv: dict[int, list[int]] = {}
        for copy, orig in self.sigma.items():
            inv.setdefault(orig, []).append(copy)
        return {v: tuple(sorted(cs)) for v, cs in inv.items()}

    def splitting_classes(self) -> dict[int, tuple[int, ...]]:
        """original -> copies, restricted to vertices that actually split."""
        return {v: cs for v, cs in self.sigma_inverse().items() if len(cs) > 1}

    @property
    def splitting_vertices(self) -> list[int]:
        return sorted(self.splitting_classes())

    @property
    def ns(self) -> int:
        """Number of splitting vertices."""
        return len(self.splitting_classes())

    @property
    def nc(self) -> int:
        """Total number of copies of splitting vertices (originals included)."""
        return sum(len(cs) for cs in self.splitting_classes().values())

    # -- misc --------------------------------------------------------------

    def copy_at(self, tid: int, v: int) -> int:
        """The copy standing in for source vertex v inside top tid."""
        src_row = self.source.row(tid)
        return self.nabla.row(tid)[src_row.index(v)]

    def simplex_copies(self, gamma: Iterable[int]) -> set[frozenset]:
        """Distinct copy images of a source simplex across its star."""
        g = simplex(gamma)
        out = set()
        for t in self.source.star(g):
            out.add(frozenset(self.copy_at(t, v) for v in g))
        return out

    def is_identity(self) -> bool:
        return all(copy == orig for copy, orig in self.sigma.items())


def _decomposed_components(c: Complex) -> list[list[int]]:
    """Connected components of the standard decomposition, as top-id lists.

    Used on link complexes during recursion: only the partition of the tops
    matters there, so copies get throwaway local ids.
    """
    rows = {t: list(c.row(t)) for t in c.top_ids}
    next_local = max(c.vertices, default=0) + 1
    for v, parts in _split_partitions(c):
        for comp in parts[1:]:
            for t in comp:
                rows[t] = [next_local if x == v else x for x in rows[t]]
            next_local += 1
    split = Complex({t: tuple(r) for t, r in rows.items()}, validate=False)
    return split.h_connected_components(0)


def _split_partitions(c: Complex) -> list[tuple[int, list[list[int]]]]:
    """Per splitting vertex, the ordered partition of its star tops.

    A vertex splits when its decomposed link has more than one component
    (more than two, for dust links of isolated points).  Components are
    ordered by ascending dimension, then by smallest star-top id; the first
    one will keep the original vertex id.
    """
    out = []
    for v in sorted(c.vertices):
        star = c.tops_of_vertex(v)
        link_rows = {}
        for t in star:
            rest = tuple(x for x in c.row(t) if x != v)
            if rest:
                link_rows[t] = rest
        if not link_rows:
            continue  # v is itself a point top
        lk = Complex(link_rows, labels=None, validate=False)
        h = lk.dim
        parts = _decomposed_components(lk)
        if (h > 0 and len(parts) > 1) or (h == 0 and len(parts) > 2):
            parts.sort(key=lambda comp: (max(lk.dim_of(t) for t in comp), min(comp)))
            out.append((v, parts))
    return out


def copy_label(original_label: str, copy_id: int, copy_index: int) -> str:
    """Display token for a vertex copy: numeric sources stay numeric."""
    if original_label.isdigit():
        return str(copy_id)
    return f"{original_label}_{copy_index}"


def package_decomposition(
    source: Complex,
    rows: dict[int, list[int]],
    sigma: dict[int, int],
    labels: dict[int, str],
) -> DecompositionResult:
    """Wrap rewritten rows into components sorted by (dimension, min top)."""
    nabla = Complex(
        {t: tuple(r) for t, r in rows.items()}, labels=labels, validate=False
    )
    groups = nabla.h_connected_components(0)
    groups.sort(key=lambda g: (max(nabla.dim_of(t) for t in g), g[0]))
    components = [nabla.subcomplex(g) for g in groups]
    return DecompositionResult.from_parts(source, nabla, components, sigma)


def decompose(c: Complex) -> DecompositionResult:
    """Standard decomposition of a non-empty complex."""
    if c.num_tops == 0:
        raise ValueError("cannot decompose an empty complex")

    rows = {t: list(c.row(t)) for t in c.top_ids}
    sigma = {v: v for v in c.vertices}
    labels = dict(c.labels)
    next_id = max(c.vertices) + 1

    for v, parts in _split_partitions(c):
        for k, comp in enumerate(parts[1:], start=2):
            new = next_id
            next_id += 1
            sigma[new] = v
            labels[new] = copy_label(c.label_of(v), new, k)
            for t in comp:
                rows[t] = [new if x == v else x for x in rows[t]]

    return package_decomposition(c, rows, sigma, labels)
