"""Vertex-identification lab: rebuild a complex from exploded tops.

The state is a partition of (top, vertex) corners.  Fully exploded, every
corner is its own class; gluing instructions merge classes, never split
them, so any run of instructions reaches a quotient of the source complex.
Scripts drive the same operations from text files.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import Complex, resolve_tokens
from .decompose import DecompositionResult, copy_label, package_decomposition
from .errors import (
    NotPseudomanifoldPair,
    NotSharedVertex,
    ParseError,
    VoidInstruction,
)
from .unionfind import UnionFind

Corner = tuple[int, int]  # (top id, source vertex id)


class GluingState:
    """Partition of corners of the source complex, coarsened by gluing."""

    def __init__(self, source: Complex):
        self.source = source
        self._uf: UnionFind = UnionFind(
            (t, v) for t in source.top_ids for v in source.row(t)
        )

    @classmethod
    def totally_exploded(cls, source: Complex) -> "GluingState":
        return cls(source)

    # -- instructions ------------------------------------------------------

    def veq(self, t1: int, t2: int, v: int) -> None:
        """Identify vertex v of top t1 with vertex v of top t2."""
        r1, r2 = self.source.row(t1), self.source.row(t2)
        if v not in r1 or v not in r2:
            raise NotSharedVertex(f"vertex {v} is not shared by tops {t1} and {t2}")
        self._uf.union((t1, v), (t2, v))

    def glue(self, t1: int, t2: int) -> None:
        """Identify every vertex the two tops share in the source."""
        shared = set(self.source.row(t1)) & set(self.source.row(t2))
        if not shared:
            raise VoidInstruction(f"tops {t1} and {t2} share no vertices")
        for v in sorted(shared):
            self._uf.union((t1, v), (t2, v))

    def pmglue(self, t1: int, t2: int) -> None:
        """Glue along a shared facet of order two.

        Both tops must have the same dimension d, share exactly d vertices,
        and that facet must have no further cofaces in the source; this is
        the static counterpart of a manifold-style face identification.
        """
        r1, r2 = self.source.row(t1), self.source.row(t2)
        shared = set(r1) & set(r2)
        d = len(r1) - 1
        if (
            d < 1
            or len(r2) - 1 != d
            or len(shared) != d
            or len(self.source.star(sorted(shared))) != 2
        ):
            raise NotPseudomanifoldPair(
                f"tops {t1} and {t2} do not meet along an order-2 facet"
            )
        for v in sorted(shared):
            self._uf.union((t1, v), (t2, v))

    # -- views -------------------------------------------------------------

    def corner_classes(self) -> list[tuple[int, list[int]]]:
        """One (source vertex, sorted top ids) pair per corner class."""
        out = []
        for grp in self._uf.groups():
            v = grp[0][1]
            out.append((v, sorted(t for t, _ in grp)))
        return out

    def classes_of_vertex(self, v: int) -> list[list[int]]:
        """Corner classes of one source vertex, as sorted top-id lists."""
        return sorted(
            (tops for w, tops in self.corner_classes() if w == v),
            key=lambda tops: tops[0],
        )

    def splitting_vertices(self) -> list[int]:
        """Source vertices currently present in more than one class."""
        count: dict[int, int] = {}
        for v, _ in self.corner_classes():
            count[v] = count.get(v, 0) + 1
        return sorted(v for v, n in count.items() if n > 1)

    def is_isomorphic_to_source(self) -> bool:
        """True when the glued complex has exactly the source's vertices."""
        return not self.splitting_vertices()

    def dump_lines(self) -> list[str]:
        """Readable class listing, one `token-[tops]` line per class."""
        entries = []
        for v, tops in self.corner_classes():
            entries.append((self.source.label_of(v), tops))
        entries.sort(key=lambda e: (e[0], e[1][0]))
        return [f"{tok}-[{','.join(str(t) for t in tops)}]" for tok, tops in entries]

    def current_decomposition(self) -> DecompositionResult:
        """The glued complex with fresh ids for extra vertex copies."""
        src = self.source
        class_id: dict[Corner, int] = {}
        sigma: dict[int, int] = {}
        labels = dict(src.labels)
        next_id = max(src.vertices) + 1
        by_vertex: dict[int, list[list[int]]] = {}
        for v, tops in self.corner_classes():
            by_vertex.setdefault(v, []).append(tops)
        for v in src.vertices:
            # class order mirrors the recursion: link dimension, then discovery
            classes = sorted(
                by_vertex[v],
                key=lambda tops: (max(src.dim_of(t) for t in tops), tops[0]),
            )
            for k, tops in enumerate(classes, start=1):
                if k == 1:
                    vid = v
                else:
                    vid = next_id
                    next_id += 1
                    labels[vid] = copy_label(src.label_of(v), vid, k)
                sigma[vid] = v
                for t in tops:
                    class_id[(t, v)] = vid
        rows = {
            t: [class_id[(t, v)] for v in src.row(t)] for t in src.top_ids
        }
        return package_decomposition(src, rows, sigma, labels)


# -- script driver ---------------------------------------------------------


@dataclass
class GlueEvent:
    """Outcome of one script line."""

    line_no: int
    text: str
    kind: str  # ok | dump | assert-pass | assert-fail | error
    detail: str = ""
    payload: list[str] = field(default_factory=list)


@dataclass
class ScriptOutcome:
    state: GluingState | None
    events: list[GlueEvent]

    @property
    def ok(self) -> bool:
        return all(e.kind not in ("assert-fail", "error") for e in self.events)

    @property
    def dumps(self) -> list[list[str]]:
        return [e.payload for e in self.events if e.kind == "dump"]


def parse_glue_script(text: str) -> list[tuple[int, list[str]]]:
    """Split a script into (line number, token list) instructions."""
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line.split()))
    return out


_ARITY = {
    "explode": 0,
    "veq": 3,
    "glue": 2,
    "pmglue": 2,
    "assert-iso": 0,
    "assert-split": 1,
    "dump": 0,
}


def run_glue_script(source: Complex, text: str) -> ScriptOutcome:
    """Execute a script; stops at the first hard error, asserts just record."""
    state: GluingState | None = None
    events: list[GlueEvent] = []
    for no, toks in parse_glue_script(text):
        op, args = toks[0], toks[1:]
        line = " ".join(toks)
        if op not in _ARITY:
            raise ParseError(f"unknown instruction {op!r}", no)
        if len(args) != _ARITY[op]:
            raise ParseError(f"{op} takes {_ARITY[op]} arguments", no)
        try:
            if op == "explode":
                state = GluingState(source)
                events.append(GlueEvent(no, line, "ok"))
                continue
            if state is None:
                events.append(
                    GlueEvent(no, line, "error", "explode must come first")
                )
                break
            if op == "veq":
                t1, t2 = int(args[0]), int(args[1])
                (v,) = resolve_tokens(source, [args[2]])
                state.veq(t1, t2, v)
                events.append(GlueEvent(no, line, "ok"))
            elif op == "glue":
                state.glue(int(args[0]), int(args[1]))
                events.append(GlueEvent(no, line, "ok"))
            elif op == "pmglue":
                state.pmglue(int(args[0]), int(args[1]))
                events.append(GlueEvent(no, line, "ok"))
            elif op == "assert-iso":
                if state.is_isomorphic_to_source():
                    events.append(GlueEvent(no, line, "assert-pass"))
                else:
                    bad = state.splitting_vertices()
                    events.append(
                        GlueEvent(no, line, "assert-fail", f"split vertices {bad}")
                    )
            elif op == "assert-split":
                (v,) = resolve_tokens(source, [args[0]])
                if v in state.splitting_vertices():
                    events.append(GlueEvent(no, line, "assert-pass"))
                else:
                    events.append(
                        GlueEvent(no, line, "assert-fail", f"vertex {args[0]} not split")
                    )
            elif op == "dump":
                events.append(
                    GlueEvent(no, line, "dump", payload=state.dump_lines())
                )
        except ValueError as exc:  # int() on a bad top id
            raise ParseError(str(exc), no) from exc
        except Exception as exc:
            events.append(GlueEvent(no, line, "error", f"{type(exc).__name__}: {exc}"))
            break
    return ScriptOutcome(state, events)
