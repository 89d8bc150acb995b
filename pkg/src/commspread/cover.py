"""Community covers: node-to-label assignment plus file serialization."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO

from .graph import Graph


@dataclass
class Cover:
    """Assignment of nodes to community labels.

    ``assignment`` maps internal node ids to integer community labels.
    ``unassigned`` holds broker nodes left without a label after a
    belonging-probability tie; together the two partition the node set.
    """

    assignment: dict[int, int]
    unassigned: set[int] = field(default_factory=set)

    def communities(self) -> dict[int, set[int]]:
        """Inverse index: community label -> member set."""
        index: dict[int, set[int]] = {}
        for v, c in self.assignment.items():
            index.setdefault(c, set()).add(v)
        return index

    @property
    def k(self) -> int:
        return len(set(self.assignment.values()))

    def label(self, v: int) -> int:
        return self.assignment[v]

    def with_singletons(self) -> "Cover":
        """Promote every unassigned node to its own singleton community."""
        if not self.unassigned:
            return self
        assignment = dict(self.assignment)
        for v in self.unassigned:
            assignment[v] = v
        return Cover(assignment=assignment)

    @classmethod
    def singletons(cls, g: Graph) -> "Cover":
        return cls(assignment={v: v for v in range(g.n)})


def finalize(cover: Cover) -> Cover:
    """Renumber community labels densely to 0..k-1 in ascending label order.

    Requires an empty unassigned set (promote singletons first if needed).
    """
    if cover.unassigned:
        raise ValueError("finalize requires every node to carry a label")
    mapping = {c: i for i, c in enumerate(sorted(set(cover.assignment.values())))}
    return Cover(assignment={v: mapping[c] for v, c in cover.assignment.items()})


def write_cover_file(g: Graph, cover: Cover, stream: IO) -> None:
    """Write ``external_label<TAB>community_id`` lines sorted by node label."""
    if cover.unassigned:
        raise ValueError("cannot serialize a cover with unassigned nodes")
    rows = sorted((g.label_of(v), c) for v, c in cover.assignment.items())
    for label, c in rows:
        stream.write(f"{label}\t{c}\n")


def read_cover_file(g: Graph, stream: IO) -> Cover:
    """Parse a cover file; every node label must exist in the graph."""
    assignment: dict[int, int] = {}
    unknown: list[str] = []
    for raw in stream:
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        label, comm = line.split("\t")
        try:
            assignment[g.id_of(label)] = int(comm)
        except KeyError:
            unknown.append(label)
    if unknown:
        raise ValueError(f"unknown node labels in cover: {', '.join(sorted(unknown))}")
    missing = [g.label_of(v) for v in range(g.n) if v not in assignment]
    if missing:
        raise ValueError(f"cover is missing nodes: {', '.join(sorted(missing))}")
    return Cover(assignment=assignment)
