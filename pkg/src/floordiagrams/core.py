"""Labeled floor diagrams: weighted acyclic multigraphs on ordered vertices.

A diagram of degree d lives on the vertex set {1, ..., d}.  Every edge is
directed from a smaller vertex to a larger one and carries a positive
integer weight, and the divergence (outgoing minus incoming weight) at
every vertex is at most 1.  All quantities are exact integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

Edge = tuple[int, int, int]  # (src, tgt, weight)


class DiagramError(ValueError):
    """A partition or diagram violates a structural invariant."""


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing sequence of positive integers (tangency data)."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        for i, p in enumerate(parts):
            if p < 1:
                raise DiagramError(f"partition parts must be positive, got {p}")
            if i and parts[i - 1] < p:
                raise DiagramError(f"partition parts must be weakly decreasing: {parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def count(self, value: int) -> int:
        """Number of parts equal to ``value`` (the exponent in <1^a 2^b ...>)."""
        return sum(1 for p in self.parts if p == value)

    def distinct_orderings(self) -> int:
        """Number of distinct permutations of the parts: len! / prod(mult!)."""
        from math import factorial

        n = factorial(self.length)
        for v in set(self.parts):
            n //= factorial(self.count(v))
        return n

    @staticmethod
    def ones(n: int) -> "Partition":
        return Partition((1,) * n)

    @staticmethod
    def parse(text: str) -> "Partition":
        """Parse a comma-separated part list; empty string is the empty partition."""
        text = text.strip()
        if not text:
            return Partition(())
        return Partition(tuple(int(t) for t in text.split(",")))

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class DiagramShape:
    components: int
    degree: int
    genus: int
    cogenus: int
    connected: bool


@dataclass(frozen=True)
class FloorDiagram:
    """Degree-d labeled floor diagram; edges stored as a sorted multiset."""

    d: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.d < 1:
            raise DiagramError(f"degree must be positive, got {self.d}")
        edges = tuple(sorted((int(s), int(t), int(w)) for s, t, w in self.edges))
        object.__setattr__(self, "edges", edges)
        for s, t, w in edges:
            if not (1 <= s < t <= self.d):
                raise DiagramError(f"edge ({s},{t},{w}) must satisfy 1 <= src < tgt <= d")
            if w < 1:
                raise DiagramError(f"edge ({s},{t},{w}) must have positive weight")
        for v in range(1, self.d + 1):
            dv = self.divergence(v)
            if dv > 1:
                raise DiagramError(f"divergence {dv} > 1 at vertex {v}")

    def divergence(self, v: int) -> int:
        """Outgoing minus incoming edge weight at vertex v."""
        if not 1 <= v <= self.d:
            raise DiagramError(f"vertex {v} out of range 1..{self.d}")
        out_w = sum(w for s, _, w in self.edges if s == v)
        in_w = sum(w for _, t, w in self.edges if t == v)
        return out_w - in_w

    def multiplicity(self) -> int:
        """Product of squared edge weights (1 for an edgeless diagram)."""
        return prod(w * w for _, _, w in self.edges)

    def component_vertex_sets(self) -> list[tuple[int, ...]]:
        """Connected components as sorted vertex tuples, ordered by minimum vertex."""
        parent = list(range(self.d + 1))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s, t, _ in self.edges:
            rs, rt = find(s), find(t)
            if rs != rt:
                parent[rt] = rs
        groups: dict[int, list[int]] = {}
        for v in range(1, self.d + 1):
            groups.setdefault(find(v), []).append(v)
        return sorted((tuple(sorted(g)) for g in groups.values()), key=lambda g: g[0])

    @property
    def connected(self) -> bool:
        return len(self.component_vertex_sets()) == 1

    def genus(self) -> int:
        """First Betti number: edges - vertices + components."""
        return len(self.edges) - self.d + len(self.component_vertex_sets())

    def classify(self) -> DiagramShape:
        """Component count, degree, genus and cogenus of the diagram.

        For a connected diagram the cogenus is (d-1)(d-2)/2 - g.  For a
        disconnected one it is the sum of the component cogenera plus the
        sum of products of component degrees over unordered pairs.
        """
        comps = self.component_vertex_sets()
        data = []
        for vs in comps:
            dj = len(vs)
            ej = sum(1 for s, t, _ in self.edges if s in vs)
            gj = ej - dj + 1
            deltaj = (dj - 1) * (dj - 2) // 2 - gj
            data.append((dj, deltaj))
        cogenus = sum(dl for _, dl in data)
        for i in range(len(data)):
            for j in range(i + 1, len(data)):
                cogenus += data[i][0] * data[j][0]
        return DiagramShape(
            components=len(comps),
            degree=self.d,
            genus=self.genus(),
            cogenus=cogenus,
            connected=len(comps) == 1,
        )

    # -- canonical text / JSON forms ------------------------------------

    def text(self) -> str:
        body = ";".join(f"({s},{t},{w})" for s, t, w in self.edges)
        return f"d={self.d}; edges={body}"

    def to_json(self) -> str:
        return json.dumps({"d": self.d, "edges": [list(e) for e in self.edges]})

    @staticmethod
    def from_text(text: str) -> "FloorDiagram":
        try:
            head, body = text.split(";", 1)
            d = int(head.strip().removeprefix("d="))
            body = body.strip().removeprefix("edges=")
            edges = []
            if body:
                for part in body.split(";"):
                    s, t, w = part.strip().lstrip("(").rstrip(")").split(",")
                    edges.append((int(s), int(t), int(w)))
        except (ValueError, IndexError) as exc:
            raise DiagramError(f"cannot parse diagram text {text!r}") from exc
        return FloorDiagram(d, tuple(edges))

    @staticmethod
    def from_json(text: str) -> "FloorDiagram":
        try:
            obj = json.loads(text)
            return FloorDiagram(int(obj["d"]), tuple(tuple(e) for e in obj["edges"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise DiagramError(f"cannot parse diagram json {text!r}") from exc

    def __str__(self) -> str:
        return self.text()


def diagram(d: int, edges: Iterable[Sequence[int]] = ()) -> FloorDiagram:
    """Convenience constructor from any iterable of (src, tgt, weight)."""
    return FloorDiagram(d, tuple(tuple(e) for e in edges))
