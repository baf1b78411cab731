"""Path covers, path decompositions, and vertex separation orderings."""

from __future__ import annotations

from typing import Iterable, Sequence

from .digraph import Digraph, UndirectedGraph
from .errors import ContractError


class PathCover:
    """Vertex-disjoint directed paths that together cover a digraph.

    Disjointness is enforced at construction; coverage and the arc
    condition are checked against a host via validate().
    """

    __slots__ = ("paths", "where")

    def __init__(self, paths: Iterable[Sequence[int]]) -> None:
        self.paths: tuple[tuple[int, ...], ...] = tuple(tuple(p) for p in paths)
        where: dict[int, tuple[int, int]] = {}
        for pi, path in enumerate(self.paths):
            if not path:
                raise ContractError("empty path in cover")
            for pos, v in enumerate(path):
                if v in where:
                    raise ContractError(f"vertex {v} appears on two cover paths")
                where[v] = (pi, pos)
        # where[v] = (path index, position along that path)
        self.where = where

    def validate(self, d: Digraph) -> None:
        """Raise ContractError unless this is a path cover of d."""
        problems: list[str] = []
        covered = set(self.where)
        missing = sorted(set(range(d.n)) - covered)
        alien = sorted(covered - set(range(d.n)))
        if missing:
            problems.append(f"uncovered vertices {missing}")
        if alien:
            problems.append(f"vertices {alien} not in the host")
        for path in self.paths:
            for a, b in zip(path, path[1:]):
                if not d.has_arc(a, b):
                    problems.append(f"({a},{b}) is not an arc of the host")
        if problems:
            raise ContractError("; ".join(problems))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PathCover):
            return NotImplemented
        return self.paths == other.paths

    def __repr__(self) -> str:
        return f"PathCover({list(map(list, self.paths))})"


class PathDecomposition:
    """Ordered bags over an undirected graph.

    Valid when every vertex is in some bag, every edge has both ends in
    a common bag, and the bags containing any one vertex are consecutive.
    """

    __slots__ = ("bags",)

    def __init__(self, bags: Iterable[Iterable[int]]) -> None:
        self.bags: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(set(b))) for b in bags
        )

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def check(self, g: UndirectedGraph) -> None:
        """Raise ContractError unless this is a path decomposition of g."""
        problems: list[str] = []
        positions: dict[int, list[int]] = {}
        for j, bag in enumerate(self.bags):
            for v in bag:
                if not 0 <= v < g.n:
                    problems.append(f"bag {j} contains unknown vertex {v}")
                positions.setdefault(v, []).append(j)
        for v in range(g.n):
            idx = positions.get(v)
            if not idx:
                problems.append(f"vertex {v} is in no bag")
            elif idx[-1] - idx[0] + 1 != len(idx):
                problems.append(f"bags containing {v} are not consecutive: {idx}")
        for a, b in sorted(g.edges):
            if not any(a in bag and b in bag for bag in self.bags):
                problems.append(f"edge ({a},{b}) has no common bag")
        if problems:
            raise ContractError("; ".join(problems))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PathDecomposition):
            return NotImplemented
        return self.bags == other.bags

    def __repr__(self) -> str:
        return f"PathDecomposition(width={self.width}, bags={list(map(list, self.bags))})"


def _positions(g: UndirectedGraph, order: Sequence[int]) -> tuple[dict[int, int], list[int]]:
    order = list(order)
    if sorted(order) != list(range(g.n)):
        raise ContractError("ordering is not a permutation of the vertex set")
    pos = {v: i for i, v in enumerate(order)}
    last = [max((pos[w] for w in g.neighbors(v)), default=-1) for v in range(g.n)]
    return pos, last


def vertex_separation(g: UndirectedGraph, order: Sequence[int]) -> int:
    """max over prefixes of the ordering of the number of prefix vertices
    with a neighbor outside the prefix."""
    pos, last = _positions(g, order)
    # vertex v is on the boundary of the first j exactly when pos[v] < j <= last[v]
    diff = [0] * (g.n + 2)
    for v in range(g.n):
        if last[v] > pos[v]:
            diff[pos[v] + 1] += 1
            diff[last[v] + 1] -= 1
    best = 0
    cur = 0
    for j in range(1, g.n + 1):
        cur += diff[j]
        if cur > best:
            best = cur
    return best


def ordering_to_path_decomposition(g: UndirectedGraph, order: Sequence[int]) -> PathDecomposition:
    """One bag per position: the vertex there plus every earlier vertex
    that still has a neighbor at this position or later.

    The resulting width equals vertex_separation(g, order).
    """
    pos, last = _positions(g, order)
    order = list(order)
    bags = []
    for j, v in enumerate(order):
        bags.append([v] + [u for u in order[:j] if last[u] >= j])
    return PathDecomposition(bags)
