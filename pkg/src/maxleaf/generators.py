"""Seeded instance generators for the benchmark families.

All randomness flows from the 64-bit seed of the spec through a numpy
PCG64 stream, so a given GenSpec always yields the identical arc set.
Fixtures are therefore reproducible by regeneration; nothing is stored.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .digraph import Digraph
from .errors import GenerationError

FAMILIES = (
    "cycle",
    "double-cycle",
    "path",
    "out-star",
    "tournament-random",
    "tournament-transitive",
    "multipartite-tournament",
    "min-in-degree-random",
    "strong-random",
)

_SEEDED = ("tournament-random", "multipartite-tournament", "min-in-degree-random", "strong-random")

REJECTION_CAP = 1000


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one generated instance.

    Only the fields a family consumes matter for it: `d` and `oriented`
    belong to min-in-degree-random, `parts` to multipartite-tournament,
    `extra` to strong-random, and `seed` to the four random families.
    """

    family: str
    n: int = 0
    d: int = 0
    parts: tuple[int, ...] = ()
    extra: int = 0
    seed: int = 0
    oriented: bool = False

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise GenerationError(f"unknown family {self.family!r}")
        if not 0 <= self.seed < 2**64:
            raise GenerationError("seed must fit in an unsigned 64-bit integer")
        if self.family == "multipartite-tournament":
            if len(self.parts) < 2:
                raise GenerationError("multipartite tournament needs at least 2 parts")
            if any(p < 1 for p in self.parts):
                raise GenerationError("part sizes must be positive")
            return
        if self.n < 1:
            raise GenerationError("n must be positive")
        if self.family == "cycle" and self.n < 2:
            raise GenerationError("a directed cycle needs n >= 2")
        if self.family == "double-cycle" and self.n < 3:
            raise GenerationError("a double cycle needs n >= 3")
        if self.family == "strong-random" and self.n < 2:
            raise GenerationError("strong-random needs n >= 2")
        if self.family == "min-in-degree-random":
            if self.d < 1:
                raise GenerationError("d must be positive")
            if self.d >= self.n:
                raise GenerationError(f"cannot pick {self.d} distinct in-neighbors among {self.n} vertices")
            if self.oriented and 2 * self.d > self.n - 1:
                raise GenerationError(
                    f"an oriented digraph on {self.n} vertices cannot have all in-degrees >= {self.d}"
                )
        if self.family == "strong-random" and self.extra < 0:
            raise GenerationError("extra must be nonnegative")

    @property
    def size(self) -> int:
        return sum(self.parts) if self.family == "multipartite-tournament" else self.n


def instance_id(spec: GenSpec) -> str:
    """Compact stable identifier, safe for CSV (no commas)."""
    bits = [spec.family]
    if spec.family == "multipartite-tournament":
        bits.append("p" + ".".join(str(p) for p in spec.parts))
    else:
        bits.append(f"n{spec.n}")
    if spec.family == "min-in-degree-random":
        bits.append(f"d{spec.d}")
        if spec.oriented:
            bits.append("o")
    if spec.family == "strong-random":
        bits.append(f"x{spec.extra}")
    if spec.family in _SEEDED:
        bits.append(f"s{spec.seed}")
    return "-".join(bits)


def generate(spec: GenSpec) -> Digraph:
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    return _BUILDERS[spec.family](spec, rng)


def _cycle(spec: GenSpec, rng: np.random.Generator) -> Digraph:
    n = spec.n
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def _double_cycle(spec: GenSpec, rng: np.random.Generator) -> Digraph:
    n = spec.n
    arcs = []
    for i in range(n):
        j = (i + 1) % n
        arcs.append((i, j))
        arcs.append((j, i))
    return Digraph(n, arcs)


def _path(spec: GenSpec, rng: np.random.Generator) -> Digraph:
    return Digraph(spec.n, [(i, i + 1) for i in range(spec.n - 1)])


def _out_star(spec: GenSpec, rng: np.random.Generator) -> Digraph:
    return Digraph(spec.n, [(0, i) for i in range(1, spec.n)])


def _tournament_random(spec: GenSpec, rng: np.random.Generator) -> Digraph:
    # one seeded bit per unordered pair, pairs in lexicographic order
    n = spec.n
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            arcs.append((u, v) if rng.integers(0, 2) == 0 else (v, u))
    return Digraph(n, arcs)


def _tournament_transitive(spec: GenSpec, rng: np.random.Generator) -> Digraph:
    n = spec.n
    return Digraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def _multipartite_tournament(spec: GenSpec, rng: np.random.Generator) -> Digraph:
    part_of: list[int] = []
    for idx, size in enumerate(spec.parts):
        part_of.extend([idx] * size)
    n = len(part_of)
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            if part_of[u] == part_of[v]:
                continue
            arcs.append((u, v) if rng.integers(0, 2) == 0 else (v, u))
    return Digraph(n, arcs)


def _min_in_degree_random(spec: GenSpec, rng: np.random.Generator) -> Digraph:
    """Every vertex draws `d` distinct in-neighbors uniformly.

    Draws that would create a self-loop, repeat an in-neighbor, or (in
    oriented mode) close a 2-cycle are rejected and redrawn, up to
    REJECTION_CAP attempts per slot.
    """
    n, d = spec.n, spec.d
    arcs: set[tuple[int, int]] = set()
    for v in range(n):
        chosen: set[int] = set()
        for slot in range(d):
            for _ in range(REJECTION_CAP):
                u = int(rng.integers(0, n))
                if u == v or u in chosen:
                    continue
                if spec.oriented and (v, u) in arcs:
                    continue
                chosen.add(u)
                arcs.add((u, v))
                break
            else:
                raise GenerationError(
                    f"gave up on in-neighbor {slot + 1} of {d} for vertex {v} "
                    f"after {REJECTION_CAP} draws"
                )
    return Digraph(n, sorted(arcs))


def _strong_random(spec: GenSpec, rng: np.random.Generator) -> Digraph:
    """A seeded Hamiltonian cycle plus `extra` distinct random arcs.

    The cycle makes the result strongly connected whatever the extras.
    """
    n, extra = spec.n, spec.extra
    room = n * (n - 1) - n
    if extra > room:
        raise GenerationError(f"extra={extra} exceeds the {room} arcs available beyond the cycle")
    perm = [int(x) for x in rng.permutation(n)]
    arcs: set[tuple[int, int]] = set()
    for i in range(n):
        arcs.add((perm[i], perm[(i + 1) % n]))
    for t in range(extra):
        for _ in range(REJECTION_CAP):
            u = int(rng.integers(0, n))
            v = int(rng.integers(0, n))
            if u != v and (u, v) not in arcs:
                arcs.add((u, v))
                break
        else:
            raise GenerationError(
                f"gave up on extra arc {t + 1} of {extra} after {REJECTION_CAP} draws"
            )
    return Digraph(n, sorted(arcs))


_BUILDERS = {
    "cycle": _cycle,
    "double-cycle": _double_cycle,
    "path": _path,
    "out-star": _out_star,
    "tournament-random": _tournament_random,
    "tournament-transitive": _tournament_transitive,
    "multipartite-tournament": _multipartite_tournament,
    "min-in-degree-random": _min_in_degree_random,
    "strong-random": _strong_random,
}
