"""Win/win engine: either a many-leaf out-tree or a narrow path decomposition.

decompose(d, k) pushes a spanning out-tree of d through a staged
pipeline.  Each stage either extracts an out-tree with >= k leaves from
some local structure (off-path out-neighbors, forward arcs along a
cover path, backward arcs into a prefix) or certifies the structure is
small and trims it away; when every stage comes up empty the leftovers
assemble into a path decomposition of the underlying undirected graph
of width at most k**3.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .digraph import (
    Digraph,
    induced_subdigraph,
    reachable_set,
    source_strong_components,
    strongly_connected_components,
    underlying_undirected,
)
from .errors import ContractError, InvariantError, NoOutBranchingError
from .pathdecomp import PathCover, PathDecomposition, ordering_to_path_decomposition
from .witness import OutTree, validate_out_tree


@dataclass(frozen=True)
class ForwardArc:
    """An arc jumping at least two positions ahead along a host path."""

    i: int
    j: int
    tail: int
    head: int

    def __post_init__(self) -> None:
        if self.i > self.j - 2:
            raise ContractError(f"arc at positions ({self.i},{self.j}) is not forward")


class DecomposeOutcome:
    """Result of the pipeline: exactly one of witness or decomposition.

    trace lists the stages traversed, the producing stage last.
    """

    __slots__ = ("k", "witness", "decomposition", "trace")

    def __init__(
        self,
        k: int,
        witness: OutTree | None = None,
        decomposition: PathDecomposition | None = None,
        trace: Sequence[str] = (),
    ) -> None:
        if (witness is None) == (decomposition is None):
            raise ContractError("outcome needs exactly one of witness and decomposition")
        if witness is not None and witness.leaf_count < k:
            raise InvariantError(
                f"witness has {witness.leaf_count} leaves, needs {k}"
            )
        if decomposition is not None and decomposition.width > k**3:
            raise InvariantError(
                f"decomposition width {decomposition.width} exceeds {k**3}"
            )
        self.k = k
        self.witness = witness
        self.decomposition = decomposition
        self.trace = tuple(trace)

    @property
    def is_witness(self) -> bool:
        return self.witness is not None

    def __repr__(self) -> str:
        if self.is_witness:
            return f"DecomposeOutcome(k={self.k}, witness with {self.witness.leaf_count} leaves)"
        return f"DecomposeOutcome(k={self.k}, decomposition of width {self.decomposition.width})"


def find_out_branching(d: Digraph, root: int | None = None) -> OutTree:
    """Spanning out-tree by breadth-first search.

    Without a root, starts from the smallest vertex of the unique source
    strong component; raises NoOutBranchingError (naming the source
    components) when there are two or more.
    """
    if root is None:
        comps = strongly_connected_components(d)
        sources = source_strong_components(comps)
        if len(sources) != 1:
            raise NoOutBranchingError(
                [list(comps.components[i]) for i in sources]
            )
        root = comps.components[sources[0]][0]
    elif not 0 <= root < d.n:
        raise ContractError(f"root {root} out of range")
    parent: dict[int, int] = {}
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in d.out_neighbors(u):
            if v not in seen:
                seen.add(v)
                parent[v] = u
                queue.append(v)
    if len(seen) != d.n:
        missing = sorted(set(range(d.n)) - seen)
        raise ContractError(f"vertices {missing} unreachable from root {root}")
    return OutTree(root, parent, d.n)


def _check_tree_shape(t: OutTree) -> None:
    if not t.is_spanning():
        raise ContractError("tree does not span its host")
    state: dict[int, int] = {t.root: 2}  # 2 = reaches root
    for v in t.vertices:
        chain = []
        x = v
        while state.get(x, 0) == 0:
            state[x] = 1
            chain.append(x)
            if x not in t.parent:
                raise ContractError(f"vertex {x} has no parent and is not the root")
            x = t.parent[x]
        if state[x] == 1:
            raise ContractError(f"parent chain from {v} cycles")
        for y in chain:
            state[y] = 2


def path_cover_from_out_branching(t: OutTree) -> PathCover:
    """Split a spanning out-tree into vertex-disjoint directed paths.

    While the remaining tree branches anywhere, walk from the root to
    the smallest remaining leaf, cut off everything strictly after the
    last vertex of out-degree >= 2 on that walk, and emit the cut piece;
    the final emitted path is what is left.  Produces exactly one path
    per leaf of the input tree.
    """
    _check_tree_shape(t)
    children = {v: list(t.children(v)) for v in t.vertices}
    parent = dict(t.parent)
    leaves = set(t.leaves)
    paths: list[list[int]] = []
    while any(len(c) >= 2 for c in children.values()):
        leaf = min(leaves)
        walk = [leaf]
        while walk[-1] != t.root:
            walk.append(parent[walk[-1]])
        walk.reverse()
        cut = max(i for i, v in enumerate(walk) if len(children[v]) >= 2)
        segment = walk[cut + 1 :]
        paths.append(segment)
        children[walk[cut]].remove(segment[0])
        for v in segment:
            children.pop(v, None)
            parent.pop(v, None)
        leaves.discard(leaf)
    chain = [t.root]
    while children.get(chain[-1]):
        chain.append(children[chain[-1]][0])
    paths.append(chain)
    if len(paths) != t.leaf_count:
        raise InvariantError(
            f"cover has {len(paths)} paths for a tree with {t.leaf_count} leaves"
        )
    return PathCover(paths)


def off_path_out_neighbors(d: Digraph, p: Sequence[int]) -> set[int]:
    """Heads of arcs leaving the path, excluding the path's own vertices."""
    on_path = set(p)
    return {w for v in p for w in d.out_neighbors(v) if w not in on_path}


def witness_from_off_path(
    p: Sequence[int],
    w: set[int],
    choice: dict[int, int],
    host_size: int,
) -> OutTree:
    """The path plus one chosen in-arc per off-path vertex; all of w leafs."""
    parent = {b: a for a, b in zip(p, p[1:])}
    for v in sorted(w):
        parent[v] = choice[v]
    return OutTree(p[0], parent, host_size)


def trim_around(d: Digraph, u: set[int], cover: PathCover) -> Digraph:
    """Remove every arc incident to a vertex of u except that vertex's
    own cover-path arcs."""
    for v in u:
        if v not in cover.where:
            raise ContractError(f"vertex {v} is on no cover path")
    path_arcs = {
        (a, b) for path in cover.paths for a, b in zip(path, path[1:])
    }
    kept = [
        (a, b)
        for a, b in d.arcs
        if (a not in u and b not in u) or (a, b) in path_arcs
    ]
    return Digraph(d.n, kept)


def forward_arcs_on_path(d: Digraph, p: Sequence[int]) -> list[ForwardArc]:
    """Arcs between path vertices that jump >= 2 positions forward,
    sorted by position pair."""
    pos = {v: i for i, v in enumerate(p)}
    out = []
    for a, b in d.arcs:
        if a in pos and b in pos and pos[a] <= pos[b] - 2:
            out.append(ForwardArc(pos[a], pos[b], a, b))
    out.sort(key=lambda fa: (fa.i, fa.j))
    return out


def forward_arc_heads(fas: Sequence[ForwardArc]) -> set[int]:
    return {fa.head for fa in fas}


def reduce_forward_arcs(fas: Sequence[ForwardArc]) -> list[ForwardArc]:
    """Keep one forward arc per head: the shortest, ties by earlier tail."""
    best: dict[int, ForwardArc] = {}
    for fa in fas:
        cur = best.get(fa.head)
        if cur is None or (fa.j - fa.i, fa.i) < (cur.j - cur.i, cur.i):
            best[fa.head] = fa
    out = list(best.values())
    out.sort(key=lambda fa: (fa.i, fa.j))
    return out


def witness_from_forward_arcs(
    p: Sequence[int],
    fas: Sequence[ForwardArc],
    k: int,
    host_size: int,
) -> OutTree | None:
    """Out-tree with >= k leaves from forward arcs, or None.

    Each arc (i,j) spans the interval [i, j-1].  Two shapes are tried:
    a chain of k-1 pairwise disjoint intervals (greedy by right end)
    gives k leaves, and a position covered by k intervals gives a prefix
    path with k attached heads.  With the input reduced to one arc per
    head, one of the two must succeed whenever there are more than
    (k-2)*(k-1) heads.
    """
    if not fas:
        return None
    by_right = sorted(fas, key=lambda fa: (fa.j, fa.i))
    selected: list[ForwardArc] = []
    last_j = -1
    for fa in by_right:
        if fa.i >= last_j:
            selected.append(fa)
            last_j = fa.j
    if len(selected) >= k - 1:
        chosen = selected[: k - 1]
        parent: dict[int, int] = {}
        for fa in chosen:
            parent[p[fa.j]] = p[fa.i]
            parent[p[fa.i + 1]] = p[fa.i]
        for prev, nxt in zip(chosen, chosen[1:]):
            for t in range(prev.j, nxt.i):
                parent[p[t + 1]] = p[t]
        return OutTree(p[chosen[0].i], parent, host_size)
    best_h = None
    for h in range(len(p)):
        if sum(1 for fa in fas if fa.i <= h <= fa.j - 1) >= k:
            best_h = h
            break
    if best_h is not None:
        covering = sorted(
            (fa for fa in fas if fa.i <= best_h <= fa.j - 1),
            key=lambda fa: (fa.j, fa.i),
        )[:k]
        parent = {p[t + 1]: p[t] for t in range(best_h)}
        for fa in covering:
            parent[p[fa.j]] = p[fa.i]
        return OutTree(p[0], parent, host_size)
    if len(fas) > (k - 2) * (k - 1):
        raise InvariantError(
            f"{len(fas)} forward-arc heads admit neither chain nor covered position for k={k}"
        )
    return None


def backward_component_check(
    c: Digraph, p: Sequence[int], k: int
) -> OutTree | list[int]:
    """Either an out-tree with >= k leaves built from backward arcs, or
    the path order as a vertex-separation ordering.

    Scans prefixes of the path; if some prefix holds k vertices with
    in-neighbors in the matching suffix, the suffix path plus one such
    backward arc each is the witness.  Otherwise every prefix boundary
    is small and the path order has vertex separation <= k.
    """
    if sorted(p) != list(range(c.n)):
        raise ContractError("path does not cover the component")
    pos = {v: i for i, v in enumerate(p)}
    for a, b in sorted(c.arcs):
        if pos[b] == pos[a] + 1:
            continue
        if pos[b] > pos[a]:
            raise ContractError(
                f"arc ({a},{b}) is a forward chord, not allowed here"
            )
    q = len(p)
    for j in range(1, q):
        suffix = set(p[j:])
        targets = []
        for v in p[:j]:
            inside = [u for u in c.in_neighbors(v) if u in suffix]
            if inside:
                targets.append((pos[v], v, min(inside, key=pos.__getitem__)))
        if len(targets) >= k:
            targets.sort()
            parent = {p[t + 1]: p[t] for t in range(j, q - 1)}
            for _, v, u in targets[:k]:
                parent[v] = u
            return OutTree(p[j], parent, c.n)
    return list(p)


def decompose(d: Digraph, k: int, root: int | None = None) -> DecomposeOutcome:
    """Either an out-tree of d with >= k leaves, or a path decomposition
    of the underlying undirected graph of width <= k**3.

    Needs k >= 2 (for k <= 1 the answer is just whether an out-branching
    exists) and a digraph with an out-branching.  Witnesses are checked
    against the original digraph before being returned; internal bound
    violations raise InvariantError and always indicate a bug.
    """
    if k < 2:
        raise ContractError("decompose needs k >= 2; k <= 1 reduces to out-branching existence")
    trace: list[str] = []

    def witness(t: OutTree) -> DecomposeOutcome:
        report = validate_out_tree(d, t)
        if not report.ok:
            raise InvariantError("bad witness: " + "; ".join(report.errors))
        return DecomposeOutcome(k, witness=t, trace=trace)

    trace.append("out-branching")
    t = find_out_branching(d, root)
    if t.leaf_count >= k:
        return witness(t)

    trace.append("path-cover")
    cover = path_cover_from_out_branching(t)
    try:
        cover.validate(d)
    except ContractError as exc:
        raise InvariantError(f"broken path cover: {exc}") from exc

    trace.append("off-path")
    off_path: list[set[int]] = []
    for path in cover.paths:
        w = off_path_out_neighbors(d, path)
        if len(w) >= k:
            pos = {v: i for i, v in enumerate(path)}
            on_path = set(path)
            choice = {
                v: min(
                    (u for u in d.in_neighbors(v) if u in on_path),
                    key=pos.__getitem__,
                )
                for v in w
            }
            return witness(witness_from_off_path(path, w, choice, d.n))
        off_path.append(w)

    trace.append("trim")
    u1 = set().union(*off_path) if off_path else set()
    if len(u1) > (k - 1) ** 2:
        raise InvariantError(f"|U1| = {len(u1)} exceeds (k-1)^2 = {(k - 1) ** 2}")
    d1 = trim_around(d, u1, cover)

    trace.append("forward-arcs")
    heads: list[set[int]] = []
    for path in cover.paths:
        reduced = reduce_forward_arcs(forward_arcs_on_path(d1, path))
        t_fw = witness_from_forward_arcs(path, reduced, k, d.n)
        if t_fw is not None:
            return witness(t_fw)
        heads.append(forward_arc_heads(reduced))

    trace.append("trim")
    u2 = set().union(*heads) if heads else set()
    if len(u2) > (k - 2) * (k - 1) ** 2:
        raise InvariantError(
            f"|U2| = {len(u2)} exceeds (k-2)(k-1)^2 = {(k - 2) * (k - 1) ** 2}"
        )
    d2 = trim_around(d1, u2, cover)

    trace.append("backward-arcs")
    for a, b in d2.arcs:
        if cover.where[a][0] != cover.where[b][0]:
            raise InvariantError(f"arc ({a},{b}) still joins two cover paths")
    pieces = []  # (component order, local path, local sigma)
    for path in sorted(cover.paths, key=min):
        sub, order = induced_subdigraph(d2, path)
        local = {v: i for i, v in enumerate(order)}
        p_local = [local[v] for v in path]
        res = backward_component_check(sub, p_local, k)
        if isinstance(res, OutTree):
            return witness(res.relabel(order, d.n))
        pieces.append((sub, order, res))

    trace.append("decomposition")
    u = u1 | u2
    bags: list[list[int]] = []
    for sub, order, sigma in pieces:
        local_pd = ordering_to_path_decomposition(underlying_undirected(sub), sigma)
        if local_pd.width > k:
            raise InvariantError(
                f"component ordering has separation {local_pd.width}, expected <= {k}"
            )
        for bag in local_pd.bags:
            bags.append(sorted({order[x] for x in bag} | u))
    pd = PathDecomposition(bags)
    if pd.width > k**3:
        raise InvariantError(f"width {pd.width} exceeds k^3 = {k**3}")
    try:
        pd.check(underlying_undirected(d))
    except ContractError as exc:
        raise InvariantError(f"broken decomposition: {exc}") from exc
    return DecomposeOutcome(k, decomposition=pd, trace=trace)


def decompose_out_tree(d: Digraph, v: int, k: int) -> DecomposeOutcome:
    """Run decompose on the part of d reachable from v, rooted at v.

    Vertex ids in the outcome refer to d.  A witness here is an out-tree
    of d that need not extend to an out-branching; a decomposition
    covers only the reachable part.
    """
    reach = reachable_set(d, v)
    sub, order = induced_subdigraph(d, reach)
    local_root = order.index(v)
    out = decompose(sub, k, root=local_root)
    if out.is_witness:
        return DecomposeOutcome(
            k, witness=out.witness.relabel(order, d.n), trace=out.trace
        )
    bags = [[order[x] for x in bag] for bag in out.decomposition.bags]
    return DecomposeOutcome(
        k, decomposition=PathDecomposition(bags), trace=out.trace
    )
