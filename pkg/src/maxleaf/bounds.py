"""Leaf-count lower bound formulas and their empirical verification.

The formulas are checked, never assumed: check_bounds() generates
instances, filters them by each bound's hypotheses, measures the true
spanning leaf maximum with the exact oracle, and reports violations.
Note that (n/2)**(1/5) - 1 never exceeds 1 until n passes 64, so at
oracle scale that bound can only be checked for non-violation; the
tournament bound n - log2(n) is the one with real bite at small n.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from .decompose import path_cover_from_out_branching
from .digraph import (
    Digraph,
    has_out_branching,
    in_L_exact,
    in_L_sufficient,
    is_oriented,
    min_in_degree,
)
from .errors import ContractError, InvariantError
from .generators import GenSpec, generate, instance_id
from .oracle import ORACLE_MAX_N, brute_force_out_branching
from .witness import OutTree, validate_out_tree

CSV_FIELDS = (
    "instance_id",
    "family",
    "n",
    "seed",
    "bound_name",
    "bound_value",
    "measured",
    "holds",
    "skipped_reason",
)

_TOURNAMENTS = ("tournament-random", "tournament-transitive")


def theorem_main_bound(n: int) -> float:
    """Guaranteed spanning leaves for suitable digraphs of order n."""
    if n < 1:
        raise ContractError("n must be positive")
    return (n / 2) ** 0.2 - 1.0


def lemma_order_bound(k: int) -> int:
    """Largest order compatible with a narrow instance at parameter k."""
    if k < 1:
        raise ContractError("k must be positive")
    return 2 * k**5


def tournament_bound(n: int) -> float:
    if n < 1:
        raise ContractError("n must be positive")
    return n - math.log2(n)


def multipartite_bound(n: int) -> float:
    if n < 1:
        raise ContractError("n must be positive")
    return (n - 1) / 4


def required_leaves(bound: float) -> int:
    """Smallest integer meeting a real lower bound, with downward slack
    so exact powers do not round up spuriously."""
    return math.ceil(bound - 1e-9)


def reduce_in_degree_two(d: Digraph, t: OutTree) -> Digraph:
    """Thin d to minimum in-degree exactly 2 while keeping t intact.

    Keeps, per vertex, its tree in-arc plus the smallest-tail other
    in-arc (the root keeps its two smallest).  On input with 2-cycles
    the in-degrees must all be >= 3, and the double arcs along the
    longest cover path of t are dropped first.
    """
    report = validate_out_tree(d, t)
    if not report.ok:
        raise ContractError("tree invalid: " + "; ".join(report.errors))
    if not report.spanning:
        raise ContractError("tree must span the digraph")
    if min_in_degree(d) < 2:
        raise ContractError("every in-degree must be at least 2")
    oriented = is_oriented(d)
    if not oriented and min_in_degree(d) < 3:
        raise ContractError("with 2-cycles present every in-degree must be at least 3")
    arcs = set(d.arcs)
    if not oriented:
        cover = path_cover_from_out_branching(t)
        longest = max(cover.paths, key=len)
        for a, b in zip(longest, longest[1:]):
            arcs.discard((b, a))
    tree_arcs = set(t.arcs())
    kept = set(tree_arcs)
    for v in range(d.n):
        need = 2 if v == t.root else 1
        extras = sorted(
            u
            for u in d.in_neighbors(v)
            if (u, v) in arcs and (u, v) not in tree_arcs
        )
        kept.update((u, v) for u in extras[:need])
    out = Digraph(d.n, kept)
    bad = [v for v in range(d.n) if out.in_degree(v) != 2]
    if bad:
        raise InvariantError(f"vertices {bad} did not end at in-degree 2")
    return out


@dataclass(frozen=True)
class BoundReport:
    instance_id: str
    family: str
    n: int
    seed: int
    bound_name: str
    bound_value: float
    measured: int | None
    holds: bool | None
    source_count: int
    in_l_mode: str | None
    skipped_reason: str | None

    @property
    def skipped(self) -> bool:
        return self.skipped_reason is not None


def _main_hypotheses(d: Digraph, budget: int) -> tuple[str | None, str | None]:
    """(skip reason, family-membership mode) for the order bound."""
    if not has_out_branching(d):
        return "no out-branching", None
    degree_ok = (is_oriented(d) and min_in_degree(d) >= 2) or min_in_degree(d) >= 3
    if not degree_ok:
        return "min in-degree hypothesis fails", None
    if in_L_sufficient(d):
        return None, "sufficient"
    if d.n > budget:
        return "family membership undecidable within budget", None
    if in_L_exact(d, budget):
        return None, "exact"
    return "not in the guaranteed family", None


def check_bounds(
    specs: Sequence[GenSpec], budget: int = ORACLE_MAX_N
) -> list[BoundReport]:
    """Generate, filter by hypotheses, measure, compare.

    Instances failing a bound's hypotheses (or too big for the oracle)
    are reported as skipped, not as failures.  A report with holds=False
    means a counterexample to a published bound: treat it as a failure
    of the whole run.
    """
    reports = []
    for spec in specs:
        d = generate(spec)
        n = d.n
        source_count = sum(1 for v in range(n) if d.in_degree(v) == 0)
        in_l_mode = None
        if spec.family in _TOURNAMENTS:
            name, bound = "tournament", tournament_bound(n)
            skip = None
        elif spec.family == "multipartite-tournament":
            name, bound = "multipartite", multipartite_bound(n)
            skip = None if source_count <= 1 else "more than one source"
        else:
            name, bound = "main", theorem_main_bound(n)
            skip, in_l_mode = _main_hypotheses(d, budget)
        if skip is None and n > budget:
            skip = f"n={n} exceeds the oracle budget {budget}"
        measured = None
        holds = None
        if skip is None:
            measured, _ = brute_force_out_branching(d)
            holds = measured >= required_leaves(bound)
        reports.append(
            BoundReport(
                instance_id=instance_id(spec),
                family=spec.family,
                n=n,
                seed=spec.seed,
                bound_name=name,
                bound_value=bound,
                measured=measured,
                holds=holds,
                source_count=source_count,
                in_l_mode=in_l_mode,
                skipped_reason=skip,
            )
        )
    return reports


def write_bound_csv(reports: Iterable[BoundReport], out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in reports:
        writer.writerow(
            [
                r.instance_id,
                r.family,
                r.n,
                r.seed,
                r.bound_name,
                repr(r.bound_value),
                "" if r.measured is None else r.measured,
                "" if r.holds is None else ("true" if r.holds else "false"),
                r.skipped_reason or "",
            ]
        )
