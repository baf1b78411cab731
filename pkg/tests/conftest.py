"""Shared helpers for the test suite."""

from __future__ import annotations

import numpy as np

from maxleaf import Digraph


def cycle(n: int) -> Digraph:
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def double_cycle(n: int) -> Digraph:
    fwd = [(i, (i + 1) % n) for i in range(n)]
    return Digraph(n, fwd + [(b, a) for a, b in fwd])


def directed_path(n: int) -> Digraph:
    return Digraph(n, [(i, i + 1) for i in range(n - 1)])


def out_star(n: int) -> Digraph:
    return Digraph(n, [(0, v) for v in range(1, n)])


def random_digraph(seed: int, n: int, p: float) -> Digraph:
    """Independent-arc random digraph, for fuzzing only."""
    rng = np.random.default_rng(seed)
    arcs = [
        (u, v)
        for u in range(n)
        for v in range(n)
        if u != v and rng.random() < p
    ]
    return Digraph(n, arcs)
