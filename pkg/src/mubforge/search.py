"""Exhaustive and seeded-random search for families with pairwise-bent differences."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import networkx as nx

from .bent import FunctionTable, MubentSet, _bent_failure

DEFAULT_BUDGET = 10**6


@dataclass
class SearchResult:
    families: list[MubentSet]
    exhaustive: bool
    max_family_size: int
    candidates_examined: int
    budget_exhausted: bool = False
    bent_functions: int = 0
    notes: list[str] = field(default_factory=list)


def _canonical(values: list[tuple[int, ...]], m: int) -> tuple[tuple[int, ...], ...]:
    """Lexicographically least translate of the family that contains zero."""
    best = None
    for pivot in values:
        shifted = tuple(sorted(tuple((a - b) % m for a, b in zip(v, pivot)) for v in values))
        if best is None or shifted < best:
            best = shifted
    return best


def search_mubent(
    p: int,
    n: int,
    codomain: int,
    max_results: int | None = None,
    mode: str = "exhaustive",
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
) -> SearchResult:
    """Maximal families of functions Z_p^n -> Z_codomain with pairwise-bent differences.

    Families are normalized to contain the zero function; each candidate
    table and each pairwise difference test costs one unit of ``budget``.
    Results are ordered by decreasing size, then by value tables.
    """
    FunctionTable.zero(p, n, codomain)  # validates the domain/codomain pair
    if budget <= 0:
        raise ValueError("budget must be positive")
    size = p**n
    zero = (0,) * size
    used = 0
    exhausted = False

    def bent(values) -> bool:
        return _bent_failure(FunctionTable(p, n, codomain, values)) is None

    if mode == "exhaustive":
        candidates = itertools.product(range(codomain), repeat=size)
    elif mode == "random":
        rng = random.Random(seed)
        candidates = (tuple(rng.randrange(codomain) for _ in range(size)) for _ in range(budget))
    else:
        raise ValueError(f"unknown search mode {mode!r}")

    nodes: list[tuple[int, ...]] = []
    seen = set()
    for values in candidates:
        if used >= budget:
            exhausted = True
            break
        used += 1
        if values in seen or values == zero:
            continue
        seen.add(values)
        if bent(values):
            nodes.append(values)
    nodes.sort()

    graph = nx.Graph()
    graph.add_nodes_from(range(len(nodes)))
    for i, j in itertools.combinations(range(len(nodes)), 2):
        if used >= budget:
            exhausted = True
            break
        used += 1
        diff = tuple((a - b) % codomain for a, b in zip(nodes[i], nodes[j]))
        if bent(diff):
            graph.add_edge(i, j)

    canon = set()
    if nodes:
        for clique in nx.find_cliques(graph):
            canon.add(_canonical([zero] + [nodes[k] for k in clique], codomain))
    else:
        canon.add((zero,))
    ordered = sorted(canon, key=lambda fam: (-len(fam), fam))
    max_size = len(ordered[0]) if ordered else 0
    if max_results is not None:
        ordered = ordered[:max_results]
    families = [MubentSet(tuple(FunctionTable(p, n, codomain, v) for v in fam)) for fam in ordered]
    return SearchResult(
        families=families,
        exhaustive=(mode == "exhaustive" and not exhausted),
        max_family_size=max_size,
        candidates_examined=used,
        budget_exhausted=exhausted,
        bent_functions=len(nodes),
    )
