"""
Counting independent sets of the Kneser (disjointness) graph on a layer.

An intersecting family is exactly a set of k-sets with no disjoint pair,
i.e. an independent set of the Kneser graph KG(n, k), so I(n, k) is the
number of independent sets of KG(n, k), the empty one included.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Sequence

import networkx as nx

from .exceptions import UsageError
from .family import layer
from .utils import popcount

logger = logging.getLogger("setfam")

PIVOTS = ("max_degree", "last")


def kneser_graph(n: int, k: int) -> nx.Graph:
    """
    KG(n, k) with nodes 0..C(n,k)-1 in canonical order; each node carries
    its set as the "mask" attribute.
    """
    masks = layer(n, k)
    G = nx.Graph()
    for i, mask in enumerate(masks):
        G.add_node(i, mask=mask)
    for i, first in enumerate(masks):
        for j in range(i + 1, len(masks)):
            if not first & masks[j]:
                G.add_edge(i, j)
    return G


def intersection_graph(n: int, k: int) -> nx.Graph:
    """The complement of KG(n, k): edges join intersecting k-sets."""
    G = nx.complement(kneser_graph(n, k))
    for i, mask in enumerate(layer(n, k)):
        G.nodes[i]["mask"] = mask
    return G


def adjacency_masks(G: nx.Graph) -> List[int]:
    adjacency = [0] * G.number_of_nodes()
    for u, v in G.edges():
        adjacency[u] |= 1 << v
        adjacency[v] |= 1 << u
    return adjacency


class IndependentSetCounter:
    """
    Branch on a vertex v: I(G) = I(G - v) + I(G - N[v]). Every subgraph is
    split into connected components first, and component counts are
    memoised on the component's vertex mask (the host graph is fixed, so
    the mask is a canonical encoding).
    """

    def __init__(self, adjacency: Sequence[int], pivot: str = "max_degree"):
        if pivot not in PIVOTS:
            raise UsageError(
                f"Unknown pivot rule {pivot!r}; choose one of {PIVOTS}."
            )
        self.adjacency = list(adjacency)
        self.pivot = pivot
        self.memo: Dict[int, int] = {}

    def components(self, vertices: int) -> List[int]:
        comps = []
        remaining = vertices
        while remaining:
            comp = frontier = remaining & -remaining
            while frontier:
                low = frontier & -frontier
                frontier ^= low
                fresh = (
                    self.adjacency[low.bit_length() - 1] & remaining & ~comp
                )
                comp |= fresh
                frontier |= fresh
            comps.append(comp)
            remaining &= ~comp
        return comps

    def choose_pivot(self, comp: int) -> int:
        if self.pivot == "last":
            return comp.bit_length() - 1
        best, best_degree = -1, -1
        rest = comp
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            degree = popcount(self.adjacency[v] & comp)
            if degree > best_degree:
                best, best_degree = v, degree
        return best

    def count_connected(self, comp: int) -> int:
        cached = self.memo.get(comp)
        if cached is not None:
            return cached
        if comp & (comp - 1) == 0:
            value = 2
        else:
            v = self.choose_pivot(comp)
            without_v = comp & ~(1 << v)
            value = self.count(without_v) + self.count(
                without_v & ~self.adjacency[v]
            )
        # setdefault is an atomic insert-if-absent on CPython dicts
        return self.memo.setdefault(comp, value)

    def count(self, vertices: int) -> int:
        total = 1
        for comp in self.components(vertices):
            total *= self.count_connected(comp)
        return total

    def count_all(self, threads: int = 1) -> int:
        everything = (1 << len(self.adjacency)) - 1
        comps = self.components(everything)
        largest = max((popcount(c) for c in comps), default=0)
        logger.debug(
            f"Graph splits into {len(comps)} components "
            f"(largest has {largest} vertices)."
        )
        if threads > 1 and len(comps) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                counts = list(pool.map(self.count_connected, comps))
        else:
            counts = [self.count_connected(c) for c in comps]
        total = 1
        for c in counts:
            total *= c
        return total


def count_independent_sets(
    G: nx.Graph, pivot: str = "max_degree", threads: int = 1
) -> int:
    # nodes must be 0..|V|-1
    counter = IndependentSetCounter(adjacency_masks(G), pivot=pivot)
    return counter.count_all(threads=threads)
