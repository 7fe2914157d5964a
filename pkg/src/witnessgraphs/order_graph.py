"""Permutation graphs, transitive orientations, dominance realizations.

A graph is a permutation graph iff both it and its complement admit
transitive orientations.  Orientations are found by forcing-class
propagation: orienting x->y forces x->z whenever xz is an edge but yz is not
(and symmetrically z->y), because any transitive orientation must agree on
such pairs.  A full transitivity check runs afterwards, so a successful
return is correct unconditionally; the forcing argument only explains why
failures are conclusive.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import NotPermutationError
from .geometry import Point2, PointConfig, PositionClass

Edge = tuple[int, int]


def normalize_edges(edges: Iterable[Edge]) -> frozenset[Edge]:
    out = set()
    for u, v in edges:
        if u == v:
            raise ValueError(f"loop at {u}")
        out.add((u, v) if u < v else (v, u))
    return frozenset(out)


def complement_edges(n: int, edges: Iterable[Edge]) -> frozenset[Edge]:
    present = normalize_edges(edges)
    return frozenset(
        (i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in present
    )


def transitive_orient(n: int, edges: Iterable[Edge]) -> list[Edge] | None:
    """A transitive orientation of the edge set, or None.

    Returned pairs (u, v) mean u -> v.  None is definitive: the graph has no
    transitive orientation.  A non-None result has been checked transitively
    closed, so it needs no trust in the forcing argument.
    """
    edges = normalize_edges(edges)
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)

    orient: dict[Edge, Edge] = {}  # undirected key -> directed pair

    def key(u: int, v: int) -> Edge:
        return (u, v) if u < v else (v, u)

    for seed in sorted(edges):
        if seed in orient:
            continue
        queue = [seed]
        orient[seed] = seed
        while queue:
            x, y = queue.pop()
            # x->y forces x->z for z adjacent to x but not y, and z->y for z
            # adjacent to y but not x
            for z in adj[x]:
                if z != y and z not in adj[y]:
                    k = key(x, z)
                    want = (x, z)
                    prev = orient.get(k)
                    if prev is None:
                        orient[k] = want
                        queue.append(want)
                    elif prev != want:
                        return None
            for z in adj[y]:
                if z != x and z not in adj[x]:
                    k = key(z, y)
                    want = (z, y)
                    prev = orient.get(k)
                    if prev is None:
                        orient[k] = want
                        queue.append(want)
                    elif prev != want:
                        return None

    directed = sorted(orient.values())
    succ: list[set[int]] = [set() for _ in range(n)]
    for u, v in directed:
        succ[u].add(v)
    for u, v in directed:
        for w in succ[v]:
            if w not in succ[u]:
                return None
    return directed


def is_permutation_graph(n: int, edges: Iterable[Edge]) -> bool:
    edges = normalize_edges(edges)
    if transitive_orient(n, edges) is None:
        return False
    return transitive_orient(n, complement_edges(n, edges)) is not None


def _topo_order(n: int, directed: list[Edge]) -> list[int]:
    indeg = [0] * n
    succ: list[list[int]] = [[] for _ in range(n)]
    for u, v in directed:
        succ[u].append(v)
        indeg[v] += 1
    ready = sorted(i for i in range(n) if indeg[i] == 0)
    out = []
    while ready:
        u = ready.pop()
        out.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                ready.append(v)
    if len(out) != n:
        raise NotPermutationError("orientation union is not acyclic")
    return out


def dominance_realize(n: int, edges: Iterable[Edge]) -> list[Point2]:
    """Points whose strict-dominance pairs are exactly the given edges.

    p dominates q when both coordinates are strictly larger.  Exists iff the
    graph is a permutation graph.  Combining a transitive orientation F1 of
    the graph with one of the complement (F2) gives two transitive
    tournaments F1+F2 and F1+reverse(F2): a directed path u->v->w mixing the
    two parts always forces the closing edge u->w into one of them (otherwise
    transitivity of F1 or F2 alone is violated on a triangle chord).  Their
    topological orders place exactly the F1 pairs in agreement, so ranks in
    the two orders realize the graph by dominance.
    """
    edges = normalize_edges(edges)
    f1 = transitive_orient(n, edges)
    if f1 is None:
        raise NotPermutationError("graph has no transitive orientation")
    f2 = transitive_orient(n, complement_edges(n, edges))
    if f2 is None:
        raise NotPermutationError("complement has no transitive orientation")
    order1 = _topo_order(n, f1 + f2)
    order2 = _topo_order(n, f1 + [(v, u) for u, v in f2])
    rank1 = [0] * n
    rank2 = [0] * n
    for r, v in enumerate(order1):
        rank1[v] = r
    for r, v in enumerate(order2):
        rank2[v] = r
    return [Point2(Fraction(rank1[i]), Fraction(rank2[i])) for i in range(n)]


def sg_realize(n: int, edges: Iterable[Edge]) -> PointConfig:
    """A point set plus one witness whose positive witness square graph is
    the given graph.

    The witness sits strictly below-left of every vertex, so it lies in the
    closed lower-left quadrant of every point: positive-slope pairs can never
    be edges, negative-slope pairs always are.  Realizing the complement by
    dominance therefore realizes the graph itself.
    """
    edges = normalize_edges(edges)
    pts = dominance_realize(n, complement_edges(n, edges))
    witness = Point2(Fraction(-1, 2), Fraction(-1, 2))
    return PointConfig(tuple(pts), (witness,), PositionClass.GENERAL_AXIS)
