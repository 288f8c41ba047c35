"""Small immutable multigraph with half-edge bookkeeping.

Half-edges are pairs (edge id, end) with end 0 at the first endpoint and
end 1 at the second, so a loop contributes two half-edges at its node.
"""
from __future__ import annotations

from typing import Any, Hashable, Iterable, Mapping

Node = Hashable
EdgeId = Hashable
Half = tuple  # (edge id, 0 | 1)


def sort_key(x: Any):
    """Total order on the nested str/int/tuple ids used throughout."""
    if isinstance(x, str):
        return (0, x)
    if isinstance(x, bool):
        return (1, int(x))
    if isinstance(x, int):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(sort_key(y) for y in x))
    if isinstance(x, frozenset):
        return (3, tuple(sorted(sort_key(y) for y in x)))
    return (4, repr(x))


def sorted_ids(xs: Iterable) -> list:
    return sorted(xs, key=sort_key)


def canonical_cycle(seq: Iterable) -> tuple:
    """Rotate a cyclic sequence so that its smallest entry comes first."""
    seq = tuple(seq)
    if not seq:
        return seq
    if type(seq[0]) is str:
        i = seq.index(min(seq))
    else:
        try:
            i = seq.index(min(seq))
        except TypeError:
            i = min(range(len(seq)), key=lambda j: sort_key(seq[j]))
    return seq[i:] + seq[:i]


def cyclic_equal(a: Iterable, b: Iterable) -> bool:
    return canonical_cycle(a) == canonical_cycle(b)


class MultiGraph:
    """Finite multigraph; loops and parallel edges allowed."""

    __slots__ = ("nodes", "edges", "_inc", "_node_set")

    def __init__(self, nodes: Iterable[Node], edges: Mapping[EdgeId, tuple[Node, Node]]):
        self.nodes: tuple = tuple(sorted_ids(set(nodes)))
        self._node_set = frozenset(self.nodes)
        self.edges: dict = {k: tuple(edges[k]) for k in sorted_ids(edges)}
        inc: dict = {n: [] for n in self.nodes}
        for eid, (u, v) in self.edges.items():
            if u not in self._node_set or v not in self._node_set:
                raise ValueError(f"edge {eid!r} has an endpoint outside the node set")
            inc[u].append((eid, 0))
            inc[v].append((eid, 1))
        self._inc = {n: tuple(h) for n, h in inc.items()}

    def __repr__(self) -> str:
        return f"MultiGraph(|V|={len(self.nodes)}, |E|={len(self.edges)})"

    def __contains__(self, n) -> bool:
        return n in self._node_set

    def halves(self, n: Node) -> tuple:
        return self._inc[n]

    def degree(self, n: Node) -> int:
        return len(self._inc[n])

    def endpoint(self, h: Half) -> Node:
        return self.edges[h[0]][h[1]]

    def other_half(self, h: Half) -> Half:
        return (h[0], 1 - h[1])

    def neighbor(self, h: Half) -> Node:
        return self.edges[h[0]][1 - h[1]]

    def is_loop(self, eid) -> bool:
        u, v = self.edges[eid]
        return u == v

    def has_loops(self) -> bool:
        return any(u == v for u, v in self.edges.values())

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges.values():
            if u == v:
                return False
            k = frozenset((u, v))
            if k in seen:
                return False
            seen.add(k)
        return True

    def neighbors(self, n: Node) -> set:
        return {self.neighbor(h) for h in self._inc[n]}

    def subgraph_edges(self, eids: Iterable[EdgeId], keep_nodes: bool = False) -> "MultiGraph":
        eids = set(eids)
        es = {e: self.edges[e] for e in eids}
        if keep_nodes:
            ns = self.nodes
        else:
            ns = {x for uv in es.values() for x in uv}
        return MultiGraph(ns, es)

    def induced(self, nodes: Iterable[Node]) -> "MultiGraph":
        ns = set(nodes)
        es = {e: uv for e, uv in self.edges.items() if uv[0] in ns and uv[1] in ns}
        return MultiGraph(ns, es)

    def remove_nodes(self, drop: Iterable[Node]) -> "MultiGraph":
        drop = set(drop)
        return self.induced(n for n in self.nodes if n not in drop)

    def remove_edges(self, drop: Iterable[EdgeId]) -> "MultiGraph":
        drop = set(drop)
        return MultiGraph(self.nodes, {e: uv for e, uv in self.edges.items() if e not in drop})

    def components(self) -> list[tuple]:
        """Node sets of connected components, sorted."""
        seen: set = set()
        out = []
        for s in self.nodes:
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            stack = [s]
            while stack:
                x = stack.pop()
                for h in self._inc[x]:
                    y = self.neighbor(h)
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            out.append(tuple(sorted_ids(comp)))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def relabel(self, node_map: Mapping | None = None, edge_map: Mapping | None = None) -> "MultiGraph":
        nm = (lambda x: node_map.get(x, x)) if node_map else (lambda x: x)
        em = (lambda x: edge_map.get(x, x)) if edge_map else (lambda x: x)
        return MultiGraph([nm(n) for n in self.nodes],
                          {em(e): (nm(u), nm(v)) for e, (u, v) in self.edges.items()})

    def to_networkx(self):
        import networkx as nx
        g = nx.MultiGraph()
        g.add_nodes_from(self.nodes)
        for e, (u, v) in self.edges.items():
            g.add_edge(u, v, key=e)
        return g

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple], nodes: Iterable | None = None) -> "MultiGraph":
        """Build from an edge list; edges get ids 0, 1, 2, ..."""
        pairs = [tuple(p) for p in pairs]
        ns = set(nodes or ())
        for u, v in pairs:
            ns.update((u, v))
        return cls(ns, {i: p for i, p in enumerate(pairs)})

    @classmethod
    def from_networkx(cls, g) -> "MultiGraph":
        if g.is_multigraph():
            es = {}
            for i, (u, v, k) in enumerate(sorted(g.edges(keys=True), key=sort_key)):
                es[i] = (u, v)
            return cls(g.nodes, es)
        return cls.from_pairs(sorted((tuple(sorted((u, v), key=sort_key)) for u, v in g.edges()), key=sort_key), g.nodes)
