"""Simple undirected graphs on vertices 1..n and the .gr text format."""
from __future__ import annotations

from typing import Iterable, Iterator

from .errors import ParseError


class Graph:
    """Undirected graph without loops; vertices are the integers 1..n."""

    __slots__ = ("n", "adj", "_m")

    def __init__(self, n: int, adj: tuple[frozenset[int], ...]):
        self.n = n
        self.adj = adj
        self._m = sum(len(a) for a in adj) // 2

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 1:
            raise ValueError("a graph needs at least one vertex")
        nbrs: list[set[int]] = [set() for _ in range(n + 1)]
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge {u} {v} out of range 1..{n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(frozenset(s) for s in nbrs))

    @property
    def m(self) -> int:
        return self._m

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(1, self.n + 1):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def relabel(self, eta: dict[int, int]) -> "Graph":
        return Graph.from_edges(self.n, ((eta[u], eta[v]) for u, v in self.edges()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _content_lines(text: str | bytes) -> Iterator[tuple[int, list[str]]]:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None


def parse_graph(text: str | bytes) -> Graph:
    lines = _content_lines(text)
    try:
        lineno, head = next(lines)
    except StopIteration:
        raise ParseError("missing header 'n m'", 1) from None
    if len(head) != 2:
        raise ParseError("header must be 'n m'", lineno)
    n, m = _int(head[0], lineno), _int(head[1], lineno)
    if n < 1 or m < 0:
        raise ParseError("header needs n >= 1 and m >= 0", lineno)
    edges = []
    last = lineno
    for lineno, toks in lines:
        last = lineno
        if len(toks) != 2:
            raise ParseError("edge line must be 'u v'", lineno)
        u, v = _int(toks[0], lineno), _int(toks[1], lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex id out of range 1..{n}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        edges.append((u, v))
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}", last)
    return Graph.from_edges(n, edges)


def format_graph(g: Graph) -> str:
    edges = sorted(g.edges())
    out = [f"{g.n} {len(edges)}"]
    out.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(out) + "\n"
