"""Simple undirected graphs, named generators and direct products with cycles."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

MAX_VERTICES = 2**20


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Graph on vertices ``0..n-1``; edges are stored as pairs ``(u, v)`` with ``u < v``."""

    n: int
    edges: frozenset[tuple[int, int]]
    spec: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], spec: Optional[str] = None) -> Graph:
        return cls(n, frozenset((int(u), int(v)) for u, v in edges), spec)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def to_edge_list(self) -> str:
        lines = [str(self.n)] + [f"{u} {v}" for u, v in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse_edge_list(cls, text: str) -> Graph:
        """Read the edge-list format: first line ``n``, then one ``u v`` pair per line."""
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise GraphError("empty edge list")
        try:
            n = int(lines[0])
        except ValueError:
            raise GraphError(f"first line must be the vertex count, got {lines[0]!r}") from None
        if n < 1 or n > MAX_VERTICES:
            raise GraphError(f"vertex count {n} outside [1, {MAX_VERTICES}]")
        seen: set[tuple[int, int]] = set()
        for lineno, ln in enumerate(lines[1:], start=2):
            parts = ln.split()
            if len(parts) != 2:
                raise GraphError(f"line {lineno}: expected 'u v', got {ln!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphError(f"line {lineno}: non-integer vertex in {ln!r}") from None
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"line {lineno}: duplicate edge {u} {v}")
            seen.add(key)
        return cls.from_edges(n, [tuple(map(int, ln.split())) for ln in lines[1:]])

    def to_json(self) -> str | dict:
        if self.spec is not None:
            return self.spec
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, obj: str | dict) -> Graph:
        if isinstance(obj, str):
            return generate(obj)
        if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
            raise GraphError("inline graph must be an object with 'n' and 'edges'")
        edges = obj["edges"]
        pairs = set()
        for e in edges:
            if not isinstance(e, list) or len(e) != 2 or not all(isinstance(a, int) for a in e):
                raise GraphError(f"bad edge {e!r}")
            key = (min(e), max(e))
            if key in pairs:
                raise GraphError(f"duplicate edge {e}")
            pairs.add(key)
        return cls.from_edges(obj["n"], [tuple(e) for e in edges])


# -- generators -----------------------------------------------------------


def _ints(text: str, sep: str = ",") -> list[int]:
    try:
        return [int(s) for s in text.split(sep)]
    except ValueError:
        raise GraphError(f"expected integers, got {text!r}") from None


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle length must be >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"cycle:{n}")


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs at least one vertex")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], f"path:{n}")


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs at least one vertex")
    return Graph.from_edges(n, itertools.combinations(range(n), 2), f"complete:{n}")


def empty(n: int) -> Graph:
    if n < 1:
        raise GraphError("empty graph needs at least one vertex")
    return Graph(n, frozenset(), f"empty:{n}")


def complete_multipartite(*sizes: int) -> Graph:
    """Complete multipartite graph; the parts are numbered consecutively in the given order."""
    if any(s < 1 for s in sizes):
        raise GraphError(f"part sizes must be >= 1, got {list(sizes)}")
    bounds = list(itertools.accumulate(sizes, initial=0))
    parts = [range(bounds[k], bounds[k + 1]) for k in range(len(sizes))]
    edges = [(u, v) for a, b in itertools.combinations(parts, 2) for u in a for v in b]
    kind = {2: "bipartite", 3: "tripartite"}.get(len(sizes), "multipartite")
    return Graph.from_edges(bounds[-1], edges, f"{kind}:{','.join(map(str, sizes))}")


def petersen() -> Graph:
    # outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, edges, "petersen")


def circulant(n: int, steps: Iterable[int]) -> Graph:
    steps = list(steps)
    if n < 3:
        raise GraphError(f"circulant order must be >= 3, got {n}")
    if not steps or any(not 1 <= s <= n // 2 for s in steps) or len(set(steps)) != len(steps):
        raise GraphError(f"circulant steps must be distinct and in [1, {n // 2}], got {steps}")
    edges = {(min(i, (i + s) % n), max(i, (i + s) % n)) for i in range(n) for s in steps}
    return Graph.from_edges(n, edges, f"circulant:{n};{','.join(map(str, steps))}")


def generate(kind: str) -> Graph:
    """Build a graph from generator syntax such as ``cycle:5`` or ``circulant:10;1,2``."""
    name, _, arg = kind.partition(":")
    if name == "petersen" and not arg:
        return petersen()
    if not arg:
        raise GraphError(f"generator {kind!r} needs parameters")
    if name == "cycle":
        (n,) = _ints(arg)
        return cycle(n)
    if name == "path":
        (n,) = _ints(arg)
        return path(n)
    if name == "complete":
        (n,) = _ints(arg)
        return complete(n)
    if name == "empty":
        (n,) = _ints(arg)
        return empty(n)
    if name == "bipartite":
        sizes = _ints(arg)
        if len(sizes) != 2:
            raise GraphError("bipartite takes two part sizes")
        return complete_multipartite(*sizes)
    if name == "tripartite":
        sizes = _ints(arg)
        if len(sizes) != 3:
            raise GraphError("tripartite takes three part sizes")
        return complete_multipartite(*sizes)
    if name == "circulant":
        n_text, sep, steps_text = arg.partition(";")
        if not sep:
            raise GraphError("circulant syntax is circulant:n;s1,s2,...")
        (n,) = _ints(n_text)
        return circulant(n, _ints(steps_text))
    raise GraphError(f"unknown generator {kind!r}")


def parse_generator_parts(kind: str) -> tuple[str, list[int]]:
    """Split ``bipartite:1,9`` into ``("bipartite", [1, 9])``."""
    name, _, arg = kind.partition(":")
    return name, (_ints(arg) if arg and name in ("bipartite", "tripartite") else [])


# -- products and invariants ------------------------------------------------


def product_vertex(i: int, j: int, k: int) -> int:
    return i * k + j


def direct_product_with_cycle(g: Graph, k: int) -> Graph:
    """Direct product ``g x C_k``; vertex ``(i, j)`` becomes ``i*k + j``."""
    if k < 3:
        raise GraphError(f"cycle length must be >= 3, got {k}")
    if g.n * k > MAX_VERTICES:
        raise GraphError(f"product would have {g.n * k} vertices (cap {MAX_VERTICES})")
    edges = set()
    for u, v in g.edges:
        for j in range(k):
            a = u * k + j
            edges.add((a, v * k + (j + 1) % k))
            edges.add((a, v * k + (j - 1) % k))
    return Graph.from_edges(g.n * k, edges)


def degree_residue_class(g: Graph, modulus: int) -> Optional[int]:
    """The common residue of all degrees mod ``modulus``, or ``None`` if they disagree."""
    if modulus < 1:
        raise GraphError("modulus must be >= 1")
    residues = {d % modulus for d in g.degrees}
    if len(residues) > 1:
        return None
    return residues.pop() if residues else 0


def two_adic_valuation(n: int) -> int:
    if n < 1:
        raise ValueError("two_adic_valuation needs n >= 1")
    return (n & -n).bit_length() - 1


def components(g: Graph) -> list[set[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = {s}, [s]
        while stack:
            u = stack.pop()
            for v in g.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.add(v)
                    stack.append(v)
        out.append(comp)
    return out
