"""Exhaustive backtracking search for group distance magic labelings.

This is the independent oracle used to audit the constructions and the
non-existence results, so it only relies on the definition: a bijection onto
the group with one common neighbourhood sum.

Vertices are assigned in a fixed order (descending degree, then id).  A
vertex's weight is checked as soon as its neighbourhood is complete; the
first completed weight fixes the magic constant for the whole graph, and a
vertex that closes a neighbourhood has its label forced.  For two vertices
``u, u'`` the labels on ``N(u) - N(u')`` and on ``N(u') - N(u)`` must have
equal sums; such a difference constraint is checked as soon as its support
is assigned, which prunes dense graphs long before the magic constant is
known.  Two optional
symmetry reductions, both sound, are on by default:

* negation: ``f`` is magic iff ``-f`` is, so the first vertex only gets labels
  ``x`` with ``index(x) <= index(-x)``;
* twins: vertices with the same open neighbourhood can swap labels freely, so
  labels increase along each twin class.
"""

from __future__ import annotations

import enum
import itertools
import multiprocessing
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .abelian import Element, GroupSpec
from .graphs import Graph

DEFAULT_MAX_VERTICES = 16
_CHECK_EVERY = 2048


class SearchStatus(str, enum.Enum):
    FOUND = "found"
    EXHAUSTED_NONE = "exhausted_none"
    TIMEOUT = "timeout"


@dataclass
class SearchOutcome:
    status: SearchStatus
    labelings: list[tuple[Element, ...]] = field(default_factory=list)
    nodes_explored: int = 0
    elapsed: float = 0.0
    symmetry: bool = True

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND

    @property
    def labeling(self) -> Optional[tuple[Element, ...]]:
        return self.labelings[0] if self.labelings else None


class _Budget(Exception):
    pass


class _Stop(Exception):
    pass


class _Searcher:
    def __init__(
        self,
        h: Graph,
        group: GroupSpec,
        *,
        symmetry: bool,
        find_all: bool,
        max_nodes: Optional[int],
        deadline: Optional[float],
        stop_event=None,
    ) -> None:
        n = h.n
        self.n = n
        self.group = group
        self.elems = group.elements()
        N = len(self.elems)
        index = {x: i for i, x in enumerate(self.elems)}
        self.add = [[index[group.add(x, y)] for y in self.elems] for x in self.elems]
        self.neg = [index[group.neg(x)] for x in self.elems]
        self.N = N

        adj = h.adjacency
        self.adj = adj
        self.order = sorted(range(n), key=lambda v: (-len(adj[v]), v))
        pos = {v: k for k, v in enumerate(self.order)}
        # closers[v]: vertices whose neighbourhood is completed by assigning v
        self.closers: list[list[int]] = [[] for _ in range(n)]
        for u in range(n):
            if adj[u]:
                last = max(adj[u], key=pos.__getitem__)
                self.closers[last].append(u)
        self.has_isolated = any(not a for a in adj)

        # difference constraints sum_{N(u)-N(u')} f - sum_{N(u')-N(u)} f = 0, kept only
        # when they close strictly before both neighbourhoods do
        close_pos = [max((pos[w] for w in adj[u]), default=-1) for u in range(n)]
        self.diff_terms: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        self.diff_closers: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        n_diffs = 0
        seen_supports = set()
        for u, w in itertools.combinations(range(n), 2):
            a, b = set(adj[u]), set(adj[w])
            plus, minus = sorted(a - b), sorted(b - a)
            if not plus and not minus:
                continue
            last = max(plus + minus, key=pos.__getitem__)
            if pos[last] >= max(close_pos[u], close_pos[w]):
                continue
            key = (tuple(plus), tuple(minus))
            if key in seen_supports or key[::-1] in seen_supports:
                continue
            seen_supports.add(key)
            cid = n_diffs
            n_diffs += 1
            for x in plus:
                self.diff_terms[x].append((cid, 1))
            for x in minus:
                self.diff_terms[x].append((cid, -1))
            sign = 1 if last in a else -1
            self.diff_closers[last].append((cid, sign))
        self.n_diffs = n_diffs

        self.prev_twin: list[Optional[int]] = [None] * n
        if symmetry:
            last_in_class: dict[tuple[int, ...], int] = {}
            for v in self.order:
                key = adj[v]
                self.prev_twin[v] = last_in_class.get(key)
                last_in_class[key] = v
        self.symmetry = symmetry
        self.find_all = find_all
        self.max_nodes = max_nodes
        self.deadline = deadline
        self.stop_event = stop_event

        self.nodes = 0
        self.solutions: list[list[int]] = []

    def run(self, root_choices: Optional[list[int]] = None) -> bool:
        """Search; returns ``True`` if the tree was covered, ``False`` on budget exhaustion."""
        n = self.n
        self.label = [-1] * n
        self.used = [False] * self.N
        self.partial = [0] * n
        self.diff = [0] * self.n_diffs
        self.mu = 0 if self.has_isolated else None
        self.root_choices = root_choices
        try:
            self._dfs(0)
        except _Budget:
            return False
        except _Stop:
            pass
        return True

    def _tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise _Budget
        if self.nodes % _CHECK_EVERY == 0:
            if self.deadline is not None and time.monotonic() > self.deadline:
                raise _Budget
            if self.stop_event is not None and self.stop_event.is_set():
                raise _Stop

    def _candidates(self, depth: int, v: int) -> list[int]:
        closers = self.closers[v]
        if closers and self.mu is not None:
            u = closers[0]
            # partial[u] still excludes v
            c = self.add[self.mu][self.neg[self.partial[u]]]
            cands = [c]
        elif self.diff_closers[v]:
            cid, sign = self.diff_closers[v][0]
            d = self.diff[cid]
            cands = [self.neg[d] if sign > 0 else d]
        else:
            cands = range(self.N)
        lo = -1
        if self.prev_twin[v] is not None:
            lo = self.label[self.prev_twin[v]]
        out = []
        for c in cands:
            if self.used[c] or c <= lo:
                continue
            if depth == 0:
                if self.symmetry and c > self.neg[c]:
                    continue
                if self.root_choices is not None and c not in self.root_choices:
                    continue
            out.append(c)
        return out

    def _dfs(self, depth: int) -> None:
        if depth == self.n:
            self.solutions.append(list(self.label))
            if not self.find_all:
                raise _Stop
            return
        v = self.order[depth]
        add, neg = self.add, self.neg
        partial, label, used = self.partial, self.label, self.used
        nbrs = self.adj[v]
        closers = self.closers[v]
        diff, terms, diff_closers = self.diff, self.diff_terms[v], self.diff_closers[v]
        for c in self._candidates(depth, v):
            self._tick()
            label[v] = c
            used[c] = True
            for u in nbrs:
                partial[u] = add[partial[u]][c]
            nc = neg[c]
            for cid, sign in terms:
                diff[cid] = add[diff[cid]][c if sign > 0 else nc]
            seeded = False
            ok = all(diff[cid] == 0 for cid, _ in diff_closers)
            if ok:
                for u in closers:
                    w = partial[u]
                    if self.mu is None:
                        self.mu = w
                        seeded = True
                    elif w != self.mu:
                        ok = False
                        break
            if ok:
                self._dfs(depth + 1)
            if seeded:
                self.mu = None
            for cid, sign in terms:
                diff[cid] = add[diff[cid]][nc if sign > 0 else c]
            for u in nbrs:
                partial[u] = add[partial[u]][nc]
            used[c] = False
            label[v] = -1

    def decode(self, sol: list[int]) -> tuple[Element, ...]:
        return tuple(self.elems[c] for c in sol)


_worker_event = None


def _init_worker(event) -> None:
    global _worker_event
    _worker_event = event


def _run_worker(args):
    h, group, options, root = args
    s = _Searcher(h, group, stop_event=_worker_event, **options)
    covered = s.run([root])
    if s.solutions and not options["find_all"] and _worker_event is not None:
        _worker_event.set()
    return covered, [s.decode(x) for x in s.solutions], s.nodes


def exists_labeling(
    h: Graph,
    group: GroupSpec,
    *,
    max_nodes: Optional[int] = None,
    timeout: Optional[float] = None,
    find_all: bool = False,
    symmetry: bool = True,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    jobs: int = 1,
) -> SearchOutcome:
    """Decide whether ``h`` has a ``group``-distance magic labeling.

    ``FOUND`` carries at least one labeling (every one, up to the symmetry
    reductions, when ``find_all``).  ``EXHAUSTED_NONE`` means the whole tree
    was covered.  Running out of ``max_nodes`` or ``timeout`` gives
    ``TIMEOUT`` unless a labeling had already been found in existence mode.
    """
    if group.order != h.n:
        raise ValueError(f"group order {group.order} != vertex count {h.n}")
    if h.n > max_vertices:
        raise ValueError(f"{h.n} vertices exceeds the exhaustive-search cap of {max_vertices}")
    start = time.monotonic()
    deadline = start + timeout if timeout is not None else None
    options = dict(symmetry=symmetry, find_all=find_all, max_nodes=max_nodes, deadline=deadline)

    if jobs <= 1 or h.n == 0:
        s = _Searcher(h, group, **options)
        covered = s.run()
        sols = [s.decode(x) for x in s.solutions]
        nodes = s.nodes
    else:
        probe = _Searcher(h, group, **options)
        probe.label, probe.used, probe.root_choices, probe.mu = [-1] * h.n, [False] * probe.N, None, None
        probe.diff = [0] * probe.n_diffs
        roots = probe._candidates(0, probe.order[0])
        ctx = multiprocessing.get_context("spawn")
        event = ctx.Manager().Event()
        with ProcessPoolExecutor(jobs, mp_context=ctx, initializer=_init_worker, initargs=(event,)) as pool:
            results = list(pool.map(_run_worker, [(h, group, options, r) for r in roots]))
        covered = all(r[0] for r in results)
        # merge in root order so results are independent of scheduling
        sols = list(itertools.chain.from_iterable(r[1] for r in results))
        nodes = sum(r[2] for r in results)
        if sols and not find_all:
            sols = sols[:1]
            covered = True

    elapsed = time.monotonic() - start
    if sols and (covered or not find_all):
        status = SearchStatus.FOUND
    elif covered:
        status = SearchStatus.EXHAUSTED_NONE
    else:
        status = SearchStatus.TIMEOUT
    return SearchOutcome(status, sols, nodes, elapsed, symmetry)


def magic_constant_of(h: Graph, group: GroupSpec, labels: tuple[Element, ...]) -> Element:
    if h.n == 0:
        return group.zero
    return group.total(labels[u] for u in h.adjacency[0])


def magic_constants(h: Graph, group: GroupSpec, outcome: SearchOutcome) -> set[Element]:
    """Magic constants of the labelings in ``outcome``, closed under negation if it was used."""
    consts = set()
    for lab in outcome.labelings:
        mu = magic_constant_of(h, group, lab)
        consts.add(mu)
        if outcome.symmetry:
            consts.add(group.neg(mu))
    return consts


def all_magic_constants(
    h: Graph,
    group: GroupSpec,
    *,
    max_nodes: Optional[int] = None,
    timeout: Optional[float] = None,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> tuple[set[Element], bool]:
    """Every magic constant reached by some labeling, plus whether the set is complete."""
    out = exists_labeling(
        h, group, max_nodes=max_nodes, timeout=timeout, find_all=True, symmetry=True, max_vertices=max_vertices
    )
    return magic_constants(h, group, out), out.status is not SearchStatus.TIMEOUT


def reference_enumeration(h: Graph, group: GroupSpec) -> list[tuple[Element, ...]]:
    """Every magic labeling of ``h`` by brute force over all bijections.  Tiny graphs only."""
    if group.order != h.n:
        raise ValueError(f"group order {group.order} != vertex count {h.n}")
    if h.n > 9:
        raise ValueError("reference enumeration is limited to 9 vertices")
    out = []
    for perm in itertools.permutations(group.elements()):
        ws = {group.total(perm[u] for u in nbrs) for nbrs in h.adjacency}
        if len(ws) <= 1:
            out.append(tuple(perm))
    return out
