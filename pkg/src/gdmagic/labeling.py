"""Labelings of product graphs by group elements, and their verification.

Weights are always summed over the adjacency of the product graph itself; the
verifier knows nothing about how a labeling was built.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Optional

from .abelian import Element, GroupError, GroupSpec, transport
from .graphs import Graph, GraphError, direct_product_with_cycle

MAX_OFFENDERS = 20


class LabelingError(ValueError):
    pass


@dataclass(frozen=True)
class Labeling:
    """Assignment of group elements to the vertices of ``base_graph x C_cycle_len``.

    ``labels[i * k + j]`` is the label of product vertex ``(i, j)``.  With
    ``cycle_len=None`` the labeling is of ``base_graph`` itself.
    """

    group: GroupSpec
    base_graph: Graph
    cycle_len: Optional[int]
    labels: tuple[Element, ...]
    coordinates: Optional[dict[str, Any]] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(tuple(x) for x in self.labels))
        if len(self.labels) != self.graph.n:
            raise LabelingError(f"labeling has {len(self.labels)} entries, graph has {self.graph.n} vertices")

    @cached_property
    def graph(self) -> Graph:
        if self.cycle_len is None:
            return self.base_graph
        return direct_product_with_cycle(self.base_graph, self.cycle_len)

    def vertex_index(self, v: tuple[int, int] | int) -> int:
        if isinstance(v, int):
            return v
        i, j = v
        if self.cycle_len is None:
            raise LabelingError("plain labeling has no (i, j) vertices")
        if not (0 <= i < self.base_graph.n and 0 <= j < self.cycle_len):
            raise LabelingError(f"vertex {(i, j)} out of range")
        return i * self.cycle_len + j

    def vertex_pair(self, idx: int) -> tuple[int, int] | int:
        if self.cycle_len is None:
            return idx
        return divmod(idx, self.cycle_len)

    def label(self, v: tuple[int, int] | int) -> Element:
        return self.labels[self.vertex_index(v)]

    def negated(self) -> Labeling:
        return Labeling(self.group, self.base_graph, self.cycle_len, tuple(self.group.neg(x) for x in self.labels))

    def transported(self, target: GroupSpec) -> Labeling:
        """The same labeling written in the coordinates of an isomorphic presentation."""
        return Labeling(
            target,
            self.base_graph,
            self.cycle_len,
            tuple(transport(x, self.group, target) for x in self.labels),
        )


@dataclass(frozen=True)
class VerifyReport:
    is_bijection: bool
    is_constant_weight: bool
    magic_constant: Optional[Element]
    offending_vertices: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.is_bijection and self.is_constant_weight

    def to_json(self) -> dict:
        return {
            "is_bijection": self.is_bijection,
            "is_constant_weight": self.is_constant_weight,
            "magic": list(self.magic_constant) if self.magic_constant is not None else None,
            "offending_vertices": [list(v) if isinstance(v, tuple) else v for v in self.offending_vertices],
        }


def weight(lab: Labeling, v: tuple[int, int] | int) -> Element:
    idx = lab.vertex_index(v)
    nbrs = lab.graph.adjacency[idx]
    return lab.group.total(lab.labels[u] for u in nbrs)


def weights(lab: Labeling) -> list[Element]:
    g = lab.group
    return [g.total(lab.labels[u] for u in nbrs) for nbrs in lab.graph.adjacency]


def verify(lab: Labeling) -> VerifyReport:
    """Check that ``lab`` is a bijection onto its group with one common weight."""
    g = lab.group
    if g.order != lab.graph.n:
        raise LabelingError(f"group {g} has order {g.order}, graph has {lab.graph.n} vertices")

    offenders: list = []
    seen: dict[Element, int] = {}
    bijective = True
    for idx, x in enumerate(lab.labels):
        try:
            g.check(x)
        except GroupError:
            bijective = False
            offenders.append(lab.vertex_pair(idx))
            continue
        if x in seen:
            bijective = False
            offenders.append(lab.vertex_pair(idx))
        else:
            seen[x] = idx
    if not bijective:
        return VerifyReport(False, False, None, offenders[:MAX_OFFENDERS])

    ws = weights(lab)
    common, _ = Counter(ws).most_common(1)[0] if ws else (g.zero, 0)
    bad = [lab.vertex_pair(i) for i, w in enumerate(ws) if w != common]
    if bad:
        return VerifyReport(True, False, None, bad[:MAX_OFFENDERS])
    return VerifyReport(True, True, common, [])


# -- serialization ----------------------------------------------------------


def to_json(lab: Labeling) -> dict:
    entries = []
    for idx, x in enumerate(lab.labels):
        v = lab.vertex_pair(idx)
        entries.append({"v": list(v) if isinstance(v, tuple) else v, "e": list(x)})
    out: dict[str, Any] = {
        "graph": lab.base_graph.to_json(),
        "cycle": lab.cycle_len,
        "group": str(lab.group),
        "labels": entries,
    }
    if lab.coordinates is not None:
        out["coordinates"] = lab.coordinates
    return out


def serialize(lab: Labeling) -> str:
    return json.dumps(to_json(lab))


def from_json(obj: Any) -> Labeling:
    if not isinstance(obj, dict):
        raise LabelingError("malformed labeling: expected a JSON object")
    for key in ("graph", "cycle", "group", "labels"):
        if key not in obj:
            raise LabelingError(f"malformed labeling: missing {key!r}")
    try:
        base = Graph.from_json(obj["graph"])
        group = GroupSpec.parse(obj["group"]) if isinstance(obj["group"], str) else None
    except (GraphError, GroupError) as exc:
        raise LabelingError(f"malformed labeling: {exc}") from None
    if group is None:
        raise LabelingError("malformed labeling: group must be a string like '4x2x5'")
    k = obj["cycle"]
    if k is not None and (not isinstance(k, int) or k < 3):
        raise LabelingError(f"malformed labeling: bad cycle length {k!r}")
    n = base.n * (k or 1)
    if not isinstance(obj["labels"], list):
        raise LabelingError("malformed labeling: labels must be a list")

    slots: list[Optional[Element]] = [None] * n
    for entry in obj["labels"]:
        if not isinstance(entry, dict) or "v" not in entry or "e" not in entry:
            raise LabelingError(f"malformed labeling entry {entry!r}")
        v, e = entry["v"], entry["e"]
        if k is None:
            if not isinstance(v, int) or not 0 <= v < n:
                raise LabelingError(f"malformed labeling: vertex {v!r} out of range")
            idx = v
        else:
            if not (isinstance(v, list) and len(v) == 2 and all(isinstance(a, int) for a in v)):
                raise LabelingError(f"malformed labeling: vertex {v!r} is not [i, j]")
            i, j = v
            if not (0 <= i < base.n and 0 <= j < k):
                raise LabelingError(f"malformed labeling: vertex {v!r} out of range")
            idx = i * k + j
        if not (isinstance(e, list) and all(isinstance(a, int) for a in e)):
            raise LabelingError(f"malformed labeling: element {e!r}")
        if len(e) != group.rank or any(not 0 <= a < q for a, q in zip(e, group.factors)):
            raise LabelingError(f"element out of range: {e} in {group}")
        if slots[idx] is not None:
            raise LabelingError(f"duplicate vertex {v}")
        slots[idx] = tuple(e)
    if any(x is None for x in slots):
        missing = next(i for i, x in enumerate(slots) if x is None)
        raise LabelingError(f"incomplete labeling: vertex {divmod(missing, k) if k else missing} has no label")
    return Labeling(group, base, k, tuple(slots), obj.get("coordinates"))


def deserialize(text: str) -> Labeling:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LabelingError(f"malformed labeling: {exc}") from None
    return from_json(obj)


def pair_sums(lab: Labeling, shift: int = 2) -> list[list[Element]]:
    """``f(i, j) + f(i, j + shift)`` for every base vertex ``i`` and position ``j``."""
    k = lab.cycle_len
    if k is None:
        raise LabelingError("pair sums need a product labeling")
    g = lab.group
    return [[g.add(lab.labels[i * k + j], lab.labels[i * k + (j + shift) % k]) for j in range(k)] for i in range(lab.base_graph.n)]

