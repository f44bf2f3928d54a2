"""Orbit-level data model for polytopal cell complexes with stabilizer tags.

A complex stores one record per orbit of cells, labelled by the
isomorphism type of its stabilizer, plus face/coface incidences with
multiplicities (the number of orbit representatives of the face in the
coface's boundary).  Everything downstream (reduction, Bredon chains,
the graph cohomology oracle) reads only this quotient data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .groups import TAG_ORDERS


class ComplexSchemaError(ValueError):
    """Raised on malformed complex documents, with a field path."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


@dataclass(frozen=True)
class OrbitCell:
    id: str
    dim: int
    stabilizer: str
    self_identified: bool = False


@dataclass(frozen=True)
class Incidence:
    face: str
    coface: str
    multiplicity: int = 1


# Connected component types of reduced torsion subcomplex quotients.
COMPONENT_CIRCLE = "Circle"
COMPONENT_EDGE = "Edge"
COMPONENT_GRAPH_FIVE = "GraphFive"
COMPONENT_GRAPH_TWO = "GraphTwo"
COMPONENT_OTHER = "Other"


@dataclass(frozen=True)
class OrbitComplex:
    cells: tuple[OrbitCell, ...]
    incidences: tuple[Incidence, ...]
    rigid: bool = True

    def __post_init__(self):
        ids = [c.id for c in self.cells]
        if len(set(ids)) != len(ids):
            raise ComplexSchemaError("duplicate cell ids")
        by_id = {c.id: c for c in self.cells}
        pairs = [(i.face, i.coface) for i in self.incidences]
        if len(set(pairs)) != len(pairs):
            raise ComplexSchemaError(
                "duplicate incidence records (use multiplicity instead)")
        for inc in self.incidences:
            if inc.face not in by_id:
                raise ComplexSchemaError(f"unknown face {inc.face!r}")
            if inc.coface not in by_id:
                raise ComplexSchemaError(f"unknown coface {inc.coface!r}")
            if by_id[inc.coface].dim != by_id[inc.face].dim + 1:
                raise ComplexSchemaError(
                    f"incidence {inc.face!r} -> {inc.coface!r} must raise dimension by 1")
            if inc.multiplicity < 1:
                raise ComplexSchemaError("multiplicity must be >= 1")

    def cell(self, cell_id: str) -> OrbitCell:
        for c in self.cells:
            if c.id == cell_id:
                return c
        raise KeyError(cell_id)

    @property
    def dimension(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def cells_of_dim(self, d: int) -> list[OrbitCell]:
        return [c for c in self.cells if c.dim == d]

    def cofaces(self, cell_id: str) -> list[Incidence]:
        return [i for i in self.incidences if i.face == cell_id]

    def faces(self, cell_id: str) -> list[Incidence]:
        return [i for i in self.incidences if i.coface == cell_id]

    def without_cells(self, drop: set[str]) -> "OrbitComplex":
        cells = tuple(c for c in self.cells if c.id not in drop)
        incs = tuple(i for i in self.incidences
                     if i.face not in drop and i.coface not in drop)
        return OrbitComplex(cells, incs, self.rigid)


def _require(cond: bool, message: str, path: str):
    if not cond:
        raise ComplexSchemaError(message, path)


def parse_complex(text: str) -> OrbitComplex:
    """Parse the JSON document format; schema errors carry a field path."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ComplexSchemaError(f"invalid JSON (line {exc.lineno}): {exc.msg}")
    _require(isinstance(doc, dict), "document must be an object", "$")
    extra = set(doc) - {"rigid", "cells", "incidences"}
    _require(not extra, f"unknown keys {sorted(extra)}", "$")
    _require(isinstance(doc.get("rigid"), bool), "rigid must be a boolean", "$.rigid")
    _require(isinstance(doc.get("cells"), list), "cells must be a list", "$.cells")
    _require(isinstance(doc.get("incidences"), list),
             "incidences must be a list", "$.incidences")
    cells = []
    for k, raw in enumerate(doc["cells"]):
        path = f"$.cells[{k}]"
        _require(isinstance(raw, dict), "cell must be an object", path)
        extra = set(raw) - {"id", "dim", "stabilizer", "self_identified"}
        _require(not extra, f"unknown keys {sorted(extra)}", path)
        _require(isinstance(raw.get("id"), str) and raw["id"], "id must be a string", path)
        _require(isinstance(raw.get("dim"), int) and raw["dim"] >= 0,
                 "dim must be a non-negative integer", path)
        _require(raw.get("stabilizer") in TAG_ORDERS,
                 f"stabilizer must be one of {sorted(TAG_ORDERS)}", path)
        _require(isinstance(raw.get("self_identified"), bool),
                 "self_identified must be a boolean", path)
        cells.append(OrbitCell(raw["id"], raw["dim"], raw["stabilizer"],
                               raw["self_identified"]))
    incs = []
    for k, raw in enumerate(doc["incidences"]):
        path = f"$.incidences[{k}]"
        _require(isinstance(raw, dict), "incidence must be an object", path)
        extra = set(raw) - {"face", "coface", "multiplicity"}
        _require(not extra, f"unknown keys {sorted(extra)}", path)
        _require(isinstance(raw.get("face"), str), "face must be a string", path)
        _require(isinstance(raw.get("coface"), str), "coface must be a string", path)
        mult = raw.get("multiplicity", 1)
        _require(isinstance(mult, int) and mult >= 1,
                 "multiplicity must be a positive integer", path)
        incs.append(Incidence(raw["face"], raw["coface"], mult))
    try:
        return OrbitComplex(tuple(cells), tuple(incs), doc["rigid"])
    except ComplexSchemaError:
        raise
    except ValueError as exc:
        raise ComplexSchemaError(str(exc))


def serialize_complex(cx: OrbitComplex) -> str:
    """Canonical serialization: cells sorted by (dim, id), incidences by
    (face, coface); byte-stable across runs."""
    doc = {
        "rigid": cx.rigid,
        "cells": [
            {"id": c.id, "dim": c.dim, "stabilizer": c.stabilizer,
             "self_identified": c.self_identified}
            for c in sorted(cx.cells, key=lambda c: (c.dim, c.id))
        ],
        "incidences": [
            {"face": i.face, "coface": i.coface, "multiplicity": i.multiplicity}
            for i in sorted(cx.incidences, key=lambda i: (i.face, i.coface))
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def torsion_subcomplex(cx: OrbitComplex, ell: int) -> OrbitComplex:
    """Cells whose stabilizer order is divisible by ell (equivalently, by
    Cauchy's theorem, whose stabilizer contains an element of order ell),
    with incidences restricted accordingly."""
    if not cx.rigid:
        raise ValueError("torsion subcomplex extraction requires a rigid complex")
    keep = {c.id for c in cx.cells if TAG_ORDERS[c.stabilizer] % ell == 0}
    cells = tuple(c for c in cx.cells if c.id in keep)
    incs = tuple(i for i in cx.incidences if i.face in keep and i.coface in keep)
    return OrbitComplex(cells, incs, cx.rigid)


def connected_components(cx: OrbitComplex) -> list[OrbitComplex]:
    """Partition by incidence connectivity, ordered by least cell id."""
    parent: dict[str, str] = {c.id: c.id for c in cx.cells}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for inc in cx.incidences:
        a, b = find(inc.face), find(inc.coface)
        if a != b:
            parent[a] = b
    groups: dict[str, set[str]] = {}
    for c in cx.cells:
        groups.setdefault(find(c.id), set()).add(c.id)
    comps = []
    for ids in groups.values():
        cells = tuple(c for c in cx.cells if c.id in ids)
        incs = tuple(i for i in cx.incidences if i.face in ids)
        comps.append(OrbitComplex(cells, incs, cx.rigid))
    comps.sort(key=lambda comp: min(c.id for c in comp.cells))
    return comps


#: Number of conjugacy classes of embeddings for each pinned
#: (vertex tag, edge tag) inclusion; only C2 in D2 has more than one
#: (its three involutions are pairwise non-conjugate).
EMBEDDING_CLASSES = {("D2", "C2"): 3}


def edge_end_assignments(cx: OrbitComplex) -> dict[str, list[tuple[str, int, int]]]:
    """Orient and label the two end slots of every edge of a graph.

    Returns {edge id: [(vertex id, sign, embedding index), ...]} where the
    first end (in (vertex id, slot) order) carries sign +1 and the second
    sign -1.  A multiplicity-2 incidence (a loop) contributes both slots
    on one vertex.  Embedding indices enumerate the ends at each vertex,
    grouped by edge tag and ordered by (edge id, slot), so a vertex whose
    inclusion type has several conjugacy classes of embeddings uses them
    in rotation.  The rule is deterministic and shared by every consumer
    of incidence data.
    """
    edges = [c for c in cx.cells if c.dim == 1]
    slots: dict[str, list[tuple[str, int]]] = {}
    for e in edges:
        ends = []
        for inc in sorted(cx.faces(e.id), key=lambda i: i.face):
            for k in range(inc.multiplicity):
                ends.append((inc.face, k))
        if len(ends) != 2:
            raise ValueError(f"edge {e.id!r} must have exactly two end slots")
        slots[e.id] = ends
    # per-vertex embedding counters, grouped by edge tag
    counters: dict[tuple[str, str], int] = {}
    by_id = {c.id: c for c in cx.cells}
    assignment: dict[str, list[tuple[str, int, int]]] = {e.id: [] for e in edges}
    for e in sorted(edges, key=lambda c: c.id):
        for pos, (vid, _slot) in enumerate(slots[e.id]):
            vtag = by_id[vid].stabilizer
            classes = EMBEDDING_CLASSES.get((vtag, e.stabilizer), 1)
            key = (vid, e.stabilizer)
            emb = counters.get(key, 0) % classes
            counters[key] = counters.get(key, 0) + 1
            sign = 1 if pos == 0 else -1
            assignment[e.id].append((vid, sign, emb))
    return assignment


def classify_component(cx: OrbitComplex, ell: int) -> str:
    """Shape classification of a reduced 1-dimensional component.

    Circle: a single loop edge; Edge: a single segment with distinct
    endpoints; GraphFive / GraphTwo: multi-edge components whose
    non-cyclic vertex stabilizers follow the (D2, D2) resp. (D2, A4)
    endpoint pattern; anything else is Other.
    """
    if cx.dimension != 1:
        raise ValueError("component is not 1-dimensional")
    vertices = cx.cells_of_dim(0)
    edges = cx.cells_of_dim(1)
    if len(edges) == 1:
        ends = cx.faces(edges[0].id)
        total = sum(i.multiplicity for i in ends)
        if total != 2:
            return COMPONENT_OTHER
        if len(ends) == 1 and len(vertices) == 1:
            return COMPONENT_CIRCLE
        if len(ends) == 2 and len(vertices) == 2:
            return COMPONENT_EDGE
        return COMPONENT_OTHER
    noncyclic = sorted(v.stabilizer for v in vertices
                       if v.stabilizer in ("D2", "D3", "A4", "D4", "D6", "S4"))
    if noncyclic == ["D2", "D2"]:
        return COMPONENT_GRAPH_FIVE
    if noncyclic == ["A4", "D2"]:
        return COMPONENT_GRAPH_TWO
    return COMPONENT_OTHER
