"""JSON Schemas (draft 2020-12) for the files and CLI outputs."""

_INLINE_GRAPH = {
    "type": "object",
    "required": ["n", "edges"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "edges": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2, "maxItems": 2},
        },
    },
}

_ELEMENT = {"type": "array", "items": {"type": "integer", "minimum": 0}}

LABELING = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["graph", "cycle", "group", "labels"],
    "properties": {
        "graph": {"oneOf": [{"type": "string"}, _INLINE_GRAPH]},
        "cycle": {"oneOf": [{"type": "integer", "minimum": 3}, {"type": "null"}]},
        "group": {"type": "string", "pattern": r"^[1-9][0-9]*(x[1-9][0-9]*)*$"},
        "labels": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["v", "e"],
                "properties": {
                    "v": {
                        "oneOf": [
                            {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2, "maxItems": 2},
                            {"type": "integer", "minimum": 0},
                        ]
                    },
                    "e": _ELEMENT,
                },
            },
        },
        "coordinates": {
            "type": "object",
            "required": ["canonical", "positions"],
            "properties": {
                "canonical": {"type": "string"},
                "positions": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            },
        },
    },
}

CONSTRUCT_REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["outcome", "construction", "errata", "labeling", "magic"],
    "properties": {
        "outcome": {"enum": ["constructed", "not_covered", "precondition_failed"]},
        "construction": {
            "enum": ["lemma21", "lemma22", "obs24", "lemma28", "lemma31", "thm32c2", "thm32c3", "thm23", "thm32"]
        },
        "errata": {"type": "array", "items": {"enum": ["E1", "E2", "E3"]}},
        "group": {"type": "string"},
        "labeling": {"oneOf": [LABELING, {"type": "null"}]},
        "magic": {"oneOf": [_ELEMENT, {"type": "null"}]},
        "reason": {"type": "string"},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
    "allOf": [
        {
            "if": {"properties": {"outcome": {"const": "constructed"}}},
            "then": {"properties": {"labeling": LABELING, "magic": _ELEMENT}},
            "else": {"properties": {"labeling": {"type": "null"}, "magic": {"type": "null"}}},
        }
    ],
}

VERIFY_REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["is_bijection", "is_constant_weight", "magic", "offending_vertices"],
    "properties": {
        "is_bijection": {"type": "boolean"},
        "is_constant_weight": {"type": "boolean"},
        "magic": {"oneOf": [_ELEMENT, {"type": "null"}]},
        "offending_vertices": {"type": "array"},
    },
}

SEARCH_RESULT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["status", "nodes_explored", "elapsed", "count", "labelings"],
    "properties": {
        "status": {"enum": ["found", "exhausted_none", "timeout"]},
        "nodes_explored": {"type": "integer", "minimum": 0},
        "elapsed": {"type": "number", "minimum": 0},
        "count": {"type": "integer", "minimum": 0},
        "labelings": {"type": "array", "items": LABELING},
        "magic_constants": {"type": "array", "items": _ELEMENT},
    },
}

FEASIBILITY_RESULT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["predicate", "verdict", "witness"],
    "properties": {
        "predicate": {"enum": ["regular", "involution", "acg", "c8", "bipartite"]},
        "verdict": {"enum": ["feasible", "obstruction", "none", "holds", "violated", "exists", "not_exists"]},
        "witness": {"oneOf": [{"type": "object"}, {"type": "null"}]},
    },
}
