"""JSON Schema documents for the stable file formats the CLI reads and writes.

All rationals travel as "p/q" strings (plain integers allowed); permutations
and root pairs are 1-based in documents, matching the human conventions.
"""

from __future__ import annotations

__all__ = ["SCHEMAS", "schema_for"]

_RATIONAL = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
_PERM = {"type": "array", "items": {"type": "integer", "minimum": 1}}
_ROOT_PAIR = {
    "type": "array",
    "items": {"type": "integer", "minimum": 1},
    "minItems": 2,
    "maxItems": 2,
}
_NAMED_COEFFS = {"type": "object", "additionalProperties": _RATIONAL}

SPRINGER_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "SpringerDatum",
    "type": "object",
    "required": [
        "n",
        "levels",
        "subgroup_order",
        "positive_group_roots",
        "ambient_weights",
        "pieces",
        "piece_reps",
        "component_dims",
    ],
    "properties": {
        "n": {"type": "integer", "minimum": 1, "maximum": 8},
        "levels": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "subgroup_order": {"type": "integer", "minimum": 1},
        "positive_group_roots": {"type": "array", "items": _ROOT_PAIR},
        "ambient_weights": {"type": "array", "items": _ROOT_PAIR},
        "pieces": {"type": "array", "items": {"type": "array", "items": _ROOT_PAIR}},
        "piece_reps": {
            "type": "array",
            "items": {"oneOf": [{"type": "null"}, _PERM]},
        },
        "component_dims": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
}

TRUNCATED_ALGEBRA_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "TruncatedAlgebra",
    "type": "object",
    "required": ["n", "s", "q0", "dimension", "basis", "structure"],
    "properties": {
        "n": {"type": "integer", "minimum": 1, "maximum": 8},
        "s": {"type": "array", "items": _RATIONAL},
        "q0": _RATIONAL,
        "dimension": {"type": "integer", "minimum": 1},
        "basis": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["a", "w"],
                "properties": {
                    "a": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    "w": _PERM,
                },
            },
        },
        "structure": {
            "type": "array",
            "items": {
                "type": "array",
                "description": "[i, j, [[k, coeff], ...]] sparse triples over basis indices",
                "minItems": 3,
                "maxItems": 3,
            },
        },
    },
}

DG_ALGEBRA_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "DgAlgebra",
    "type": "object",
    "required": ["basis", "unit"],
    "properties": {
        "basis": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["name", "degree"],
                "properties": {
                    "name": {"type": "string"},
                    "degree": {"type": "integer"},
                },
            },
        },
        "unit": {"type": "string"},
        "products": {
            "type": "array",
            "description": "[a, b, {c: coeff}] per basis pair with nonzero product",
            "items": {"type": "array", "minItems": 3, "maxItems": 3},
        },
        "differential": {
            "type": "array",
            "description": "[a, {b: coeff}] columns of d",
            "items": {"type": "array", "minItems": 2, "maxItems": 2},
        },
        "automorphism": {
            "type": "array",
            "description": "[a, {b: coeff}] columns of F",
            "items": {"type": "array", "minItems": 2, "maxItems": 2},
        },
        "r": _RATIONAL,
    },
}

ZIGZAG_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "Zigzag",
    "type": "object",
    "required": ["r", "algebras", "maps"],
    "properties": {
        "r": _RATIONAL,
        "algebras": {
            "type": "object",
            "required": ["H", "B", "Rtilde", "R"],
            "additionalProperties": {"$ref": "#/definitions/dgAlgebra"},
        },
        "weights": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": {"type": "integer"}},
        },
        "maps": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "dom", "cod", "matrix"],
                "properties": {
                    "name": {"type": "string"},
                    "dom": {"type": "string"},
                    "cod": {"type": "string"},
                    "matrix": {
                        "type": "array",
                        "items": {"type": "array", "items": _RATIONAL},
                    },
                },
            },
        },
        "certificates": {
            "type": "object",
            "properties": {
                "all_ok": {"type": "boolean"},
                "checks": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["map", "check", "ok"],
                    },
                },
                "cohomology_ranks": {"type": "object"},
            },
        },
    },
    "definitions": {"dgAlgebra": DG_ALGEBRA_SCHEMA},
}

SCHEMAS = {
    "springer": SPRINGER_SCHEMA,
    "truncated-algebra": TRUNCATED_ALGEBRA_SCHEMA,
    "dg-algebra": DG_ALGEBRA_SCHEMA,
    "zigzag": ZIGZAG_SCHEMA,
}


def schema_for(kind: str) -> dict:
    if kind not in SCHEMAS:
        raise KeyError(kind)
    return SCHEMAS[kind]
