"""Structural validation of emitted table JSON against the shipped schema.

The validator is self-contained (no third-party dependency) and covers the
subset of JSON Schema used by table_schema.json: required keys, primitive
types, integer minimums, array items, anyOf and string enums.
"""

from __future__ import annotations

import json
from importlib import resources


def load_schema():
    with resources.files("flagcohom").joinpath("table_schema.json").open() as fh:
        return json.load(fh)


def validate(obj, schema=None, root=None, path="$"):
    """Validate obj against the table schema; raises ValueError on mismatch."""
    if schema is None:
        schema = load_schema()
    if root is None:
        root = schema
    if "$ref" in schema:
        target = root
        for part in schema["$ref"].lstrip("#/").split("/"):
            target = target[part]
        return validate(obj, target, root, path)
    if "anyOf" in schema:
        errors = []
        for option in schema["anyOf"]:
            try:
                return validate(obj, option, root, path)
            except ValueError as exc:
                errors.append(str(exc))
        raise ValueError(f"{path}: no anyOf branch matched ({'; '.join(errors)})")
    stype = schema.get("type")
    if stype == "object":
        if not isinstance(obj, dict):
            raise ValueError(f"{path}: expected object, got {type(obj).__name__}")
        for key in schema.get("required", ()):
            if key not in obj:
                raise ValueError(f"{path}: missing required key {key!r}")
        for key, sub in schema.get("properties", {}).items():
            if key in obj:
                validate(obj[key], sub, root, f"{path}.{key}")
    elif stype == "array":
        if not isinstance(obj, list):
            raise ValueError(f"{path}: expected array, got {type(obj).__name__}")
        if len(obj) < schema.get("minItems", 0):
            raise ValueError(f"{path}: fewer than {schema['minItems']} items")
        item_schema = schema.get("items")
        if item_schema:
            for i, item in enumerate(obj):
                validate(item, item_schema, root, f"{path}[{i}]")
    elif stype == "string":
        if not isinstance(obj, str):
            raise ValueError(f"{path}: expected string, got {type(obj).__name__}")
        if "enum" in schema and obj not in schema["enum"]:
            raise ValueError(f"{path}: {obj!r} not in enum {schema['enum']}")
    elif stype == "integer":
        if not isinstance(obj, int) or isinstance(obj, bool):
            raise ValueError(f"{path}: expected integer, got {type(obj).__name__}")
        if "minimum" in schema and obj < schema["minimum"]:
            raise ValueError(f"{path}: {obj} below minimum {schema['minimum']}")
    elif stype == "boolean":
        if not isinstance(obj, bool):
            raise ValueError(f"{path}: expected boolean")
    return True
