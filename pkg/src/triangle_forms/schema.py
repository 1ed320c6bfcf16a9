"""Validation of CLI inputs and outputs against the JSON schema files.

The schemas live in the repository's ``schemas/`` directory (override with
the TF_SCHEMA_DIR environment variable).
"""

from __future__ import annotations

import json
import os
from functools import lru_cache
from pathlib import Path

import jsonschema
from referencing import Registry, Resource

from .errors import ValidationError


def schema_dir() -> Path:
    env = os.environ.get("TF_SCHEMA_DIR")
    if env:
        return Path(env)
    return Path(__file__).resolve().parents[2] / "schemas"


@lru_cache(maxsize=1)
def _registry() -> Registry:
    resources = []
    for path in sorted(schema_dir().glob("*.schema.json")):
        data = json.loads(path.read_text(encoding="utf-8"))
        resources.append((data["$id"], Resource.from_contents(data)))
    if not resources:
        raise FileNotFoundError(f"no schema files under {schema_dir()}")
    return Registry().with_resources(resources)


def _validate(name: str, doc: dict) -> None:
    registry = _registry()
    schema = registry.contents(f"{name}.schema.json")
    validator = jsonschema.Draft202012Validator(schema, registry=registry)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    if errors:
        e = errors[0]
        where = "/".join(str(x) for x in e.path) or "<root>"
        raise ValidationError(f"{name} schema violation at {where}: {e.message}")


def validate_document(command: str, doc: dict) -> None:
    _validate(command, json.loads(json.dumps(doc)))


def validate_form(doc: dict) -> None:
    _validate("form", doc)
