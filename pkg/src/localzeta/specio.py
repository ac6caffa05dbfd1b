"""JSON plumbing: RepSpec and PrimeLocalData parsing and schema validation."""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import jsonschema
from referencing import Registry, Resource

from .reps import RamifiedDescriptor, UnramifiedRep
from .ring import Scalar, format_scalar, parse_scalar
from .spectral import PrimeLocalData

__all__ = [
    "SchemaError",
    "SCHEMA_FILES",
    "load_schema",
    "validate",
    "rep_from_json",
    "rep_to_json",
    "descriptor_from_json",
    "prime_data_from_json",
    "scalar_to_json",
]

SCHEMA_FILES = {
    "repspec": "repspec-v1.json",
    "descriptor": "descriptor-v1.json",
    "primelocaldata": "primelocaldata-v1.json",
    "eval-input": "eval-input-v1.json",
    "suitereport": "suitereport-v1.json",
}


class SchemaError(ValueError):
    """Input does not conform to the shipped schema or cannot be parsed."""


@lru_cache(maxsize=None)
def load_schema(name):
    text = resources.files("localzeta.schemas").joinpath(SCHEMA_FILES[name]).read_text()
    return json.loads(text)


@lru_cache(maxsize=None)
def _registry():
    resources_ = [Resource.from_contents(load_schema(k)) for k in SCHEMA_FILES]
    return Registry().with_resources((r.id(), r) for r in resources_)


def validate(obj, name, definition=None):
    """Validate against a shipped schema (or one of its ``$defs``)."""
    schema = load_schema(name)
    if definition is not None:
        schema = {"$ref": f"{schema['$id']}#/$defs/{definition}"}
    try:
        jsonschema.Draft202012Validator(schema, registry=_registry()).validate(obj)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(x) for x in exc.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {exc.message}") from None


def rep_from_json(obj):
    validate(obj, "repspec")
    p, n = obj["p"], obj["n"]
    if len(obj["satake"]) != n:
        raise SchemaError(f"n = {n} but {len(obj['satake'])} Satake parameters given")
    try:
        if obj["mode"] == "exact":
            params = [parse_scalar(s, p) if isinstance(s, str) else None for s in obj["satake"]]
            if None in params:
                raise SchemaError("exact mode needs scalar strings")
            return UnramifiedRep(p, tuple(params))
        if any(isinstance(s, str) for s in obj["satake"]):
            raise SchemaError("numeric mode needs [re, im] pairs")
        return UnramifiedRep(p, tuple(complex(re, im) for re, im in obj["satake"]))
    except SchemaError:
        raise
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def rep_to_json(R):
    if R.is_exact:
        satake = [format_scalar(a) for a in R.satake]
        mode = "exact"
    else:
        satake = [[a.real, a.imag] for a in R.satake]
        mode = "numeric"
    return {"n": R.rank, "p": R.p, "mode": mode, "satake": satake}


def descriptor_from_json(obj, p=None):
    if obj is None:
        return None
    validate(obj, "descriptor")
    eps = obj.get("epsilon_at_1")
    if eps is not None:
        try:
            eps = parse_scalar(eps, p) if p is not None else Fraction(eps)
        except ValueError as exc:
            raise SchemaError(f"epsilon_at_1: {exc}") from None
    try:
        return RamifiedDescriptor(obj.get("conductor", 0), obj.get("kind", "unramified"),
                                  eps, obj.get("label"))
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def prime_data_from_json(obj):
    validate(obj, "primelocaldata")
    Pi, pi = rep_from_json(obj["Pi"]), rep_from_json(obj["pi"])
    desc = descriptor_from_json(obj.get("descriptor"), obj["p"]) or RamifiedDescriptor()
    try:
        return PrimeLocalData(obj["p"], Pi, pi, obj.get("f", 0), desc)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def scalar_to_json(x):
    """Exact values as canonical strings, numeric values as [re, im]."""
    if isinstance(x, Scalar):
        return format_scalar(x)
    if isinstance(x, (int, Fraction)):
        return str(x)
    x = complex(x)
    return [x.real, x.imag]
