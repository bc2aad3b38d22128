"""Data conversion: CSV export and the canonical interchange format.

The canonical format is a versioned JSON document (see
docs/canonical-format.md) rather than a language-specific serialization, so
exported policies can be loaded from any toolchain.  Exports sort keys and
values and are byte-stable across runs.
"""

from __future__ import annotations

import json

from .errors import CorruptInputError, SchemaError, VersionError
from .model import (
    RESOURCE,
    USER,
    Conjunct,
    ConjunctOp,
    Constraint,
    ConstraintOp,
    Entity,
    Policy,
    Rule,
    is_atom,
    is_ident,
)
from .parser import serialize_rules

FORMAT_PREFIX = "abac-exchange/"
FORMAT_VERSION = FORMAT_PREFIX + "1"


# ---------------------------------------------------------------------------
# CSV export


def to_csv(policy: Policy):
    """(users_csv, resources_csv, rules_text).

    Attribute names become columns (sorted); set values render as sorted
    `{v1 v2}` cells; a missing attribute is an empty cell.  Rules are saved
    separately as canonical rule text.
    """
    return (
        _entities_csv(policy.users),
        _entities_csv(policy.resources),
        serialize_rules(policy.rules),
    )


def _entities_csv(entities) -> str:
    attrs = sorted({a for e in entities for a in e.attrs})
    lines = [",".join(_cell(c) for c in ["id"] + attrs)]
    for e in entities:
        row = [e.id]
        for a in attrs:
            v = e.attrs.get(a)
            if v is None:
                row.append("")
            elif isinstance(v, frozenset):
                row.append("{" + " ".join(sorted(v)) + "}")
            else:
                row.append(v)
        lines.append(",".join(_cell(c) for c in row))
    return "\n".join(lines) + "\n"


def _cell(value: str) -> str:
    """RFC 4180 escaping; braces also force quoting so set cells stand out."""
    if any(c in value for c in ',"{}\n\r'):
        return '"' + value.replace('"', '""') + '"'
    return value


# ---------------------------------------------------------------------------
# Canonical export / import


def export_canonical(policy: Policy) -> bytes:
    """Serialize a policy to canonical JSON bytes (UTF-8, sorted, stable)."""
    doc = {
        "version": FORMAT_VERSION,
        "name": policy.name,
        "users": [_entity_doc(e) for e in policy.users],
        "resources": [_entity_doc(e) for e in policy.resources],
        "rules": [_rule_doc(r) for r in policy.rules],
    }
    return json.dumps(doc, sort_keys=True, indent=2).encode("utf-8") + b"\n"


def import_canonical(data: bytes) -> Policy:
    """Parse canonical bytes back into a Policy; import(export(p)) == p.

    Raises CorruptInputError when the bytes are not a JSON document,
    VersionError on an unsupported format version, and SchemaError on any
    other schema violation.
    """
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptInputError(f"not a canonical policy document: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("top level must be a JSON object")
    version = doc.get("version")
    if not isinstance(version, str) or not version.startswith(FORMAT_PREFIX):
        raise SchemaError("missing or malformed 'version' field")
    if version != FORMAT_VERSION:
        raise VersionError(f"unsupported format version {version!r}, expected {FORMAT_VERSION!r}")
    for key in ("name", "users", "resources", "rules"):
        if key not in doc:
            raise SchemaError(f"missing top-level key {key!r}")
    if not isinstance(doc["name"], str):
        raise SchemaError("'name' must be a string")
    users = tuple(_entity_from(d, USER) for d in _expect_list(doc, "users"))
    resources = tuple(_entity_from(d, RESOURCE) for d in _expect_list(doc, "resources"))
    rules = tuple(
        _rule_from(d, i) for i, d in enumerate(_expect_list(doc, "rules"), start=1)
    )
    try:
        return Policy(name=doc["name"], users=users, resources=resources, rules=rules)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def _entity_doc(e: Entity) -> dict:
    attrs = {}
    for a in sorted(e.attrs):
        v = e.attrs[a]
        attrs[a] = sorted(v) if isinstance(v, frozenset) else v
    return {"id": e.id, "attrs": attrs}


def _rule_doc(r: Rule) -> dict:
    return {
        "sub": [_conjunct_doc(c) for c in r.sub_cond],
        "res": [_conjunct_doc(c) for c in r.res_cond],
        "actions": sorted(r.actions),
        "constraints": [
            {"userAttr": k.user_attr, "op": k.op.value, "resAttr": k.res_attr}
            for k in r.constraints
        ],
    }


def _conjunct_doc(c: Conjunct) -> dict:
    return {"attr": c.attr, "op": c.op.value, "consts": sorted(c.consts)}


def _expect_list(doc: dict, key: str) -> list:
    value = doc[key]
    if not isinstance(value, list):
        raise SchemaError(f"{key!r} must be a list")
    return value


def _entity_from(d, kind) -> Entity:
    if not isinstance(d, dict) or not isinstance(d.get("id"), str):
        raise SchemaError(f"malformed {kind} entry: {d!r}")
    if not is_atom(d["id"]):
        raise SchemaError(f"invalid {kind} id {d['id']!r}")
    raw = d.get("attrs", {})
    if not isinstance(raw, dict):
        raise SchemaError(f"{kind} {d['id']!r}: 'attrs' must be an object")
    attrs = {}
    for name, value in raw.items():
        if not is_ident(name):
            raise SchemaError(f"{kind} {d['id']!r}: invalid attribute name {name!r}")
        if isinstance(value, str):
            if not is_atom(value):
                raise SchemaError(f"{kind} {d['id']!r}: invalid value {value!r}")
            attrs[name] = value
        elif isinstance(value, list):
            if not all(isinstance(v, str) and is_atom(v) for v in value):
                raise SchemaError(f"{kind} {d['id']!r}: invalid set value for {name!r}")
            attrs[name] = frozenset(value)
        else:
            raise SchemaError(f"{kind} {d['id']!r}: attribute {name!r} must be string or list")
    return Entity(id=d["id"], kind=kind, attrs=attrs)


_CONJUNCT_OPS = {op.value: op for op in ConjunctOp}
_CONSTRAINT_OPS = {op.value: op for op in ConstraintOp}


def _rule_from(d, index: int) -> Rule:
    if not isinstance(d, dict):
        raise SchemaError(f"rule {index}: must be an object")
    try:
        sub = tuple(_conjunct_from(c, index) for c in d.get("sub", []))
        res = tuple(_conjunct_from(c, index) for c in d.get("res", []))
        actions = d.get("actions")
        if (
            not isinstance(actions, list)
            or not actions
            or not all(isinstance(a, str) and is_atom(a) for a in actions)
        ):
            raise SchemaError(f"rule {index}: 'actions' must be a non-empty list of atoms")
        constraints = tuple(_constraint_from(k, index) for k in d.get("constraints", []))
        return Rule(
            index=index,
            sub_cond=sub,
            res_cond=res,
            actions=frozenset(actions),
            constraints=constraints,
        )
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"rule {index}: {exc}") from exc


def _conjunct_from(c, index: int) -> Conjunct:
    if not isinstance(c, dict) or c.get("op") not in _CONJUNCT_OPS:
        raise SchemaError(f"rule {index}: malformed conjunct {c!r}")
    consts = c.get("consts")
    if (
        not isinstance(consts, list)
        or not consts
        or not all(isinstance(v, str) and is_atom(v) for v in consts)
    ):
        raise SchemaError(f"rule {index}: conjunct 'consts' must be a non-empty atom list")
    attr = c.get("attr")
    if not isinstance(attr, str) or not is_ident(attr):
        raise SchemaError(f"rule {index}: invalid conjunct attribute {attr!r}")
    return Conjunct(attr=attr, op=_CONJUNCT_OPS[c["op"]], consts=frozenset(consts))


def _constraint_from(k, index: int) -> Constraint:
    if not isinstance(k, dict) or k.get("op") not in _CONSTRAINT_OPS:
        raise SchemaError(f"rule {index}: malformed constraint {k!r}")
    ua, ra = k.get("userAttr"), k.get("resAttr")
    if not (isinstance(ua, str) and is_ident(ua) and isinstance(ra, str) and is_ident(ra)):
        raise SchemaError(f"rule {index}: invalid constraint attributes {k!r}")
    return Constraint(user_attr=ua, op=_CONSTRAINT_OPS[k["op"]], res_attr=ra)
