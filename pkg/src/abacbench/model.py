"""Core policy data model.

A policy couples an object model (users and resources with attribute data)
with a list of permit rules.  Attribute values are either atomic strings or
sets of atomic strings; rules test them with membership and set-comparison
operators and may relate a user attribute to a resource attribute.

All types here are immutable once constructed, so a Policy can be shared
freely between threads and analyses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

# An attribute value: atomic string or set of atomic strings.
AttrValue = str | frozenset

USER = "user"
RESOURCE = "resource"

_IDENT_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
# Atoms exclude whitespace and the punctuation used by the .abac grammar
# ('=' and '#' included so declarations and comments stay unambiguous).
_ATOM_BAD = set(" \t\r\n\f\v,;{}()=#")


def is_ident(s: str) -> bool:
    """True if `s` is a lexically valid attribute name."""
    return bool(_IDENT_RE.match(s))


def is_atom(s: str) -> bool:
    """True if `s` is a lexically valid atomic value (ids, values, actions)."""
    return bool(s) and not any(c in _ATOM_BAD for c in s)


class ConjunctOp(str, Enum):
    """Operator of a rule condition against constant values."""

    IN = "in"            # single-valued attribute is a member of consts
    SUPSETEQ = "supseteq"  # set-valued attribute contains all consts
    SUBSETEQ = "subseteq"  # set-valued attribute is contained in consts


class ConstraintOp(str, Enum):
    """Operator relating one user attribute to one resource attribute."""

    EQUAL = "="          # atomic == atomic
    IN = "in"            # user atomic is member of resource set
    CONTAINS = "contains"  # user set contains resource atomic
    SUPSETEQ = "supseteq"  # user set contains resource set
    SUBSETEQ = "subseteq"  # user set contained in resource set


@dataclass(frozen=True)
class Entity:
    """A user or resource: an id plus attribute data."""

    id: str
    kind: str  # USER or RESOURCE
    attrs: dict  # attr name -> str | frozenset[str]


@dataclass(frozen=True)
class Conjunct:
    """One attribute condition within a rule."""

    attr: str
    op: ConjunctOp
    consts: frozenset

    def __post_init__(self):
        if not self.consts:
            raise ValueError(f"conjunct on {self.attr!r} has an empty constant set")


@dataclass(frozen=True)
class Constraint:
    """A relation between a user attribute and a resource attribute."""

    user_attr: str
    op: ConstraintOp
    res_attr: str


@dataclass(frozen=True)
class Rule:
    """A permit rule.

    Empty condition/constraint lists are vacuously true; a rule with all
    three empty grants its actions on every (user, resource) pair.
    """

    index: int  # 1-based position in the policy file
    sub_cond: tuple  # tuple[Conjunct, ...]
    res_cond: tuple  # tuple[Conjunct, ...]
    actions: frozenset  # non-empty
    constraints: tuple  # tuple[Constraint, ...]

    def __post_init__(self):
        if not self.actions:
            raise ValueError(f"rule {self.index} has an empty action set")

    def mentioned_user_attrs(self) -> set:
        """Attribute names this rule tests on the user side."""
        names = {c.attr for c in self.sub_cond}
        names.update(c.user_attr for c in self.constraints)
        return names

    def mentioned_resource_attrs(self) -> set:
        """Attribute names this rule tests on the resource side."""
        names = {c.attr for c in self.res_cond}
        names.update(c.res_attr for c in self.constraints)
        return names


@dataclass(frozen=True, eq=True)
class Policy:
    """An immutable parsed policy: entities plus rules."""

    name: str
    users: tuple  # tuple[Entity, ...] in declaration order
    resources: tuple  # tuple[Entity, ...] in declaration order
    rules: tuple  # tuple[Rule, ...] in file order, index 1..n

    def __post_init__(self):
        for kind, entities in ((USER, self.users), (RESOURCE, self.resources)):
            seen = set()
            for e in entities:
                if e.id in seen:
                    raise ValueError(f"duplicate {kind} id {e.id!r}")
                seen.add(e.id)

    @cached_property
    def users_by_id(self) -> dict:
        return {u.id: u for u in self.users}

    @cached_property
    def resources_by_id(self) -> dict:
        return {r.id: r for r in self.resources}

    @cached_property
    def actions(self) -> tuple:
        """Action universe: union of rule action sets, sorted."""
        acts = set()
        for rule in self.rules:
            acts.update(rule.actions)
        return tuple(sorted(acts))

    @cached_property
    def user_attr_names(self) -> tuple:
        """Distinct attribute names declared by at least one user, sorted."""
        return _declared_attrs(self.users)

    @cached_property
    def resource_attr_names(self) -> tuple:
        """Distinct attribute names declared by at least one resource, sorted."""
        return _declared_attrs(self.resources)


def _declared_attrs(entities) -> tuple:
    names = set()
    for e in entities:
        names.update(e.attrs)
    return tuple(sorted(names))


@dataclass(frozen=True)
class Diagnostic:
    """A validation finding.  Never raised; returned in lists."""

    kind: str  # "undeclared-attribute" | "missing-attribute" | "zero-permission-rule"
    message: str
    rule_index: int | None = None
    entity_id: str | None = None
    attr: str | None = None
