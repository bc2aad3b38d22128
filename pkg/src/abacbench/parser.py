"""Parsing and serialization of the `.abac` text format.

The format is line-oriented.  `#` starts a comment anywhere on a line and
runs to end of line.  A statement may wrap across lines until its closing
parenthesis.  Three statement forms exist:

    userAttrib(<id>, <attr>=<value-or-set>, ...)
    resourceAttrib(<id>, <attr>=<value-or-set>, ...)
    rule(<subConds>; <resConds>; {<action> ...}; <constraints>)

Conditions are comma-separated conjuncts `attr in {v ...}`,
`attr supseteq {v ...}`, `attr subseteq {v ...}`, with the sugar forms
`attr = v` (== `attr in {v}`) and `attr contains v` (== `attr supseteq {v}`).
Constraints relate a user attribute to a resource attribute:
`uattr = rattr`, `uattr in rattr`, `uattr contains rattr`,
`uattr supseteq rattr`, `uattr subseteq rattr`.  Any of the condition or
constraint components may be empty; the action set may not.

Whether an attribute is single-valued or set-valued is inferred per
attribute name and entity kind from the declarations; mixing the two for
one name is a parse error.
"""

from __future__ import annotations

from .errors import PolicyParseError
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

_PUNCT = set("(){},;=")

_CONJUNCT_SET_OPS = {
    "in": ConjunctOp.IN,
    "supseteq": ConjunctOp.SUPSETEQ,
    "subseteq": ConjunctOp.SUBSETEQ,
}

_CONSTRAINT_OPS = {
    "=": ConstraintOp.EQUAL,
    "in": ConstraintOp.IN,
    "contains": ConstraintOp.CONTAINS,
    "supseteq": ConstraintOp.SUPSETEQ,
    "subseteq": ConstraintOp.SUBSETEQ,
}


def parse_policy(text: str, name: str = "policy") -> Policy:
    """Parse `.abac` text into a Policy.

    Declaration order is preserved; rule indices are assigned 1..n in file
    order.  Raises PolicyParseError with a line number on malformed input,
    duplicate entity ids, or inconsistent attribute arity.
    """
    users: list[Entity] = []
    resources: list[Entity] = []
    rules: list[Rule] = []
    seen_ids = {USER: set(), RESOURCE: set()}
    # (kind, attr) -> "atomic" | "set", plus first line for error reporting
    arity: dict[tuple, tuple] = {}

    for line_no, tokens in _statements(text):
        head = tokens[0]
        if head in ("userAttrib", "resourceAttrib"):
            kind = USER if head == "userAttrib" else RESOURCE
            entity = _parse_entity(tokens, kind, line_no)
            if entity.id in seen_ids[kind]:
                raise PolicyParseError(f"duplicate {kind} id {entity.id!r}", line_no)
            seen_ids[kind].add(entity.id)
            for attr, value in entity.attrs.items():
                shape = "set" if isinstance(value, frozenset) else "atomic"
                prev = arity.get((kind, attr))
                if prev is None:
                    arity[(kind, attr)] = (shape, line_no)
                elif prev[0] != shape:
                    raise PolicyParseError(
                        f"{kind} attribute {attr!r} is {shape} here but "
                        f"{prev[0]} on line {prev[1]}",
                        line_no,
                    )
            (users if kind == USER else resources).append(entity)
        elif head == "rule":
            rules.append(_parse_rule(tokens, len(rules) + 1, line_no))
        else:
            raise PolicyParseError(f"unknown statement {head!r}", line_no)

    return Policy(name=name, users=tuple(users), resources=tuple(resources), rules=tuple(rules))


def parse_rules(text: str) -> tuple:
    """Parse text containing only rule statements (external rule sets).

    Returns a tuple of Rule with indices 1..n.  Entity declarations are
    rejected.  Empty text yields an empty tuple.
    """
    rules: list[Rule] = []
    for line_no, tokens in _statements(text):
        if tokens[0] != "rule":
            raise PolicyParseError(
                f"only rule statements are allowed here, got {tokens[0]!r}", line_no
            )
        rules.append(_parse_rule(tokens, len(rules) + 1, line_no))
    return tuple(rules)


# ---------------------------------------------------------------------------
# Statement splitting and tokenization


def _statements(text: str):
    """Yield (line_no, tokens) per statement, joining wrapped lines."""
    pending: list[str] = []
    start_line = 0
    depth = 0
    for line_no, raw in enumerate(text.splitlines(), 1):
        hash_pos = raw.find("#")
        line = raw if hash_pos < 0 else raw[:hash_pos]
        if not line.strip() and not pending:
            continue
        if not pending:
            start_line = line_no
        pending.append(line)
        depth += line.count("(") - line.count(")")
        if depth < 0:
            raise PolicyParseError("unbalanced ')'", line_no)
        if depth == 0:
            stmt = " ".join(pending).strip()
            pending = []
            if stmt:
                yield start_line, _tokenize(stmt, start_line)
    if pending and "".join(pending).strip():
        raise PolicyParseError("unterminated statement (missing ')')", start_line)


def _tokenize(stmt: str, line_no: int) -> list:
    tokens = []
    i, n = 0, len(stmt)
    while i < n:
        c = stmt[i]
        if c.isspace():
            i += 1
        elif c in _PUNCT:
            tokens.append(c)
            i += 1
        else:
            j = i
            while j < n and not stmt[j].isspace() and stmt[j] not in _PUNCT:
                j += 1
            tokens.append(stmt[i:j])
            i = j
    return tokens


class _Cursor:
    """Token stream with single-token lookahead and positioned errors."""

    def __init__(self, tokens, line_no):
        self.tokens = tokens
        self.pos = 0
        self.line = line_no

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise PolicyParseError("unexpected end of statement", self.line)
        self.pos += 1
        return tok

    def expect(self, tok):
        got = self.take()
        if got != tok:
            raise PolicyParseError(f"expected {tok!r}, got {got!r}", self.line)
        return got

    def fail(self, message):
        raise PolicyParseError(message, self.line)


# ---------------------------------------------------------------------------
# Statement parsers


def _parse_entity(tokens, kind, line_no) -> Entity:
    cur = _Cursor(tokens, line_no)
    cur.take()  # statement head
    cur.expect("(")
    entity_id = cur.take()
    if not is_atom(entity_id):
        cur.fail(f"invalid entity id {entity_id!r}")
    attrs: dict = {}
    while cur.peek() == ",":
        cur.take()
        attr = cur.take()
        if not is_ident(attr):
            cur.fail(f"invalid attribute name {attr!r}")
        if attr in attrs:
            cur.fail(f"attribute {attr!r} declared twice for {entity_id!r}")
        cur.expect("=")
        attrs[attr] = _parse_value(cur)
    cur.expect(")")
    if cur.peek() is not None:
        cur.fail(f"trailing input after ')': {cur.peek()!r}")
    return Entity(id=entity_id, kind=kind, attrs=attrs)


def _parse_value(cur: _Cursor):
    """Atomic value or `{v1 v2 ...}` set (possibly empty)."""
    if cur.peek() == "{":
        return _parse_set(cur, allow_empty=True)
    value = cur.take()
    if not is_atom(value):
        cur.fail(f"invalid value {value!r}")
    return value


def _parse_set(cur: _Cursor, allow_empty: bool) -> frozenset:
    cur.expect("{")
    values = set()
    while cur.peek() != "}":
        tok = cur.take()
        if not is_atom(tok):
            cur.fail(f"malformed value set: bad element {tok!r}")
        values.add(tok)
    cur.take()  # '}'
    if not values and not allow_empty:
        cur.fail("malformed value set: must be non-empty")
    return frozenset(values)


def _parse_rule(tokens, index, line_no) -> Rule:
    cur = _Cursor(tokens, line_no)
    cur.take()  # 'rule'
    cur.expect("(")
    sub = _parse_conjuncts(cur)
    cur.expect(";")
    res = _parse_conjuncts(cur)
    cur.expect(";")
    if cur.peek() != "{":
        cur.fail("expected action set '{...}'")
    actions = _parse_set(cur, allow_empty=False)
    cur.expect(";")
    constraints = _parse_constraints(cur)
    cur.expect(")")
    if cur.peek() is not None:
        cur.fail(f"trailing input after ')': {cur.peek()!r}")
    return Rule(index=index, sub_cond=sub, res_cond=res, actions=actions, constraints=constraints)


def _parse_conjuncts(cur: _Cursor) -> tuple:
    conjuncts = []
    if cur.peek() in (";", ")"):
        return ()
    while True:
        conjuncts.append(_parse_conjunct(cur))
        if cur.peek() == ",":
            cur.take()
        else:
            break
    return tuple(conjuncts)


def _parse_conjunct(cur: _Cursor) -> Conjunct:
    attr = cur.take()
    if not is_ident(attr):
        cur.fail(f"invalid attribute name {attr!r}")
    op = cur.take()
    if op in _CONJUNCT_SET_OPS:
        consts = _parse_set(cur, allow_empty=False)
        return Conjunct(attr=attr, op=_CONJUNCT_SET_OPS[op], consts=consts)
    if op == "=":  # sugar: attr = v  ==  attr in {v}
        return Conjunct(attr=attr, op=ConjunctOp.IN, consts=frozenset([_take_atom(cur)]))
    if op == "contains":  # sugar: attr contains v  ==  attr supseteq {v}
        return Conjunct(attr=attr, op=ConjunctOp.SUPSETEQ, consts=frozenset([_take_atom(cur)]))
    cur.fail(f"unknown operator {op!r} in condition")


def _parse_constraints(cur: _Cursor) -> tuple:
    constraints = []
    if cur.peek() == ")":
        return ()
    while True:
        user_attr = cur.take()
        if not is_ident(user_attr):
            cur.fail(f"invalid attribute name {user_attr!r}")
        op = cur.take()
        if op not in _CONSTRAINT_OPS:
            cur.fail(f"unknown operator {op!r} in constraint")
        res_attr = cur.take()
        if not is_ident(res_attr):
            cur.fail(f"invalid attribute name {res_attr!r}")
        constraints.append(
            Constraint(user_attr=user_attr, op=_CONSTRAINT_OPS[op], res_attr=res_attr)
        )
        if cur.peek() == ",":
            cur.take()
        else:
            break
    return tuple(constraints)


def _take_atom(cur: _Cursor) -> str:
    tok = cur.take()
    if not is_atom(tok):
        cur.fail(f"invalid value {tok!r}")
    return tok


# ---------------------------------------------------------------------------
# Serialization


def serialize_policy(policy: Policy) -> str:
    """Emit canonical `.abac` text.

    Users first, then resources, then rules.  Entity attributes are sorted
    by name and set values lexicographically, so equal policies serialize
    to identical bytes.  `parse_policy(serialize_policy(p), p.name)` is
    structurally equal to `p`.
    """
    lines = []
    for entity in policy.users:
        lines.append(_entity_stmt("userAttrib", entity))
    if policy.users and policy.resources:
        lines.append("")
    for entity in policy.resources:
        lines.append(_entity_stmt("resourceAttrib", entity))
    if policy.rules and (policy.users or policy.resources):
        lines.append("")
    lines.extend(serialize_rule(rule) for rule in policy.rules)
    return "\n".join(lines) + "\n"


def serialize_rules(rules) -> str:
    """Canonical text for a rule list alone (the rules side of a CSV export)."""
    return "\n".join(serialize_rule(rule) for rule in rules) + ("\n" if rules else "")


def serialize_rule(rule: Rule) -> str:
    sub = ", ".join(_conjunct_str(c) for c in rule.sub_cond)
    res = ", ".join(_conjunct_str(c) for c in rule.res_cond)
    acts = _set_str(rule.actions)
    cons = ", ".join(f"{k.user_attr} {k.op.value} {k.res_attr}" for k in rule.constraints)
    return f"rule({sub}; {res}; {acts}; {cons})"


def _entity_stmt(head: str, entity: Entity) -> str:
    parts = [entity.id]
    for attr in sorted(entity.attrs):
        value = entity.attrs[attr]
        rendered = _set_str(value) if isinstance(value, frozenset) else value
        parts.append(f"{attr}={rendered}")
    return f"{head}({', '.join(parts)})"


def _conjunct_str(c: Conjunct) -> str:
    return f"{c.attr} {c.op.value} {_set_str(c.consts)}"


def _set_str(values) -> str:
    return "{" + " ".join(sorted(values)) + "}"
