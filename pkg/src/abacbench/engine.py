"""Access evaluation: deciding requests and enumerating granted permissions.

Semantics are deny-by-default with permit-only rules.  A rule grants
(user, resource, action) when every subject conjunct holds for the user,
every resource conjunct holds for the resource, the action is in the rule's
action set, and every user/resource constraint holds for the pair.  An
entity lacking a referenced attribute — or holding one of the wrong shape
for the operator — fails that test; evaluation never raises on attribute
data.
"""

from __future__ import annotations

import csv
import io
import weakref
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import AbacError, UnknownEntityError
from .model import Conjunct, ConjunctOp, ConstraintOp, Entity, Policy, Rule


class Permission(NamedTuple):
    """A granted (user, resource, action) triple."""

    user: str
    resource: str
    action: str


@dataclass
class Decision:
    """Outcome of evaluating one concrete request."""

    permitted: bool
    matching_rules: list = field(default_factory=list)  # ascending rule indices
    note: str | None = None


def _conjunct_holds(c: Conjunct, attrs: dict) -> bool:
    value = attrs.get(c.attr)
    if value is None:
        return False
    if c.op is ConjunctOp.IN:
        return isinstance(value, str) and value in c.consts
    if not isinstance(value, frozenset):
        return False
    if c.op is ConjunctOp.SUPSETEQ:
        return value >= c.consts
    return value <= c.consts  # SUBSETEQ


def _conds_hold(conds, attrs: dict) -> bool:
    return all(_conjunct_holds(c, attrs) for c in conds)


def _constraint_holds(k, user_attrs: dict, res_attrs: dict) -> bool:
    uval = user_attrs.get(k.user_attr)
    rval = res_attrs.get(k.res_attr)
    if uval is None or rval is None:
        return False
    op = k.op
    if op is ConstraintOp.EQUAL:
        return isinstance(uval, str) and isinstance(rval, str) and uval == rval
    if op is ConstraintOp.IN:
        return isinstance(uval, str) and isinstance(rval, frozenset) and uval in rval
    if op is ConstraintOp.CONTAINS:
        return isinstance(uval, frozenset) and isinstance(rval, str) and rval in uval
    if not isinstance(uval, frozenset) or not isinstance(rval, frozenset):
        return False
    if op is ConstraintOp.SUPSETEQ:
        return uval >= rval
    return uval <= rval  # SUBSETEQ


def satisfies(rule: Rule, user: Entity, resource: Entity, action: str) -> bool:
    """True iff this rule alone grants (user, resource, action)."""
    return (
        action in rule.actions
        and _conds_hold(rule.sub_cond, user.attrs)
        and _conds_hold(rule.res_cond, resource.attrs)
        and all(_constraint_holds(k, user.attrs, resource.attrs) for k in rule.constraints)
    )


def evaluate(policy: Policy, user_id: str, resource_id: str, action: str) -> Decision:
    """Decide one request; lists every matching rule index in ascending order.

    Unknown user or resource ids raise UnknownEntityError.  An action
    outside the policy's action universe is a deny with a note, so batch
    runs survive typos.
    """
    user = policy.users_by_id.get(user_id)
    if user is None:
        raise UnknownEntityError("user", user_id)
    resource = policy.resources_by_id.get(resource_id)
    if resource is None:
        raise UnknownEntityError("resource", resource_id)
    if action not in _action_set(policy):
        return Decision(False, [], note=f"action {action!r} not granted by any rule")
    matching = [r.index for r in policy.rules if satisfies(r, user, resource, action)]
    return Decision(bool(matching), matching)


# ---------------------------------------------------------------------------
# Permission enumeration

_perm_cache: dict = {}
_action_cache: dict = {}


def _cache_get(cache, policy, compute):
    key = id(policy)
    hit = cache.get(key)
    if hit is None:
        hit = compute(policy)
        cache[key] = hit
        weakref.finalize(policy, cache.pop, key, None)
    return hit


def _action_set(policy: Policy) -> frozenset:
    return _cache_get(_action_cache, policy, lambda p: frozenset(p.actions))


def all_permissions(policy: Policy) -> set:
    """The full permission relation { (u, r, a) : some rule grants it }.

    Computed per rule with candidate filtering; contractually identical to
    evaluating every triple in users x resources x actions.  The result is
    cached against the (immutable) policy object.
    """
    return _cache_get(
        _perm_cache,
        policy,
        lambda p: set().union(set(), *(rule_permissions(p, rule) for rule in p.rules)),
    )


def rule_permissions(policy: Policy, rule: Rule) -> set:
    """Permissions granted by one rule in isolation."""
    users = [u for u in policy.users if _conds_hold(rule.sub_cond, u.attrs)]
    if not users:
        return set()
    resources = [r for r in policy.resources if _conds_hold(rule.res_cond, r.attrs)]
    if not resources:
        return set()
    granted = set()
    for u, r in _constrained_pairs(rule, users, resources):
        granted.update(Permission(u.id, r.id, a) for a in rule.actions)
    return granted


def _constrained_pairs(rule: Rule, users, resources):
    """(user, resource) pairs passing all constraints.

    When the leading constraint is an equality-style join, resources are
    indexed by the joined attribute value to avoid the full cross product;
    the remaining constraints are checked pair by pair.  Results are
    identical to checking every pair.
    """
    if not rule.constraints:
        for u in users:
            for r in resources:
                yield u, r
        return

    first, rest = rule.constraints[0], rule.constraints[1:]
    index = _index_resources(first, resources)
    if index is None:
        for u in users:
            for r in resources:
                if _constraint_holds(first, u.attrs, r.attrs) and all(
                    _constraint_holds(k, u.attrs, r.attrs) for k in rest
                ):
                    yield u, r
        return

    for u in users:
        uval = u.attrs.get(first.user_attr)
        if uval is None:
            continue
        if first.op is ConstraintOp.CONTAINS:
            if not isinstance(uval, frozenset):
                continue
            candidates: dict = {}
            for v in uval:
                for r in index.get(v, ()):
                    candidates[id(r)] = r
            matches = candidates.values()
        else:
            if not isinstance(uval, str):
                continue
            matches = index.get(uval, ())
        for r in matches:
            if all(_constraint_holds(k, u.attrs, r.attrs) for k in rest):
                yield u, r


def _index_resources(constraint, resources):
    """Resource index keyed by joined attribute value, or None if not indexable."""
    op = constraint.op
    if op is ConstraintOp.EQUAL or op is ConstraintOp.CONTAINS:
        # user side matched against the resource's atomic value
        index: dict = {}
        for r in resources:
            rval = r.attrs.get(constraint.res_attr)
            if isinstance(rval, str):
                index.setdefault(rval, []).append(r)
        return index
    if op is ConstraintOp.IN:
        # user atomic must be a member of the resource's set value
        index = {}
        for r in resources:
            rval = r.attrs.get(constraint.res_attr)
            if isinstance(rval, frozenset):
                for v in rval:
                    index.setdefault(v, []).append(r)
        return index
    return None  # set-to-set comparisons: check pairs directly


def query(policy: Policy, user=None, resource=None, action=None) -> list:
    """All permitted triples consistent with the given fields, sorted.

    None fields range over the whole universe.  Provided user/resource ids
    must exist.  Equivalent to filtering all_permissions on the fixed
    fields.
    """
    if user is not None and user not in policy.users_by_id:
        raise UnknownEntityError("user", user)
    if resource is not None and resource not in policy.resources_by_id:
        raise UnknownEntityError("resource", resource)

    if user is None and resource is None and action is None:
        return sorted(all_permissions(policy))

    users = policy.users if user is None else (policy.users_by_id[user],)
    resources = policy.resources if resource is None else (policy.resources_by_id[resource],)
    found = set()
    for rule in policy.rules:
        if action is not None and action not in rule.actions:
            continue
        actions = rule.actions if action is None else (action,)
        rusers = [u for u in users if _conds_hold(rule.sub_cond, u.attrs)]
        if not rusers:
            continue
        rresources = [r for r in resources if _conds_hold(rule.res_cond, r.attrs)]
        if not rresources:
            continue
        for u, r in _constrained_pairs(rule, rusers, rresources):
            found.update(Permission(u.id, r.id, a) for a in actions)
    return sorted(found)


# ---------------------------------------------------------------------------
# File Check: batch request CSV

REQUEST_HEADER = ["user", "resource", "action"]
RESULT_HEADER = ["user", "resource", "action", "decision", "matching_rules"]


@dataclass
class CheckResult:
    user: str
    resource: str
    action: str
    decision: str  # "permit" | "deny" | "error"
    matching_rules: list
    note: str | None = None


def check_requests_csv(policy: Policy, text: str) -> str:
    """Run a batch request file and render the result CSV.

    Input columns are `user,resource,action`; `*` in a column means "all".
    Rows with unknown ids come back with decision `error` rather than
    aborting the batch.
    """
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise AbacError("request file is empty")
    header = [cell.strip().lower() for cell in rows[0]]
    if header != REQUEST_HEADER:
        raise AbacError(
            f"request file header must be {','.join(REQUEST_HEADER)!r}, got {','.join(header)!r}"
        )
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(RESULT_HEADER)
    for row in rows[1:]:
        if not row or all(not cell.strip() for cell in row):
            continue
        for result in check_request(policy, *_pad3(row)):
            writer.writerow(
                [
                    result.user,
                    result.resource,
                    result.action,
                    result.decision,
                    "|".join(str(i) for i in result.matching_rules),
                ]
            )
    return out.getvalue()


def _pad3(row):
    cells = [cell.strip() for cell in row[:3]]
    while len(cells) < 3:
        cells.append("")
    return cells


def check_request(policy: Policy, user: str, resource: str, action: str):
    """Expand one request row (supporting `*`) into concrete CheckResults."""
    if not user or not resource or not action:
        yield CheckResult(user, resource, action, "error", [], note="empty field")
        return
    if user != "*" and user not in policy.users_by_id:
        yield CheckResult(user, resource, action, "error", [], note=f"unknown user {user!r}")
        return
    if resource != "*" and resource not in policy.resources_by_id:
        yield CheckResult(
            user, resource, action, "error", [], note=f"unknown resource {resource!r}"
        )
        return
    users = sorted(policy.users_by_id) if user == "*" else [user]
    resources = sorted(policy.resources_by_id) if resource == "*" else [resource]
    actions = list(policy.actions) if action == "*" else [action]
    for u in users:
        for r in resources:
            for a in actions:
                decision = evaluate(policy, u, r, a)
                yield CheckResult(
                    u,
                    r,
                    a,
                    "permit" if decision.permitted else "deny",
                    decision.matching_rules,
                    note=decision.note,
                )
