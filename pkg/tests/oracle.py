"""Independent brute-force oracle for the permission relation.

Deliberately reimplements the evaluation semantics with its own plain code:
enumerate every (user, resource, action) triple and ask whether any rule
grants it.  Shares no logic with the engine's per-rule candidate filtering,
so agreement between the two is meaningful evidence.
"""

from abacbench.model import ConjunctOp, ConstraintOp


def conjunct_ok(conjunct, attrs):
    value = attrs.get(conjunct.attr)
    if conjunct.op is ConjunctOp.IN:
        return isinstance(value, str) and value in conjunct.consts
    if conjunct.op is ConjunctOp.SUPSETEQ:
        return isinstance(value, frozenset) and conjunct.consts.issubset(value)
    if conjunct.op is ConjunctOp.SUBSETEQ:
        return isinstance(value, frozenset) and value.issubset(conjunct.consts)
    raise AssertionError(conjunct.op)


def constraint_ok(constraint, uattrs, rattrs):
    uval = uattrs.get(constraint.user_attr)
    rval = rattrs.get(constraint.res_attr)
    op = constraint.op
    if op is ConstraintOp.EQUAL:
        return isinstance(uval, str) and isinstance(rval, str) and uval == rval
    if op is ConstraintOp.IN:
        return isinstance(uval, str) and isinstance(rval, frozenset) and uval in rval
    if op is ConstraintOp.CONTAINS:
        return isinstance(uval, frozenset) and isinstance(rval, str) and rval in uval
    if op is ConstraintOp.SUPSETEQ:
        return (
            isinstance(uval, frozenset)
            and isinstance(rval, frozenset)
            and rval.issubset(uval)
        )
    if op is ConstraintOp.SUBSETEQ:
        return (
            isinstance(uval, frozenset)
            and isinstance(rval, frozenset)
            and uval.issubset(rval)
        )
    raise AssertionError(op)


def rule_grants(rule, user, resource, action):
    if action not in rule.actions:
        return False
    for c in rule.sub_cond:
        if not conjunct_ok(c, user.attrs):
            return False
    for c in rule.res_cond:
        if not conjunct_ok(c, resource.attrs):
            return False
    for k in rule.constraints:
        if not constraint_ok(k, user.attrs, resource.attrs):
            return False
    return True


def brute_force_permissions(policy):
    """Every triple in users x resources x actions that some rule grants."""
    actions = sorted({a for rule in policy.rules for a in rule.actions})
    rules_for = {a: [r for r in policy.rules if a in r.actions] for a in actions}
    granted = set()
    for user in policy.users:
        for resource in policy.resources:
            for action in actions:
                for rule in rules_for[action]:
                    if rule_grants(rule, user, resource, action):
                        granted.add((user.id, resource.id, action))
                        break
    return granted


def brute_force_rule_permissions(policy, rule):
    """Triples one rule grants on its own (per-rule coverage oracle)."""
    granted = set()
    for user in policy.users:
        for resource in policy.resources:
            for action in sorted(rule.actions):
                if rule_grants(rule, user, resource, action):
                    granted.add((user.id, resource.id, action))
    return granted
