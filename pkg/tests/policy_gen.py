"""Seeded random small-policy generator for property and oracle tests.

Policies are built directly from model types with a controlled vocabulary:
mixed atomic/set attributes, sometimes-missing attributes, and arbitrary
(including shape-mismatched) operator usage, so total-evaluation semantics
get exercised.
"""

from abacbench.model import (
    RESOURCE,
    USER,
    Conjunct,
    ConjunctOp,
    Constraint,
    ConstraintOp,
    Entity,
    Policy,
    Rule,
)
from abacbench.prng import SplitMix64

VALUES = ["v0", "v1", "v2", "v3", "v4", "v5"]
ACTIONS = ["read", "write", "exec", "audit"]
# attr name -> "atomic" | "set", per side
USER_ATTRS = {"dept": "atomic", "level": "atomic", "tags": "set", "cert": "set"}
RES_ATTRS = {"kind": "atomic", "zone": "atomic", "labels": "set", "owner": "atomic"}


def _value(rng, shape):
    if shape == "atomic":
        return VALUES[rng.below(len(VALUES))]
    k = rng.below(4)  # 0..3 elements; empty sets allowed on entities
    return frozenset(VALUES[i] for i in rng.sample_indices(len(VALUES), k))


def _entities(rng, kind, attr_shapes, prefix, count):
    names = list(attr_shapes)
    out = []
    for i in range(count):
        attrs = {}
        for name in names:
            if rng.below(100) < 75:  # attribute sometimes missing
                attrs[name] = _value(rng, attr_shapes[name])
        out.append(Entity(id=f"{prefix}{i}", kind=kind, attrs=attrs))
    return out


def _const_set(rng):
    k = 1 + rng.below(2)
    return frozenset(VALUES[i] for i in rng.sample_indices(len(VALUES), k))


def _conjuncts(rng, attr_shapes):
    names = list(attr_shapes)
    out = []
    for _ in range(rng.below(3)):  # 0..2 conjuncts
        attr = names[rng.below(len(names))]
        op = (ConjunctOp.IN, ConjunctOp.SUPSETEQ, ConjunctOp.SUBSETEQ)[rng.below(3)]
        out.append(Conjunct(attr=attr, op=op, consts=_const_set(rng)))
    return tuple(out)


def _constraints(rng):
    unames, rnames = list(USER_ATTRS), list(RES_ATTRS)
    ops = list(ConstraintOp)
    out = []
    for _ in range(rng.below(3)):  # 0..2 constraints
        out.append(
            Constraint(
                user_attr=unames[rng.below(len(unames))],
                op=ops[rng.below(len(ops))],
                res_attr=rnames[rng.below(len(rnames))],
            )
        )
    return tuple(out)


def random_policy(seed: int, max_users=15, max_resources=15, max_rules=6) -> Policy:
    rng = SplitMix64(seed)
    users = _entities(rng, USER, USER_ATTRS, "u", 1 + rng.below(max_users))
    resources = _entities(rng, RESOURCE, RES_ATTRS, "r", 1 + rng.below(max_resources))
    rules = []
    for index in range(1, 1 + rng.below(max_rules + 1)):
        n_actions = 1 + rng.below(2)
        actions = frozenset(ACTIONS[i] for i in rng.sample_indices(len(ACTIONS), n_actions))
        rules.append(
            Rule(
                index=index,
                sub_cond=_conjuncts(rng, USER_ATTRS),
                res_cond=_conjuncts(rng, RES_ATTRS),
                actions=actions,
                constraints=_constraints(rng),
            )
        )
    return Policy(
        name=f"random-{seed}", users=tuple(users), resources=tuple(resources), rules=tuple(rules)
    )
