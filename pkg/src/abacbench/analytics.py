"""Policy analytics: statistics, rule coverage, attribute usage, resource access.

Every operation here is a pure read over an immutable Policy and emits
plain data; rendering (tables, charts, heatmaps) happens in the CLI,
service, and UI layers.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import parser
from .engine import all_permissions, rule_permissions
from .model import Policy


@dataclass(frozen=True)
class PolicyStats:
    n_sub: int
    n_res: int
    n_uattr: int
    n_rattr: int
    n_rule: int
    n_perm: int

    def to_json_dict(self) -> dict:
        return {
            "sub": self.n_sub,
            "res": self.n_res,
            "uAttr": self.n_uattr,
            "rAttr": self.n_rattr,
            "rule": self.n_rule,
            "perm": self.n_perm,
        }


@dataclass(frozen=True)
class RuleCoverage:
    rule_index: int
    granted_count: int
    granted: tuple  # tuple[Permission, ...] sorted

    def to_json_dict(self, with_permissions: bool = False, limit: int | None = None) -> dict:
        d = {"rule": self.rule_index, "count": self.granted_count}
        if with_permissions:
            listed = self.granted if limit is None else self.granted[:limit]
            d["granted"] = [
                {"user": p.user, "resource": p.resource, "action": p.action} for p in listed
            ]
            d["total"] = self.granted_count
        return d


@dataclass(frozen=True)
class AttrUsageMatrix:
    rules: tuple  # rule indices, file order
    user_attrs: tuple  # sorted declared user attribute names
    resource_attrs: tuple  # sorted declared resource attribute names
    cells: tuple  # cells[row][col]; columns are user_attrs then resource_attrs

    def to_json_dict(self) -> dict:
        return {
            "rules": list(self.rules),
            "userAttrs": list(self.user_attrs),
            "resourceAttrs": list(self.resource_attrs),
            "cells": [list(row) for row in self.cells],
        }


@dataclass(frozen=True)
class ResourceAccessProfile:
    resource_id: str
    distinct_users: int

    def to_json_dict(self) -> dict:
        return {"resource": self.resource_id, "users": self.distinct_users}


def statistics(policy: Policy) -> PolicyStats:
    """Entity/attribute/rule/permission counts (attribute ids excluded)."""
    return PolicyStats(
        n_sub=len(policy.users),
        n_res=len(policy.resources),
        n_uattr=len(policy.user_attr_names),
        n_rattr=len(policy.resource_attr_names),
        n_rule=len(policy.rules),
        n_perm=len(all_permissions(policy)),
    )


def rule_coverage(policy: Policy) -> list:
    """Per-rule granted permission sets, in file order.

    Rules may overlap; the union over all rules equals all_permissions.
    """
    return [
        RuleCoverage(rule.index, len(granted), tuple(sorted(granted)))
        for rule in policy.rules
        for granted in (rule_permissions(policy, rule),)
    ]


def external_rule_coverage(policy: Policy, rules_text: str) -> list:
    """Coverage of a separate rule set over this policy's attribute data.

    Used to score candidate (for example, mined) rules against an object
    model; the policy's own rules play no part.  Parse errors in the rule
    text carry line numbers.
    """
    rules = parser.parse_rules(rules_text)
    return [
        RuleCoverage(rule.index, len(granted), tuple(sorted(granted)))
        for rule in rules
        for granted in (rule_permissions(policy, rule),)
    ]


def attribute_usage(policy: Policy) -> AttrUsageMatrix:
    """Rule x attribute matrix behind the attribute-usage heatmap.

    A cell holds the rule's granted-permission count when the rule mentions
    that attribute (in a conjunct or on the matching side of a constraint),
    else 0.
    """
    coverage = {c.rule_index: c.granted_count for c in rule_coverage(policy)}
    user_attrs = policy.user_attr_names
    res_attrs = policy.resource_attr_names
    rows = []
    for rule in policy.rules:
        mentioned_u = rule.mentioned_user_attrs()
        mentioned_r = rule.mentioned_resource_attrs()
        count = coverage[rule.index]
        row = [count if a in mentioned_u else 0 for a in user_attrs]
        row.extend(count if a in mentioned_r else 0 for a in res_attrs)
        rows.append(tuple(row))
    return AttrUsageMatrix(
        rules=tuple(r.index for r in policy.rules),
        user_attrs=user_attrs,
        resource_attrs=res_attrs,
        cells=tuple(rows),
    )


def resource_access(policy: Policy):
    """(top10, bottom10) resources by number of distinct users with access.

    Ties break lexicographically by resource id; lists are shorter than 10
    only when the policy has fewer than 10 resources.
    """
    users_per_resource = {r.id: set() for r in policy.resources}
    for perm in all_permissions(policy):
        users_per_resource[perm.resource].add(perm.user)
    profiles = [
        ResourceAccessProfile(rid, len(users)) for rid, users in users_per_resource.items()
    ]
    top = sorted(profiles, key=lambda p: (-p.distinct_users, p.resource_id))[:10]
    bottom = sorted(profiles, key=lambda p: (p.distinct_users, p.resource_id))[:10]
    return top, bottom


# ---------------------------------------------------------------------------
# CSV renderings (shared verbatim by CLI and service)


def stats_csv(stats: PolicyStats) -> str:
    return (
        "sub,res,uAttr,rAttr,rule,perm\n"
        f"{stats.n_sub},{stats.n_res},{stats.n_uattr},{stats.n_rattr},"
        f"{stats.n_rule},{stats.n_perm}\n"
    )


def coverage_csv(coverage, with_permissions: bool = False) -> str:
    if with_permissions:
        lines = ["rule_index,user,resource,action"]
        for c in coverage:
            lines.extend(f"{c.rule_index},{p.user},{p.resource},{p.action}" for p in c.granted)
    else:
        lines = ["rule_index,count"]
        lines.extend(f"{c.rule_index},{c.granted_count}" for c in coverage)
    return "\n".join(lines) + "\n"


def heatmap_csv(matrix: AttrUsageMatrix) -> str:
    header = ["rule"]
    header.extend(f"u:{a}" for a in matrix.user_attrs)
    header.extend(f"r:{a}" for a in matrix.resource_attrs)
    lines = [",".join(header)]
    for rule_index, row in zip(matrix.rules, matrix.cells):
        lines.append(",".join([str(rule_index)] + [str(v) for v in row]))
    return "\n".join(lines) + "\n"


def resource_access_csv(top, bottom) -> str:
    """Top block then bottom block, each row `resource,distinct_users`."""
    lines = ["resource,distinct_users"]
    lines.extend(f"{p.resource_id},{p.distinct_users}" for p in top)
    lines.extend(f"{p.resource_id},{p.distinct_users}" for p in bottom)
    return "\n".join(lines) + "\n"
