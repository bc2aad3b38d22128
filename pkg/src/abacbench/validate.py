"""Policy validation: warnings, never errors."""

from __future__ import annotations

from .model import Diagnostic, Policy

UNDECLARED_ATTRIBUTE = "undeclared-attribute"
MISSING_ATTRIBUTE = "missing-attribute"
ZERO_PERMISSION_RULE = "zero-permission-rule"


def validate_policy(policy: Policy, deep: bool = False) -> list:
    """Collect diagnostics for a parsed policy.

    Reported kinds:
      undeclared-attribute: a rule references an attribute no entity of the
        matching kind declares;
      missing-attribute: an entity lacks an attribute that rules reference
        on its side (such entities simply never match those conditions);
      zero-permission-rule (deep only): a rule grants no permission over
        the policy's object model.
    """
    diags: list = []
    declared_user = set(policy.user_attr_names)
    declared_res = set(policy.resource_attr_names)

    referenced_user: set = set()
    referenced_res: set = set()
    for rule in policy.rules:
        for attr in sorted(rule.mentioned_user_attrs()):
            referenced_user.add(attr)
            if attr not in declared_user:
                diags.append(
                    Diagnostic(
                        UNDECLARED_ATTRIBUTE,
                        f"rule {rule.index} references user attribute {attr!r} "
                        "declared by no user",
                        rule_index=rule.index,
                        attr=attr,
                    )
                )
        for attr in sorted(rule.mentioned_resource_attrs()):
            referenced_res.add(attr)
            if attr not in declared_res:
                diags.append(
                    Diagnostic(
                        UNDECLARED_ATTRIBUTE,
                        f"rule {rule.index} references resource attribute {attr!r} "
                        "declared by no resource",
                        rule_index=rule.index,
                        attr=attr,
                    )
                )

    for entities, referenced in (
        (policy.users, referenced_user),
        (policy.resources, referenced_res),
    ):
        for entity in entities:
            for attr in sorted(referenced):
                if attr not in entity.attrs:
                    diags.append(
                        Diagnostic(
                            MISSING_ATTRIBUTE,
                            f"{entity.kind} {entity.id!r} lacks attribute {attr!r} "
                            "referenced by rules",
                            entity_id=entity.id,
                            attr=attr,
                        )
                    )

    if deep:
        from .engine import rule_permissions

        for rule in policy.rules:
            if not rule_permissions(policy, rule):
                diags.append(
                    Diagnostic(
                        ZERO_PERMISSION_RULE,
                        f"rule {rule.index} grants no permissions",
                        rule_index=rule.index,
                    )
                )
    return diags
