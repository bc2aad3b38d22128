"""ABAC policy workbench.

Parse `.abac` policies, evaluate access decisions, analyze rules and
attribute usage, generate seeded synthetic access logs, and build
size-controlled benchmark datasets.
"""

from .analytics import (
    AttrUsageMatrix,
    PolicyStats,
    ResourceAccessProfile,
    RuleCoverage,
    attribute_usage,
    external_rule_coverage,
    resource_access,
    rule_coverage,
    statistics,
)
from .engine import (
    Decision,
    Permission,
    all_permissions,
    check_requests_csv,
    evaluate,
    query,
    satisfies,
)
from .errors import (
    AbacError,
    CorruptInputError,
    ExchangeError,
    LogGenError,
    PolicyParseError,
    SchemaError,
    UnknownEntityError,
    VersionError,
)
from .exchange import export_canonical, import_canonical, to_csv
from .loggen import LogConfig, LogEntry, generate_logs, logs_to_csv
from .model import (
    Conjunct,
    ConjunctOp,
    Constraint,
    ConstraintOp,
    Diagnostic,
    Entity,
    Policy,
    Rule,
)
from .parser import parse_policy, parse_rules, serialize_policy, serialize_rules
from .validate import validate_policy

__version__ = "0.1.0"

__all__ = [
    "AbacError",
    "AttrUsageMatrix",
    "Conjunct",
    "ConjunctOp",
    "Constraint",
    "ConstraintOp",
    "CorruptInputError",
    "Decision",
    "Diagnostic",
    "Entity",
    "ExchangeError",
    "LogConfig",
    "LogEntry",
    "LogGenError",
    "Permission",
    "Policy",
    "PolicyParseError",
    "PolicyStats",
    "ResourceAccessProfile",
    "Rule",
    "RuleCoverage",
    "SchemaError",
    "UnknownEntityError",
    "VersionError",
    "all_permissions",
    "attribute_usage",
    "check_requests_csv",
    "evaluate",
    "export_canonical",
    "external_rule_coverage",
    "generate_logs",
    "import_canonical",
    "logs_to_csv",
    "parse_policy",
    "parse_rules",
    "query",
    "resource_access",
    "rule_coverage",
    "satisfies",
    "serialize_policy",
    "serialize_rules",
    "statistics",
    "to_csv",
    "validate_policy",
]
