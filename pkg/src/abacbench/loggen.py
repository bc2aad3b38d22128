"""Synthetic access-log generation with controlled permit ratio and noise.

Entry counts follow a closed-form contract: with nP = rhu(n * permitRatio)
and nD = n - nP (rhu = round half up), exactly rhu(nP * overRate) permit
entries are over-permissions (ground truth deny) and rhu(nD * underRate)
deny entries are under-permissions (ground truth permit).  Sampling and the
final shuffle run on one seeded SplitMix64 stream, so equal (policy,
config) pairs produce byte-identical logs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .engine import all_permissions
from .errors import LogGenError
from .model import Policy
from .prng import SplitMix64

PERMIT = "permit"
DENY = "deny"

LOG_HEADER = "user,resource,action,decision"
TRUTH_HEADER = "user,resource,action,decision,ground_truth"


@dataclass(frozen=True)
class LogConfig:
    n: int
    permit_ratio: float
    over_rate: float = 0.0
    under_rate: float = 0.0
    seed: int = 0
    unique: bool = False  # sample triples without replacement per pool

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError("n must be positive")
        for name in ("permit_ratio", "over_rate", "under_rate"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be within [0, 1], got {v}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class LogEntry:
    user: str
    resource: str
    action: str
    decision: str  # PERMIT | DENY as recorded in the log
    ground_truth: str  # what the policy actually says

    @property
    def noisy(self) -> bool:
        return self.decision != self.ground_truth


def round_half_up(x) -> int:
    """floor(x + 1/2) in exact arithmetic (no float rounding surprises)."""
    return math.floor(Fraction(x) + Fraction(1, 2))


def plan_counts(cfg: LogConfig) -> dict:
    """Closed-form (decision, ground_truth) cell counts for a config."""
    n_permit = round_half_up(cfg.n * Fraction(cfg.permit_ratio))
    n_deny = cfg.n - n_permit
    n_over = round_half_up(n_permit * Fraction(cfg.over_rate))
    n_under = round_half_up(n_deny * Fraction(cfg.under_rate))
    return {
        (PERMIT, PERMIT): n_permit - n_over,
        (PERMIT, DENY): n_over,
        (DENY, PERMIT): n_under,
        (DENY, DENY): n_deny - n_under,
    }


def generate_logs(policy: Policy, cfg: LogConfig) -> list:
    """Generate cfg.n log entries against the policy's permission relation.

    Permitted-ground-truth triples are drawn uniformly from the permission
    relation; denied ones from its complement over users x resources x
    actions.  Raises LogGenError when a required pool is empty or, under
    unique=True, too small.
    """
    counts = plan_counts(cfg)
    need_permitted = counts[(PERMIT, PERMIT)] + counts[(DENY, PERMIT)]
    need_denied = counts[(PERMIT, DENY)] + counts[(DENY, DENY)]

    permitted = sorted(all_permissions(policy))
    universe = len(policy.users) * len(policy.resources) * len(policy.actions)
    denied_size = universe - len(permitted)

    if need_permitted > 0 and not permitted:
        raise LogGenError("policy grants no permissions; cannot draw permitted entries")
    if need_denied > 0 and denied_size == 0:
        raise LogGenError("policy denies nothing; cannot draw denied entries")
    if cfg.unique:
        if need_permitted > len(permitted):
            raise LogGenError(
                f"unique sampling needs {need_permitted} permitted triples, "
                f"pool has {len(permitted)}"
            )
        if need_denied > denied_size:
            raise LogGenError(
                f"unique sampling needs {need_denied} denied triples, pool has {denied_size}"
            )

    rng = SplitMix64(cfg.seed)
    permit_draws = _draw_permitted(rng, permitted, need_permitted, cfg.unique)
    deny_draws = _draw_denied(policy, rng, permitted, need_denied, cfg.unique)

    entries = []
    entries.extend(
        LogEntry(*t, PERMIT, PERMIT) for t in permit_draws[: counts[(PERMIT, PERMIT)]]
    )
    entries.extend(LogEntry(*t, PERMIT, DENY) for t in deny_draws[: counts[(PERMIT, DENY)]])
    entries.extend(
        LogEntry(*t, DENY, PERMIT) for t in permit_draws[counts[(PERMIT, PERMIT)] :]
    )
    entries.extend(LogEntry(*t, DENY, DENY) for t in deny_draws[counts[(PERMIT, DENY)] :])
    rng.shuffle(entries)
    return entries


def _draw_permitted(rng, pool, k, unique):
    if k == 0:
        return []
    if unique:
        return [pool[i] for i in rng.sample_indices(len(pool), k)]
    return [pool[rng.below(len(pool))] for _ in range(k)]


# Give up on rejection sampling for a draw after this many misses and
# materialize the complement instead (permissions nearly cover the universe).
_MAX_REJECTS = 128


def _draw_denied(policy, rng, permitted, k, unique):
    if k == 0:
        return []
    users = [u.id for u in policy.users]
    resources = [r.id for r in policy.resources]
    actions = list(policy.actions)
    granted = set(permitted)

    draws = []
    taken = set()
    complement = None
    for _ in range(k):
        triple = None
        if complement is None:
            for _attempt in range(_MAX_REJECTS):
                candidate = (
                    users[rng.below(len(users))],
                    resources[rng.below(len(resources))],
                    actions[rng.below(len(actions))],
                )
                if candidate in granted or (unique and candidate in taken):
                    continue
                triple = candidate
                break
            if triple is None:
                complement = _materialize_complement(users, resources, actions, granted, taken)
        if complement is not None:
            idx = rng.below(len(complement))
            triple = complement[idx]
            if unique:
                complement.pop(idx)
        if unique:
            taken.add(triple)
        draws.append(triple)
    return draws


def _materialize_complement(users, resources, actions, granted, taken):
    complement = [
        (u, r, a)
        for u in users
        for r in resources
        for a in actions
        if (u, r, a) not in granted and (u, r, a) not in taken
    ]
    if not complement:
        raise LogGenError("denied pool exhausted")
    return complement


def logs_to_csv(entries, with_truth: bool = False) -> str:
    """Render entries as CSV; the truth variant appends a ground_truth column."""
    lines = [TRUTH_HEADER if with_truth else LOG_HEADER]
    for e in entries:
        row = f"{e.user},{e.resource},{e.action},{e.decision}"
        if with_truth:
            row += f",{e.ground_truth}"
        lines.append(row)
    return "\n".join(lines) + "\n"
