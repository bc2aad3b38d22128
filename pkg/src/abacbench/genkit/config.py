"""Generator configuration: seed plus named size controls."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import AbacError


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    size_controls: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        for name, value in self.size_controls.items():
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"size control {name!r} must be a non-negative integer")

    def control(self, name: str, default: int) -> int:
        return self.size_controls.get(name, default)


def resolve_controls(cfg: GenConfig, defaults: dict) -> dict:
    """Merge cfg over defaults; unknown control names are rejected."""
    unknown = set(cfg.size_controls) - set(defaults)
    if unknown:
        raise AbacError(
            f"unknown size controls: {', '.join(sorted(unknown))} "
            f"(expected any of: {', '.join(sorted(defaults))})"
        )
    return {name: cfg.control(name, default) for name, default in defaults.items()}


def parse_config_file(text: str) -> GenConfig:
    """Parse `key=value` generator config text.

    One assignment per line; `#` comments and blank lines are ignored.
    `seed` is the PRNG seed; every other key is a size control.
    """
    seed = 0
    controls: dict = {}
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise AbacError(f"config line {line_no}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        try:
            number = int(value)
        except ValueError:
            raise AbacError(f"config line {line_no}: {key!r} must be an integer") from None
        if key == "seed":
            seed = number
        else:
            controls[key] = number
    try:
        return GenConfig(seed=seed, size_controls=controls)
    except ValueError as exc:
        raise AbacError(str(exc)) from None
