"""Size caps for exhaustive enumerations.

``STACKED_SR_MAX_SIZE`` in the environment overrides every default cap.
"""

import os

ENV_VAR = "STACKED_SR_MAX_SIZE"


class CapExceeded(ValueError):
    pass


def cap(default):
    raw = os.environ.get(ENV_VAR)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{ENV_VAR} must be at least 1")
    return value


def check(size, default, what):
    limit = cap(default)
    if size > limit:
        raise CapExceeded(f"{what} {size} exceeds cap {limit} (set {ENV_VAR} to raise it)")
