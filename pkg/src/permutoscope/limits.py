"""Size guards for constructions whose size grows like n!."""

import os

DEFAULT_MAX_N = 7
ENV_MAX_N = "PERMUTOSCOPE_MAX_N"


class SizeGuardError(ValueError):
    """Raised when a construction would exceed the configured size limit."""


def max_n():
    value = os.environ.get(ENV_MAX_N)
    if value is None or value.strip() == "":
        return DEFAULT_MAX_N
    try:
        return int(value)
    except ValueError:
        raise SizeGuardError(f"{ENV_MAX_N} must be an integer, got {value!r}") from None


def check_n(n, what, force_large=False):
    if force_large:
        return
    limit = max_n()
    if n > limit:
        raise SizeGuardError(
            f"{what}: n={n} exceeds the size guard n<={limit} "
            f"(set {ENV_MAX_N} or pass force_large)"
        )
