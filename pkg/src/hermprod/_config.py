import os

#: Largest Hermite degree accepted by the evaluators unless overridden.
MAX_DEGREE = 10000

#: Default number of elementary evaluations an enumeration may perform.
DEFAULT_BUDGET = 20_000_000

BUDGET_ENV = "HERMPROD_MAX_BUDGET"


def budget():
    """Enumeration budget, honouring ``HERMPROD_MAX_BUDGET`` when set."""
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw == "":
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV} must be positive, got {value}")
    return value


def check_budget(cost, what="enumeration"):
    from .errors import ResourceError

    limit = budget()
    if cost > limit:
        raise ResourceError(
            f"{what} needs {cost} evaluations, budget is {limit} "
            f"(set {BUDGET_ENV} to raise it)"
        )
