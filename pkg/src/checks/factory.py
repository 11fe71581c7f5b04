"""
Check Factory for creating checks with proper logging
"""
from typing import Dict, List

from src.checks import clebsch_checks, diffalg_checks, doubles_checks, lie_checks, poisson_checks, yang_baxter_checks  # noqa: F401
from src.checks.base import CATALOG, BaseCheck
from src.logging.decision_logger import DecisionLogger

MODULE_ORDER = ("exact_core", "yang_baxter", "lie_core", "poisson_poly", "clebsch", "doubles", "diff_alg")


def catalog() -> Dict[str, type]:
    """Every registered check, grouped by module and then by registration order"""
    ordered = sorted(CATALOG.values(), key=lambda cls: MODULE_ORDER.index(cls.module))
    return {cls.name: cls for cls in ordered}


def create_check(name: str, logger: DecisionLogger) -> BaseCheck:
    """
    Create a single check by name

    Raises:
        ValueError: If the name is not in the catalog
    """
    if name not in CATALOG:
        raise ValueError(f"Unknown check: {name}")
    return CATALOG[name](logger)


def create_checks(names: List[str], logger: DecisionLogger) -> Dict[str, BaseCheck]:
    """Create several checks sharing one logger"""
    return {name: create_check(name, logger) for name in names}
