"""Triangle and edge quadrature."""

from .rules import (
    MAX_DEGREE,
    edge_rule,
    edge_rule_for_degree,
    exactness_error,
    integrate_on_element,
    monomial_integral,
    rule_for_degree,
)

__all__ = [
    "MAX_DEGREE",
    "edge_rule",
    "edge_rule_for_degree",
    "exactness_error",
    "integrate_on_element",
    "monomial_integral",
    "rule_for_degree",
]
