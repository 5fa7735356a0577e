"""Exact persistence probabilities of the MA(1) process Z_k = X_k - theta X_(k-1)
with i.i.d. uniform [-a, 1] innovations."""

from .errors import DomainError, PersistError
from .exponents import ExponentKind, ExponentResult, find_exponent
from .model import Params, PersistenceTable, fmt_rational, parse_rational
from .oracles import dp_exact_pn, dp_exact_table, mc_estimate
from .phase_map import Region, classify
from .region_formulas import persistence_series

__all__ = [
    "DomainError", "ExponentKind", "ExponentResult", "Params", "PersistError",
    "PersistenceTable", "Region", "classify", "dp_exact_pn", "dp_exact_table",
    "find_exponent", "fmt_rational", "mc_estimate", "parse_rational", "persistence_series",
]
__version__ = "0.1.0"
