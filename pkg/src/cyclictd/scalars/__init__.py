"""Exact scalar tower: Q(i) -> Laurent/rational functions in s -> roots of unity."""

from .gaussian import GaussianRational, rational_sqrt
from .laurent import LaurentPoly
from .ratfun import RatFun
from .cyclotomic import Cyclotomic, cyclotomic_poly, euler_phi
from .rings import (
    Ring,
    RationalField,
    GaussianField,
    RatFunField,
    CyclotomicField,
    QQ,
    QI,
    QS,
    cyclotomic_field,
)
from .sympoly import SymPoly, SymPolyRing
from .qnumbers import q_number, q_factorial, q_binomial
from .series import (
    BranchPolicy,
    EpsSeries,
    PhasedRatFun,
    default_series_order,
    limit_at_root,
    require_concrete,
    series_of_laurent,
    series_of_phased,
    series_of_ratfun,
    value_at_root,
)
from .grammar import (
    parse_scalar,
    parse_cyclotomic,
    format_laurent,
    format_ratfun,
    format_cyclotomic,
    ScalarSyntaxError,
)

__all__ = [
    "GaussianRational",
    "LaurentPoly",
    "RatFun",
    "Cyclotomic",
    "SymPoly",
    "SymPolyRing",
    "Ring",
    "RationalField",
    "GaussianField",
    "RatFunField",
    "CyclotomicField",
    "QQ",
    "QI",
    "QS",
    "cyclotomic_field",
    "cyclotomic_poly",
    "euler_phi",
    "q_number",
    "q_factorial",
    "q_binomial",
    "BranchPolicy",
    "EpsSeries",
    "PhasedRatFun",
    "default_series_order",
    "limit_at_root",
    "require_concrete",
    "series_of_laurent",
    "series_of_phased",
    "series_of_ratfun",
    "value_at_root",
    "parse_scalar",
    "parse_cyclotomic",
    "format_laurent",
    "format_ratfun",
    "format_cyclotomic",
    "ScalarSyntaxError",
    "rational_sqrt",
]
