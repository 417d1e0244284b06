"""Topological and motivic zeta functions of suspended singularities."""

from .models import ResolutionData, StratumProfile, SuspensionParams, ZetaBundle
from .suspension import (
    suspend_F_twisted,
    suspend_F_untwisted,
    suspend_G,
    suspension_matrix_identity,
)
from .symbolic import MotivicExpression, RationalFunction
from .zeta import (
    resolution_topological,
    stratum_naive_motivic,
    stratum_topological,
    stratum_twisted_topological,
)

__all__ = [
    "MotivicExpression",
    "RationalFunction",
    "ResolutionData",
    "StratumProfile",
    "SuspensionParams",
    "ZetaBundle",
    "resolution_topological",
    "stratum_naive_motivic",
    "stratum_topological",
    "stratum_twisted_topological",
    "suspend_F_twisted",
    "suspend_F_untwisted",
    "suspend_G",
    "suspension_matrix_identity",
]
