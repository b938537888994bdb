# -*- coding: utf-8 -*-
"""
Operator models over finite groups: Koopman spaces, operator-coefficient series, expectations.
"""

from operators.finite_model import FiniteModel, KoopmanSpace, builtin_model, resolve_model
from operators.series import OperatorSeries

__all__ = ['FiniteModel', 'KoopmanSpace', 'builtin_model', 'resolve_model', 'OperatorSeries']
