#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Hecke Module
Exact PGL2(Q) arithmetic, coset decompositions, radial moments and q-expansions
"""

from hecke.errors import (
    CapExceededError,
    ConsistencyError,
    HeckeLabError,
    NotInvertibleError,
    PreconditionError,
)
from hecke.exact_core import ProjectiveMatrix
from hecke.coset_engine import DoubleCoset, decompose, hecke_product
from hecke.utils import setup_logger

__all__ = [
    # errors
    'HeckeLabError',
    'PreconditionError',
    'NotInvertibleError',
    'CapExceededError',
    'ConsistencyError',

    # algebra
    'ProjectiveMatrix',
    'DoubleCoset',
    'decompose',
    'hecke_product',

    'setup_logger',
]

__version__ = '1.0.0'
