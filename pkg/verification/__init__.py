#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Verification Module
Suite registry and scheduler
"""

from verification.registry import SuiteKind, SuiteRegistry, get_global_registry
from verification.scheduler import CheckResult, SuiteScheduler, VerificationReport, print_summary, run_all_suites

__all__ = [
    'SuiteKind',
    'SuiteRegistry',
    'get_global_registry',
    'CheckResult',
    'SuiteScheduler',
    'VerificationReport',
    'print_summary',
    'run_all_suites',
]
