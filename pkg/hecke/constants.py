#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Verification constants
Acceptance parameters and the suite table consumed by the verification registry.
"""

from typing import Dict, List

# Primes used by the coset-count and structure-constant checks
COSET_COUNT_PRIMES = [2, 3, 5, 7, 11]
STRUCTURE_CONSTANT_PRIMES = [2, 3, 5]
STRUCTURE_CONSTANT_MAX_N = 3
UNIMODULAR_ENTRY_BOUND = 50

# Radial cross-check ranges
RADIAL_PRIMES = [2, 3]
RADIAL_MAX_N = 6
TREE_DEGREES = [3, 4, 5, 6]
TREE_WALK_MAX_N = 10

# q-expansions
DELTA_EIGENVALUES = {2: -24, 3: 252, 5: 4830}
HECKE_RELATION_PRIMES = [2, 3]

# Hyperbolic suite
PARTITION_SAMPLES = 25
PARTITION_MAX_INDEX = 9
GRAM_SUBSETS = 30
GRAM_SUBSET_SIZE = 5
GRAM_MAX_INDEX = 4

# Criterion suite
CRITERION_PRIME = 2
CRITERION_NMAX = 6

SCHEDULER_CONFIG = {
    'max_concurrent': 4,  # overridden by HECKE_LAB_THREADS
    'suite_delay': 0,  # seconds between suite launches
}

# Suite table (registered by verification.registry)
SUITE_CONFIGS: List[Dict] = [
    {
        'key': 'cosets',
        'name': 'Coset engine',
        'module': 'verification.suites',
        'runner': 'run_cosets_suite',
        'kind': 'exact',
        'enabled': True,
        'priority': 1,
        'description': 'coset counts, structure constants, unimodularity',
    },
    {
        'key': 'radial',
        'name': 'Radial moments',
        'module': 'verification.suites',
        'runner': 'run_radial_suite',
        'kind': 'exact',
        'enabled': True,
        'priority': 1,
        'description': 'Kesten moments against tree walks and Hecke powers',
    },
    {
        'key': 'qexp',
        'name': 'q-expansions',
        'module': 'verification.suites',
        'runner': 'run_qexp_suite',
        'kind': 'exact',
        'enabled': True,
        'priority': 1,
        'description': 'Hecke eigenvalues of Delta',
    },
    {
        'key': 'criterion',
        'name': 'Radial criterion',
        'module': 'verification.suites',
        'runner': 'run_criterion_suite',
        'kind': 'exact',
        'enabled': True,
        'priority': 2,
        'description': 'moment criterion with scaled and perturbed controls',
    },
    {
        'key': 'finite',
        'name': 'Finite models',
        'module': 'verification.suites',
        'runner': 'run_finite_suite',
        'kind': 'finite',
        'enabled': True,
        'priority': 2,
        'description': 'operator series identities on permutation-group models',
    },
    {
        'key': 'hyperbolic',
        'name': 'Hyperbolic geometry',
        'module': 'verification.suites',
        'runner': 'run_hyperbolic_suite',
        'kind': 'numeric',
        'enabled': True,
        'priority': 3,
        'description': 'areas, phi0 partition of unity and Gram positivity',
    },
]
