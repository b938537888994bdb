#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Suite registry
Keeps every acceptance suite declared in hecke.constants.SUITE_CONFIGS and imports runners lazily.
"""

import importlib
from enum import Enum
from typing import Callable, Dict, List, Optional

from hecke import utils
from hecke.constants import SUITE_CONFIGS

logger = utils.setup_logger()


class SuiteKind(Enum):
    """How a suite computes"""
    EXACT = "exact"  # exact integer / rational arithmetic
    FINITE = "finite"  # finite-group operator models
    NUMERIC = "numeric"  # floating geometry


class SuiteRegistry:
    """Registry of verification suites"""

    def __init__(self):
        self._suites: Dict[str, Dict] = {}

    def register(
        self,
        key: str,
        name: str,
        kind: SuiteKind = SuiteKind.EXACT,
        enabled: bool = True,
        priority: int = 5,
        description: str = "",
        module_path: str = None,
        runner_name: str = None,
        runner: Callable = None,
    ):
        """
        Register a suite

        Args:
            key: unique suite id
            name: display name
            kind: suite kind
            enabled: whether run_all picks it up
            priority: 1-10, lower runs first
            description: one-line summary
            module_path: module holding the runner (imported on demand)
            runner_name: runner function name inside module_path
            runner: runner callable, bypassing the import
        """
        self._suites[key] = {
            'key': key,
            'name': name,
            'kind': kind,
            'enabled': enabled,
            'priority': priority,
            'description': description,
            'module_path': module_path,
            'runner_name': runner_name,
            'runner': runner,
        }
        logger.debug(f"Registered suite: {name} ({key})")

    def get_suite(self, key: str) -> Optional[Dict]:
        return self._suites.get(key)

    def get_all_suites(self, enabled_only: bool = True) -> List[Dict]:
        suites = list(self._suites.values())
        if enabled_only:
            suites = [s for s in suites if s.get('enabled', True)]
        suites.sort(key=lambda s: (s.get('priority', 999), s['key']))
        return suites

    def get_suites_by_kind(self, kind: SuiteKind, enabled_only: bool = True) -> List[Dict]:
        return [s for s in self.get_all_suites(enabled_only) if s.get('kind') == kind]

    def get_suite_runner(self, key: str) -> Optional[Callable]:
        """Runner of a suite (imported on first use)"""
        info = self.get_suite(key)
        if not info:
            logger.error(f"Suite {key} not found")
            return None

        if info.get('runner'):
            return info['runner']

        module_path = info.get('module_path')
        runner_name = info.get('runner_name')
        if not module_path or not runner_name:
            logger.error(f"Suite {key} missing module_path or runner_name")
            return None

        try:
            module = importlib.import_module(module_path)
            runner = getattr(module, runner_name)
            info['runner'] = runner
            return runner
        except (ImportError, AttributeError) as e:
            logger.error(f"Failed to import runner {runner_name} from {module_path}: {e}")
            return None

    def list_suites(self):
        """Log every registered suite"""
        logger.info("=" * 80)
        logger.info("📋 Registered verification suites")
        logger.info("=" * 80)

        for kind in SuiteKind:
            suites = self.get_suites_by_kind(kind, enabled_only=False)
            if suites:
                logger.info(f"🔹 {kind.value.upper()}:")
                for s in suites:
                    status = "✅" if s.get('enabled') else "❌"
                    logger.info(f"  {status} {s['name']:25} ({s['key']:12}) - Priority: {s['priority']}")

        enabled_count = len(self.get_all_suites(enabled_only=True))
        logger.info("=" * 80)
        logger.info(f"Total: {len(self._suites)} suites, {enabled_count} enabled")
        logger.info("=" * 80)


_global_registry = None


def get_global_registry() -> SuiteRegistry:
    global _global_registry
    if _global_registry is None:
        _global_registry = SuiteRegistry()
        _register_all_suites(_global_registry)
    return _global_registry


def _register_all_suites(registry: SuiteRegistry):
    """Register every suite of SUITE_CONFIGS"""
    for config in SUITE_CONFIGS:
        registry.register(
            key=config['key'],
            name=config['name'],
            kind=SuiteKind(config.get('kind', 'exact')),
            enabled=config.get('enabled', True),
            priority=config.get('priority', 5),
            description=config.get('description', ''),
            module_path=config.get('module'),
            runner_name=config.get('runner'),
        )
    logger.debug(f"Registered {len(registry.get_all_suites(enabled_only=False))} suites")
