#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Verification scheduler
Runs the registered suites concurrently in worker threads and aggregates their checks.
"""

import asyncio
import sys
from datetime import datetime
from typing import Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel
from tabulate import tabulate

import config
from hecke import utils
from hecke.constants import SCHEDULER_CONFIG
from verification.registry import SuiteKind, get_global_registry

logger = utils.setup_logger()


class CheckResult(BaseModel):
    check: str
    model: str = "-"
    cases: int
    failures: int
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0


class SuiteOutcome(BaseModel):
    key: str
    name: str
    priority: int
    checks: List[CheckResult]

    @property
    def failures(self) -> int:
        return sum(c.failures for c in self.checks)


class VerificationReport(BaseModel):
    seed: int
    suites: List[SuiteOutcome]

    @property
    def checks(self) -> List[CheckResult]:
        return [c for s in self.suites for c in s.checks]

    @property
    def failures(self) -> int:
        return sum(s.failures for s in self.suites)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "failures": self.failures,
            "checks": [c.model_dump() for c in self.checks],
        }


class SuiteScheduler:
    """Verification scheduler"""

    def __init__(self, seed: int = None, max_concurrent: int = None, suite_delay: float = None):
        self.seed = config.settings.DEFAULT_SEED if seed is None else seed
        self.max_concurrent = max_concurrent or config.settings.HECKE_LAB_THREADS or SCHEDULER_CONFIG['max_concurrent']
        self.suite_delay = SCHEDULER_CONFIG['suite_delay'] if suite_delay is None else suite_delay
        self.registry = get_global_registry()
        self.results = {
            'total_suites': 0,
            'success_suites': 0,
            'failed_suites': 0,
            'suites': [],
        }

    async def run_suite_with_tracking(self, info: Dict, runner: Callable) -> SuiteOutcome:
        """Run one suite in a worker thread; an exception becomes a failed check"""
        self.results['total_suites'] += 1
        logger.info(f"🎯 Starting {info['name']}...")
        start_time = datetime.now()
        try:
            checks = await asyncio.to_thread(runner, self.seed)
        except Exception as e:
            logger.error(f"❌ {info['name']} raised: {e}")
            checks = [CheckResult(check=f"{info['key']}.error", cases=1, failures=1, detail=f"{type(e).__name__}: {e}")]
        duration = (datetime.now() - start_time).total_seconds()

        outcome = SuiteOutcome(key=info['key'], name=info['name'], priority=info['priority'], checks=checks)
        if outcome.failures:
            self.results['failed_suites'] += 1
            for check in checks:
                if check.failures:
                    logger.error(f"❌ {check.check} [{check.model}]: {check.failures}/{check.cases} failed {check.detail}")
        else:
            self.results['success_suites'] += 1
            logger.info(f"✅ {info['name']} completed in {duration:.2f}s")
        self.results['suites'].append({'key': info['key'], 'name': info['name'], 'duration': duration})
        return outcome

    async def run_all(self, kinds: Optional[Sequence[SuiteKind]] = None) -> VerificationReport:
        """Run every enabled suite of the given kinds (all kinds by default)"""
        suites = self.registry.get_all_suites(enabled_only=True)
        if kinds:
            suites = [s for s in suites if s['kind'] in kinds]

        logger.info("=" * 80)
        logger.info(f"📊 Running {len(suites)} suites (max concurrent: {self.max_concurrent}, seed: {self.seed})")
        logger.info("=" * 80)

        semaphore = asyncio.Semaphore(self.max_concurrent)

        async def run_with_semaphore(info: Dict, runner: Callable) -> SuiteOutcome:
            async with semaphore:
                outcome = await self.run_suite_with_tracking(info, runner)
                if self.suite_delay:
                    await asyncio.sleep(self.suite_delay)
                return outcome

        tasks = []
        for info in suites:
            runner = self.registry.get_suite_runner(info['key'])
            if not runner:
                logger.warning(f"No runner found for {info['key']}, skipping")
                continue
            tasks.append(run_with_semaphore(info, runner))

        outcomes = list(await asyncio.gather(*tasks)) if tasks else []
        outcomes.sort(key=lambda o: (o.priority, o.key))
        return VerificationReport(seed=self.seed, suites=outcomes)


def print_summary(report: VerificationReport, stream=None):
    """Table of every check on stderr"""
    stream = stream or sys.stderr
    rows = [
        [c.check, c.model, c.cases, c.failures, "PASS" if c.passed else "FAIL"]
        for c in report.checks
    ]
    print(tabulate(rows, headers=["check", "model", "cases", "failures", "status"], tablefmt="github"), file=stream)
    print(f"total failures: {report.failures}", file=stream)


async def run_all_suites(seed: int = None, kinds: Optional[Sequence[SuiteKind]] = None) -> VerificationReport:
    scheduler = SuiteScheduler(seed=seed)
    return await scheduler.run_all(kinds)
