import asyncio
import logging

from properties.generators import GeneratorConfig
from properties.suites import SUITES
from properties.trial_report import aggregate

LOGGER = logging.getLogger(__name__)


class SuiteCoordinator:
    def __init__(self, config, suites=None, concurrency=None):
        self.config = config
        self.suites = dict(SUITES if suites is None else suites)
        self.concurrency = concurrency or len(self.suites) or 1

    def select(self, names):
        """Restrict to the named suites ("all" keeps every suite)."""
        if names in (None, "all") or names == ["all"]:
            return self
        names = [names] if isinstance(names, str) else list(names)
        unknown = sorted(set(names) - set(self.suites))
        if unknown:
            raise KeyError(f"unknown suites {unknown}; known suites: {sorted(self.suites)}")
        return SuiteCoordinator(self.config, {name: self.suites[name] for name in names}, self.concurrency)

    async def run_suite(self, name, semaphore):
        async with semaphore:
            LOGGER.info("suite %s: starting %d trials (seed %d)", name, self.config.trials, self.config.seed)
            report = await asyncio.to_thread(self.suites[name], self.config)
            if report.no_evidence:
                report.notes.append("no evidence: no random checks were run")
            LOGGER.info("suite %s: %s in %.2fs", name, "passed" if report.passed else "FAILED", report.runtime)
            return report

    async def run_all(self):
        """Run the selected suites concurrently; the merged report is ordered by suite name."""
        semaphore = asyncio.Semaphore(self.concurrency)
        reports = await asyncio.gather(*(self.run_suite(name, semaphore) for name in sorted(self.suites)))
        return aggregate(reports, self.config.seed)


def run_all(config=None, names=None):
    """Synchronous entry point: run the (selected) suites and return the aggregate report."""
    config = config or GeneratorConfig()
    return asyncio.run(SuiteCoordinator(config).select(names).run_all())
