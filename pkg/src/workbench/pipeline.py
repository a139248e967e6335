"""
Batch Pipeline
Validates, realizes and classifies registry arrangements and compares each
result with its expected data.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Dict, List, Optional, Sequence

from src.algebra.errors import AlgebraError
from src.incidence.census import validate
from src.incidence.errors import TableError
from src.moduli.classifier import ModuliReport, Verdict, check_degenerations, classify
from src.moduli.errors import EliminationOverflow
from src.moduli.system import ConstraintSystem
from src.realization.errors import InconsistentIncidence, RealizationError
from src.realization.realizer import realize
from src.workbench.config import load_config
from src.workbench.diff import diff_expected
from src.workbench.registry import Registry, RegistryEntry, load_registry
from src.workbench.report import SummaryReport, build_summary

logger = logging.getLogger(__name__)

EXIT_CLEAN = 0
EXIT_MISMATCH = 2
EXIT_FAILURE = 3


@dataclass
class ArrangementReport:
    """
    Outcome for one arrangement.

    Attributes:
        name: Registry name
        family: Group used by the summary
        census: Line census of the table
        grid: Gauge description
        params: Realization parameters
        constraints: Realization constraints in canonical text
        moduli: Classification; None when the arrangement failed
        mismatches: Disagreements with the expected data
        error: Failure message when validation, realization or elimination failed
    """

    name: str
    family: str
    census: Dict = field(default_factory=dict)
    grid: Optional[str] = None
    params: List[str] = field(default_factory=list)
    constraints: List[str] = field(default_factory=list)
    moduli: Optional[ModuliReport] = None
    mismatches: List[str] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def status(self) -> str:
        if self.error is not None:
            return 'error'
        return 'mismatch' if self.mismatches else 'ok'

    @property
    def geometric(self) -> Optional[bool]:
        if self.moduli is None:
            return None
        return self.moduli.verdict is not Verdict.EMPTY

    def to_dict(self) -> Dict:
        return {
            'name': self.name,
            'family': self.family,
            'status': self.status,
            'census': self.census,
            'grid': self.grid,
            'params': list(self.params),
            'constraints': list(self.constraints),
            'geometric': self.geometric,
            'moduli': self.moduli.to_dict() if self.moduli is not None else None,
            'mismatches': list(self.mismatches),
            'error': self.error,
        }


@dataclass
class PipelineResult:
    """Per-arrangement reports in selection order, load failures and the summary."""

    reports: List[ArrangementReport]
    summary: SummaryReport
    failures: Dict[str, str] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        """3 on any load or arrangement failure, else 2 on any mismatch, else 0."""
        if self.failures or any(r.status == 'error' for r in self.reports):
            return EXIT_FAILURE
        if any(r.status == 'mismatch' for r in self.reports):
            return EXIT_MISMATCH
        return EXIT_CLEAN

    def to_dict(self) -> Dict:
        return {
            'exit_code': self.exit_code,
            'arrangements': [r.to_dict() for r in self.reports],
            'failures': dict(sorted(self.failures.items())),
            'summary': self.summary.to_dict(),
        }


def process_entry(entry: RegistryEntry, config: Dict) -> ArrangementReport:
    """
    Run one arrangement through validate, realize, classify and diff.

    An incidence that cannot be realized means the configuration has no
    geometric arrangement, reported as an Empty moduli space. Other failures
    are recorded on the report.

    Args:
        entry: Registry entry
        config: Settings from load_config

    Returns:
        ArrangementReport
    """
    report = ArrangementReport(name=entry.name, family=entry.family)
    table = entry.table
    try:
        report.census = validate(table).as_dict()
        try:
            state = realize(table, entry.grid_hint)
        except InconsistentIncidence as e:
            logger.info(f"{entry.name}: {e}")
            report.moduli = ModuliReport(verdict=Verdict.EMPTY, degeneracy_log=[str(e)])
            system = None
        else:
            report.grid = state.grid.describe(table)
            report.params = list(state.params)
            report.constraints = state.constraint_texts()
            system = ConstraintSystem.from_state(state)
            report.moduli = classify(
                system,
                config['max_degree'],
                verifier=lambda root: check_degenerations(state, table, root),
            )
        report.mismatches = diff_expected(
            report.moduli, entry, system, config['samples'], config['seed'], config['max_degree']
        )
    except (TableError, RealizationError, EliminationOverflow, AlgebraError) as e:
        logger.warning(f"{entry.name} failed: {e}")
        report.error = f"{type(e).__name__}: {e}"
        return report

    for message in report.mismatches:
        logger.warning(f"{entry.name}: {message}")
    logger.info(f"{entry.name}: {report.moduli.verdict.value}, {report.status}")
    return report


def run_pipeline(
    names: Optional[Sequence[str]] = None,
    registry: Optional[Registry] = None,
    config: Optional[Dict] = None,
    workers: int = 1,
) -> PipelineResult:
    """
    Process a selection of registry arrangements.

    Arrangements are independent; with several workers they run in separate
    processes and the reports are merged in selection order.

    Args:
        names: Arrangement names; None selects the whole registry
        registry: Loaded registry; defaults to the configured directory
        config: Settings; defaults to load_config()
        workers: Number of worker processes

    Returns:
        PipelineResult with reports, load failures and the summary

    Raises:
        RegistryError: If the registry directory does not exist
    """
    config = config or load_config()
    registry = registry or load_registry(config['registry'])
    entries, missing = registry.select(names)
    failures = {name: message for name, message in registry.failures.items() if names is None or name in names}
    for name in missing:
        logger.warning(f"{name} is not in the registry")
        failures[name] = 'not in the registry'

    logger.info(f"Processing {len(entries)} arrangements with {workers} workers")
    run = partial(process_entry, config=config)
    if workers > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            reports = list(executor.map(run, entries))
    else:
        reports = [run(entry) for entry in entries]

    summary = build_summary(reports, registry.summary)
    logger.info(f"Pipeline finished: {summary.totals_text()}")
    return PipelineResult(reports=reports, summary=summary, failures=failures)
