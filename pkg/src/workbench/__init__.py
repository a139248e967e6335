"""
Workbench Module
Registry, batch pipeline, expected-data comparison, summary and command line.
"""

from src.workbench.config import load_config
from src.workbench.errors import ExpectedDataError, RegistryError
from src.workbench.registry import (
    Registry,
    RegistryEntry,
    load_expected,
    load_registry,
    normalize_expected,
)
from src.workbench.report import SummaryReport, SummaryRow, build_summary
from src.workbench.diff import compare_solution_sets, diff_expected
from src.workbench.pipeline import (
    EXIT_CLEAN,
    EXIT_FAILURE,
    EXIT_MISMATCH,
    ArrangementReport,
    PipelineResult,
    process_entry,
    run_pipeline,
)

__all__ = [
    'load_config',
    'ExpectedDataError',
    'RegistryError',
    'Registry',
    'RegistryEntry',
    'load_expected',
    'load_registry',
    'normalize_expected',
    'SummaryReport',
    'SummaryRow',
    'build_summary',
    'compare_solution_sets',
    'diff_expected',
    'EXIT_CLEAN',
    'EXIT_FAILURE',
    'EXIT_MISMATCH',
    'ArrangementReport',
    'PipelineResult',
    'process_entry',
    'run_pipeline',
]
