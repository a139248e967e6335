"""
Summary Report
Aggregates arrangement outcomes into per-family counts and puts them beside
the published aggregate table.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

logger = logging.getLogger(__name__)

COUNT_COLUMNS = [
    'combinatorial',
    'non_geometric',
    'geometric',
    'zariski',
    'irreducible_or_conjugate',
    'unresolved',
]
TOTAL_LABEL = 'Total'


@dataclass
class SummaryRow:
    """
    Counts over a set of families.

    combinatorial = non_geometric + geometric + unresolved, where unresolved
    counts arrangements that failed before a verdict.
    """

    label: str
    families: Tuple[str, ...]
    combinatorial: int = 0
    non_geometric: int = 0
    geometric: int = 0
    zariski: int = 0
    irreducible_or_conjugate: int = 0
    unresolved: int = 0

    def add(self, report):
        self.combinatorial += 1
        if report.geometric is None:
            self.unresolved += 1
        elif not report.geometric:
            self.non_geometric += 1
        else:
            self.geometric += 1
            if report.moduli.zariski_flag:
                self.zariski += 1
            else:
                self.irreducible_or_conjugate += 1

    def counts(self) -> Dict[str, int]:
        return {column: getattr(self, column) for column in COUNT_COLUMNS}


@dataclass
class SummaryReport:
    """
    Summary rows with the published rows and notes.

    Attributes:
        rows: Measured rows, in the order of the published table
        expected_rows: Published rows: label plus count columns
        notes: Published discrepancies and measured disagreements
        zariski_names: Arrangements with the potential Zariski flag
        non_geometric_names: Arrangements with an empty moduli space
    """

    rows: List[SummaryRow] = field(default_factory=list)
    expected_rows: List[Dict] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    zariski_names: List[str] = field(default_factory=list)
    non_geometric_names: List[str] = field(default_factory=list)

    def row(self, label: str) -> SummaryRow:
        for row in self.rows:
            if row.label == label:
                return row
        raise KeyError(f"No summary row {label}")

    def to_dataframe(self) -> pd.DataFrame:
        """Measured counts, one row per label."""
        df = pd.DataFrame(
            [{'row': row.label, **row.counts()} for row in self.rows],
            columns=['row'] + COUNT_COLUMNS,
        )
        return df.set_index('row')

    def expected_dataframe(self) -> pd.DataFrame:
        df = pd.DataFrame(
            [{'row': r['label'], **{c: r.get(c, 0) for c in COUNT_COLUMNS}} for r in self.expected_rows],
            columns=['row'] + COUNT_COLUMNS,
        )
        return df.set_index('row')

    def compare_with_expected(self) -> pd.DataFrame:
        """
        Measured and published counts side by side.

        Returns:
            DataFrame indexed by row label with each count column, its
            '<column>_expected' partner and a boolean 'match'; rows missing on
            either side are dropped
        """
        measured = self.to_dataframe()
        expected = self.expected_dataframe()
        if measured.empty or expected.empty:
            return pd.DataFrame(columns=COUNT_COLUMNS + [f"{c}_expected" for c in COUNT_COLUMNS] + ['match'])
        merged = measured.join(expected, how='inner', rsuffix='_expected')
        merged['match'] = pd.concat(
            [merged[c] == merged[f"{c}_expected"] for c in COUNT_COLUMNS], axis=1
        ).all(axis=1)
        return merged

    def discrepancies(self) -> List[str]:
        comparison = self.compare_with_expected()
        messages = []
        for label, row in comparison[~comparison['match'].astype(bool)].iterrows():
            diffs = [
                f"{c} {row[c]} vs {row[f'{c}_expected']}"
                for c in COUNT_COLUMNS if row[c] != row[f"{c}_expected"]
            ]
            messages.append(f"row {label}: measured vs published: {', '.join(diffs)}")
        return messages

    def totals_text(self) -> str:
        try:
            total = self.row(TOTAL_LABEL)
        except KeyError:
            return f"{len(self.rows)} summary rows"
        return (
            f"{total.combinatorial} combinatorial, {total.geometric} geometric, "
            f"{total.non_geometric} non-geometric, {total.zariski} flagged"
        )

    def to_dict(self) -> Dict:
        return {
            'rows': [{'label': row.label, **row.counts()} for row in self.rows],
            'zariski': list(self.zariski_names),
            'non_geometric': list(self.non_geometric_names),
            'notes': list(self.notes),
        }


def _row_layouts(reports: Sequence, layout: Dict) -> List[Dict]:
    if layout.get('rows'):
        return list(layout['rows'])
    families: List[str] = []
    for report in reports:
        if report.family not in families:
            families.append(report.family)
    rows = [{'label': family, 'families': [family]} for family in families]
    return rows + [{'label': TOTAL_LABEL, 'families': families}]


def build_summary(reports: Sequence, layout: Optional[Dict] = None) -> SummaryReport:
    """
    Aggregate arrangement reports.

    Args:
        reports: ArrangementReport objects
        layout: The summary section of expected.yaml: 'rows' (label, families
            and published counts) and 'notes'; without rows every family gets
            a row plus a total

    Returns:
        SummaryReport; rows whose families have no report are left out
    """
    layout = layout or {}
    summary = SummaryReport(notes=list(layout.get('notes') or []))
    for row_layout in _row_layouts(reports, layout):
        families = tuple(row_layout['families'])
        members = [r for r in reports if r.family in families]
        if not members:
            continue
        row = SummaryRow(label=str(row_layout['label']), families=families)
        for report in members:
            row.add(report)
        summary.rows.append(row)
        if any(c in row_layout for c in COUNT_COLUMNS):
            summary.expected_rows.append({'label': row.label, **{c: row_layout.get(c, 0) for c in COUNT_COLUMNS}})

    counted = {family for row in summary.rows for family in row.families}
    for report in reports:
        if report.family not in counted or report.moduli is None:
            continue
        if report.geometric is False:
            summary.non_geometric_names.append(report.name)
        elif report.moduli.zariski_flag:
            summary.zariski_names.append(report.name)

    for message in summary.discrepancies():
        logger.warning(message)
        summary.notes.append(message)
    return summary
