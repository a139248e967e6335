"""
Enumeration Errors
Exceptions raised by table generation and registry matching.
"""

from typing import Dict, List, Optional


class InfeasibleCensus(ValueError):
    """No line census satisfies the counting identities for (k, n3)."""

    def __init__(self, k: int, n3: int):
        self.k = k
        self.n3 = n3
        super().__init__(f"No line census exists for k={k}, n3={n3}")


class CountMismatch(ValueError):
    """Enumerated classes and registry tables do not pair up."""

    def __init__(self, unmatched_classes: List, unmatched_names: List[str], matched: Optional[Dict] = None):
        self.unmatched_classes = unmatched_classes
        self.unmatched_names = unmatched_names
        self.matched = matched or {}
        super().__init__(
            f"{len(unmatched_classes)} enumerated classes without a registry table, "
            f"registry tables without a class: {unmatched_names}"
        )
