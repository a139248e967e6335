"""
Moduli Errors
Exceptions raised while reducing and classifying constraint systems.
"""


class EliminationOverflow(ValueError):
    """An intermediate resultant exceeds the degree cap."""

    def __init__(self, var: str, degree: int, cap: int):
        self.var = var
        self.degree = degree
        self.cap = cap
        super().__init__(f"Eliminating {var} produced degree {degree}, above the cap of {cap}")
