"""
Workbench Errors
Exceptions raised while loading the registry and its expected data.
"""


class RegistryError(ValueError):
    """The registry directory is missing or unreadable."""


class ExpectedDataError(RegistryError):
    """An expected.yaml entry is malformed."""

    def __init__(self, name: str, message: str):
        self.name = name
        super().__init__(f"Expected data for {name}: {message}")
