"""Errors shared across the workbench."""


class PresentationError(ValueError):
    """A finite presentation is malformed or references unknown ids."""


class UniverseMismatch(PresentationError):
    """Values drawn from different point universes were combined."""


class ParseError(PresentationError):
    """A file could not be parsed into an entity; carries the field path."""

    def __init__(self, message: str, path: tuple = ()):
        self.path = tuple(str(p) for p in path)
        where = "/".join(self.path)
        super().__init__(f"{where}: {message}" if where else message)
