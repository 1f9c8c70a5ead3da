class NotInClass(ValueError):
    """Input graph is not chordal or not claw-free.

    ``reason`` is ``"chordal"`` or ``"claw-free"``; ``witness`` carries the
    claw (center first) when claw-freeness fails.
    """

    def __init__(self, message, reason=None, witness=None, which=None):
        super().__init__(message)
        self.reason = reason
        self.witness = witness
        self.which = which


class NotConnected(ValueError):
    pass


class StructuralError(RuntimeError):
    """A computed structure violated a property that holds on the graph class."""


class WitnessError(RuntimeError):
    """The isomorphism witness failed its own verification (an implementation bug)."""


class ParseError(ValueError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line
