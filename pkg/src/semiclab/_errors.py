"""Error signals shared across modules.

Numerical-error signals carry a short kebab-case name (e.g. "empty-shell",
"not-admissible") so the CLI can map them to a dedicated exit code;
everything else raises plain ValueError/TypeError as usual.
"""


class NumericalSignal(ValueError):
    """A named numerical-error signal raised by library operations."""

    def __init__(self, signal, message=""):
        self.signal = signal
        text = signal if not message else f"{signal}: {message}"
        super().__init__(text)
