"""Lists of numbers that we pass around and want to display more intelligently
in log files
"""


class TruncatedRepresentationList(list):
    shown = 4

    def __repr__(self):
        if len(self) <= self.shown:
            return "[{}]".format(", ".join("{:.6g}".format(x) for x in self))
        return f"[{self[0]:.6g} ... {self[-1]:.6g} (Total: {len(self)})]"


class SpectrumList(TruncatedRepresentationList):
    """Sorted real eigenvalues."""

    def __init__(self, values=()):
        super().__init__(sorted(float(x) for x in values))


class FunctionalValueList(TruncatedRepresentationList):
    pass
