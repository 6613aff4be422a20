"""Exception hierarchy shared by all modules."""


class SecrecyError(Exception):
    """Base class for every error raised by this package."""


class RankDeficient(SecrecyError, ValueError):
    pass


class NotHermitian(SecrecyError, ValueError):
    pass


class NotPositiveDefinite(SecrecyError, ValueError):
    pass


class InvalidDistance(SecrecyError, ValueError):
    pass


class InvalidBeam(SecrecyError, ValueError):
    """A beam vector violates the nulling or power constraint of its scheme."""


class TooFewRelays(SecrecyError, ValueError):
    """The scheme needs more relays than the scenario provides."""

    def __init__(self, scheme, required, got):
        self.scheme = scheme
        self.required = required
        self.got = got
        super().__init__(f"{scheme} requires K >= {required} relays, got K = {got}")


class DegenerateChannel(SecrecyError, ValueError):
    pass


class ZeroRelayPower(SecrecyError, ValueError):
    """Amplify-and-forward design was requested with no power left for the relays."""


class ConfigError(SecrecyError, ValueError):
    """Invalid experiment or scenario configuration.

    ``diagnostics`` holds every violation found, not only the first one.
    """

    def __init__(self, diagnostics):
        if isinstance(diagnostics, str):
            diagnostics = [diagnostics]
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))
