"""Exception types shared across the laboratory."""


class ProbelabError(Exception):
    """Base class for every probelab error."""


class ProtocolViolation(ProbelabError):
    """A cell was written without being read immediately before."""


class NestedInterval(ProbelabError):
    """set_interval was called while another interval is active."""


class InvalidInterval(ProbelabError):
    """end_interval was called with no interval active."""


class UnknownSnapshot(ProbelabError):
    """restore was given an id this arena does not hold."""


class OutOfRange(ProbelabError):
    """Element or node id outside the structure's universe."""


class NotARoot(ProbelabError):
    pass


class SameSet(ProbelabError):
    pass


class SelfLink(ProbelabError):
    pass


class ForestViolation(ProbelabError):
    pass


class InvalidArgs(ProbelabError):
    pass


class InvalidParams(ProbelabError):
    pass


class BadQuery(ProbelabError):
    pass


class BadCut(ProbelabError):
    pass


class DeleteMissingEdge(ProbelabError):
    pass


class BuildFailure(ProbelabError):
    """Retrieval-dictionary construction failed after all reseeds."""


class SimulationDiverged(ProbelabError):
    """A protocol re-simulation disagreed with the recorded execution."""


class ExpectationFailed(ProbelabError):
    """A replayed trace expectation did not hold."""


class UnsupportedOp(ProbelabError):
    """The chosen structure cannot replay an op kind in the trace."""


class TraceFormatError(ProbelabError):
    pass
