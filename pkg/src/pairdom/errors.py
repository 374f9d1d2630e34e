"""Exception hierarchy for instance validation and solver failures."""


class PairdomError(Exception):
    """Base class for all errors raised by this package."""


class OutOfRange(PairdomError):
    """A vertex id is outside [0, n)."""


class SelfLoop(PairdomError):
    """An edge joins a vertex to itself."""


class DuplicateEdge(PairdomError):
    """The same undirected edge appears more than once."""


class WeightOverflow(PairdomError):
    """A weight is negative or the total weight exceeds the safe range."""


class Disconnected(PairdomError):
    """The graph is not connected."""


class NotBlockGraph(PairdomError):
    """Some block of the graph is not a clique."""

    def __init__(self, message, block_vertices=None):
        super().__init__(message)
        self.block_vertices = block_vertices


class NoPairedDominatingSet(PairdomError):
    """The graph admits no paired-dominating set (single vertex)."""


class TooLarge(PairdomError):
    """Instance exceeds the brute-force oracle size guard."""


class ParseError(PairdomError):
    """Malformed instance file."""


class InternalInconsistency(PairdomError):
    """Reconstructed solution disagrees with stored weights; indicates a bug."""
