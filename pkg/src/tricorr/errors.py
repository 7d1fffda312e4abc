"""Exception types shared across the package."""


class StateFormatError(ValueError):
    """A state file is malformed (bad JSON, wrong field, dims/amplitude mismatch)."""


class UnsupportedDimensionError(ValueError):
    """An operation was asked to measure a party of dimension > 2.

    Direct measurement optimization only supports qubit measured parties;
    higher-dimensional parties are handled through the entanglement-of-formation
    identity route on a pure tripartite parent (see entanglement.eof_koashi_winter
    and monogamy.tau_total_22n).
    """


class ConsistencyError(RuntimeError):
    """An internal cross-check failed beyond numerical tolerance."""
