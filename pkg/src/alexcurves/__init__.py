"""Alexander-type invariants of plane curve complements from group presentations."""

__version__ = "0.1.0"
