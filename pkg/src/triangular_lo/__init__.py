"""Random triangular group presentations and their left-orderability obstructions."""

__version__ = "0.1.0"
