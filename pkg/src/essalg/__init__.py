"""Computer algebra for standardization, degeneracy verdicts and essential geometry."""

__version__ = "0.1.0"
