"""Localization game on graphs: exact solver, graph families and theorem checks."""

__version__ = "0.1.0"
