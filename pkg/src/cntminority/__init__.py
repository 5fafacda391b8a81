"""Modeling toolkit for a CNTFET-based capacitive-divider minority gate."""

__version__ = "0.1.0"
