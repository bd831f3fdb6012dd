"""Symbolic workbench for Dehn-twist factorizations on bordered surfaces."""
__version__ = "0.1.0"
