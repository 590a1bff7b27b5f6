"""Constructions, certificates and inequality systems for the infinite Turan number of K_{2,t+1}."""

__version__ = "0.1.0"
