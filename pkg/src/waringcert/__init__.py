"""Certificates of rank and identifiability for Waring decompositions of quartics in five variables."""

__version__ = "0.1.0"
