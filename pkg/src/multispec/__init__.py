"""Multiplier spectra of rational maps over finite fields, function fields and
non-archimedean places."""

__version__ = "0.1.0"
