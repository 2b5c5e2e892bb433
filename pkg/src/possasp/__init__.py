"""Possibilistic answer set programming: five semantics over one exact kernel."""

__version__ = "0.1.0"
