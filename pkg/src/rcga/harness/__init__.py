"""Experiment engine and CLI.  Import submodules directly."""
