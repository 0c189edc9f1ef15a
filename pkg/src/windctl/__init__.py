"""Deterministic simulation toolkit for fault-tolerant wind turbine control.

Subpackages cover the discrete fractional-calculus kernel, continuous-time
turbine plant models, time-windowed fault injection, the controller zoo,
rotor-current observers, the weighted parallel firefly optimizer, the
scenario engine, and a batch command-line front end.
"""

__version__ = "0.1.0"
