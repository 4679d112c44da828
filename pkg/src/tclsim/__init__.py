"""Simulation of arbitrarily driven few-level quantum systems weakly
coupled to temporally correlated environments, with drive-aware
(filtered) dissipators, gate-fidelity and leakage metrics."""

__version__ = "0.1.0"
