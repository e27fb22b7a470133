"""Chaotic logistic-map PRNG with baseline generators and an SP 800-22 test suite."""

__version__ = "1.0.0"
