"""Deterministic PRNG, experiment drivers and the command line interface."""

from .prng import Prng, splitmix64

__all__ = ["Prng", "splitmix64"]
