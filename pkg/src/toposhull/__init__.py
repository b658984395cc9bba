"""Injective hulls in the topos of finite right M-sets."""
from .hull import (
    hull_uniqueness_iso,
    injective_hull_quotient,
    injective_hull_subobject,
    is_essential,
    is_injective,
)
from .monoid import FiniteMonoid, validate_monoid
from .mset import EquivariantMap, MSet, validate_mset
from .topos import exponential, omega, power_object, singleton

__version__ = "0.1.0"

__all__ = [
    "EquivariantMap",
    "FiniteMonoid",
    "MSet",
    "exponential",
    "hull_uniqueness_iso",
    "injective_hull_quotient",
    "injective_hull_subobject",
    "is_essential",
    "is_injective",
    "omega",
    "power_object",
    "singleton",
    "validate_monoid",
    "validate_mset",
]
