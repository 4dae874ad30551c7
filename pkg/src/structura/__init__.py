"""Exact computations with structurable algebras and their delta-derivations."""

from .algebra import Algebra, Element, LinearMap

__all__ = ["Algebra", "Element", "LinearMap"]
