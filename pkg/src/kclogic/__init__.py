"""Knowledge and comprehension: formulas, models, model checking, proofs."""

from .checker import SemanticsMode, consistent_across_meanings, failing_points, satisfies, valid_in_model
from .formula import Comp, Implies, Know, Not, Top, Var, parse, render, signature
from .model import Model, Point, indistinguishable, load, save, validate

__version__ = "0.1.0"

__all__ = [
    "Comp", "Implies", "Know", "Model", "Not", "Point", "SemanticsMode", "Top", "Var",
    "consistent_across_meanings", "failing_points", "indistinguishable", "load", "parse",
    "render", "save", "satisfies", "signature", "valid_in_model", "validate",
]
