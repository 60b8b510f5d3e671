"""Abstract types for SK combinatory logic by type application."""

from .kernel import K, S, Term, Var, reduce, reduce_step, term_size
from .typemodel import Type, type_of_program
from .application import Budget, BudgetExhausted, NoRule, apply_type

__all__ = [
    "S", "K", "Term", "Var", "reduce", "reduce_step", "term_size",
    "Type", "type_of_program", "Budget", "BudgetExhausted", "NoRule",
    "apply_type",
]
