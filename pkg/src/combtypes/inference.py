"""Type inference for terms under a context, with call metrics.

``infer`` walks the term bottom-up, left subterm before right, and types each
application with :func:`apply_type` under one shared :class:`Budget`.  The
walk uses an explicit stack, so terms nested thousands of levels deep are
fine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

from .application import Budget, BudgetExhausted, NoRule, apply_type
from .kernel import App, K, S, Term, Var
from .typemodel import K0, S0, Type

__all__ = [
    "Context", "Typed", "Untypable", "OutOfBudget", "Outcome", "InferReport",
    "infer", "infer_type", "default_limit", "check_derivation",
    "DEFAULT_BUDGET_FACTOR",
]

DEFAULT_BUDGET_FACTOR = 100


class Context:
    """Ordered assignments ``x : T``; the earliest binding of a name wins.

    ``extend`` puts the new binding in front, so it shadows older ones.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Iterable[tuple[str, Type]] = ()):
        self._entries = tuple(entries)

    def lookup(self, name: str) -> Optional[Type]:
        for n, ty in self._entries:
            if n == name:
                return ty
        return None

    def extend(self, name: str, ty: Type) -> Context:
        return Context(((name, ty),) + self._entries)

    @property
    def entries(self) -> tuple[tuple[str, Type], ...]:
        return self._entries

    def __iter__(self):
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Context) and self._entries == other._entries

    def __hash__(self) -> int:
        return hash(self._entries)

    def __repr__(self) -> str:
        return f"Context({list(self._entries)!r})"


Path = tuple[str, ...]
"""Steps from the root to a subterm: ``"fun"`` or ``"arg"``."""


@dataclass(frozen=True)
class Typed:
    type: Type


@dataclass(frozen=True)
class Untypable:
    path: Path
    reason: str


@dataclass(frozen=True)
class OutOfBudget:
    pass


Outcome = Union[Typed, Untypable, OutOfBudget]


@dataclass(frozen=True)
class InferReport:
    term_size: int
    outcome: Outcome
    calls: int
    limit: Optional[int] = None
    ratio: Optional[Fraction] = field(init=False)

    def __post_init__(self):
        ratio = Fraction(self.calls, self.term_size) if self.term_size > 0 else None
        object.__setattr__(self, "ratio", ratio)

    @property
    def verdict(self) -> str:
        """``yes``, ``no`` or ``budget``."""
        if isinstance(self.outcome, Typed):
            return "yes"
        if isinstance(self.outcome, OutOfBudget):
            return "budget"
        return "no"

    @property
    def type(self) -> Optional[Type]:
        return self.outcome.type if isinstance(self.outcome, Typed) else None


def default_limit(t: Term, factor: int = DEFAULT_BUDGET_FACTOR) -> int:
    if factor < 1:
        raise ValueError("budget factor must be at least 1")
    return factor * t.size


class _Failed(Exception):
    def __init__(self, path: Path, reason: str):
        self.path = path
        self.reason = reason


def _as_context(gamma) -> Context:
    if isinstance(gamma, Context):
        return gamma
    if isinstance(gamma, dict):
        return Context(gamma.items())
    return Context(gamma)


def _synthesise(m: Term, gamma: Context, budget: Budget,
                memo: Optional[dict] = None) -> Type:
    # Post-order over (node, path); each App pops its two operand types.
    results: list[Type] = []
    stack: list[tuple[Term, Path, bool]] = [(m, (), False)]
    while stack:
        node, path, ready = stack.pop()
        if ready:
            v = results.pop()
            u = results.pop()
            try:
                ty = apply_type(u, v, budget)
            except NoRule as e:
                raise _Failed(path, e.reason) from None
            if memo is not None:
                memo[node] = ty
            results.append(ty)
            continue
        if memo is not None and node in memo:
            results.append(memo[node])
        elif node is S:
            results.append(S0)
        elif node is K:
            results.append(K0)
        elif isinstance(node, Var):
            ty = gamma.lookup(node.name)
            if ty is None:
                raise _Failed(path, f"unbound variable {node.name}")
            results.append(ty)
        else:
            stack.append((node, path, True))
            stack.append((node.arg, path + ("arg",), False))
            stack.append((node.fun, path + ("fun",), False))
    return results[0]


def infer(m: Term, gamma=(), limit: Optional[int] = None,
          memo: Optional[dict] = None) -> InferReport:
    """Infer the type of ``m`` under ``gamma``.

    ``limit`` caps the number of type-application calls; ``None`` means
    unbounded, in which case divergent inputs do not return.

    ``memo`` maps already-typed subterms to their types and is filled in as
    inference proceeds.  Reuse it only with the same ``gamma``.  Subterms found
    there cost no calls, so ``calls`` then undercounts the from-scratch cost.
    """
    gamma = _as_context(gamma)
    budget = Budget(limit)
    try:
        outcome: Outcome = Typed(_synthesise(m, gamma, budget, memo))
    except _Failed as e:
        outcome = Untypable(e.path, e.reason)
    except BudgetExhausted:
        outcome = OutOfBudget()
    return InferReport(m.size, outcome, budget.used, limit)


def infer_type(m: Term, gamma=(), limit: Optional[int] = None) -> Optional[Type]:
    """The inferred type, or ``None`` on any failure."""
    return infer(m, gamma, limit).type


CHECK_LIMIT = 10**7


def check_derivation(gamma, m: Term, claimed: Type, limit: int = CHECK_LIMIT) -> bool:
    """Whether ``gamma ⊢ m : claimed`` is derivable.

    Derivations are syntax directed: a variable takes its context type, an
    operator its base type, and ``M N`` the value ``T(U)`` for the types of
    ``M`` and ``N``.  This re-derives each premise recursively, separately from
    :func:`infer`.  Returns ``False`` if ``limit`` type-application calls do
    not settle the question.
    """
    gamma = _as_context(gamma)
    budget = Budget(limit)

    def derive(t: Term) -> Optional[Type]:
        if isinstance(t, App):
            u = derive(t.fun)
            if u is None:
                return None
            v = derive(t.arg)
            if v is None:
                return None
            try:
                return apply_type(u, v, budget)
            except NoRule:
                return None
        if t is S:
            return S0
        if t is K:
            return K0
        return gamma.lookup(t.name)

    try:
        return derive(m) is claimed
    except BudgetExhausted:
        return False
