"""The type-application function ``T(V)`` of the summary system.

Combinatory arms mirror the reduction rules.  Applying ``S1 U`` to ``V``
yields ``R = S2 U V`` unless ``R`` is a tagged type
``S2(S2(K1 K0) F)(tag_ty{T})``, in which case one of the introduction arms
must recognise ``(F, T)`` or the application has no value.  Elimination arms
fire on the abstract heads.

Every call is charged to a :class:`Budget`; the ``S2`` and product arms loop
instead of recursing on their final application so divergent inputs such as
``(S2 I0 I0)(S2 I0 I0)`` run in constant stack depth.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import prelude
from .typemodel import (
    BOOL, BOOL_LABEL, FUN_LABEL, I0, LIST_LABEL, NAT, NAT_LABEL, PRODUCT_LABEL,
    REC_LABEL, S0, SUM_LABEL, Abs0, Abs1, Abs2, Fun, K0Type, K1, List, Product,
    Rec, S0Type, S1, S2, Sum, Type, tag_ty_arg, type_of_program,
    unpack_constructor,
)

__all__ = [
    "Budget", "TypeApplicationError", "NoRule", "BudgetExhausted",
    "apply_type", "apply_type_multi", "intro_arm",
]

FST_TY = type_of_program(prelude.get("fst"))
SND_TY = type_of_program(prelude.get("snd"))
PRODUCT_TAG_TY = type_of_program(prelude.PRODUCT_TAG)
BOOL_TAG_TY = type_of_program(prelude.BOOL_TAG)
NAT_TAG_TY = type_of_program(prelude.NAT_TAG)
SUM_TAG_TY = type_of_program(prelude.SUM_TAG)
Z_TAG_TY = type_of_program(prelude.Z_TAG)
OMEGA_TY = prelude.OMEGA_TY
LIST_TAG_HEAD = S1(S0)


@dataclass
class Budget:
    """Counts type-application calls against an optional ``limit``."""

    limit: Optional[int] = None
    used: int = 0

    def charge(self) -> None:
        if self.limit is not None and self.used >= self.limit:
            raise BudgetExhausted(self.used)
        self.used += 1


class TypeApplicationError(Exception):
    pass


class NoRule(TypeApplicationError):
    """No arm applies; permanent for these inputs."""

    def __init__(self, head: Type, arg: Type, reason: str = "no rule"):
        super().__init__(reason)
        self.head = head
        self.arg = arg
        self.reason = reason


class BudgetExhausted(TypeApplicationError):
    def __init__(self, used: int):
        super().__init__(f"budget exhausted after {used} calls")
        self.used = used


def apply_type(t: Type, v: Type, budget: Optional[Budget] = None) -> Type:
    """Compute ``t(v)``; raises :class:`NoRule` or :class:`BudgetExhausted`."""
    if budget is None:
        budget = Budget()
    while True:
        budget.charge()
        match t:
            case K0Type():
                return K1(v)
            case K1(u):
                return u
            case S0Type():
                return S1(v)
            case S1(u):
                r = S2(u, v)
                parts = unpack_constructor(r)
                if parts is None:
                    return r
                tag = tag_ty_arg(parts[1])
                if tag is None:
                    return r
                return intro_arm(parts[0], tag, budget, t, v)
            case S2(u, w):
                t, v = apply_type(u, v, budget), apply_type(w, v, budget)
            case Abs2(label, u1, u2) if label is PRODUCT_LABEL:
                t, v = apply_type(v, u1, budget), u2
            case Abs2(label, u1, u2) if label is SUM_LABEL:
                t = Product(BOOL, Product(u1, u2))
            case Abs2(label, dom, cod) if label is FUN_LABEL:
                if v is dom:
                    return cod
                raise NoRule(t, v, "argument differs from the function domain")
            case Abs0(label) if label is BOOL_LABEL:
                match v:
                    case Abs2(pl, v1, v2) if pl is PRODUCT_LABEL and v1 is v2:
                        return v1
                raise NoRule(t, v, "Bool needs a pair of branches of one type")
            case Abs0(label) if label is NAT_LABEL:
                v1, v2 = _product_parts(t, v)
                _require(apply_type(v2, NAT, budget), v1, t, v)
                return v1
            case Abs1(label, fty) if label is REC_LABEL:
                v1, _ = _product_parts(t, v)
                step = apply_type(fty, Fun(v, v1), budget)
                _require(apply_type(step, v, budget), v1, t, v)
                return v1
            case Abs1(label, elem) if label is LIST_LABEL:
                v1, v2 = _product_parts(t, v)
                _require(apply_type(v2, Product(elem, List(elem)), budget), v1, t, v)
                return v1
            case _:
                raise NoRule(t, v)


def _product_parts(t: Type, v: Type) -> tuple[Type, Type]:
    match v:
        case Abs2(label, v1, v2) if label is PRODUCT_LABEL:
            return v1, v2
    raise NoRule(t, v, "eliminator needs a pair argument")


def _require(got: Type, want: Type, t: Type, v: Type) -> None:
    if got is not want:
        raise NoRule(t, v, "side condition fails")


def intro_arm(f: Type, tag: Type, budget: Budget, head: Type, arg: Type) -> Type:
    """Type of ``tagged{f, t}`` where ``f : F`` and ``t : tag``."""
    if tag is PRODUCT_TAG_TY:
        match f:
            case S2(S2(i, K1(u1)), K1(u2)) if i is I0:
                return Product(u1, u2)
    elif tag is BOOL_TAG_TY:
        if f is FST_TY or f is SND_TY:
            return BOOL
    elif tag is NAT_TAG_TY:
        if f is FST_TY:
            return NAT
        if f is S2(SND_TY, K1(NAT)):
            return NAT
    elif tag is SUM_TAG_TY:
        match f:
            case Abs2(pl, b, Abs2(pl2, u1, u2)) if (
                    pl is PRODUCT_LABEL and pl2 is PRODUCT_LABEL and b is BOOL):
                return Sum(u1, u2)
    elif tag is Z_TAG_TY:
        match f:
            case S2(S2(S2(K1(w1), K1(w2)), K1(body)), i) if (
                    i is I0 and w1 is OMEGA_TY and w2 is OMEGA_TY):
                return Rec(body)
    else:
        match tag:
            case K1(dom):
                return Fun(dom, apply_type(f, dom, budget))
            case S2(hd, elem) if hd is LIST_TAG_HEAD:
                if f is FST_TY:
                    return List(elem)
                if f is S2(S2(K1(SND_TY), I0), K1(Product(elem, List(elem)))):
                    return List(elem)
    raise NoRule(head, arg, "tagged type matches no constructor")


def apply_type_multi(t: Type, args: Sequence[Type], budget: Optional[Budget] = None) -> Type:
    """Left fold of :func:`apply_type` over ``args``."""
    if budget is None:
        budget = Budget()
    for a in args:
        t = apply_type(t, a, budget)
    return t

