"""Combinatory and abstract types, canonical type shapes, and ``|p|``.

Types are hash-consed like terms, so ``==`` is identity.
"""

from __future__ import annotations

import threading
import weakref
from typing import Optional

from .kernel import App, K, S, Term

__all__ = [
    "Type", "S0Type", "K0Type", "S1", "S2", "K1", "Abs0", "Abs1", "Abs2",
    "S0", "K0", "I0",
    "PRODUCT_LABEL", "BOOL_LABEL", "NAT_LABEL", "SUM_LABEL", "FUN_LABEL",
    "REC_LABEL", "LIST_LABEL", "ALIAS_LABELS",
    "Product", "BOOL", "NAT", "Sum", "Fun", "Rec", "List",
    "type_of_program", "tag_ty", "tagged_tyl", "tagged_ty", "wait2_ty", "zty",
    "unpack_constructor", "tag_ty_arg", "is_tagged_ty", "type_depth",
]

_lock = threading.Lock()
_table: "weakref.WeakValueDictionary[tuple, Type]" = weakref.WeakValueDictionary()


class Type:
    __slots__ = ("__weakref__",)
    _fields: tuple[str, ...] = ()

    def __new__(cls, *args: Type) -> Type:
        key = (cls, *args)
        with _lock:
            node = _table.get(key)
            if node is None:
                node = object.__new__(cls)
                for name, value in zip(cls._fields, args):
                    object.__setattr__(node, name, value)
                _table[key] = node
        return node

    def __setattr__(self, name, value):
        raise AttributeError("types are immutable")

    def __reduce__(self):
        return (type(self), tuple(getattr(self, f) for f in self._fields))

    def __repr__(self) -> str:
        from .surface import print_type

        return f"<{print_type(self)}>"


class S0Type(Type):
    __slots__ = ()


class K0Type(Type):
    __slots__ = ()


class S1(Type):
    __slots__ = ("arg",)
    _fields = __match_args__ = ("arg",)


class S2(Type):
    __slots__ = ("left", "right")
    _fields = __match_args__ = ("left", "right")


class K1(Type):
    __slots__ = ("arg",)
    _fields = __match_args__ = ("arg",)


class Abs0(Type):
    __slots__ = ("label",)
    _fields = __match_args__ = ("label",)


class Abs1(Type):
    __slots__ = ("label", "arg1")
    _fields = __match_args__ = ("label", "arg1")


class Abs2(Type):
    __slots__ = ("label", "arg1", "arg2")
    _fields = __match_args__ = ("label", "arg1", "arg2")


S0 = S0Type()
K0 = K0Type()
I0 = S2(K0, K0)

PRODUCT_LABEL = S1(S0)
BOOL_LABEL = S1(K0)
NAT_LABEL = S2(K0, K0)
SUM_LABEL = S2(K0, S0)
FUN_LABEL = K1(K0)
REC_LABEL = K0
LIST_LABEL = S2(S1(S0), S0)

ALIAS_LABELS = {
    "Product": PRODUCT_LABEL,
    "Bool": BOOL_LABEL,
    "Nat": NAT_LABEL,
    "Sum": SUM_LABEL,
    "Fun": FUN_LABEL,
    "Rec": REC_LABEL,
    "List": LIST_LABEL,
}

BOOL = Abs0(BOOL_LABEL)
NAT = Abs0(NAT_LABEL)


def Product(u: Type, v: Type) -> Abs2:
    return Abs2(PRODUCT_LABEL, u, v)


def Sum(u: Type, v: Type) -> Abs2:
    return Abs2(SUM_LABEL, u, v)


def Fun(u: Type, v: Type) -> Abs2:
    return Abs2(FUN_LABEL, u, v)


def Rec(f: Type) -> Abs1:
    return Abs1(REC_LABEL, f)


def List(u: Type) -> Abs1:
    return Abs1(LIST_LABEL, u)


def type_of_program(p: Term) -> Type:
    """``|p|`` for a closed normal combinator ``p``."""
    if not p.closed or not p.normal:
        raise ValueError("type_of_program needs a closed term in normal form")
    memo: dict[Term, Type] = {}

    def go(t: Term) -> Type:
        ty = memo.get(t)
        if ty is not None:
            return ty
        if t is S:
            ty = S0
        elif t is K:
            ty = K0
        else:
            assert isinstance(t, App)
            if t.head is K:
                ty = K1(go(t.arg))
            elif t.nargs == 1:
                ty = S1(go(t.arg))
            else:
                ty = S2(go(t.fun.arg), go(t.arg))
        memo[t] = ty
        return ty

    return go(p)


def tag_ty(t: Type) -> Type:
    return S2(S2(K1(K0), K1(K0)), K1(t))


def tagged_tyl(f: Type) -> Type:
    return S1(S2(K1(K0), f))


def tagged_ty(f: Type, t: Type) -> Type:
    return S2(S2(K1(K0), f), tag_ty(t))


def wait2_ty(u: Type, v: Type, w: Type) -> Type:
    return S2(S2(S2(K1(u), K1(v)), K1(w)), I0)


def zty(f: Type) -> Type:
    from .prelude import OMEGA_TY

    return wait2_ty(OMEGA_TY, OMEGA_TY, f)


def unpack_constructor(t: Type) -> Optional[tuple[Type, Type]]:
    """``(F, X)`` when ``t = S2(S2(K1 K0) F) X``, the shape any
    ``tagged_tyl{F}`` body takes once applied to some ``X``."""
    match t:
        case S2(S2(K1(k), f), x) if k is K0:
            return f, x
    return None


def tag_ty_arg(x: Type) -> Optional[Type]:
    """``T`` when ``x = tag_ty{T}``."""
    match x:
        case S2(S2(K1(a), K1(b)), K1(t)) if a is K0 and b is K0:
            return t
    return None


def is_tagged_ty(t: Type) -> bool:
    parts = unpack_constructor(t)
    return parts is not None and tag_ty_arg(parts[1]) is not None


def type_depth(t: Type) -> int:
    if isinstance(t, (S0Type, K0Type)):
        return 1
    return 1 + max(type_depth(getattr(t, f)) for f in t._fields)
