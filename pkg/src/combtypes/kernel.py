"""SK terms: construction, reduction, abstraction and the tagging builders.

Terms are hash-consed: two structurally equal terms are the same object, so
equality and hashing are O(1).  Every node caches its operator count, whether
it is closed, and whether it is in normal form.
"""

from __future__ import annotations

import sys
import threading
import weakref
from typing import Iterator, Optional

__all__ = [
    "Term", "Op", "App", "Var", "S", "K", "I",
    "app", "contract", "reduce_step", "reduce", "Reducer", "trace", "is_normal", "is_closed", "fv",
    "term_size", "bracket_abs", "star_abs", "substitute", "star_abs_many",
    "TAG", "mk_tag", "mk_tagged", "mk_wait", "mk_wait2", "match_tagged",
    "fresh_name",
]

# Surface terms such as successor^1000 zero nest a thousand levels deep.
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)

_lock = threading.Lock()
_apps: "weakref.WeakValueDictionary[tuple, App]" = weakref.WeakValueDictionary()
_vars: "weakref.WeakValueDictionary[str, Var]" = weakref.WeakValueDictionary()


class Term:
    """Base class of S/K terms.  Calling a term applies it: ``S(K, K)``."""

    __slots__ = ("size", "closed", "normal", "head", "nargs", "__weakref__")

    def __call__(self, *args: Term) -> Term:
        return app(self, *args)

    def __repr__(self) -> str:
        from .surface import print_term

        return f"<{print_term(self)}>"


class Op(Term):
    __slots__ = ("name",)
    _instances: dict[str, Op] = {}

    def __new__(cls, name: str) -> Op:
        if name not in ("S", "K"):
            raise ValueError(f"unknown operator {name!r}")
        op = cls._instances.get(name)
        if op is None:
            op = object.__new__(cls)
            op.name = name
            op.size = 1
            op.closed = True
            op.normal = True
            op.head = op
            op.nargs = 0
            cls._instances[name] = op
        return op

    def __reduce__(self):
        return (Op, (self.name,))


class Var(Term):
    __slots__ = ("name",)

    def __new__(cls, name: str) -> Var:
        with _lock:
            v = _vars.get(name)
            if v is None:
                v = object.__new__(cls)
                v.name = name
                v.size = 1
                v.closed = False
                v.normal = True
                v.head = v
                v.nargs = 0
                _vars[name] = v
        return v

    def __reduce__(self):
        return (Var, (self.name,))


class App(Term):
    __slots__ = ("fun", "arg")
    __match_args__ = ("fun", "arg")

    def __new__(cls, fun: Term, arg: Term) -> App:
        key = (fun, arg)
        with _lock:
            node = _apps.get(key)
            if node is None:
                node = object.__new__(cls)
                node.fun = fun
                node.arg = arg
                node.size = fun.size + arg.size
                node.closed = fun.closed and arg.closed
                node.head = fun.head
                node.nargs = fun.nargs + 1
                node.normal = fun.normal and arg.normal and not _is_redex(node)
                _apps[key] = node
        return node

    def __reduce__(self):
        return (App, (self.fun, self.arg))


S = Op("S")
K = Op("K")


def _is_redex(t: Term) -> bool:
    return (t.head is S and t.nargs == 3) or (t.head is K and t.nargs == 2)


def app(fun: Term, *args: Term) -> Term:
    """Left-associated application ``fun a1 a2 ...``."""
    for a in args:
        fun = App(fun, a)
    return fun


I = S(K, K)


def is_normal(t: Term) -> bool:
    return t.normal


def is_closed(t: Term) -> bool:
    return t.closed


def term_size(t: Term) -> int:
    """Number of leaves (operators and variables)."""
    return t.size


def fv(t: Term) -> frozenset[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if u.closed:
            continue
        if isinstance(u, Var):
            out.add(u.name)
        else:
            stack.append(u.fun)
            stack.append(u.arg)
    return frozenset(out)


def contract(t: App) -> Term:
    """Contract the redex ``t`` itself."""
    if t.head is K:
        return t.fun.arg
    c = t.arg
    b = t.fun.arg
    a = t.fun.fun.arg
    return App(App(a, c), App(b, c))


def reduce_step(t: Term) -> Optional[Term]:
    """Contract the leftmost-outermost redex; ``None`` if ``t`` is normal."""
    if t.normal:
        return None
    path: list[tuple[App, bool]] = []
    node = t
    while not _is_redex(node):
        if not node.fun.normal:
            path.append((node, True))
            node = node.fun
        else:
            path.append((node, False))
            node = node.arg
    out = contract(node)
    for parent, went_left in reversed(path):
        out = App(out, parent.arg) if went_left else App(parent.fun, out)
    return out


class Reducer:
    """Leftmost-outermost reduction with a zipper.

    The position of the last contraction is kept between steps, so a step
    costs time proportional to the distance moved rather than to the depth of
    the redex.  ``term`` rebuilds the whole term on demand.
    """

    __slots__ = ("focus", "frames", "steps")

    def __init__(self, t: Term):
        self.focus = t
        # (went_left, sibling): the parent is App(focus, sibling) when
        # went_left, else App(sibling, focus).
        self.frames: list[tuple[bool, Term]] = []
        self.steps = 0

    @property
    def term(self) -> Term:
        t = self.focus
        for went_left, sib in reversed(self.frames):
            t = App(t, sib) if went_left else App(sib, t)
        return t

    def find(self) -> Optional[Term]:
        """Move the focus to the next redex; ``None`` when the term is normal."""
        frames = self.frames
        t = self.focus
        while True:
            if t.normal:
                while True:
                    if not frames:
                        self.focus = t
                        return None
                    went_left, sib = frames.pop()
                    if went_left:
                        t = App(t, sib)
                        if not t.normal:
                            break
                    else:
                        t = App(sib, t)
            if _is_redex(t):
                self.focus = t
                return t
            if not t.fun.normal:
                frames.append((True, t.arg))
                t = t.fun
            else:
                frames.append((False, t.fun))
                t = t.arg

    def contract(self) -> Term:
        """Contract the redex at the focus (call :meth:`find` first)."""
        t = contract(self.focus)
        frames = self.frames
        # A new redex can only appear on the application spine above.
        while frames and frames[-1][0]:
            t = App(t, frames.pop()[1])
        self.focus = t
        self.steps += 1
        return t

    def step(self) -> bool:
        if self.find() is None:
            return False
        self.contract()
        return True


def reduce(t: Term, max_steps: int = 10**6) -> tuple[Term, int, bool]:
    """Run at most ``max_steps`` contractions.

    Returns ``(term, steps_used, normal)``.
    """
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    r = Reducer(t)
    while r.steps < max_steps and r.step():
        pass
    out = r.term
    return out, r.steps, out.normal


def trace(t: Term, max_steps: int = 10**6) -> Iterator[Term]:
    """Yield ``t`` and every term on its reduction sequence."""
    yield t
    r = Reducer(t)
    while r.steps < max_steps and r.step():
        yield r.term


def bracket_abs(x: str, t: Term) -> Term:
    """Plain bracket abstraction ``[x]t``."""
    if isinstance(t, Var):
        return I if t.name == x else App(K, t)
    if isinstance(t, Op):
        return App(K, t)
    return S(bracket_abs(x, t.fun), bracket_abs(x, t.arg))


def _occurrence_test(x: str):
    memo: dict[Term, bool] = {}

    def occurs(t: Term) -> bool:
        if t.closed:
            return False
        if isinstance(t, Var):
            return t.name == x
        hit = memo.get(t)
        if hit is None:
            hit = memo[t] = occurs(t.fun) or occurs(t.arg)
        return hit

    return occurs


def star_abs(x: str, t: Term) -> Term:
    """Star abstraction ``λx.t``: like bracket abstraction, but any subterm
    without ``x`` is wrapped in a single ``K``.  No η-contraction."""
    occurs = _occurrence_test(x)

    def go(t: Term) -> Term:
        if isinstance(t, Var) and t.name == x:
            return I
        if not occurs(t):
            return App(K, t)
        return S(go(t.fun), go(t.arg))

    return go(t)


def star_abs_many(names: list[str] | tuple[str, ...], t: Term) -> Term:
    """``λx1. ... λxn. t``."""
    for x in reversed(names):
        t = star_abs(x, t)
    return t


def substitute(t: Term, x: str, u: Term) -> Term:
    """Replace every ``Var x`` in ``t`` by ``u``."""
    if t.closed:
        return t
    if isinstance(t, Var):
        return u if t.name == x else t
    return App(substitute(t.fun, x, u), substitute(t.arg, x, u))


def fresh_name(base: str, avoid: set[str] | frozenset[str]) -> str:
    if base not in avoid:
        return base
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


TAG = App(S, S(K(K), K(K)))
"""``tag = S(S(KK)(KK))``."""


def mk_tag(n: Term) -> Term:
    return App(TAG, n)


def mk_tagged(f: Term, t: Term) -> Term:
    """``tagged{f,t} = S(S(KK)f)(tag(Kt))``."""
    return S(S(K(K), f), mk_tag(K(t)))


def match_tagged(t: Term) -> Optional[tuple[Term, Term]]:
    """Return ``(f, t)`` if ``t`` is literally ``tagged{f, t}``."""
    match t:
        case App(App(s1, App(App(s2, App(k1, k2)), f)), App(tag, App(k3, label))):
            if (s1 is S and s2 is S and k1 is K and k2 is K and k3 is K
                    and tag is TAG):
                return f, label
    return None


def mk_wait(m: Term, n: Term) -> Term:
    """``wait{M,N} = S(S(KM)(KN))I``."""
    return S(S(K(m), K(n)), I)


def mk_wait2(m: Term, n: Term, p: Term) -> Term:
    """``wait2{M,N,P} = S(S(S(KM)(KN))(KP))I``."""
    return S(S(S(K(m), K(n)), K(p)), I)
