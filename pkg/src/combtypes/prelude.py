"""Named combinators: tags, products, booleans, sums, functions, recursion,
naturals and lists.

Every definition is written with star abstraction over named variables and
then normalised, so each closed entry is a program (a closed normal form).
Parameterised entries (``Z{f}``, ``primrec{g,h,u}``, ...) are builders.

Tag choices
-----------
Each constructor is ``tagged{f, t}`` and its tag ``t`` is chosen so that
``|t|`` is the label of the abstract type it introduces:

==============  ===========  ======================
type            tag          ``|tag|``
==============  ===========  ======================
``U*V``         ``SS``       ``S1 S0``
``Bool``        ``SK``       ``S1 K0``
``Nat``         ``SKK``      ``S2 K0 K0``
``U+V``         ``SKS``      ``S2 K0 S0``
``Rec{F}``      ``K``        ``K0``
``U->V``        ``K d``      ``K1 U``  (``d : U``)
``List{U}``     ``S(SS)d``   ``S2 (S1 S0) U`` (``d : U``)
==============  ===========  ======================

Function and list tags carry a dummy value ``d`` so the tag type records the
domain or the element type.
"""

from __future__ import annotations

from typing import Callable

from .kernel import (
    TAG, I, K, S, Term, Var, fresh_name, fv, mk_tagged, mk_wait, mk_wait2,
    reduce, star_abs, star_abs_many,
)
from .typemodel import type_of_program

__all__ = [
    "get", "build", "names", "builders", "PreludeError", "normalise",
    "PRODUCT_TAG", "BOOL_TAG", "NAT_TAG", "SUM_TAG", "Z_TAG", "OMEGA_TY",
    "lam_term", "Z", "primrec0", "primrec", "minrec", "fold_left", "cond_mono",
]

NORMALISE_STEPS = 200_000


class PreludeError(LookupError):
    pass


def normalise(t: Term, what: str = "term") -> Term:
    nf, steps, normal = reduce(t, NORMALISE_STEPS)
    if not normal:
        raise PreludeError(f"{what} did not normalise in {steps} steps")
    return nf


def _program(t: Term, name: str) -> Term:
    p = normalise(t, name)
    assert p.closed, name
    return p


def _lam(*xs_and_body):
    *xs, body = xs_and_body
    return star_abs_many([x.name for x in xs], body)


b, c, d, f, g, h, k, m, n, p, q, r, t, u, v, w, x, y, z = map(
    Var, "bcdfghkmnpqrtuvwxyz")

PRODUCT_TAG = S(S)
BOOL_TAG = S(K)
NAT_TAG = S(K, K)
SUM_TAG = S(K, S)
Z_TAG = K

_table: dict[str, Term] = {
    "I": I,
    "tag": TAG,
    "product_tag": PRODUCT_TAG,
    "bool_tag": BOOL_TAG,
    "nat_tag": NAT_TAG,
    "sum_tag": SUM_TAG,
    "Z_tag": Z_TAG,
}


def _define(name: str, term: Term) -> Term:
    _table[name] = prog = _program(term, name)
    return prog


PAIR = _define("pair", _lam(x, y, mk_tagged(_lam(f, f(x, y)), PRODUCT_TAG)))
FST = _define("fst", _lam(p, p(_lam(x, y, x))))
SND = _define("snd", _lam(p, p(_lam(x, y, y))))
TT = _define("tt", mk_tagged(FST, BOOL_TAG))
FF = _define("ff", mk_tagged(SND, BOOL_TAG))
COND = _define("cond", _lam(b, x, y, b(PAIR(x, y))))

MK_SUM = _define("mk_sum", _lam(p, mk_tagged(p, SUM_TAG)))
INL = _define("inl", _lam(p, MK_SUM(PAIR(TT, p))))
INR = _define("inr", _lam(p, MK_SUM(PAIR(FF, p))))
CASE = _define("case", _lam(q, c, FST(c, PAIR(FST(q, FST(SND(c))),
                                             SND(q, SND(SND(c)))))))

MK_FUN = _define("mk_fun", _lam(p, p(_lam(t, d, mk_tagged(t, K(d))))))

OMEGA = _define("omega", _lam(w, f, x, f(mk_tagged(mk_tagged(mk_wait2(w, w, f), Z_TAG),
                                               K(x)), x)))
OMEGA_TY = type_of_program(OMEGA)

ZERO = _define("zero", mk_tagged(FST, NAT_TAG))
SUCCESSOR = _define("successor", _lam(n, mk_tagged(S(SND, K(n)), NAT_TAG)))
IS_ZERO = _define("isZero", _lam(n, n(PAIR(TT, K(FF)))))
PREDECESSOR = _define("predecessor", _lam(n, n(PAIR(ZERO, I))))

NIL = _define("nil", _lam(d, mk_tagged(FST, S(S(S), d))))
CONS = _define("cons", _lam(p, mk_tagged(_lam(q, SND(q, p)), S(S(S), FST(p)))))


def _fresh(bases: str, *params: Term) -> list[Var]:
    avoid = set().union(*(fv(a) for a in params)) if params else set()
    out = []
    for base in bases:
        name = fresh_name(base, avoid)
        avoid.add(name)
        out.append(Var(name))
    return out


def Z(fn: Term) -> Term:
    """``Z{f} = tagged{wait2{ω,ω,f}, Z_tag}``; ``Z{f} u`` reduces to
    ``f tagged{Z{f}, Ku} u``."""
    return mk_tagged(mk_wait2(OMEGA, OMEGA, fn), Z_TAG)


def primrec0(g_: Term, h_: Term) -> Term:
    z_, p_, n_ = _fresh("zpn", g_, h_)
    body = SND(p_, PAIR(g_, _lam(n_, h_(n_, z_(PAIR(FST(p_), n_))))))
    return normalise(Z(_lam(z_, p_, body)), "primrec0")


def primrec(g_: Term, h_: Term, u_: Term) -> Term:
    return primrec0(g_(u_), h_(u_))


def minrec(f_: Term, u_: Term) -> Term:
    z_, p_ = _fresh("zp", f_, u_)
    body = COND(f_(u_, SND(p_)), SND(p_), z_(PAIR(FST(p_), SUCCESSOR(SND(p_)))))
    return normalise(Z(_lam(z_, p_, body)), "minrec")


def fold_left(f_: Term) -> Term:
    z_, p_, q_ = _fresh("zpq", f_)
    body = SND(p_, PAIR(FST(p_), _lam(q_, z_(PAIR(f_(FST(p_), FST(q_)), SND(q_))))))
    return normalise(Z(_lam(z_, p_, body)), "fold_left")


def lam_term(binder: str, body: Term, dummy: Term) -> Term:
    """``lam x t d = mk_fun (pair (λx.t) d)``; typed ``U -> V`` when
    ``d : U`` and ``x : U ⊢ t : V``."""
    return normalise(MK_FUN(PAIR(star_abs(binder, body), dummy)), "lam")


def cond_mono(d_: Term) -> Term:
    b_, x_, y_ = _fresh("bxy", d_)
    inner = lam_term(y_.name, b_(PAIR(x_, y_)), d_)
    return lam_term(b_.name, lam_term(x_.name, inner, d_), TT)


PLUS = _define("plus", _lam(m, n, primrec(I, _lam(u, k, r, SUCCESSOR(r)), m)(PAIR(ZERO, n))))


def _lam_builder(binder: Term, body: Term, dummy: Term) -> Term:
    if not isinstance(binder, Var):
        raise PreludeError("lam expects a variable as its first argument")
    return lam_term(binder.name, body, dummy)


_builders: dict[str, tuple[int, Callable[..., Term]]] = {
    "tagged": (2, mk_tagged),
    "wait": (2, mk_wait),
    "wait2": (3, mk_wait2),
    "Z": (1, Z),
    "primrec0": (2, primrec0),
    "primrec": (3, primrec),
    "minrec": (2, minrec),
    "fold_left": (1, fold_left),
    "lam": (3, _lam_builder),
    "cond_mono": (1, cond_mono),
}


def names() -> list[str]:
    return sorted(_table)


def builders() -> dict[str, int]:
    return {name: arity for name, (arity, _) in _builders.items()}


def get(name: str) -> Term:
    try:
        return _table[name]
    except KeyError:
        raise PreludeError(f"unknown prelude term {name!r}") from None


def build(name: str, args: list[Term] | tuple[Term, ...]) -> Term:
    try:
        arity, fn = _builders[name]
    except KeyError:
        raise PreludeError(f"unknown prelude builder {name!r}") from None
    if len(args) != arity:
        raise PreludeError(f"{name} takes {arity} argument(s), got {len(args)}")
    return fn(*args)
