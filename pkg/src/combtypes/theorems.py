"""Executable checks of the prelude's reduction and typing laws.

Reduction laws ``lhs ⟶ rhs`` are checked on concrete instances: they hold
when ``rhs`` occurs on the reduction sequence of ``lhs``, or when both sides
reach the same normal form.  Typing laws are checked with
:func:`apply_type_multi` or with :func:`infer` under a context that assigns
the hypothesised types to free variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from . import prelude as P
from .application import Budget, TypeApplicationError, apply_type_multi
from .inference import infer
from .kernel import I, K, Reducer, S, Term, Var, contract, mk_tagged, reduce, trace
from .typemodel import (
    BOOL, I0, K0, NAT, S0, Fun, K1, List, Product, S1, Sum, Type,
    type_of_program,
)

__all__ = ["TheoremResult", "check_theorems", "reduces_to",
           "SubjectReduction", "check_subject_reduction"]

STEP_LIMIT = 200_000
CALL_LIMIT = 10**6


@dataclass
class TheoremResult:
    name: str
    instances: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.instances > 0 and not self.failures


def reduces_to(lhs: Term, rhs: Term, steps: int = STEP_LIMIT) -> bool:
    """``lhs ⟶* rhs`` literally, or both sides share a normal form."""
    for t in trace(lhs, steps):
        if t is rhs:
            return True
    a, _, na = reduce(lhs, steps)
    b, _, nb = reduce(rhs, steps)
    return na and nb and a is b


def _check(name: str, cases: Iterable[tuple[str, Callable[[], bool]]]) -> TheoremResult:
    res = TheoremResult(name)
    for label, test in cases:
        res.instances += 1
        try:
            ok = test()
        except (TypeApplicationError, P.PreludeError) as e:
            ok = False
            label = f"{label}: {e}"
        if not ok:
            res.failures.append(label)
    return res


def _num(k: int) -> Term:
    n = P.get("zero")
    for _ in range(k):
        n = P.get("successor")(n)
    return P.normalise(n)


def _infers(term: Term, want: Type, gamma=()) -> bool:
    return infer(term, gamma, CALL_LIMIT).type is want


def _ty(t: Term) -> Type:
    ty = infer(t, (), CALL_LIMIT).type
    if ty is None:
        raise P.PreludeError(f"instance {t!r} is untypable")
    return ty


def _lam(xs: str, body: Term) -> Term:
    from .kernel import star_abs_many

    return P.normalise(star_abs_many(list(xs), body))


g = P.get
x, y, u, v, n, b, f, h, p, l, a = map(Var, "xyuvnbfhpla")


def _tagged_red() -> TheoremResult:
    insts = [(I, S, K), (K, K(S), S), (g("fst"), S(K), g("pair")(K, S)),
             (S(K), g("nat_tag"), g("zero"))]
    return _check("tagged_red", [
        (f"{fi!r},{ti!r},{ui!r}", lambda fi=fi, ti=ti, ui=ui:
         reduces_to(mk_tagged(fi, ti)(ui), fi(ui)))
        for fi, ti, ui in insts
    ])


def _z_red() -> TheoremResult:
    fs = [K, K(I), _lam("zw", Var("z")), _lam("zw", g("pair")(Var("w"), Var("w")))]
    us = [S, g("zero"), g("tt")]
    return _check("Z_red", [
        (f"f={fi!r},u={ui!r}", lambda fi=fi, ui=ui:
         reduces_to(P.Z(fi)(ui), fi(mk_tagged(P.Z(fi), K(ui)), ui)))
        for fi in fs for ui in us
    ])


def _primrec_instances():
    # (g, h, u): g u is a value; h u n r combines the predecessor and the
    # recursive result.
    return [
        (K(g("zero")), _lam("uks", g("successor")(Var("s"))), S),
        (I, _lam("ukr", g("successor")(Var("r"))), _num(2)),
        (K(g("tt")), _lam("ukr", g("cond")(Var("r"), g("ff"), g("tt"))), K),
    ]


def _primrec_red() -> TheoremResult:
    cases = []
    for gi, hi, ui in _primrec_instances():
        rec = P.primrec(gi, hi, ui)
        for vi in (g("zero"), g("tt")):
            cases.append((f"zero clause u={ui!r} v={vi!r}",
                          lambda rec=rec, gi=gi, ui=ui, vi=vi:
                          reduces_to(rec(g("pair")(vi, g("zero"))), gi(ui))))
            for k in (0, 2):
                nk = _num(k)
                cases.append((f"successor clause n={k}",
                              lambda rec=rec, hi=hi, ui=ui, vi=vi, nk=nk:
                              reduces_to(rec(g("pair")(vi, g("successor")(nk))),
                                         hi(ui, nk, rec(g("pair")(vi, nk))))))
    return _check("primrec_red_zero", cases)


def _at_least(k: int) -> Term:
    """``λu n. n ≥ k`` on numerals, as a Bool."""
    if k == 0:
        return _lam("un", g("tt"))
    m = Var("n")
    for _ in range(k - 1):
        m = g("predecessor")(m)
    return _lam("un", g("cond")(g("isZero")(m), g("ff"), g("tt")))


def _minrec_red() -> TheoremResult:
    cases = []
    for fi, ui in [(_at_least(1), S), (_at_least(2), K), (_at_least(3), g("zero"))]:
        rec = P.minrec(fi, ui)
        for k in range(4):
            nk = _num(k)
            arg = g("pair")(g("zero"), nk)
            verdict, _, _ = reduce(fi(ui, nk), STEP_LIMIT)
            if verdict is g("tt"):
                cases.append((f"tt clause n={k}", lambda rec=rec, arg=arg, nk=nk:
                              reduces_to(rec(arg), nk)))
            elif verdict is g("ff"):
                nxt = g("pair")(g("zero"), g("successor")(nk))
                cases.append((f"ff clause n={k}", lambda rec=rec, arg=arg, nxt=nxt:
                              reduces_to(rec(arg), rec(nxt))))
            else:
                cases.append((f"predicate not boolean at n={k}", lambda: False))
    return _check("minrec_red", cases)


def _fold_left_red() -> TheoremResult:
    cons, nil, pair = g("cons"), g("nil"), g("pair")
    fs = [g("plus"), K, _lam("ab", Var("b"))]
    cases = []
    for fi in fs:
        fl = P.fold_left(fi)
        for ui in (g("zero"), _num(1)):
            cases.append(("nil clause", lambda fl=fl, ui=ui:
                          reduces_to(fl(pair(ui, nil(g("zero")))), ui)))
            for ai in (_num(1), _num(2)):
                rest = cons(pair(_num(3), nil(g("zero"))))
                lhs = fl(pair(ui, cons(pair(ai, rest))))
                rhs = fl(pair(fi(ui, ai), rest))
                cases.append(("cons clause", lambda lhs=lhs, rhs=rhs: reduces_to(lhs, rhs)))
    return _check("fold_left_red", cases)


_SAMPLE_TYPES = [NAT, BOOL, Product(NAT, BOOL), List(NAT), Fun(NAT, BOOL),
                 Sum(BOOL, NAT), S1(K0)]


def _app_ty_cond() -> TheoremResult:
    cond_ty = type_of_program(g("cond"))
    return _check("app_ty_cond", [
        (repr(t), lambda t=t: apply_type_multi(cond_ty, [BOOL, t, t], Budget(CALL_LIMIT)) is t)
        for t in _SAMPLE_TYPES
    ])


def _derive_cond() -> TheoremResult:
    term = g("cond")(b, u, v)
    return _check("derive_cond", [
        (repr(t), lambda t=t: _infers(term, t, [("b", BOOL), ("u", t), ("v", t)]))
        for t in _SAMPLE_TYPES
    ])


def _derive_lam() -> TheoremResult:
    # (body with x free, dummy of the domain, domain, codomain)
    insts = [
        (g("isZero")(x), g("zero"), NAT, BOOL),
        (x, g("tt"), BOOL, BOOL),
        (g("pair")(x, x), g("zero"), NAT, Product(NAT, NAT)),
        (g("successor")(x), _num(2), NAT, NAT),
        (g("cond")(x, g("zero"), _num(1)), g("ff"), BOOL, NAT),
    ]
    cases = []
    for body, d, dom, cod in insts:
        def test(body=body, d=d, dom=dom, cod=cod):
            premise = _infers(body, cod, [("x", dom)])
            return premise and _infers(P.lam_term("x", body, d), Fun(dom, cod))
        cases.append((f"{dom!r}->{cod!r}", test))
    return _check("derive_lam", cases)


def _derive_primrec_app() -> TheoremResult:
    # Hypothesised G, H, U, T with G(U) = T and H(U)(Nat)(T) = T; the pair
    # argument carries a dummy of the result type.
    insts = [
        (K1(NAT), K1(K1(I0)), S0, NAT),
        (I0, K1(K1(I0)), BOOL, BOOL),
        (K1(Product(NAT, BOOL)), K1(K1(I0)), NAT, Product(NAT, BOOL)),
        (_ty(g("I")), _ty(_lam("ukr", g("successor")(Var("r")))),
         NAT, NAT),
    ]
    cases = []
    rec = P.primrec(Var("g"), h, u)
    for G, H, U, T in insts:
        def test(G=G, H=H, U=U, T=T):
            budget = Budget(CALL_LIMIT)
            if apply_type_multi(G, [U], budget) is not T:
                return False
            if apply_type_multi(H, [U, NAT, T], budget) is not T:
                return False
            return _infers(rec(p), T, [("g", G), ("h", H), ("u", U), ("p", Product(T, NAT))])
        cases.append((f"T={T!r}", test))
    return _check("derive_primrec_app", cases)


def _derive_minrec_app() -> TheoremResult:
    insts = [
        (K1(K1(BOOL)), S0),
        (_ty(_at_least(2)), K0),
        (_ty(_lam("un", g("isZero")(Var("n")))), NAT),
    ]
    rec = P.minrec(f, u)
    cases = []
    for F, U in insts:
        def test(F=F, U=U):
            if apply_type_multi(F, [U, NAT], Budget(CALL_LIMIT)) is not BOOL:
                return False
            return _infers(rec(g("pair")(g("zero"), n)), NAT,
                           [("f", F), ("u", U), ("n", NAT)])
        cases.append((f"F={F!r}", test))
    return _check("derive_minrec_app", cases)


def _derive_fold_left() -> TheoremResult:
    insts = [
        (K0, NAT, BOOL),
        (K1(K1(BOOL)), BOOL, NAT),
        (_ty(g("plus")), NAT, NAT),
        (_ty(_lam("ab", g("cond")(Var("b"), Var("a"), Var("a")))), NAT, BOOL),
    ]
    fl = P.fold_left(f)
    cases = []
    for F, U, V in insts:
        def test(F=F, U=U, V=V):
            if apply_type_multi(F, [U, V], Budget(CALL_LIMIT)) is not U:
                return False
            return _infers(fl(g("pair")(u, l)), U, [("f", F), ("u", U), ("l", List(V))])
        cases.append((f"U={U!r},V={V!r}", test))
    return _check("derive_fold_left", cases)


CHECKS = {
    "tagged_red": _tagged_red,
    "Z_red": _z_red,
    "primrec_red_zero": _primrec_red,
    "minrec_red": _minrec_red,
    "fold_left_red": _fold_left_red,
    "app_ty_cond": _app_ty_cond,
    "derive_cond": _derive_cond,
    "derive_lam": _derive_lam,
    "derive_primrec_app": _derive_primrec_app,
    "derive_minrec_app": _derive_minrec_app,
    "derive_fold_left": _derive_fold_left,
}


def check_theorems(names: Iterable[str] | None = None) -> list[TheoremResult]:
    return [CHECKS[name]() for name in (names or CHECKS)]


@dataclass(frozen=True)
class SubjectReduction:
    type: Type
    steps: int
    normal: bool
    failed_at: Optional[int] = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.failed_at is None


def check_subject_reduction(t: Term, gamma=(), max_steps: int = 10**4,
                            limit: int = CALL_LIMIT, full: bool = False) -> SubjectReduction:
    """Follow the reduction of ``t`` and check its type at every step.

    Inference is compositional, so when a contractum has the type of its
    redex the whole term keeps its type; only when the local types differ is
    the whole term re-inferred.  ``full`` re-infers the whole term at every
    step instead.  Types of subterms are memoised across steps.
    """
    memo: dict = {}
    start = infer(t, gamma, limit, memo)
    if start.type is None:
        raise ValueError(f"term is not typable: {start.outcome}")
    want = start.type
    r = Reducer(t)
    while r.steps < max_steps:
        redex = r.find()
        if redex is None:
            break
        local = full
        if not full:
            old = infer(redex, gamma, limit, memo).type
            new = infer(contract(redex), gamma, limit, memo).type
            local = old is not new
        r.contract()
        if local:
            got = infer(r.term, gamma, limit, memo)
            if got.type is not want:
                return SubjectReduction(want, r.steps, False, r.steps, repr(got.outcome))
    return SubjectReduction(want, r.steps, r.find() is None)
