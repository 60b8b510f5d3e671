import pytest

from combtypes import prelude
from combtypes.application import (
    Budget, BudgetExhausted, NoRule, apply_type, apply_type_multi,
)
from combtypes.inference import infer
from combtypes.kernel import K, S, Var, mk_tagged
from combtypes.surface import read_term
from combtypes.typemodel import (
    BOOL, I0, K0, NAT, S0, Fun, K1, List, Product, Rec, S1, S2, Sum,
    is_tagged_ty, tag_ty, tagged_tyl, type_of_program,
)

FST = type_of_program(prelude.get("fst"))
SND = type_of_program(prelude.get("snd"))


def test_combinatory_arms():
    assert apply_type(K0, S0) is K1(S0)
    assert apply_type(K1(NAT), BOOL) is NAT
    assert apply_type(S0, NAT) is S1(NAT)
    assert apply_type(S1(K0), K0) is S2(K0, K0)


def test_identity_type():
    assert apply_type(I0, BOOL) is BOOL


def test_bool_elimination():
    assert apply_type(BOOL, Product(NAT, NAT)) is NAT
    with pytest.raises(NoRule):
        apply_type(BOOL, Product(NAT, BOOL))


def test_self_application_of_sii_type():
    sii = S2(I0, I0)
    with pytest.raises(BudgetExhausted) as e:
        apply_type(sii, sii, Budget(10_000))
    assert e.value.used == 10_000


def test_bool_introduction():
    body = tagged_tyl(FST).arg
    tag = tag_ty(type_of_program(prelude.BOOL_TAG))
    assert apply_type(S1(body), tag) is BOOL
    assert apply_type(S1(tagged_tyl(SND).arg), tag) is BOOL


def test_unrecognised_tagged_type_has_no_value():
    tag = tag_ty(type_of_program(prelude.BOOL_TAG))
    with pytest.raises(NoRule):
        apply_type(S1(tagged_tyl(K0).arg), tag)


def test_non_tag_second_component_stays_combinatory():
    assert apply_type(S1(S2(K1(K0), K0)), K1(S0)) is S2(S2(K1(K0), K0), K1(S0))


def test_product_elimination_applies_the_handler():
    # (U1*U2)(V) = V(U1)(U2)
    assert apply_type(Product(NAT, BOOL), K0) is NAT
    assert apply_type(Product(NAT, BOOL), K1(I0)) is BOOL


def test_sum_elimination_goes_through_bool_product():
    v = K1(K1(NAT))
    assert apply_type(Sum(NAT, BOOL), v) is apply_type(Product(BOOL, Product(NAT, BOOL)), v)
    assert apply_type(Sum(NAT, BOOL), v) is NAT


def test_function_elimination_needs_the_domain():
    assert apply_type(Fun(NAT, BOOL), NAT) is BOOL
    with pytest.raises(NoRule):
        apply_type(Fun(NAT, BOOL), BOOL)


def test_nat_elimination():
    assert apply_type(NAT, Product(BOOL, K1(BOOL))) is BOOL
    with pytest.raises(NoRule):
        apply_type(NAT, Product(BOOL, K1(NAT)))
    with pytest.raises(NoRule):
        apply_type(NAT, BOOL)


def test_list_elimination():
    assert apply_type(List(NAT), Product(BOOL, K1(BOOL))) is BOOL
    with pytest.raises(NoRule):
        apply_type(List(NAT), Product(BOOL, I0))


def test_rec_elimination():
    # F(V1*V2 -> V1)(V1*V2) = V1 holds for F = K1 (K1 V1).
    assert apply_type(Rec(K1(K1(NAT))), Product(NAT, BOOL)) is NAT
    with pytest.raises(NoRule):
        apply_type(Rec(K1(K1(BOOL))), Product(NAT, BOOL))


def test_introduction_of_each_constructor():
    g = prelude.get
    cases = {
        "pair zero tt": Product(NAT, BOOL),
        "tt": BOOL, "ff": BOOL,
        "zero": NAT, "successor zero": NAT,
        "inl (pair zero tt)": Sum(NAT, BOOL),
        "nil zero": List(NAT), "cons (pair zero (nil zero))": List(NAT),
    }
    for src, want in cases.items():
        assert infer(read_term(src)).type is want, src
    assert infer(prelude.Z(K)).type is Rec(K0)
    lam = prelude.lam_term("x", g("isZero")(Var("x")), g("zero"))
    assert infer(lam).type is Fun(NAT, BOOL)


def test_apply_type_multi():
    assert apply_type_multi(type_of_program(prelude.get("cond")), [BOOL, NAT, NAT]) is NAT
    assert apply_type_multi(K0, []) is K0


def test_budget_counts_every_call():
    b = Budget()
    apply_type(I0, BOOL, b)
    # S2 arm, then K0 and K0 on V, then K1 on the results.
    assert b.used == 4


def test_budget_monotone_on_success():
    t, v = type_of_program(prelude.get("cond")), BOOL
    ref = apply_type(t, v, Budget())
    used = Budget()
    apply_type(t, v, used)
    for limit in range(used.used, used.used + 5):
        assert apply_type(t, v, Budget(limit)) is ref
    with pytest.raises(BudgetExhausted):
        apply_type(t, v, Budget(used.used - 1))


def test_guard_never_returns_tagged_type():
    pool = [S0, K0, I0, BOOL, NAT, S1(K0), K1(S0), FST, SND, tag_ty(K0),
            tag_ty(S1(K0)), S2(K1(K0), FST), S2(K1(K0), K0)]
    for u in pool:
        for v in pool:
            try:
                r = apply_type(S1(u), v, Budget(1000))
            except (NoRule, BudgetExhausted):
                continue
            assert not is_tagged_ty(r)


def test_tagged_term_with_unknown_tag_is_untypable():
    assert infer(mk_tagged(K, S)).verdict == "no"
