import pytest

from combtypes import prelude
from combtypes.kernel import I, K, S, Var
from combtypes.surface import (
    ParseError, parse_context, parse_term, parse_type, print_term, print_type, read_term,
)
from combtypes.typemodel import BOOL, I0, K0, NAT, S0, Abs2, Fun, K1, List, Product, Rec, S1, S2, Sum


def test_operators_and_application():
    assert read_term("S K K") is S(K, K)
    assert read_term("SKK") is S(K, K)
    assert read_term("S(KS)K") is S(K(S), K)
    assert read_term("I") is I


def test_lambda_elaborates_by_star_abstraction():
    t = read_term(r"\x. K S S x")
    assert t is read_term("S(K(KSS))(SKK)")
    assert t.size == 8
    assert read_term("λx y. x") is read_term(r"\x. \y. x")


def test_let_binds_by_abstraction():
    assert read_term("let y = K in y S") is read_term(r"(\y. y S) K")


def test_prelude_names_and_shadowing():
    assert read_term("tt") is prelude.get("tt")
    assert read_term(r"\tt. tt") is I


def test_free_names_become_variables():
    assert read_term("x y") is Var("x")(Var("y"))
    assert read_term("KSSx") is Var("KSSx")
    assert read_term(r"\x. KSSx") is K(Var("KSSx"))


def test_builders():
    assert read_term("Z{K}") is prelude.Z(K)
    assert read_term("cond_mono{zero}") is prelude.cond_mono(prelude.get("zero"))
    lam = read_term("lam x (isZero x) zero")
    assert lam is read_term("lam{x, isZero x, zero}")
    assert lam is prelude.lam_term("x", prelude.get("isZero")(Var("x")), prelude.get("zero"))


def test_parse_tree_shape():
    tree = parse_term(r"\x. x S")
    assert type(tree).__name__ == "Lambda"


def test_print_term():
    # SKK is shortened to I only in argument position.
    assert print_term(S(K, K)) == "SKK"
    assert print_term(K(S(K, K))) == "KI"
    assert print_term(K(S(K, K)), abbreviate=False) == "K(SKK)"
    assert print_term(S(K(S), K)) == "S(KS)K"
    assert print_term(Var("x")(Var("y"))) == "x y"


@pytest.mark.parametrize("src", ["S(K(KSS))I", "S(SKK)(SKK)(S(SKK)(SKK))", "pair zero tt",
                                 "cond b x y", "KSSx S", "successor (successor zero)"])
def test_term_round_trip(src):
    t = read_term(src)
    assert read_term(print_term(t)) is t
    assert read_term(print_term(t, abbreviate=False)) is t


@pytest.mark.parametrize("error, pos", [("(S K", 4), ("S )", 2), (r"\ . x", 2),
                                        ("let x = in x", 8), ("", 0), ("Z{K", 3)])
def test_term_errors_have_positions(error, pos):
    with pytest.raises(ParseError) as e:
        read_term(error)
    assert e.value.pos == pos


def test_types():
    assert parse_type("S0") is S0
    assert parse_type("I0") is I0
    assert parse_type("S2 (S1 S0) K0") is S2(S1(S0), K0)
    assert parse_type("Nat*Bool -> Bool") is Fun(Product(NAT, BOOL), BOOL)
    assert parse_type("Nat -> Nat -> Bool") is Fun(NAT, Fun(NAT, BOOL))
    assert parse_type("List{Nat} + Bool") is Sum(List(NAT), BOOL)
    assert parse_type("Rec{K1 K0}") is Rec(K1(K0))
    assert parse_type("Abs2{S0, Nat, Bool}") is Abs2(S0, NAT, BOOL)


@pytest.mark.parametrize("ty", [S0, K0, I0, S1(K1(S0)), Fun(Fun(NAT, NAT), BOOL),
                                Product(Sum(NAT, BOOL), List(Product(BOOL, BOOL))),
                                Rec(K1(K0)), S2(Product(NAT, NAT), K0), K1(Fun(NAT, BOOL))])
def test_type_round_trip(ty):
    assert parse_type(print_type(ty)) is ty


@pytest.mark.parametrize("error, pos", [("Nat *", 5), ("Foo", 0), ("S1", 2)])
def test_type_errors_have_positions(error, pos):
    with pytest.raises(ParseError) as e:
        parse_type(error)
    assert e.value.pos == pos


def test_context():
    got = parse_context("x:Bool, y:Nat*Nat, f: Abs2{S0, Nat, Bool}")
    assert got == [("x", BOOL), ("y", Product(NAT, NAT)), ("f", Abs2(S0, NAT, BOOL))]
    assert parse_context("") == []
    with pytest.raises(ParseError):
        parse_context("x Bool")
