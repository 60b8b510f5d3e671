"""Surface syntax for terms and types.

Terms::

    term   := atom+                         left-associated application
    atom   := S | K | ident | (term)
            | \\ ident+ . term               star abstraction
            | let ident = term in term
            | builder{term, ...}            e.g. Z{f}, primrec{g, h, u}
            | lam ident atom atom           lam x t d

``λ`` may be written for ``\\``.  A word made only of the letters S, K and I
(``SKK``, ``SII``) is read letter by letter.  Identifiers name prelude terms
unless bound by a λ or let; any other identifier is a free variable.

Types, loosest first: ``T -> U`` (right-assoc), ``T + U``, ``T * U``, the
prefix forms ``S1 T``, ``K1 T``, ``S2 T U``, and atoms ``S0``, ``K0``,
``I0``, ``Bool``, ``Nat``, ``Rec{T}``, ``List{T}``, ``Abs0{T}``,
``Abs1{T,U}``, ``Abs2{T,U,V}``, ``(T)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from . import prelude
from .kernel import App, Op, Term, Var, star_abs
from .kernel import K as K_OP, S as S_OP
from .typemodel import (
    BOOL, FUN_LABEL, I0, K0, LIST_LABEL, NAT, PRODUCT_LABEL, REC_LABEL, S0,
    SUM_LABEL, Abs0, Abs1, Abs2, K0Type, K1, List, Rec, S0Type, S1, S2, Type,
)

__all__ = [
    "ParseError", "SOp", "Name", "Lambda", "Let", "Apply", "Builder", "LamForm",
    "SurfaceTerm", "parse_term", "elaborate", "read_term", "print_term",
    "parse_type", "print_type", "parse_context",
]


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, src: str = ""):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos
        self.src = src


@dataclass(frozen=True)
class SOp:
    name: str


@dataclass(frozen=True)
class Name:
    ident: str


@dataclass(frozen=True)
class Lambda:
    binder: str
    body: "SurfaceTerm"


@dataclass(frozen=True)
class Let:
    binder: str
    bound: "SurfaceTerm"
    body: "SurfaceTerm"


@dataclass(frozen=True)
class Apply:
    fun: "SurfaceTerm"
    arg: "SurfaceTerm"


@dataclass(frozen=True)
class Builder:
    name: str
    args: tuple["SurfaceTerm", ...]


@dataclass(frozen=True)
class LamForm:
    binder: str
    body: "SurfaceTerm"
    dummy: "SurfaceTerm"


SurfaceTerm = Union[SOp, Name, Lambda, Let, Apply, Builder, LamForm]

_TERM_TOKEN = re.compile(r"\s*(?:(?P<id>[A-Za-z_][A-Za-z0-9_']*)|(?P<sym>[\\λ.(){},=]))")
_SKI_WORD = re.compile(r"[SKI]{2,}")
_KEYWORDS = {"let", "in", "lam"}


def _tokenize_term(src: str) -> list[tuple[str, str, int]]:
    toks: list[tuple[str, str, int]] = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        m = _TERM_TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {src[pos]!r}", pos, src)
        start = m.start("id") if m.group("id") else m.start("sym")
        if m.group("id"):
            word = m.group("id")
            if _SKI_WORD.fullmatch(word):
                toks.extend(("id", ch, start + i) for i, ch in enumerate(word))
            elif word in _KEYWORDS:
                toks.append((word, word, start))
            else:
                toks.append(("id", word, start))
        else:
            sym = m.group("sym")
            toks.append(("\\" if sym == "λ" else sym, sym, start))
        pos = m.end()
    toks.append(("eof", "", len(src)))
    return toks


class _TermParser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize_term(src)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def next(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.next()
        if tok[0] != kind:
            self.fail(f"expected {kind!r}", tok)
        return tok

    def fail(self, message: str, tok) -> None:
        found = "end of input" if tok[0] == "eof" else repr(tok[1])
        raise ParseError(f"{message}, found {found}", tok[2], self.src)

    def parse(self) -> SurfaceTerm:
        t = self.term()
        tok = self.peek()
        if tok[0] != "eof":
            self.fail("unexpected token", tok)
        return t

    def starts_atom(self) -> bool:
        return self.peek()[0] in ("id", "(", "\\", "let", "lam")

    def term(self) -> SurfaceTerm:
        if not self.starts_atom():
            self.fail("expected a term", self.peek())
        t = self.atom()
        while self.starts_atom():
            t = Apply(t, self.atom())
        return t

    def atom(self) -> SurfaceTerm:
        kind, text, _ = tok = self.next()
        if kind == "(":
            t = self.term()
            self.expect(")")
            return t
        if kind == "\\":
            binders = [self.expect("id")[1]]
            while self.peek()[0] == "id":
                binders.append(self.next()[1])
            self.expect(".")
            body = self.term()
            for x in reversed(binders):
                body = Lambda(x, body)
            return body
        if kind == "let":
            x = self.expect("id")[1]
            self.expect("=")
            bound = self.term()
            self.expect("in")
            return Let(x, bound, self.term())
        if kind == "lam":
            if self.peek()[0] == "{":
                return self.builder("lam")
            x = self.expect("id")[1]
            if not self.starts_atom():
                self.fail("lam needs a body and a dummy value", self.peek())
            body = self.atom()
            if not self.starts_atom():
                self.fail("lam needs a dummy value", self.peek())
            return LamForm(x, body, self.atom())
        if kind == "id":
            if text in ("S", "K"):
                return SOp(text)
            if self.peek()[0] == "{" and text in prelude.builders():
                return self.builder(text)
            return Name(text)
        self.fail("expected a term", tok)

    def builder(self, name: str) -> SurfaceTerm:
        self.expect("{")
        args = [self.term()]
        while self.peek()[0] == ",":
            self.next()
            args.append(self.term())
        self.expect("}")
        if name == "lam":
            if len(args) != 3 or not isinstance(args[0], Name):
                raise ParseError("lam{x, t, d} needs a variable and two terms",
                                 self.toks[self.i - 1][2], self.src)
            return LamForm(args[0].ident, args[1], args[2])
        return Builder(name, tuple(args))


def parse_term(src: str) -> SurfaceTerm:
    return _TermParser(src).parse()


def elaborate(t: SurfaceTerm, bound: frozenset[str] = frozenset()) -> Term:
    """Translate to S/K/variables; λ and let use star abstraction."""
    match t:
        case SOp(name):
            return S_OP if name == "S" else K_OP
        case Name(ident):
            if ident in bound:
                return Var(ident)
            try:
                return prelude.get(ident)
            except prelude.PreludeError:
                return Var(ident)
        case Apply(f, a):
            return App(elaborate(f, bound), elaborate(a, bound))
        case Lambda(x, body):
            return star_abs(x, elaborate(body, bound | {x}))
        case Let(x, u, body):
            return App(star_abs(x, elaborate(body, bound | {x})), elaborate(u, bound))
        case Builder(name, args):
            return prelude.build(name, [elaborate(a, bound) for a in args])
        case LamForm(x, body, dummy):
            return prelude.lam_term(x, elaborate(body, bound | {x}), elaborate(dummy, bound))
    raise TypeError(f"not a surface term: {t!r}")


def read_term(src: str) -> Term:
    """Parse and elaborate."""
    return elaborate(parse_term(src))


_I = S_OP(K_OP, K_OP)
_GLUE = {"S", "K", "I"}


def print_term(t: Term, abbreviate: bool = True) -> str:
    """Compact text: operators are glued (``S(KK)``), variables spaced.

    With ``abbreviate``, an argument equal to ``SKK`` prints as ``I``.
    """
    out: list[str] = []

    def emit(s: str) -> None:
        if out and _word_char(out[-1][-1]) and _word_char(s[0]):
            # Operator letters glue into words that split back; names do not.
            if not (out[-1] in _GLUE and s in _GLUE):
                out.append(" ")
        out.append(s)

    def go(t: Term, as_arg: bool) -> None:
        if isinstance(t, Op):
            emit(t.name)
        elif isinstance(t, Var):
            emit(t.name)
        elif abbreviate and as_arg and t is _I:
            emit("I")
        elif as_arg:
            emit("(")
            go(t, False)
            emit(")")
        else:
            go(t.fun, False)
            go(t.arg, True)

    go(t, False)
    return "".join(out)


def _word_char(c: str) -> bool:
    return c.isalnum() or c in "_'"


# Types

_TYPE_TOKEN = re.compile(r"\s*(?:(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>->|[*+(){},]))")


def _tokenize_type(src: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        m = _TYPE_TOKEN.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", pos, src)
        if m.group("id"):
            toks.append(("id", m.group("id"), m.start("id")))
        else:
            toks.append((m.group("sym"), m.group("sym"), m.start("sym")))
        pos = m.end()
    toks.append(("eof", "", len(src)))
    return toks


_BRACED = {"Rec": 1, "List": 1, "Abs0": 1, "Abs1": 2, "Abs2": 3}
_PREFIX = {"S1": 1, "K1": 1, "S2": 2}
_CONSTANTS = {"S0": S0, "K0": K0, "I0": I0, "Bool": BOOL, "Nat": NAT}


class _TypeParser(_TermParser):
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize_type(src)
        self.i = 0

    def parse(self) -> Type:
        t = self.arrow()
        tok = self.peek()
        if tok[0] != "eof":
            self.fail("unexpected token", tok)
        return t

    def arrow(self) -> Type:
        left = self.sum()
        if self.peek()[0] == "->":
            self.next()
            return Abs2(FUN_LABEL, left, self.arrow())
        return left

    def sum(self) -> Type:
        left = self.product()
        if self.peek()[0] == "+":
            self.next()
            return Abs2(SUM_LABEL, left, self.sum())
        return left

    def product(self) -> Type:
        left = self.prefix()
        if self.peek()[0] == "*":
            self.next()
            return Abs2(PRODUCT_LABEL, left, self.product())
        return left

    def prefix(self) -> Type:
        kind, text, _ = self.peek()
        if kind == "id" and text in _PREFIX:
            self.next()
            args = [self.type_atom() for _ in range(_PREFIX[text])]
            if text == "S1":
                return S1(args[0])
            if text == "K1":
                return K1(args[0])
            return S2(args[0], args[1])
        return self.type_atom()

    def type_atom(self) -> Type:
        kind, text, _ = tok = self.next()
        if kind == "(":
            t = self.arrow()
            self.expect(")")
            return t
        if kind == "id":
            if text in _CONSTANTS:
                return _CONSTANTS[text]
            if text in _BRACED:
                self.expect("{")
                args = [self.arrow()]
                for _ in range(_BRACED[text] - 1):
                    self.expect(",")
                    args.append(self.arrow())
                self.expect("}")
                if text == "Rec":
                    return Rec(args[0])
                if text == "List":
                    return List(args[0])
                return {"Abs0": Abs0, "Abs1": Abs1, "Abs2": Abs2}[text](*args)
        self.fail("expected a type", tok)


def parse_type(src: str) -> Type:
    return _TypeParser(src).parse()


_INFIX = {FUN_LABEL: ("->", 0), SUM_LABEL: ("+", 1), PRODUCT_LABEL: ("*", 2)}
_PREFIX_LEVEL = 3


def print_type(t: Type) -> str:
    def go(t: Type, need: int) -> str:
        match t:
            case S0Type():
                return "S0"
            case K0Type():
                return "K0"
            case Abs0(label) if t is BOOL:
                return "Bool"
            case Abs0(label) if t is NAT:
                return "Nat"
            case Abs1(label, a) if label is REC_LABEL:
                return f"Rec{{{go(a, 0)}}}"
            case Abs1(label, a) if label is LIST_LABEL:
                return f"List{{{go(a, 0)}}}"
            case Abs2(label, a, b) if label in _INFIX:
                op, level = _INFIX[label]
                s = f"{go(a, level + 1)}{op}{go(b, level)}"
                return f"({s})" if need > level else s
            case Abs0(label):
                return f"Abs0{{{go(label, 0)}}}"
            case Abs1(label, a):
                return f"Abs1{{{go(label, 0)},{go(a, 0)}}}"
            case Abs2(label, a, b):
                return f"Abs2{{{go(label, 0)},{go(a, 0)},{go(b, 0)}}}"
            case S1(a) | K1(a):
                name = "S1" if isinstance(t, S1) else "K1"
                s = f"{name} {arg(a)}"
            case S2(a, b):
                s = f"S2 {arg(a)} {arg(b)}"
            case _:
                raise TypeError(f"not a type: {t!r}")
        return f"({s})" if need > _PREFIX_LEVEL else s

    def arg(a: Type) -> str:
        return go(a, _PREFIX_LEVEL + 1)

    return go(t, 0)


def parse_context(src: str) -> list[tuple[str, Type]]:
    """``"x:Bool, y:Nat*Nat"`` to a list of bindings; commas inside braces or
    parentheses do not split."""
    out = []
    for item in _split_top_level(src):
        if not item.strip():
            continue
        name, sep, ty = item.partition(":")
        name = name.strip()
        if not sep or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", name):
            raise ParseError(f"bad context entry {item.strip()!r}", 0, src)
        out.append((name, parse_type(ty)))
    return out


def _split_top_level(src: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in src:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts
