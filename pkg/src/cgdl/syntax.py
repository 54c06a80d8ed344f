"""Abstract syntax, parser and printer for programs and formulas.

Program grammar (loosest to tightest): choice `+`, parallel `&`, sequence
`;`, postfix star `*`; all binary operators left-associative.

Formula grammar (loosest to tightest): `<->`, `->` (right-associative),
`|`, `&`, then modalities `<prog>` / `[prog]` and atoms `true`, `false`,
identifiers.  The unicode aliases U+2229 (program parallel), U+27E8 and
U+27E9 (diamond brackets) are accepted on input and never printed.

render_* emit minimal parentheses and are exact inverses of the parsers:
parse(render(x)) == x for every AST.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

__all__ = [
    "ParseError",
    "Atomic", "Seq", "Par", "Choice", "Star", "Program",
    "Top", "Bot", "Prop", "Or", "And", "Implies", "Iff", "Diamond", "Box",
    "Formula", "TOP", "BOT",
    "parse_program", "parse_formula", "render_program", "render_formula",
    "program_atoms", "formula_atoms", "formula_props",
]


class ParseError(ValueError):
    """Lexical or grammatical error, carrying a 1-based column position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (column {position})")
        self.position = position


# --- program ASTs ---------------------------------------------------------

@dataclass(frozen=True)
class Atomic:
    name: str


@dataclass(frozen=True)
class Seq:
    left: "Program"
    right: "Program"


@dataclass(frozen=True)
class Par:
    left: "Program"
    right: "Program"


@dataclass(frozen=True)
class Choice:
    left: "Program"
    right: "Program"


@dataclass(frozen=True)
class Star:
    child: "Program"


Program = Union[Atomic, Seq, Par, Choice, Star]


# --- formula ASTs ---------------------------------------------------------

@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Prop:
    name: str


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Diamond:
    program: Program
    child: "Formula"


@dataclass(frozen=True)
class Box:
    program: Program
    child: "Formula"


Formula = Union[Top, Bot, Prop, Or, And, Implies, Iff, Diamond, Box]

TOP = Top()
BOT = Bot()


# --- tokenizer ------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<iff><->)
  | (?P<implies>->)
  | (?P<op>[;+*|()\[\]<>&]|∩|⟨|⟩)
    """,
    re.VERBOSE,
)

_ALIASES = {"∩": "&", "⟨": "<", "⟩": ">"}


@dataclass(frozen=True)
class _Token:
    kind: str      # canonical token text, or "ident" / "end"
    text: str
    position: int  # 1-based column


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos + 1)
        if m.lastgroup != "ws":
            raw = m.group()
            if m.lastgroup == "ident":
                kind = "ident"
            else:
                kind = _ALIASES.get(raw, raw)
            tokens.append(_Token(kind, raw, pos + 1))
        pos = m.end()
    tokens.append(_Token("end", "", len(text) + 1))
    return tokens


class _Cursor:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        if tok.kind != "end":
            self.index += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            found = repr(tok.text) if tok.kind != "end" else "end of input"
            raise ParseError(f"expected {what}, found {found}", tok.position)
        return self.advance()


# --- program parser -------------------------------------------------------

def _parse_prog_choice(cur: _Cursor) -> Program:
    node = _parse_prog_par(cur)
    while cur.peek().kind == "+":
        cur.advance()
        node = Choice(node, _parse_prog_par(cur))
    return node


def _parse_prog_par(cur: _Cursor) -> Program:
    node = _parse_prog_seq(cur)
    while cur.peek().kind == "&":
        cur.advance()
        node = Par(node, _parse_prog_seq(cur))
    return node


def _parse_prog_seq(cur: _Cursor) -> Program:
    node = _parse_prog_star(cur)
    while cur.peek().kind == ";":
        cur.advance()
        node = Seq(node, _parse_prog_star(cur))
    return node


def _parse_prog_star(cur: _Cursor) -> Program:
    node = _parse_prog_primary(cur)
    while cur.peek().kind == "*":
        cur.advance()
        node = Star(node)
    return node


def _parse_prog_primary(cur: _Cursor) -> Program:
    tok = cur.peek()
    if tok.kind == "ident":
        if tok.text in ("true", "false"):
            raise ParseError(f"{tok.text!r} is not a program name", tok.position)
        cur.advance()
        return Atomic(tok.text)
    if tok.kind == "(":
        cur.advance()
        node = _parse_prog_choice(cur)
        cur.expect(")", "')'")
        return node
    found = repr(tok.text) if tok.kind != "end" else "end of input"
    raise ParseError(f"expected a program, found {found}", tok.position)


def parse_program(text: str) -> Program:
    cur = _Cursor(_tokenize(text))
    node = _parse_prog_choice(cur)
    tok = cur.peek()
    if tok.kind != "end":
        raise ParseError(f"unexpected {tok.text!r} after program", tok.position)
    return node


# --- formula parser -------------------------------------------------------

def _parse_form_iff(cur: _Cursor) -> Formula:
    node = _parse_form_implies(cur)
    while cur.peek().kind == "<->":
        cur.advance()
        node = Iff(node, _parse_form_implies(cur))
    return node


def _parse_form_implies(cur: _Cursor) -> Formula:
    node = _parse_form_or(cur)
    if cur.peek().kind == "->":
        cur.advance()
        return Implies(node, _parse_form_implies(cur))
    return node


def _parse_form_or(cur: _Cursor) -> Formula:
    node = _parse_form_and(cur)
    while cur.peek().kind == "|":
        cur.advance()
        node = Or(node, _parse_form_and(cur))
    return node


def _parse_form_and(cur: _Cursor) -> Formula:
    node = _parse_form_unary(cur)
    while cur.peek().kind == "&":
        cur.advance()
        node = And(node, _parse_form_unary(cur))
    return node


def _parse_form_unary(cur: _Cursor) -> Formula:
    tok = cur.peek()
    if tok.kind == "<":
        cur.advance()
        program = _parse_prog_choice(cur)
        cur.expect(">", "'>' closing the diamond")
        return Diamond(program, _parse_form_unary(cur))
    if tok.kind == "[":
        cur.advance()
        program = _parse_prog_choice(cur)
        cur.expect("]", "']' closing the box")
        return Box(program, _parse_form_unary(cur))
    return _parse_form_atom(cur)


def _parse_form_atom(cur: _Cursor) -> Formula:
    tok = cur.peek()
    if tok.kind == "ident":
        cur.advance()
        if tok.text == "true":
            return TOP
        if tok.text == "false":
            return BOT
        return Prop(tok.text)
    if tok.kind == "(":
        cur.advance()
        node = _parse_form_iff(cur)
        cur.expect(")", "')'")
        return node
    found = repr(tok.text) if tok.kind != "end" else "end of input"
    raise ParseError(f"expected a formula, found {found}", tok.position)


def parse_formula(text: str) -> Formula:
    cur = _Cursor(_tokenize(text))
    node = _parse_form_iff(cur)
    tok = cur.peek()
    if tok.kind != "end":
        raise ParseError(f"unexpected {tok.text!r} after formula", tok.position)
    return node


# --- printers -------------------------------------------------------------

# precedence levels; a child is parenthesised when its level is below the
# level its slot requires
_PROG_LEVEL = {Choice: 0, Par: 1, Seq: 2, Star: 3, Atomic: 4}
_FORM_LEVEL = {Iff: 0, Implies: 1, Or: 2, And: 3,
               Diamond: 4, Box: 4, Top: 5, Bot: 5, Prop: 5}


def _prog_text(node: Program, slot: int) -> str:
    level = _PROG_LEVEL[type(node)]
    if isinstance(node, Atomic):
        return node.name
    if isinstance(node, Star):
        text = _prog_text(node.child, 3) + "*"
    else:
        op = {Choice: "+", Par: "&", Seq: ";"}[type(node)]
        text = f"{_prog_text(node.left, level)} {op} {_prog_text(node.right, level + 1)}"
    return f"({text})" if level < slot else text


def render_program(node: Program) -> str:
    return _prog_text(node, 0)


def _form_text(node: Formula, slot: int) -> str:
    level = _FORM_LEVEL[type(node)]
    if isinstance(node, Top):
        return "true"
    if isinstance(node, Bot):
        return "false"
    if isinstance(node, Prop):
        return node.name
    if isinstance(node, Diamond):
        text = f"<{render_program(node.program)}>{_form_text(node.child, 4)}"
    elif isinstance(node, Box):
        text = f"[{render_program(node.program)}]{_form_text(node.child, 4)}"
    elif isinstance(node, Implies):
        # right-associative: the right child may sit at the same level
        text = f"{_form_text(node.left, level + 1)} -> {_form_text(node.right, level)}"
    else:
        op = {Iff: "<->", Or: "|", And: "&"}[type(node)]
        text = f"{_form_text(node.left, level)} {op} {_form_text(node.right, level + 1)}"
    return f"({text})" if level < slot else text


def render_formula(node: Formula) -> str:
    return _form_text(node, 0)


# --- small AST utilities --------------------------------------------------

def program_atoms(node: Program) -> set[str]:
    """Names of the atomic programs occurring in a program."""
    if isinstance(node, Atomic):
        return {node.name}
    if isinstance(node, Star):
        return program_atoms(node.child)
    return program_atoms(node.left) | program_atoms(node.right)


def formula_atoms(node: Formula) -> set[str]:
    """Names of the atomic programs occurring in a formula."""
    if isinstance(node, (Top, Bot, Prop)):
        return set()
    if isinstance(node, (Diamond, Box)):
        return program_atoms(node.program) | formula_atoms(node.child)
    return formula_atoms(node.left) | formula_atoms(node.right)


def formula_props(node: Formula) -> set[str]:
    """Names of the propositions occurring in a formula."""
    if isinstance(node, Prop):
        return {node.name}
    if isinstance(node, (Top, Bot)):
        return set()
    if isinstance(node, (Diamond, Box)):
        return formula_props(node.child)
    return formula_props(node.left) | formula_props(node.right)
