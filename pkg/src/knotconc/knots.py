"""Symbolic knots: named atoms combined by mirror image and connected sum.

Expressions follow the grammar

    expr  ::= term ('+' term)*
    term  ::= '-' term | '(' expr ')' | NAME

where NAME is an identifier that may itself contain balanced parentheses and
commas, so that knot-table style names like ``T(2,3)``, ``9_42`` and
``Wh(T(2,3))`` are single atoms.  A leading ``-`` is the mirror image.

Normalization pushes mirrors down to atoms (mirror is an involution and
distributes over connected sum), flattens sums, and sorts summands, so two
expressions denote the same formal sum iff their normal forms are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union


class ExpressionError(ValueError):
    pass


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Mirror:
    inner: "KnotExpression"


@dataclass(frozen=True)
class Sum:
    left: "KnotExpression"
    right: "KnotExpression"


KnotExpression = Union[Atom, Mirror, Sum]

# A normalized expression is determined by its multiset of signed atoms,
# each a (name, mirrored) pair.
SignedAtom = tuple[str, bool]


def signed_atoms(expr: KnotExpression) -> tuple[SignedAtom, ...]:
    """Sorted multiset of (name, mirrored) leaves of the expression."""

    def walk(e: KnotExpression, flip: bool) -> Iterator[SignedAtom]:
        if isinstance(e, Atom):
            yield (e.name, flip)
        elif isinstance(e, Mirror):
            yield from walk(e.inner, not flip)
        elif isinstance(e, Sum):
            yield from walk(e.left, flip)
            yield from walk(e.right, flip)
        else:
            raise ExpressionError(f"not a knot expression: {e!r}")

    return tuple(sorted(walk(expr, False)))


def from_signed_atoms(atoms: tuple[SignedAtom, ...]) -> KnotExpression:
    if not atoms:
        raise ExpressionError("empty expression")
    terms: list[KnotExpression] = [
        Mirror(Atom(name)) if mirrored else Atom(name) for name, mirrored in sorted(atoms)
    ]
    out = terms[0]
    for t in terms[1:]:
        out = Sum(out, t)
    return out


def normalize(expr: KnotExpression) -> KnotExpression:
    """Canonical form: mirrors at atoms, sums flattened, summands sorted."""
    return from_signed_atoms(signed_atoms(expr))


def mirror(expr: KnotExpression) -> KnotExpression:
    return normalize(Mirror(expr))


def expr_to_string(expr: KnotExpression) -> str:
    parts = []
    for name, mirrored in signed_atoms(normalize(expr)):
        parts.append(f"-{name}" if mirrored else name)
    return " + ".join(parts)


_NAME_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")


def _tokenize(text: str) -> list[str]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-":
            tokens.append(ch)
            i += 1
        elif ch == "(" or ch == ")":
            tokens.append(ch)
            i += 1
        elif ch in _NAME_CHARS:
            j = i
            while j < n and text[j] in _NAME_CHARS:
                j += 1
            name = text[i:j]
            # A '(' directly after a name opens that name's argument list,
            # e.g. T(2,3) or Wh(T(2,3)); consume it balanced into the name.
            if j < n and text[j] == "(":
                depth = 0
                k = j
                while k < n:
                    if text[k] == "(":
                        depth += 1
                    elif text[k] == ")":
                        depth -= 1
                        if depth == 0:
                            k += 1
                            break
                    elif text[k] not in _NAME_CHARS and text[k] != ",":
                        raise ExpressionError(
                            f"bad character {text[k]!r} inside name at position {k}"
                        )
                    k += 1
                if depth != 0:
                    raise ExpressionError(f"unbalanced parentheses in name {name!r}")
                name = text[i:k]
                j = k
            tokens.append("NAME:" + name)
            i = j
        else:
            raise ExpressionError(f"unexpected character {ch!r} at position {i}")
    return tokens


def parse_expression(text: str) -> KnotExpression:
    """Parse the expression grammar; raises ExpressionError on bad input."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def parse_sum() -> KnotExpression:
        out = parse_term()
        while peek() == "+":
            take()
            out = Sum(out, parse_term())
        return out

    def parse_term() -> KnotExpression:
        tok = peek()
        if tok == "-":
            take()
            return Mirror(parse_term())
        if tok == "(":
            take()
            inner = parse_sum()
            if take() != ")":
                raise ExpressionError(f"expected ')' in {text!r}")
            return inner
        if tok is not None and tok.startswith("NAME:"):
            take()
            return Atom(tok[5:])
        raise ExpressionError(f"expected a knot name in {text!r}")

    out = parse_sum()
    if pos != len(tokens):
        raise ExpressionError(f"trailing input in {text!r}")
    return out
