"""Terms and the list operations everything else is built on.

A term is an identifier, a signed integer literal, or a nested list of
terms.  Identifiers are alphanumeric strings with a leading letter;
equality of terms is structural throughout (name identity for
identifiers, value identity for literals, element-wise for lists).
Lists are represented as tuples so that every term is hashable.

The machine configuration bounds live here too, since both the parser
and the interpreter enforce them.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections import Counter
from typing import Iterator, Union


class TermError(Exception):
    """Malformed term or violated list-operation precondition."""


class LengthBoundError(TermError):
    """A machine bound (string length or list length) was exceeded."""


class ParseError(TermError):
    """Syntax error, carrying the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


@dataclass(frozen=True)
class MachineConfig:
    """Machine parameters: integer bound N, string bound L, list bound M.

    alphabet_size is informational only (letters + digits + the ten
    special characters of the term grammar).
    """

    max_int: int = 2**31 - 1
    max_string_len: int = 64
    max_list_len: int = 256
    alphabet_size: int = 72

    def __post_init__(self) -> None:
        if self.max_int < 1 or self.max_string_len < 1 or self.max_list_len < 1:
            raise ValueError("machine bounds must be positive")


DEFAULT_CONFIG = MachineConfig()


@dataclass(frozen=True)
class Ident:
    """Alphanumeric name: a letter followed by letters or digits."""

    text: str

    def __post_init__(self) -> None:
        if not self.text or not self.text[0].isalpha() or not self.text.isalnum():
            raise TermError(f"invalid identifier {self.text!r}")

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class Lit:
    """Signed integer literal.  The matcher treats every literal as a
    constant; only -1, 0 and 1 occur in the bundled axioms."""

    value: int

    def __str__(self) -> str:
        return str(self.value)


Term = Union[Ident, Lit, tuple]
TermList = tuple


def ident(text: str) -> Ident:
    return Ident(text)


def lit(value: int) -> Lit:
    return Lit(value)


def is_constant(t: Term) -> bool:
    return isinstance(t, Lit)


def render_term(t: Term) -> str:
    if isinstance(t, tuple):
        return "[" + ",".join(render_term(e) for e in t) + "]"
    return str(t)


def render_terms(ts: TermList) -> str:
    return render_term(ts)


# ---------------------------------------------------------------------------
# List operations


def concat(a: TermList, b: TermList, cfg: MachineConfig = DEFAULT_CONFIG) -> TermList:
    """Concatenation of a and b, in order."""
    result = tuple(a) + tuple(b)
    if len(result) > cfg.max_list_len:
        raise LengthBoundError(
            f"concatenation of length {len(result)} exceeds list bound {cfg.max_list_len}"
        )
    return result


def intersect(a: TermList, b: TermList) -> TermList:
    """Terms occurring in both a and b, ordered as in a, without repeats."""
    in_b = set(b)
    seen = set()
    out = []
    for t in a:
        if t in in_b and t not in seen:
            out.append(t)
            seen.add(t)
    return tuple(out)


def dedupe(a: TermList) -> TermList:
    """Keep the first occurrence of each term, in order."""
    seen = set()
    out = []
    for t in a:
        if t not in seen:
            out.append(t)
            seen.add(t)
    return tuple(out)


def substitute(a: TermList, i: int, x: Term) -> TermList:
    """Replace the element at 1-based position i by x."""
    if not 1 <= i <= len(a):
        raise TermError(f"substitution index {i} out of range 1..{len(a)}")
    return tuple(a[: i - 1]) + (x,) + tuple(a[i:])


def extract(a: TermList, b: TermList) -> TermList:
    """Elements of a not occurring in b, preserving a's order.

    Every element of b must occur in a; all occurrences of a removed
    element are dropped.
    """
    members = set(a)
    for t in b:
        if t not in members:
            raise TermError(f"cannot extract {render_term(t)}: not present")
    drop = set(b)
    return tuple(t for t in a if t not in drop)


def is_sublist(b: TermList, a: TermList) -> bool:
    """True iff b can be formed by picking distinct positions of a, in
    any order.  The empty list is a sublist of every list."""
    need = Counter(b)
    have = Counter(a)
    return all(have[t] >= n for t, n in need.items())


# ---------------------------------------------------------------------------
# Term grammar
#
#   list  := "[" (term ("," term)*)? "]"        ("[~]" also accepted as empty)
#   term  := identifier | integer | list
#   integer := "-"? digit+
#
# Whitespace is insignificant between tokens.


class Scanner:
    """Cursor over a source string; shared by the term and program parsers."""

    def __init__(self, text: str, cfg: MachineConfig = DEFAULT_CONFIG):
        self.text = text
        self.pos = 0
        self.cfg = cfg

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def at_end(self) -> bool:
        return self.peek() == ""

    def ident(self) -> Ident:
        self.skip_ws()
        start = self.pos
        if start >= len(self.text) or not self.text[start].isalpha():
            raise self.error("expected identifier")
        end = start + 1
        while end < len(self.text) and self.text[end].isalnum():
            end += 1
        name = self.text[start:end]
        if len(name) > self.cfg.max_string_len:
            raise LengthBoundError(
                f"identifier {name!r} exceeds string bound {self.cfg.max_string_len}"
            )
        self.pos = end
        return Ident(name)

    def term(self) -> Term:
        ch = self.peek()
        if ch == "[":
            return self.term_list()
        if ch == "-" or ch.isdigit():
            start = self.pos
            end = self.pos + (1 if ch == "-" else 0)
            if end >= len(self.text) or not self.text[end].isdigit():
                raise self.error("expected digits after '-'")
            while end < len(self.text) and self.text[end].isdigit():
                end += 1
            self.pos = end
            return Lit(int(self.text[start:end]))
        if ch.isalpha():
            return self.ident()
        raise self.error("expected term")

    def term_list(self) -> TermList:
        self.expect("[")
        items = []
        if self.peek() == "~":  # [~] notation for the empty list
            self.pos += 1
            self.expect("]")
            return ()
        if self.peek() == "]":
            self.pos += 1
            return ()
        while True:
            items.append(self.term())
            ch = self.peek()
            if ch == ",":
                self.pos += 1
                continue
            self.expect("]")
            break
        if len(items) > self.cfg.max_list_len:
            raise LengthBoundError(
                f"list of length {len(items)} exceeds list bound {self.cfg.max_list_len}"
            )
        return tuple(items)


def parse_term(text: str, cfg: MachineConfig = DEFAULT_CONFIG) -> Term:
    s = Scanner(text, cfg)
    t = s.term()
    if not s.at_end():
        raise s.error("trailing input after term")
    return t


def parse_term_list(text: str, cfg: MachineConfig = DEFAULT_CONFIG) -> TermList:
    s = Scanner(text, cfg)
    t = s.term_list()
    if not s.at_end():
        raise s.error("trailing input after list")
    return t


def iter_idents(t: Term) -> Iterator[Ident]:
    """All identifiers occurring anywhere inside t, nested lists included."""
    if isinstance(t, Ident):
        yield t
    elif isinstance(t, tuple):
        for e in t:
            yield from iter_idents(e)
