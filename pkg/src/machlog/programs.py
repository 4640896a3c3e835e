"""Statements, program lists and their well-formedness conditions.

A statement is one invocation ``Name([inputs],[outputs])``: inputs are
arbitrary terms, outputs are identifiers.  A program list is a sequence
of statements whose outputs are pairwise distinct and in which no
statement's input names an output of itself or of any later statement
(the I/O dependency condition).  Both the horizontal one-line syntax and
the vertical one-statement-per-line syntax parse and render here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .terms import (
    DEFAULT_CONFIG,
    Ident,
    MachineConfig,
    ParseError,
    Scanner,
    TermList,
    dedupe,
    extract,
    intersect,
    render_term,
)


class ProgramError(Exception):
    """A well-formedness condition failed."""


@dataclass(frozen=True)
class Statement:
    name: str
    inputs: TermList
    outputs: tuple

    def __post_init__(self) -> None:
        for o in self.outputs:
            if not isinstance(o, Ident):
                raise ProgramError(
                    f"{self.name}: output position holds {render_term(o)}, not an identifier"
                )
        names = [o.text for o in self.outputs]
        if len(set(names)) != len(names):
            raise ProgramError(f"{self.name}: duplicate output names {names}")
        out_set = set(self.outputs)
        for t in self.inputs:
            if t in out_set:
                raise ProgramError(
                    f"{self.name}: output {render_term(t)} also occurs among the inputs"
                )

    def render(self) -> str:
        return f"{self.name}({render_term(self.inputs)},{render_term(self.outputs)})"

    def __str__(self) -> str:
        return self.render()

    @property
    def arity(self) -> tuple:
        return (self.name, len(self.inputs), len(self.outputs))


ProgramListT = tuple  # tuple[Statement, ...]


@dataclass(frozen=True)
class Violation:
    condition: str  # "distinct-outputs" | "io-dependency" | "name-clash" | "naming"
    index: int      # 1-based statement index, 0 for list-level
    message: str

    def __str__(self) -> str:
        return f"statement {self.index}: {self.message}" if self.index else self.message


@dataclass(frozen=True)
class MainIO:
    inputs: TermList
    outputs: tuple


def name_convention_ok(name: str) -> bool:
    # Initial uppercase letter, any following letters lowercase.
    if not name[0].isupper():
        return False
    return all(not c.isalpha() or c.islower() for c in name[1:])


def validate_program(p: Sequence[Statement], program_name: Optional[str] = None) -> list:
    """Every violated condition as a list of Violations (empty when valid).

    Statement-local conditions are enforced at Statement construction;
    this checks the cross-statement ones.
    """
    violations = []
    seen_outputs = {}
    for i, st in enumerate(p, start=1):
        for o in st.outputs:
            if o in seen_outputs:
                violations.append(Violation(
                    "distinct-outputs", i,
                    f"output {o} already produced by statement {seen_outputs[o]}"))
            else:
                seen_outputs[o] = i
        if program_name is not None and st.name == program_name:
            violations.append(Violation(
                "name-clash", i, f"subprogram name {st.name} equals the program's own name"))
    for i, st in enumerate(p, start=1):
        later_outputs = set()
        for st2 in p[i - 1:]:
            later_outputs.update(st2.outputs)
        for t in st.inputs:
            if t in later_outputs:
                violations.append(Violation(
                    "io-dependency", i,
                    f"input {render_term(t)} is an output of statement {i} or later"))
    return violations


def check_program(p: Sequence[Statement], program_name: Optional[str] = None) -> ProgramListT:
    violations = validate_program(p, program_name)
    if violations:
        raise ProgramError("; ".join(str(v) for v in violations))
    return tuple(p)


def derive_io(p: Sequence[Statement]) -> MainIO:
    """Main-program I/O: outputs are the concatenated statement outputs;
    inputs are the deduped concatenated statement inputs minus outputs."""
    check_program(p)
    outputs = tuple(o for st in p for o in st.outputs)
    x_prime = dedupe(tuple(t for st in p for t in st.inputs))
    inputs = extract(x_prime, intersect(x_prime, outputs))
    return MainIO(inputs=inputs, outputs=outputs)


def conc(p: Sequence[Statement], q: Sequence[Statement]) -> ProgramListT:
    """Checked program concatenation: p followed by q, revalidated."""
    r = tuple(p) + tuple(q)
    violations = validate_program(r)
    if violations:
        raise ProgramError(
            "concatenation violation: " + "; ".join(str(v) for v in violations))
    return r


# ---------------------------------------------------------------------------
# Parsing


def _scan_statement(s: Scanner) -> Statement:
    name = s.ident()
    s.expect("(")
    inputs = s.term_list()
    s.expect(",")
    outputs = s.term_list()
    s.expect(")")
    try:
        return Statement(name.text, inputs, outputs)
    except ProgramError as e:
        raise ParseError(str(e), s.pos) from e


def parse_statement(text: str, cfg: MachineConfig = DEFAULT_CONFIG) -> Statement:
    s = Scanner(text, cfg)
    st = _scan_statement(s)
    if not s.at_end():
        raise s.error("trailing input after statement")
    return st


def _scan_horizontal(s: Scanner) -> ProgramListT:
    s.expect("[")
    if s.peek() == "~":
        s.pos += 1
        s.expect("]")
        return ()
    if s.peek() == "]":
        s.pos += 1
        return ()
    stmts = [_scan_statement(s)]
    while s.peek() == ",":
        s.pos += 1
        stmts.append(_scan_statement(s))
    s.expect("]")
    return tuple(stmts)


def _strip_vertical_line(line: str) -> str:
    """Drop an optional leading line number and trailing annotation/
    connection columns so corpus-style listings parse as programs."""
    body = line.strip()
    parts = body.split(None, 1)
    if parts and parts[0].isdigit():
        body = parts[1] if len(parts) > 1 else ""
    # statement ends at the ')' closing its argument pair
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                return body[: i + 1]
    return body


def parse_program(text: str, cfg: MachineConfig = DEFAULT_CONFIG) -> ProgramListT:
    """Parse a horizontal "[S1, S2, ...]" list or a vertical listing with
    one statement per line.  '#' begins a comment line."""
    stripped = text.strip()
    if stripped.startswith("["):
        s = Scanner(stripped, cfg)
        p = _scan_horizontal(s)
        if not s.at_end():
            raise s.error("trailing input after program")
    else:
        stmts = []
        for line in text.splitlines():
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            stmts.append(parse_statement(_strip_vertical_line(line), cfg))
        p = tuple(stmts)
    violations = validate_program(p)
    if violations:
        raise ProgramError("; ".join(str(v) for v in violations))
    return p


def render_program(p: Sequence[Statement], layout: str = "horizontal") -> str:
    if layout == "horizontal":
        return "[" + ", ".join(st.render() for st in p) + "]"
    if layout == "vertical":
        return "\n".join(st.render() for st in p)
    raise ValueError(f"unknown layout {layout!r}")
