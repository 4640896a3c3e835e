"""The axiom store: labelled premise/conclusion entries plus schemas.

The store file holds one entry per line:

    LABEL : [premise statements] => [conclusion statements]
    LABEL : builtin <schema-id>

A-labels are axioms, T-labels are theorems.  Schemas (the identity-type
and substitution families) are instantiated against proof lines rather
than matched; the ``intprograms`` header names the statement kinds they
may target.  Extracted theorems are appended under the next free
T-label and the file is rewritten atomically.
"""

from __future__ import annotations

import os
import re
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .terms import Ident, Lit, TermError, iter_idents, render_term, substitute
from .programs import (
    ProgramError,
    Statement,
    parse_program,
    render_program,
    validate_program,
)


class StoreError(Exception):
    """Bad store file or ill-formed entry."""


SCHEMA_IDS = {
    "id-type-input": "input elements of an integer program are integers",
    "id-type-output": "output elements of an integer program are integers",
    "subst-exists": "an equal value may replace an input element",
    "subst-equal": "outputs of a statement and its substituted copy are equal",
}

DEFAULT_INT_PROGRAMS = ("Int", "Lt", "Eq", "Neq", "Aid", "Add", "Mult", "Div")

_LABEL_RE = re.compile(r"^[AT]\d+$")


@dataclass(frozen=True)
class Schema:
    label: str
    schema_id: str

    @property
    def kind(self) -> str:
        return "schema"

    @property
    def premise_len(self) -> int:
        return {"id-type-input": 1, "id-type-output": 1,
                "subst-exists": 2, "subst-equal": 3}[self.schema_id]


@dataclass(frozen=True)
class Axiom:
    label: str
    premise: tuple
    conclusion: tuple
    kind: str  # "axiom" | "theorem"

    def render(self) -> str:
        return (f"{self.label} : {render_program(self.premise)}"
                f" => {render_program(self.conclusion)}")


Entry = Union[Axiom, Schema]


def check_entry(premise: Sequence[Statement], conclusion: Sequence[Statement]) -> None:
    """Premise followed by conclusion must form a valid program whose
    conclusion inputs are premise-bound or constants."""
    if not conclusion:
        raise StoreError("empty conclusion")
    violations = validate_program(tuple(premise) + tuple(conclusion))
    if violations:
        raise StoreError("; ".join(str(v) for v in violations))
    bound = set()
    for st in premise:
        for t in st.inputs:
            bound.update(i.text for i in iter_idents(t))
        bound.update(o.text for o in st.outputs)
    for st in conclusion:
        for t in st.inputs:
            for i in iter_idents(t):
                if i.text not in bound:
                    raise StoreError(
                        f"conclusion input {i.text} is neither premise-bound nor a constant")
        bound.update(o.text for o in st.outputs)


class AxiomStore:
    def __init__(self, int_programs: Sequence[str] = DEFAULT_INT_PROGRAMS,
                 path: Optional[Path] = None,
                 header_comments: Optional[List[str]] = None):
        self.entries: Dict[str, Entry] = {}
        self.int_programs = tuple(int_programs)
        self.path = Path(path) if path else None
        self.header_comments = list(header_comments or [])

    # -- construction -------------------------------------------------

    def register_schema(self, label: str, schema_id: str) -> None:
        if schema_id not in SCHEMA_IDS:
            raise StoreError(f"unknown schema id {schema_id!r}")
        self._claim_label(label)
        self.entries[label] = Schema(label, schema_id)

    def register(self, label: str, premise: Sequence[Statement],
                 conclusion: Sequence[Statement]) -> Axiom:
        self._claim_label(label)
        check_entry(premise, conclusion)
        kind = "axiom" if label.startswith("A") else "theorem"
        entry = Axiom(label, tuple(premise), tuple(conclusion), kind)
        self.entries[label] = entry
        return entry

    def _claim_label(self, label: str) -> None:
        if not _LABEL_RE.match(label):
            raise StoreError(f"bad label {label!r} (want A<number> or T<number>)")
        if label in self.entries:
            raise StoreError(f"duplicate label {label}")

    def add_theorem(self, premise: Sequence[Statement],
                    conclusion: Sequence[Statement]) -> str:
        """Append under the next free T-label and persist if file-backed."""
        label = self.next_theorem_label()
        self.register(label, premise, conclusion)
        if self.path is not None:
            self.save()
        return label

    def next_theorem_label(self) -> str:
        highest = 0
        for label in self.entries:
            if label.startswith("T"):
                highest = max(highest, int(label[1:]))
        return f"T{highest + 1}"

    # -- access --------------------------------------------------------

    def resolve(self, label: str) -> Entry:
        try:
            return self.entries[label]
        except KeyError:
            raise StoreError(f"unknown label {label}") from None

    def is_int_program(self, name: str) -> bool:
        return name in self.int_programs

    def axioms(self) -> Iterator[Axiom]:
        return (e for e in self.entries.values() if isinstance(e, Axiom) and e.kind == "axiom")

    def theorems(self) -> Iterator[Axiom]:
        return (e for e in self.entries.values() if isinstance(e, Axiom) and e.kind == "theorem")

    def schemas(self) -> Iterator[Schema]:
        return (e for e in self.entries.values() if isinstance(e, Schema))

    # -- schema instantiation -------------------------------------------

    def instantiate_schema(self, schema_id: str, *, target: Statement,
                           index: int = 0, equality: Optional[Statement] = None,
                           copy: Optional[Statement] = None,
                           fresh: Optional[Callable[[], Ident]] = None
                           ) -> Tuple[tuple, tuple]:
        """Concrete (premise, conclusion) for one schema application."""
        if schema_id in ("id-type-input", "id-type-output"):
            if not self.is_int_program(target.name):
                raise ProgramError(f"{target.name} is not an integer program")
            elements = target.inputs if schema_id == "id-type-input" else target.outputs
            if not 1 <= index <= len(elements):
                raise ProgramError(f"element index {index} out of range 1..{len(elements)}")
            element = elements[index - 1]
            if not isinstance(element, (Ident, Lit)):
                raise ProgramError(f"element {render_term(element)} is not an integer term")
            return (target,), (Statement("Int", (element,), ()),)

        if equality is None:
            raise ProgramError(f"{schema_id} needs an equality statement")
        if equality.name != "Eq" or len(equality.inputs) != 2 or equality.outputs:
            raise ProgramError(f"{equality} is not an equality statement")
        if not self.is_int_program(target.name):
            raise ProgramError(f"{target.name} is not an integer program")
        if not 1 <= index <= len(target.inputs):
            raise ProgramError(f"element index {index} out of range 1..{len(target.inputs)}")
        old, new = equality.inputs
        if target.inputs[index - 1] != old:
            raise ProgramError(
                f"equality first argument {render_term(old)} does not match element "
                f"{render_term(target.inputs[index - 1])}")
        new_inputs = substitute(target.inputs, index, new)

        if schema_id == "subst-exists":
            if fresh is None and target.outputs:
                raise ProgramError("substitution needs a fresh-name supply for outputs")
            new_outputs = tuple(fresh() for _ in target.outputs)
            return ((target, equality),
                    (Statement(target.name, new_inputs, new_outputs),))

        if schema_id == "subst-equal":
            if copy is None:
                raise ProgramError("subst-equal needs the substituted copy statement")
            if not target.outputs:
                raise ProgramError("subst-equal needs a statement with outputs")
            if copy.name != target.name or copy.inputs != new_inputs:
                raise ProgramError(f"{copy} is not the substituted copy of {target}")
            if len(copy.outputs) != len(target.outputs):
                raise ProgramError("substituted copy has a different output arity")
            conclusion = tuple(
                Statement("Eq", (c, t), ())
                for c, t in zip(copy.outputs, target.outputs)
            )
            return (target, equality, copy), conclusion

        raise StoreError(f"unknown schema id {schema_id!r}")

    # -- persistence ----------------------------------------------------

    def render(self) -> str:
        lines = list(self.header_comments)
        lines.append("intprograms " + " ".join(self.int_programs))
        for entry in self.entries.values():
            if isinstance(entry, Schema):
                lines.append(f"{entry.label} : builtin {entry.schema_id}")
            else:
                lines.append(entry.render())
        return "\n".join(lines) + "\n"

    def save(self, path: Optional[Path] = None) -> None:
        target = Path(path) if path else self.path
        if target is None:
            raise StoreError("store has no backing file")
        fd, tmp = tempfile.mkstemp(dir=str(target.parent), prefix=".axiom.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as f:
                f.write(self.render())
            os.replace(tmp, target)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        self.path = target


def parse_store(text: str, path: Optional[Path] = None) -> AxiomStore:
    store = AxiomStore(path=path)
    header_done = False
    int_programs: Optional[tuple] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            if not header_done:
                store.header_comments.append(raw)
            continue
        if line.startswith("intprograms"):
            if header_done:
                raise StoreError(f"line {lineno}: intprograms must precede entries")
            int_programs = tuple(line.split()[1:])
            if not int_programs:
                raise StoreError(f"line {lineno}: empty intprograms list")
            continue
        header_done = True
        if ":" not in line:
            raise StoreError(f"line {lineno}: expected 'LABEL : ...'")
        label, _, body = line.partition(":")
        label = label.strip()
        body = body.strip()
        try:
            if body.startswith("builtin"):
                store.register_schema(label, body.split(None, 1)[1].strip())
            else:
                if "=>" not in body:
                    raise StoreError("expected '[premise] => [conclusion]'")
                prem_text, _, conc_text = body.partition("=>")
                premise = parse_program(prem_text.strip())
                conclusion = parse_program(conc_text.strip())
                store.register(label, premise, conclusion)
        except (StoreError, ProgramError, TermError) as e:
            raise StoreError(f"line {lineno}: {e}") from e
    if int_programs is not None:
        store.int_programs = int_programs
    return store


def load_store(path) -> AxiomStore:
    path = Path(path)
    return parse_store(path.read_text(), path=path)
