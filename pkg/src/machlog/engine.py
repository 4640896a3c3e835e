"""Proof sessions: option enumeration, derivation, replay, extraction.

A proof starts from premise lines and grows by sublist derivations:
match a store entry's premise against existing lines, append its
instantiated conclusion with fresh output names, and record the
connection list [label, ref, ...] with refs in premise order.  Listings
render in the three-column layout (label, statement, connection list)
plus an annotation column tracking assigned expressions.

Replay re-verifies a listing line by line against a store; extraction
iterates connection lists down to the premises that actually support
the final conclusion, flagging the redundant ones.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .terms import Ident, Lit, Term, TermError, iter_idents, render_term, substitute
from .programs import (
    ProgramError,
    Statement,
    check_program,
    parse_program,
    render_program,
    validate_program,
)
from .equivalence import apply_renaming, match_premise, unify_statement
from .store import Axiom, AxiomStore, Schema, StoreError
from . import programs


class EngineError(Exception):
    pass


class StaleOptionError(EngineError):
    """The proof advanced since this option was enumerated."""


@dataclass(frozen=True)
class Connection:
    label: str
    refs: tuple

    def render(self) -> str:
        return "[" + ",".join([self.label] + [str(r) for r in self.refs]) + "]"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class ProofLine:
    statement: Statement
    connection: Optional[Connection]  # None on premises


@dataclass(frozen=True)
class DerivationOption:
    index: int
    label: str
    refs: tuple
    params: tuple             # schema position parameters, () for plain entries
    conclusion: tuple         # Statements, fresh outputs already named
    already_derived: bool
    revision: int

    def preview(self) -> str:
        return "; ".join(st.render() for st in self.conclusion)


@dataclass(frozen=True)
class ExtractionResult:
    used: tuple               # 1-based premise indices that support the conclusion
    redundant: tuple          # premise indices that do not
    premises: tuple           # the used premise statements, original order
    conclusion: Statement

    def render(self) -> str:
        return f"[{render_program(self.premises)}, {self.conclusion.render()}]"


def _next_fresh(used: set) -> str:
    for c in string.ascii_lowercase:
        if c not in used:
            return c
    k = 1
    while f"v{k}" in used:
        k += 1
    return f"v{k}"


class ProofState:
    """Premises plus derived lines; owned by one session at a time."""

    def __init__(self, premises: Sequence[Statement]):
        check_program(premises)
        self.lines: List[ProofLine] = [ProofLine(st, None) for st in premises]
        self.premise_count = len(self.lines)
        self.used_names: set = set()
        for st in premises:
            self._note_names(st)
        self.revision = 0

    # -- bookkeeping ----------------------------------------------------

    def _note_names(self, st: Statement) -> None:
        for t in st.inputs:
            self.used_names.update(i.text for i in iter_idents(t))
        self.used_names.update(o.text for o in st.outputs)

    def statements(self) -> List[Statement]:
        return [pl.statement for pl in self.lines]

    def derived(self) -> List[ProofLine]:
        return self.lines[self.premise_count:]

    def fresh_supply(self):
        used = set(self.used_names)

        def fresh() -> Ident:
            name = _next_fresh(used)
            used.add(name)
            return Ident(name)

        return fresh

    @classmethod
    def from_lines(cls, premises: Sequence[Statement],
                   derived: Sequence[Tuple[Statement, Connection]]) -> "ProofState":
        state = cls(premises)
        for st, conn in derived:
            state._append(st, conn)
        return state

    def _append(self, st: Statement, conn: Connection) -> None:
        for ref in conn.refs:
            if not 1 <= ref <= len(self.lines):
                raise EngineError(f"connection ref {ref} out of range")
        violations = validate_program([pl.statement for pl in self.lines] + [st])
        if violations:
            raise EngineError("; ".join(str(v) for v in violations))
        self.lines.append(ProofLine(st, conn))
        self._note_names(st)
        self.revision += 1

    # -- mutation --------------------------------------------------------

    def apply(self, option: DerivationOption) -> None:
        if option.revision != self.revision:
            raise StaleOptionError(
                f"option was enumerated at revision {option.revision}, "
                f"state is at {self.revision}")
        conn = Connection(option.label, option.refs)
        added = 0
        try:
            for st in option.conclusion:
                self._append(st, conn)
                added += 1
        except EngineError:
            del self.lines[len(self.lines) - added:]
            self.used_names = set()
            for pl in self.lines:
                self._note_names(pl.statement)
            raise
        # group counts as one step regardless of conclusion length
        self.revision = option.revision + 1

    def undo(self) -> None:
        if len(self.lines) <= self.premise_count:
            raise EngineError("nothing to undo")
        self.lines.pop()
        self.used_names = set()
        for pl in self.lines:
            self._note_names(pl.statement)
        self.revision += 1


def new_session(premises: Sequence[Statement]) -> ProofState:
    return ProofState(premises)


# ---------------------------------------------------------------------------
# Option enumeration


def _entry_options(state: ProofState, entry: Axiom) -> List[tuple]:
    out = []
    lines = state.statements()
    for mr in match_premise(entry.premise, lines):
        concl = apply_renaming(entry.conclusion, mr.renaming_dict(), state.fresh_supply())
        out.append((entry.label, mr.refs, (), concl))
    return out


def _schema_options(state: ProofState, store: AxiomStore, schema: Schema) -> List[tuple]:
    lines = state.statements()
    n = len(lines)
    out = []

    def int_targets():
        for j in range(1, n + 1):
            if store.is_int_program(lines[j - 1].name):
                yield j, lines[j - 1]

    if schema.schema_id in ("id-type-input", "id-type-output"):
        take_inputs = schema.schema_id == "id-type-input"
        for j, target in int_targets():
            elements = target.inputs if take_inputs else target.outputs
            for i, element in enumerate(elements, start=1):
                if isinstance(element, (Ident, Lit)):
                    _, concl = store.instantiate_schema(
                        schema.schema_id, target=target, index=i)
                    out.append((schema.label, (j,), (i,), concl))
        return _dedupe_options(out)

    # substitution schemas: index equality lines by their first argument
    eq_by_first: Dict[Term, List[int]] = {}
    for e in range(1, n + 1):
        st = lines[e - 1]
        if st.name == "Eq" and len(st.inputs) == 2 and not st.outputs:
            eq_by_first.setdefault(st.inputs[0], []).append(e)

    if schema.schema_id == "subst-exists":
        for j, target in int_targets():
            for i, element in enumerate(target.inputs, start=1):
                for e in eq_by_first.get(element, ()):
                    _, concl = store.instantiate_schema(
                        "subst-exists", target=target, index=i,
                        equality=lines[e - 1], fresh=state.fresh_supply())
                    out.append((schema.label, (j, e), (i,), concl))
        out.sort(key=lambda o: (o[1], o[2]))
        return _dedupe_options(out)

    # subst-equal: additionally index lines by (name, inputs) for the copy
    by_sig: Dict[tuple, List[int]] = {}
    for c in range(1, n + 1):
        st = lines[c - 1]
        by_sig.setdefault((st.name, st.inputs, len(st.outputs)), []).append(c)

    for j, target in int_targets():
        if not target.outputs:
            continue
        for i, element in enumerate(target.inputs, start=1):
            for e in eq_by_first.get(element, ()):
                new_inputs = substitute(target.inputs, i, lines[e - 1].inputs[1])
                for c in by_sig.get((target.name, new_inputs, len(target.outputs)), ()):
                    _, concl = store.instantiate_schema(
                        "subst-equal", target=target, index=i,
                        equality=lines[e - 1], copy=lines[c - 1])
                    out.append((schema.label, (j, e, c), (i,), concl))
    out.sort(key=lambda o: (o[1], o[2]))
    return _dedupe_options(out)


def _dedupe_options(raw: List[tuple]) -> List[tuple]:
    seen = set()
    out = []
    for label, refs, params, concl in raw:
        key = (refs, concl)
        if key in seen:
            continue
        seen.add(key)
        out.append((label, refs, params, concl))
    return out


def enumerate_options(state: ProofState, store: AxiomStore) -> List[DerivationOption]:
    """Every derivation available from the current lines, in store order
    then lexicographic refs.  Options carry the state revision; applying
    one after the state moved raises StaleOptionError."""
    existing = set(state.statements())
    raw: List[tuple] = []
    for entry in store.entries.values():
        if isinstance(entry, Schema):
            raw.extend(_schema_options(state, store, entry))
        else:
            raw.extend(_entry_options(state, entry))
    options = []
    for k, (label, refs, params, concl) in enumerate(raw):
        already = all(st in existing for st in concl)
        options.append(DerivationOption(
            index=k, label=label, refs=refs, params=params,
            conclusion=concl, already_derived=already, revision=state.revision))
    return options


def apply_option(state: ProofState, option: DerivationOption) -> ProofState:
    state.apply(option)
    return state


def undo(state: ProofState) -> ProofState:
    state.undo()
    return state


# ---------------------------------------------------------------------------
# Annotations and listing layout

_ASSIGN_OPS = {"Add": "+", "Mult": "*", "Div": "/"}


def _expand(t: Term, exprs: Dict[str, tuple]) -> str:
    if isinstance(t, Ident) and t.text in exprs:
        op, left, right = exprs[t.text]
        if op == "alias":
            return _expand(left, exprs)
        return "(" + _expand(left, exprs) + op + _expand(right, exprs) + ")"
    return render_term(t)


def _annotation(st: Statement, exprs: Dict[str, tuple]) -> str:
    ins, outs = st.inputs, st.outputs
    if st.name == "Int" and len(ins) == 1 and not outs:
        return f"{render_term(ins[0])}:I"
    if st.name in ("Lt", "Eq", "Neq") and len(ins) == 2 and not outs:
        op = {"Lt": "<", "Eq": "=", "Neq": "/="}[st.name]
        return f"{render_term(ins[0])}{op}{render_term(ins[1])}"
    if st.name in _ASSIGN_OPS and len(ins) == 2 and len(outs) == 1:
        op = _ASSIGN_OPS[st.name]
        shallow = f"({render_term(ins[0])}{op}{render_term(ins[1])})"
        expanded = f"({_expand(ins[0], exprs)}{op}{_expand(ins[1], exprs)})"
        text = f"{outs[0]}={shallow}"
        if expanded != shallow:
            text += f"={expanded}"
        return text
    if st.name == "Aid" and len(ins) == 1 and len(outs) == 1:
        text = f"{outs[0]}={render_term(ins[0])}"
        expanded = _expand(ins[0], exprs)
        if expanded != render_term(ins[0]):
            text += f"={expanded}"
        return text
    return ""


def _note_expr(st: Statement, exprs: Dict[str, tuple]) -> None:
    if st.name in _ASSIGN_OPS and len(st.inputs) == 2 and len(st.outputs) == 1:
        exprs[st.outputs[0].text] = (_ASSIGN_OPS[st.name], st.inputs[0], st.inputs[1])
    elif st.name == "Aid" and len(st.inputs) == 1 and len(st.outputs) == 1:
        exprs[st.outputs[0].text] = ("alias", st.inputs[0], None)


def annotations(state: ProofState) -> List[str]:
    """Annotation column for every line, premises included."""
    exprs: Dict[str, tuple] = {}
    out = []
    for pl in state.lines:
        out.append(_annotation(pl.statement, exprs))
        _note_expr(pl.statement, exprs)
    return out


def render_listing(state: ProofState) -> str:
    """Three/four column listing: number, statement, connection list,
    annotation.  Premise lines have no connection list."""
    rows = []
    for number, (pl, annot) in enumerate(zip(state.lines, annotations(state)), start=1):
        conn = pl.connection.render() if pl.connection else ""
        rows.append(f"{number:>3} {pl.statement.render():<20}{conn:<20}{annot}".rstrip())
    return "\n".join(rows)


def render_proof_document(state: ProofState, label: str) -> str:
    """Full proof file: theorem header, blank line, Proof., the listing."""
    result = extract_theorem(state)
    return (f"Theorem {label}.\n{result.render()}\n\nProof.\n"
            + render_listing(state) + "\n")


# ---------------------------------------------------------------------------
# Extraction


def extract_theorem(state: ProofState) -> ExtractionResult:
    """Iterate the connection lists of the final statement back to the
    premises that actually support it."""
    if len(state.lines) <= state.premise_count:
        raise EngineError("no derived lines to extract from")
    final = state.lines[-1]
    current = set(final.connection.refs)
    while any(idx > state.premise_count for idx in current):
        nxt = set()
        for idx in current:
            if idx <= state.premise_count:
                nxt.add(idx)
            else:
                nxt.update(state.lines[idx - 1].connection.refs)
        current = nxt
    used = tuple(sorted(current))
    redundant = tuple(i for i in range(1, state.premise_count + 1) if i not in current)
    premises = tuple(state.lines[i - 1].statement for i in used)
    return ExtractionResult(used, redundant, premises, final.statement)


# ---------------------------------------------------------------------------
# Listing parsing


@dataclass(frozen=True)
class ParsedProof:
    label: Optional[str]
    header: Optional[Tuple[tuple, Statement]]   # (premises, conclusion) as printed
    premises: tuple
    derived: tuple                              # ((Statement, Connection), ...)


def _parse_connection(text: str) -> Tuple[Connection, int]:
    assert text[0] == "["
    end = text.index("]")
    parts = [p.strip() for p in text[1:end].split(",")]
    label, refs = parts[0], parts[1:]
    if not refs or not all(r.isdigit() for r in refs):
        raise ProgramError(f"bad connection list {text[:end + 1]!r}")
    return Connection(label, tuple(int(r) for r in refs)), end + 1


def _parse_proof_line(line: str) -> Tuple[Statement, Optional[Connection]]:
    body = programs._strip_vertical_line(line)
    st = programs.parse_statement(body)
    rest = line.split(body, 1)[1].strip()
    conn = None
    if rest.startswith("["):
        conn, used = _parse_connection(rest)
    return st, conn


def _parse_header_theorem(text: str) -> Tuple[tuple, Statement]:
    from .terms import Scanner

    s = Scanner(text)
    s.expect("[")
    premises = programs._scan_horizontal(s)
    s.expect(",")
    conclusion = programs._scan_statement(s)
    s.expect("]")
    if not s.at_end():
        raise s.error("trailing input after theorem")
    return premises, conclusion


def parse_proof(text: str) -> ParsedProof:
    """Parse a proof listing: optional ``Theorem <label>.`` header with
    its horizontal [premises, conclusion] line, optional ``Proof.``
    marker, then one statement per line with optional leading number,
    optional connection list, annotation ignored."""
    label = None
    header = None
    premises: List[Statement] = []
    derived: List[Tuple[Statement, Connection]] = []
    expect_header_body = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if line.startswith("Theorem") and line.endswith("."):
                label = line[len("Theorem"):-1].strip()
                expect_header_body = True
                continue
            if expect_header_body and line.startswith("[["):
                header = _parse_header_theorem(line)
                expect_header_body = False
                continue
            if line == "Proof.":
                continue
            if line.startswith("[") and not premises and not derived:
                # a horizontal program supplies the premises
                premises.extend(parse_program(line))
                continue
            st, conn = _parse_proof_line(raw)
            if conn is None:
                if derived:
                    raise ProgramError("premise line after a derived line")
                premises.append(st)
            else:
                derived.append((st, conn))
        except (ProgramError, TermError) as e:
            raise ProgramError(f"line {lineno}: {e}") from e
    return ParsedProof(label, header, tuple(premises), tuple(derived))


# ---------------------------------------------------------------------------
# Replay


@dataclass(frozen=True)
class LineVerdict:
    number: int
    ok: bool
    message: str


@dataclass
class ReplayReport:
    label: Optional[str]
    verdicts: List[LineVerdict] = field(default_factory=list)
    ok: bool = True
    state: Optional[ProofState] = None
    header: Optional[Tuple[tuple, Statement]] = None

    def failures(self) -> List[LineVerdict]:
        return [v for v in self.verdicts if not v.ok]


def _conclusion_length(store: AxiomStore, conn: Connection,
                       lines: Sequence[Statement]) -> int:
    entry = store.resolve(conn.label)
    if isinstance(entry, Axiom):
        return len(entry.conclusion)
    if entry.schema_id == "subst-equal" and conn.refs:
        target_ref = conn.refs[0]
        if not 1 <= target_ref <= len(lines):
            return 1
        return max(1, len(lines[target_ref - 1].outputs))
    return 1


def _verify_group(store: AxiomStore, lines: Sequence[Statement],
                  used_names: set, conn: Connection,
                  recorded: Sequence[Statement]) -> Optional[str]:
    """None when the recorded statements follow from conn, else the reason."""
    try:
        entry = store.resolve(conn.label)
    except StoreError as e:
        return str(e)
    n = len(lines)
    for ref in conn.refs:
        if not 1 <= ref <= n:
            return f"ref {ref} is not an earlier line"

    if isinstance(entry, Schema):
        if len(conn.refs) != entry.premise_len:
            return (f"{conn.label} takes {entry.premise_len} refs, "
                    f"connection has {len(conn.refs)}")
        err = _verify_schema(store, entry, lines, conn.refs, recorded)
        if err:
            return err
    else:
        if len(conn.refs) != len(entry.premise):
            return (f"{conn.label} premise has {len(entry.premise)} statements, "
                    f"connection lists {len(conn.refs)} refs")
        binding: Dict[str, Term] = {}
        for k, (pat, ref) in enumerate(zip(entry.premise, conn.refs), start=1):
            binding = unify_statement(pat, lines[ref - 1], binding)
            if binding is None:
                return (f"premise statement {k} of {conn.label} does not match "
                        f"line {ref}")
        for pat, rec in zip(entry.conclusion, recorded):
            binding = unify_statement(pat, rec, binding)
            if binding is None:
                return f"conclusion of {conn.label} does not yield {rec.render()}"

    # recorded outputs must be new names
    fresh = []
    for rec in recorded:
        fresh.extend(o.text for o in rec.outputs)
    clashes = [x for x in fresh if x in used_names]
    if clashes:
        return f"output name {clashes[0]} is already in use"
    if len(set(fresh)) != len(fresh):
        return "repeated output name in conclusion"
    return None


def _verify_schema(store: AxiomStore, schema: Schema, lines: Sequence[Statement],
                   refs: tuple, recorded: Sequence[Statement]) -> Optional[str]:
    sid = schema.schema_id
    target = lines[refs[0] - 1]
    if sid in ("id-type-input", "id-type-output"):
        rec = recorded[0]
        elements = target.inputs if sid == "id-type-input" else target.outputs
        for i in range(1, len(elements) + 1):
            try:
                _, concl = store.instantiate_schema(sid, target=target, index=i)
            except ProgramError:
                continue
            if concl[0] == rec:
                return None
        return f"{rec.render()} does not name an element of line {refs[0]}"

    equality = lines[refs[1] - 1]
    if sid == "subst-exists":
        rec = recorded[0]
        if rec.name != target.name or len(rec.inputs) != len(target.inputs) \
                or len(rec.outputs) != len(target.outputs):
            return f"{rec.render()} has a different shape than line {refs[0]}"
        for i in range(1, len(target.inputs) + 1):
            names = iter(rec.outputs)
            try:
                _, concl = store.instantiate_schema(
                    sid, target=target, index=i, equality=equality,
                    fresh=lambda: next(names))
            except ProgramError:
                continue
            if concl[0] == rec:
                return None
        return (f"{rec.render()} is not a substitution instance of line {refs[0]} "
                f"via line {refs[1]}")

    if sid == "subst-equal":
        copy = lines[refs[2] - 1]
        for i in range(1, len(target.inputs) + 1):
            try:
                _, concl = store.instantiate_schema(
                    sid, target=target, index=i, equality=equality, copy=copy)
            except ProgramError:
                continue
            if tuple(concl) == tuple(recorded):
                return None
        return ("recorded equalities are not the substitution conclusion of "
                f"lines {refs[0]},{refs[1]},{refs[2]}")
    return f"unknown schema {sid}"


def replay(text: str, store: AxiomStore) -> ReplayReport:
    """Re-verify a proof listing against the store, line by line."""
    parsed = parse_proof(text)
    report = ReplayReport(label=parsed.label, header=parsed.header)
    try:
        check_program(parsed.premises)
    except ProgramError as e:
        report.ok = False
        report.verdicts.append(LineVerdict(0, False, f"invalid premises: {e}"))
        return report

    lines: List[Statement] = list(parsed.premises)
    used_names: set = set()
    for st in parsed.premises:
        for t in st.inputs:
            used_names.update(i.text for i in iter_idents(t))
        used_names.update(o.text for o in st.outputs)
    for number in range(1, len(parsed.premises) + 1):
        report.verdicts.append(LineVerdict(number, True, "premise"))

    pos = 0
    number = len(parsed.premises)
    derived = list(parsed.derived)
    while pos < len(derived):
        st, conn = derived[pos]
        m = _conclusion_length(store, conn, lines) if conn.label in store.entries else 1
        group = derived[pos:pos + m]
        if len(group) < m or any(c != conn for _, c in group[1:]):
            group = [(st, conn)]
            err = (f"{conn.label} concludes {m} statements; the following "
                   "lines do not share its connection list")
        else:
            err = _verify_group(store, lines, used_names, conn,
                                [s for s, _ in group])
        recorded = [s for s, _ in group]
        for rec in recorded:
            number += 1
            if err is None:
                report.verdicts.append(LineVerdict(number, True, f"ok {conn.render()}"))
            else:
                report.ok = False
                report.verdicts.append(LineVerdict(number, False, err))
            lines.append(rec)
            for t in rec.inputs:
                used_names.update(i.text for i in iter_idents(t))
            used_names.update(o.text for o in rec.outputs)
        pos += len(group)

    violations = validate_program(lines)
    if violations:
        report.ok = False
        report.verdicts.append(LineVerdict(0, False, "; ".join(str(v) for v in violations)))
    if report.ok:
        report.state = ProofState.from_lines(parsed.premises, parsed.derived)
    return report


# ---------------------------------------------------------------------------
# Snapshots


def to_snapshot(state: ProofState) -> dict:
    return {
        "premises": [pl.statement.render() for pl in state.lines[:state.premise_count]],
        "derived": [
            {"statement": pl.statement.render(),
             "label": pl.connection.label,
             "refs": list(pl.connection.refs)}
            for pl in state.derived()
        ],
    }


def from_snapshot(doc: dict) -> ProofState:
    premises = tuple(programs.parse_statement(s) for s in doc.get("premises", []))
    derived = tuple(
        (programs.parse_statement(d["statement"]),
         Connection(d["label"], tuple(int(r) for r in d["refs"])))
        for d in doc.get("derived", [])
    )
    return ProofState.from_lines(premises, derived)
