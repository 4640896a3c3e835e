"""Sequential equivalence, I/O equivalence, and premise matching.

Matching instantiates an axiom or theorem premise against lines of a
proof: every axiom-side identifier binds consistently to one proof-side
term, literals only match themselves, and statement names and arities
must agree position-wise.  The binding need not be injective and may
send axiom variables to proof-side constants; both are required by the
bundled corpus.  Connection refs are reported in premise order and may
repeat a line.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections import Counter, defaultdict
from typing import Callable, Dict, List, Optional, Sequence

from .terms import Ident, Lit, Term
from .programs import ProgramError, Statement, check_program

Renaming = Dict[str, Term]


@dataclass(frozen=True)
class MatchResult:
    refs: tuple            # 1-based proof-line indices, one per premise statement
    renaming: tuple        # sorted ((axiom var, proof term), ...) pairs

    def renaming_dict(self) -> Renaming:
        return dict(self.renaming)


def _unify_term(pattern: Term, target: Term, binding: Renaming, trail: list) -> bool:
    if isinstance(pattern, Lit):
        return isinstance(target, Lit) and pattern.value == target.value
    if isinstance(pattern, Ident):
        bound = binding.get(pattern.text)
        if bound is None:
            binding[pattern.text] = target
            trail.append(pattern.text)
            return True
        return bound == target
    if isinstance(pattern, tuple):
        if not isinstance(target, tuple) or len(pattern) != len(target):
            return False
        return all(_unify_term(p, t, binding, trail) for p, t in zip(pattern, target))
    raise TypeError(f"not a term: {pattern!r}")


def _undo(binding: Renaming, trail: list, mark: int) -> None:
    while len(trail) > mark:
        del binding[trail.pop()]


def unify_statement(pattern: Statement, target: Statement,
                    binding: Optional[Renaming] = None) -> Optional[Renaming]:
    """Extend binding so that pattern becomes exactly target, or None."""
    binding = dict(binding or {})
    trail: list = []
    if pattern.name != target.name:
        return None
    if len(pattern.inputs) != len(target.inputs) or len(pattern.outputs) != len(target.outputs):
        return None
    for p, t in zip(pattern.inputs + pattern.outputs, target.inputs + target.outputs):
        if not _unify_term(p, t, binding, trail):
            return None
    return binding


def match_premise(premise: Sequence[Statement], lines: Sequence[Statement],
                  upto: Optional[int] = None) -> List[MatchResult]:
    """All ways to instantiate premise using proof lines 1..upto.

    Results are ordered lexicographically by refs.  The same line may
    fill several premise slots.
    """
    check_program(premise)
    n = len(lines) if upto is None else min(upto, len(lines))
    by_shape = defaultdict(list)
    for idx in range(n):
        st = lines[idx]
        by_shape[st.arity].append(idx + 1)

    results: List[MatchResult] = []
    refs: List[int] = []
    binding: Renaming = {}
    trail: list = []

    def walk(slot: int) -> None:
        if slot == len(premise):
            results.append(MatchResult(tuple(refs), tuple(sorted(binding.items()))))
            return
        pat = premise[slot]
        for ref in by_shape.get(pat.arity, ()):
            mark = len(trail)
            target = lines[ref - 1]
            ok = all(
                _unify_term(p, t, binding, trail)
                for p, t in zip(pat.inputs + pat.outputs, target.inputs + target.outputs)
            )
            if ok:
                refs.append(ref)
                walk(slot + 1)
                refs.pop()
            _undo(binding, trail, mark)

    walk(0)
    return results


def apply_renaming(p: Sequence[Statement], renaming: Renaming,
                   fresh: Optional[Callable[[], Ident]] = None) -> tuple:
    """Instantiate p under renaming; unbound outputs draw fresh names.

    An unbound identifier in input position signals an ill-formed entry
    (conclusion inputs must be premise-bound or constants).
    """
    binding = dict(renaming)

    def subst_input(t: Term) -> Term:
        if isinstance(t, Lit):
            return t
        if isinstance(t, Ident):
            if t.text not in binding:
                raise ProgramError(f"unbound input variable {t.text}")
            return binding[t.text]
        return tuple(subst_input(e) for e in t)

    out = []
    for st in p:
        inputs = tuple(subst_input(t) for t in st.inputs)
        outputs = []
        for o in st.outputs:
            if o.text in binding:
                bound = binding[o.text]
                if not isinstance(bound, Ident):
                    raise ProgramError(f"output variable {o.text} bound to non-identifier")
                outputs.append(bound)
            else:
                if fresh is None:
                    raise ProgramError(f"no fresh-name supply for output {o.text}")
                name = fresh()
                binding[o.text] = name
                outputs.append(name)
        out.append(Statement(st.name, inputs, tuple(outputs)))
    return tuple(out)


# ---------------------------------------------------------------------------
# Equivalence relations


def eqseq(p: Sequence[Statement], q: Sequence[Statement]) -> bool:
    """True iff q is a permutation of p and both respect I/O dependency.

    A reordering that breaks the dependency condition is not a program,
    so it is not sequentially equivalent to anything."""
    from .programs import validate_program

    if validate_program(p) or validate_program(q):
        return False
    return Counter(p) == Counter(q)


def _canonical(p: Sequence[Statement]) -> tuple:
    """Positions of p with identifiers renamed by first occurrence;
    literals stay put, so equal canonical forms mean a bijective
    constant-fixing correspondence exists."""
    table: Dict[str, int] = {}

    def canon(t: Term):
        if isinstance(t, Ident):
            if t.text not in table:
                table[t.text] = len(table)
            return ("v", table[t.text])
        if isinstance(t, Lit):
            return ("c", t.value)
        return tuple(canon(e) for e in t)

    return tuple(
        (st.name, tuple(canon(t) for t in st.inputs), tuple(canon(o) for o in st.outputs))
        for st in p
    )


def eqio(p: Sequence[Statement], q: Sequence[Statement]) -> bool:
    """True iff the variable-occurrence patterns of p and q coincide in
    both directions with constants fixed."""
    if len(p) != len(q) or any(a.arity != b.arity for a, b in zip(p, q)):
        raise ProgramError("I/O equivalence needs equal shapes (length, names, arities)")
    return _canonical(p) == _canonical(q)
