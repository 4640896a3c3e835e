"""Concrete semantics of the atomic integer programs under a bound N.

Values are machine integers in [-N, N].  Type-checking programs (Int,
Lt, Eq, Neq) leave the environment unchanged; assignment programs (Aid,
Add, Mult, Div) extend it.  A failed check or an out-of-range result
halts execution with an ExecError naming the first failing statement.
Execution errors are returned as data, not raised.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Dict, Sequence, Tuple, Union

from .terms import DEFAULT_CONFIG, Ident, Lit, MachineConfig, Term
from .programs import Statement, derive_io, render_program

Env = Dict[str, int]

ATOMIC_NAMES = ("Int", "Lt", "Eq", "Neq", "Aid", "Add", "Mult", "Div")
TYPE_CHECKERS = ("Int", "Lt", "Eq", "Neq")


@dataclass(frozen=True)
class ExecError:
    kind: str        # not-an-integer | range-overflow | relation-failed |
                     # division-undefined | unbound-input | rebinding
    index: int       # 1-based statement index of the first failure
    detail: str

    def __str__(self) -> str:
        return f"statement {self.index}: {self.kind}: {self.detail}"


def in_range(value: int, cfg: MachineConfig) -> bool:
    return -cfg.max_int <= value <= cfg.max_int


class _Halt(Exception):
    def __init__(self, err: ExecError):
        self.err = err


def _value_of(t: Term, env: Env, cfg: MachineConfig) -> int:
    if isinstance(t, Lit):
        if not in_range(t.value, cfg):
            raise _Halt(ExecError("not-an-integer", 0, f"literal {t.value} outside [-N, N]"))
        return t.value
    if isinstance(t, Ident):
        if t.text not in env:
            raise _Halt(ExecError("unbound-input", 0, f"{t.text} has no assigned value"))
        return env[t.text]
    raise _Halt(ExecError("not-an-integer", 0, "list term has no integer value"))


def _bind(env: Env, out: Ident, value: int) -> None:
    if out.text in env:
        raise _Halt(ExecError("rebinding", 0, f"{out.text} is already assigned"))
    env[out.text] = value


def exec_atomic(st: Statement, env: Env, cfg: MachineConfig = DEFAULT_CONFIG,
                index: int = 1) -> Union[Env, ExecError]:
    """One atomic step.  Returns the (new) environment or an ExecError."""
    try:
        new_env = dict(env)
        _step(st, new_env, cfg)
        return new_env
    except _Halt as h:
        return replace(h.err, index=index)


def _step(st: Statement, env: Env, cfg: MachineConfig) -> None:
    name = st.name
    if name not in ATOMIC_NAMES:
        raise _Halt(ExecError("not-an-integer", 0, f"{name} is not an atomic integer program"))
    args = [_value_of(t, env, cfg) for t in st.inputs]

    if name == "Int":
        return
    if name == "Lt":
        a, b = args
        if not a < b:
            raise _Halt(ExecError("relation-failed", 0, f"{a} < {b} fails"))
        return
    if name == "Eq":
        a, b = args
        if a != b:
            raise _Halt(ExecError("relation-failed", 0, f"{a} = {b} fails"))
        return
    if name == "Neq":
        a, b = args
        if a == b:
            raise _Halt(ExecError("relation-failed", 0, f"{a} /= {b} fails"))
        return
    if name == "Aid":
        _bind(env, st.outputs[0], args[0])
        return
    if name in ("Add", "Mult"):
        a, b = args
        c = a + b if name == "Add" else a * b
        if not in_range(c, cfg):
            op = "+" if name == "Add" else "*"
            raise _Halt(ExecError("range-overflow", 0, f"{a}{op}{b} = {c} outside [-N, N]"))
        _bind(env, st.outputs[0], c)
        return
    if name == "Div":
        a, b = args
        if b == 0 or a % b != 0:
            raise _Halt(ExecError("division-undefined", 0,
                                  f"{a}/{b} is not an exact machine integer"))
        _bind(env, st.outputs[0], a // b)
        return


def run_program(p: Sequence[Statement], inputs: Env,
                cfg: MachineConfig = DEFAULT_CONFIG) -> Union[Env, ExecError]:
    """Execute p left to right on the given input bindings.

    inputs must bind exactly the derived main inputs (literals excluded).
    On success the environment restricted to the main outputs is
    returned; otherwise the first ExecError.
    """
    io = derive_io(p)
    wanted = {t.text for t in io.inputs if isinstance(t, Ident)}
    unexpected = set(inputs) - wanted
    if unexpected:
        raise ValueError(f"unexpected input bindings: {sorted(unexpected)}")
    for name, value in inputs.items():
        if not in_range(value, cfg):
            return ExecError("not-an-integer", 0, f"input {name}={value} outside [-N, N]")

    env = dict(inputs)
    for i, st in enumerate(p, start=1):
        try:
            _step(st, env, cfg)
        except _Halt as h:
            return replace(h.err, index=i)
    return {o.text: env[o.text] for o in io.outputs}


# ---------------------------------------------------------------------------
# Closure counterexamples
#
# Addition and multiplication on [-N, N] are not closed, so neither
# associativity nor distributivity can be rebracketed freely: one
# grouping can be computable while the other overflows.


@dataclass(frozen=True)
class ClosureReport:
    scenario: str
    bindings: Env
    computable: tuple            # (program, outputs)
    failing: tuple               # ((program, ExecError), ...)

    def describe(self) -> str:
        prog, outs = self.computable
        lines = [f"{self.scenario} with {self.bindings}:"]
        lines.append(f"  computes   {render_program(prog)} -> {outs}")
        for prog, err in self.failing:
            lines.append(f"  overflows  {render_program(prog)} ({err})")
        return "\n".join(lines)


def _stmt(name: str, ins: Tuple[Term, ...], outs: Tuple[Ident, ...]) -> Statement:
    return Statement(name, ins, outs)


def _scenario_programs(scenario: str, cfg: MachineConfig):
    a, b, c, d, e, u, v, x, y = (Ident(n) for n in "abcdeuvxy")
    N = cfg.max_int
    if scenario == "assoc-add":
        # (a+b)+c exists, b+c does not
        return ({"a": -N, "b": N, "c": 1},
                (_stmt("Add", (a, b), (d,)), _stmt("Add", (d, c), (x,))),
                [(_stmt("Add", (b, c), (e,)),)])
    if scenario == "assoc-mult":
        # (a*b)*c exists, b*c does not
        return ({"a": 0, "b": N, "c": 2},
                (_stmt("Mult", (a, b), (d,)), _stmt("Mult", (d, c), (x,))),
                [(_stmt("Mult", (b, c), (e,)),)])
    if scenario == "dist-fwd":
        # a*(b+c) exists, neither a*b nor a*c does
        return ({"a": N, "b": N, "c": -N},
                (_stmt("Add", (b, c), (d,)), _stmt("Mult", (a, d), (x,))),
                [(_stmt("Mult", (a, b), (u,)),), (_stmt("Mult", (a, c), (v,)),)])
    if scenario == "dist-bwd":
        # a*b + a*c exists, b+c does not
        return ({"a": 0, "b": N, "c": N},
                (_stmt("Mult", (a, b), (u,)), _stmt("Mult", (a, c), (v,)),
                 _stmt("Add", (u, v), (y,))),
                [(_stmt("Add", (b, c), (d,)),)])
    raise ValueError(f"unknown scenario {scenario!r}")


CLOSURE_SCENARIOS = ("assoc-add", "assoc-mult", "dist-fwd", "dist-bwd")


def falsify_closure(scenario: str, cfg: MachineConfig = DEFAULT_CONFIG) -> ClosureReport:
    """Run the stated assignments for one scenario and report which
    grouping computes and which halts."""
    bindings, ok_prog, fail_progs = _scenario_programs(scenario, cfg)

    def restrict(prog):
        io = derive_io(prog)
        return {k: v for k, v in bindings.items()
                if Ident(k) in io.inputs}

    outs = run_program(ok_prog, restrict(ok_prog), cfg)
    if isinstance(outs, ExecError):
        raise AssertionError(f"{scenario}: expected computable side failed: {outs}")
    failing = []
    for prog in fail_progs:
        err = run_program(prog, restrict(prog), cfg)
        if not isinstance(err, ExecError):
            raise AssertionError(f"{scenario}: expected overflow side computed: {err}")
        failing.append((prog, err))
    return ClosureReport(scenario, bindings, (ok_prog, outs), tuple(failing))
