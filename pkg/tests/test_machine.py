import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from machlog.machine import (
    CLOSURE_SCENARIOS,
    ExecError,
    exec_atomic,
    falsify_closure,
    run_program,
)
from machlog.programs import parse_program, parse_statement
from machlog.terms import MachineConfig

N7 = MachineConfig(max_int=7)
N100 = MachineConfig(max_int=100)


def stmt(text):
    return parse_statement(text)


# --- atomic steps -----------------------------------------------------

def test_add_in_range():
    env = exec_atomic(stmt("Add([a,b],[c])"), {"a": 3, "b": 4}, N100)
    assert env == {"a": 3, "b": 4, "c": 7}


def test_add_overflow_at_bound():
    err = exec_atomic(stmt("Add([b,c],[e])"), {"b": 100, "c": 1}, N100)
    assert isinstance(err, ExecError)
    assert err.kind == "range-overflow"


def test_div_requires_exact_quotient():
    err = exec_atomic(stmt("Div([a,b],[c])"), {"a": 3, "b": 2}, N100)
    assert isinstance(err, ExecError) and err.kind == "division-undefined"
    env = exec_atomic(stmt("Div([a,b],[c])"), {"a": -6, "b": 3}, N100)
    assert env["c"] == -2
    err = exec_atomic(stmt("Div([a,b],[c])"), {"a": 5, "b": 0}, N100)
    assert isinstance(err, ExecError) and err.kind == "division-undefined"


@pytest.mark.parametrize("text,env,kind", [
    ("Lt([a,b],[])", {"a": 5, "b": 5}, "relation-failed"),
    ("Eq([a,b],[])", {"a": 1, "b": 2}, "relation-failed"),
    ("Neq([a,a],[])", {"a": 1}, "relation-failed"),
    ("Add([a,b],[c])", {"a": 1}, "unbound-input"),
])
def test_check_failures(text, env, kind):
    err = exec_atomic(stmt(text), env, N100)
    assert isinstance(err, ExecError) and err.kind == kind


def test_checks_leave_env_unchanged():
    env = {"a": 3}
    out = exec_atomic(stmt("Int([a],[])"), env, N100)
    assert out == env and out is not env


def test_literal_inputs_range_checked():
    assert exec_atomic(stmt("Int([5],[])"), {}, N7) == {}
    err = exec_atomic(stmt("Int([9],[])"), {}, N7)
    assert isinstance(err, ExecError) and err.kind == "not-an-integer"


def test_rebinding_rejected():
    err = exec_atomic(stmt("Aid([a],[b])"), {"a": 1, "b": 2}, N100)
    assert isinstance(err, ExecError) and err.kind == "rebinding"


# --- whole programs ---------------------------------------------------

def test_run_reassociated_sum():
    p = parse_program("[Add([a,b],[d]), Add([d,c],[x])]")
    out = run_program(p, {"a": -7, "b": 7, "c": 1}, N7)
    assert out == {"d": 0, "x": 1}
    err = run_program(parse_program("[Add([b,c],[e])]"), {"b": 7, "c": 1}, N7)
    assert isinstance(err, ExecError)
    assert err.kind == "range-overflow" and err.index == 1


def test_run_reassociated_product():
    p = parse_program("[Mult([a,b],[d]), Mult([d,c],[x])]")
    assert run_program(p, {"a": 0, "b": 7, "c": 2}, N7) == {"d": 0, "x": 0}
    err = run_program(parse_program("[Mult([b,c],[e])]"), {"b": 7, "c": 2}, N7)
    assert isinstance(err, ExecError) and err.kind == "range-overflow"


def test_run_empty_program():
    assert run_program((), {}, N7) == {}


def test_run_reports_first_failure():
    p = parse_program("[Add([a,b],[c]), Add([c,b],[d]), Add([d,b],[e])]")
    err = run_program(p, {"a": 5, "b": 2}, N7)
    assert isinstance(err, ExecError)
    assert err.index == 2  # c=7 fine, d=9 overflows


def test_run_missing_binding_is_unbound_input():
    err = run_program(parse_program("[Add([a,b],[c])]"), {"a": 1}, N7)
    assert isinstance(err, ExecError) and err.kind == "unbound-input"


def test_run_unexpected_binding_rejected():
    with pytest.raises(ValueError):
        run_program(parse_program("[Add([a,b],[c])]"), {"a": 1, "b": 2, "zz": 3}, N7)


def test_run_literal_inputs_do_not_need_bindings():
    p = parse_program("[Mult([-1,b],[d])]")
    assert run_program(p, {"b": 5}, N7) == {"d": -5}


# --- closure counterexamples ------------------------------------------

def test_closure_scenarios_at_n7():
    reports = {s: falsify_closure(s, N7) for s in CLOSURE_SCENARIOS}

    r = reports["assoc-add"]
    assert r.bindings == {"a": -7, "b": 7, "c": 1}
    assert r.computable[1] == {"d": 0, "x": 1}
    (prog1, err1), = r.failing
    assert err1.kind == "range-overflow" and err1.index == 1

    r = reports["assoc-mult"]
    assert r.bindings == {"a": 0, "b": 7, "c": 2}
    assert r.computable[1] == {"d": 0, "x": 0}
    (_, err1), = r.failing
    assert err1.kind == "range-overflow"

    r = reports["dist-fwd"]
    assert r.bindings == {"a": 7, "b": 7, "c": -7}
    assert r.computable[1] == {"d": 0, "x": 0}
    assert len(r.failing) == 2  # both partial products overflow
    assert all(err.kind == "range-overflow" for _, err in r.failing)

    r = reports["dist-bwd"]
    assert r.bindings == {"a": 0, "b": 7, "c": 7}
    assert r.computable[1] == {"u": 0, "v": 0, "y": 0}
    (_, err1), = r.failing
    assert err1.kind == "range-overflow"


def test_closure_unknown_scenario():
    with pytest.raises(ValueError):
        falsify_closure("assoc-div", N7)


# --- semantic shadows of the axioms ---------------------------------------

in_range7 = st.integers(min_value=-7, max_value=7)


@settings(max_examples=300)
@given(in_range7, in_range7)
def test_addition_commutes_when_defined(a, b):
    first = exec_atomic(stmt("Add([a,b],[c])"), {"a": a, "b": b}, N7)
    if isinstance(first, ExecError):
        return
    second = exec_atomic(stmt("Add([b,a],[d])"), {"a": a, "b": b}, N7)
    assert not isinstance(second, ExecError)
    assert second["d"] == first["c"]


@settings(max_examples=300)
@given(in_range7)
def test_negation_and_inverse(a):
    p = parse_program("[Mult([-1,a],[b]), Add([a,b],[d])]")
    out = run_program(p, {"a": a}, N7)
    assert out == {"b": -a, "d": 0}


@settings(max_examples=300)
@given(in_range7)
def test_identity_assignment(a):
    out = run_program(parse_program("[Aid([a],[b])]"), {"a": a}, N7)
    assert out == {"b": a}


@settings(max_examples=300)
@given(in_range7.filter(lambda a: a != 0), in_range7)
def test_division_inverts_multiplication(a, b):
    p = parse_program("[Mult([a,b],[c]), Div([c,a],[d])]")
    out = run_program(p, {"a": a, "b": b}, N7)
    if isinstance(out, ExecError):
        assert out.kind == "range-overflow" and out.index == 1
        return
    assert out["d"] == b
