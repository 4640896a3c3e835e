"""Run straight-line integer programs under a tiny bound.

The interpreter executes statements left to right, type-checking every
value against [-N, N].  Relations (Lt, Eq, Neq) are checks that halt the
program when they fail; assignments (Aid, Add, Mult, Div) bind fresh
names.  Division is exact or it is an error.
"""

from machlog import ExecError, MachineConfig, parse_program, run_program

cfg = MachineConfig(max_int=7)


def show(text, **bindings):
    program = parse_program(text)
    outcome = run_program(program, bindings, cfg)
    print(f"{text}  with {bindings}")
    if isinstance(outcome, ExecError):
        print(f"  halts: {outcome}")
    else:
        print(f"  returns {outcome}")
    print()


show("[Add([a,b],[d]), Add([d,c],[x])]", a=-7, b=7, c=1)
show("[Add([b,c],[e])]", b=7, c=1)
show("[Mult([a,b],[c]), Div([c,a],[q])]", a=3, b=2)
show("[Div([a,b],[q])]", a=3, b=2)
show("[Lt([a,b],[]), Add([a,b],[c])]", a=2, b=3)
show("[Lt([a,b],[]), Add([a,b],[c])]", a=3, b=2)
