"""Build a proof the way the interactive workflow does.

Starting from the premises c=a+b and d=-1*b, we repeatedly enumerate
the derivations the axiom store offers, apply a chosen one, and end by
extracting the theorem: c+d exists (it equals a).  The option picked at
each step is the one recorded in the bundled T1 proof, so the final
listing reproduces it exactly.
"""

from machlog import corpus, enumerate_options, extract_theorem, new_session
from machlog.engine import parse_proof, render_listing
from machlog.programs import parse_program

store = corpus.load_bundled_store()
state = new_session(parse_program("[Add([a,b],[c]), Mult([-1,b],[d])]"))

print("premises:")
print(render_listing(state))

first = enumerate_options(state, store)
print(f"\n{len(first)} derivations are available immediately; the first few:")
for option in first[:5]:
    print(f"  [{option.index:>3}] {option.label:<4} refs {option.refs}: {option.preview()}")

# follow the recorded derivation sequence of the bundled proof
recorded = parse_proof(corpus.proof_text("T1")).derived
for statement, connection in recorded:
    options = enumerate_options(state, store)
    choice = next(o for o in options
                  if o.label == connection.label and o.refs == connection.refs
                  and o.conclusion == (statement,))
    state.apply(choice)

print("\ncompleted proof:")
print(render_listing(state))

result = extract_theorem(state)
print("\nextracted theorem:")
print(result.render())
print(f"used premises: {list(result.used)}, redundant: {list(result.redundant)}")
