"""Why bounded integers have no closure: the four textbook failures.

With machine integers limited to [-N, N], addition and multiplication
cannot be freely rebracketed: one grouping of the same expression can
compute while the other overflows.  This script runs all four scenarios
at N = 7 so the numbers are easy to follow.
"""

from machlog import CLOSURE_SCENARIOS, MachineConfig, falsify_closure

cfg = MachineConfig(max_int=7)

for scenario in CLOSURE_SCENARIOS:
    print(falsify_closure(scenario, cfg).describe())
    print()
