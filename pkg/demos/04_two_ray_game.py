"""Play the 2-ray game on two hypersurfaces.

Starting from the fibration ray, the game crosses each wall of the chamber
fan, restricts the toric modification to the hypersurface and checks that
the result stays in the Mori category.  The first model fails at its first
wall; the second completes a link to a quartic in weighted projective space.
"""
from tworay import builtin, run_game

for name in ("paper-X", "paper-Xprime"):
    sc = builtin(name)
    trace = run_game(sc.model(), sc.system(), full_trace=True)
    print(f"== {name}")
    for i, step in enumerate(trace.steps):
        print(f"  step {i}: {step.crossing.describe()}  -> {step.restricted.result}"
              f"{'' if step.check.ok else ' (' + step.check.reason + ')'}")
    print("  " + trace.verdict_line())
