"""A rule can be admissible as an inference step yet invalid on frames.

The rule "from X x infer x" is refuted on a two-world frame: make x true at
the looping world only, and X x holds everywhere while x fails at world 0.
But as an admissible rule it is safe: whenever X A is a theorem of the
uniform logic, A already is one (truth at any world only depends on the
window pattern, and every pattern that starts one step later also occurs at
the start).  The bounded search looks hard for a counterexample substitution
and finds none, while a constant substitution instantly refutes "from x
infer false".
"""

from itl import (
    FiniteLassoFrame,
    check_certificate,
    decide_admissible,
    parse_rule,
    print_formula,
    rule_valid_in_frame,
)
from itl.admissibility import substitution_pool

next_elim = parse_rule("X x / x")
frame = FiniteLassoFrame(2, 1, (1, 1))
print(f"rule: {next_elim}")
print(f"valid on the 2-world loop frame: {rule_valid_in_frame(frame, next_elim)}")

for depth in (0, 1, 2):
    pool = substitution_pool(depth)
    report = decide_admissible(next_elim, m=1, depth=depth)
    print(f"refutation search, depth {depth} ({len(pool)} candidate formulas): {report.status.value}")

print()
drop = parse_rule("x / false")
report = decide_admissible(drop, m=1, depth=0)
sub = {name: print_formula(f) for name, f in report.substitution.items()}
print(f"rule: {drop} -> {report.status.value} with substitution {sub}")
print(f"conclusion countermodel re-checks: {check_certificate(report.conclusion_verdict)}")

print()
safe = parse_rule("p / q -> (p U q)")
report = decide_admissible(safe, m=1, depth=1)
print(f"rule: {safe} -> {report.status.value} ({report.reason}):")
print("  the conclusion is itself a theorem (the Until witness may be the current world)")
