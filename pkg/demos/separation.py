"""How bounded memory separates the window logic from classic LTL.

Classically, "always p" at a moment means p at every later moment, so
"always p" trivially implies "always always p".  When each moment only sees
a bounded window of m steps, the inner "always" can peek one window further
than the outer one, and the implication breaks.  This script shows the
classic validity, asks the decision procedure for a countermodel, and
re-checks the certificate.
"""

import json
import random

from itl import (
    ClassicLassoModel,
    Valuation,
    check_certificate,
    classic_valid_in_model,
    decide_uniform_theorem,
    eval_nt,
    parse_formula,
    verdict_to_dict,
)

f = parse_formula("G p -> G G p")
print(f"formula: G p -> G G p   (expanded: {f})\n")

print("Classic check: valid in 50 random ultimately periodic models")
rng = random.Random(0)
for _ in range(50):
    worlds = rng.randint(1, 8)
    valuation = Valuation({"p": frozenset(a for a in range(worlds) if rng.random() < 0.5)})
    cm = ClassicLassoModel(worlds, rng.randint(0, worlds - 1), valuation)
    assert classic_valid_in_model(cm, f)
print("  ... all 50 models satisfy it everywhere.\n")

for m in (1, 2, 3):
    verdict = decide_uniform_theorem(f, m)
    cert = verdict.certificate
    print(f"window logic, memory length m={m}: {verdict.kind.value}")
    print(f"  countermodel: {json.dumps(verdict_to_dict(verdict)['certificate'])}")
    print(f"  certificate re-checks: {check_certificate(verdict)}")
    model = cert.model
    g_p = parse_formula("G p")
    print(f"  why: G p at world 0 = {eval_nt(model, 0, g_p)}, "
          f"but G p at world 1 = {eval_nt(model, 1, g_p)} "
          f"(world 1's window sees one step further)\n")

print("The other direction is a theorem: a full window of p forces G p.")
for m in (1, 2, 3, 4):
    chain = " & ".join(["p"] + [f"{'X ' * i}p" for i in range(1, m + 1)])
    verdict = decide_uniform_theorem(parse_formula(f"({chain}) -> G p"), m)
    print(f"  m={m}: ({chain}) -> G p : {verdict.kind.value}")
