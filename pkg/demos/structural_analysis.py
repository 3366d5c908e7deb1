# Three-valued structural verdicts on three small system classes: one
# provably unsolvable, one provably solvable, and one where the
# sufficient certificate fails even though every member is fine.

import json

from structfdi import analyze_structured, parse_structured_system

CHAIN = """
A:
0 0 0
* 0 0
0 0 0

L:
* 0 0
0 * 0
0 * *

C:
? * 0
0 * 0
"""

CERTIFIED = """
A:
* 0 0 0 0
* ? 0 ? 0
0 * * ? 0
* 0 0 ? *
0 0 * 0 *

L:
* 0
? *
0 0
0 0
0 0

C:
0 0 0 * 0
0 0 0 ? ?
0 0 0 * *
"""

GAP = """
A:
0 0
0 0

L:
* *
0 *

C:
* *
* 0
"""


def show(name, text):
    triple = parse_structured_system(text)
    report = analyze_structured(triple)
    print(f"--- {name} ---")
    print(json.dumps(report.to_jsonable(), indent=2, sort_keys=True))
    print()


print("Verdict legend: NotSolvable = no member is isolable;")
print("Solvable = every member is; Inconclusive = the class-level rank")
print("certificate failed, which proves nothing by itself.")
print()

# channel 3 never reaches an output at any power, so no member can
# isolate it: the verdict is a proof of impossibility
show("three-state chain, silent third channel", CHAIN)

# both structural indices exist and the signature pattern passes the
# colorability rank test, so every member is isolable
show("five-state system with a rank certificate", CERTIFIED)

# the signature pattern has a rank-deficient member, so the certificate
# fails; the verdict stays open (see monte_carlo_gap.py for why the
# members are in fact all solvable)
show("two-state class in the certificate gap", GAP)
