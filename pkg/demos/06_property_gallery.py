"""One matrix of verdicts: three systems against three shadowing variants.

The gallery experiment runs the inverse, weak, and orbital checks on a
perturbed cat map, the neutral shear drift, and the golden rotation drift,
then compares each verdict against the rule-based expectation table.
"""

import json

from shadowlab import run_property_gallery

report = run_property_gallery()
print(f"experiment: {report.name}")
print(f"systems:    {', '.join(row['row'] for row in report.systems)}")
print()

print(f"{'check':24s} {'outcome':10s} {'achieved / grid min':>20s}   {'expected':9s} {'agreement'}")
for entry in report.verdicts:
    rec = entry["record"]
    value = rec.get("achieved", rec.get("min_over_grid"))
    shown = "-" if value is None else f"{value:.6f}"
    print(f"{entry['check']:24s} {rec['outcome']:10s} {shown:>20s}   "
          f"{entry['expected']:9s} {entry['agreement']}")
print()
print(f"conclusion: {report.conclusion}")
print()
print("counters:", json.dumps(report.timings, sort_keys=True))
