"""Building deductive arguments from a knowledge base.

Shows what the builder finds for the four declared claims over kb0, and
which invariant each hand-declared argument breaks when it is not buildable.
Run with ``python3 notebooks/03_arguments.py``.
"""

from importlib.resources import files

from argval.builder import BuilderConfig, build_arguments, framework_from_arguments, load_arguments, validate_argument
from argval.logic import load_kb

DATA = files("argval") / "data"

kb = load_kb(DATA / "kb0.kb")
declared = load_arguments(DATA / "kb0_arguments.txt")

built = build_arguments(kb, BuilderConfig(claim_targets=[a.claim for a in declared]))
print(f"{len(built)} arguments for the declared claims:")
for a in built:
    print(" ", a.render())

print("\nhand-declared arguments:")
for a in declared:
    problems = validate_argument(a, kb)
    print(f"  {a.id}: {'valid' if not problems else '; '.join(problems)}")

f, _ = framework_from_arguments(declared)
print("\nattacks among the declared arguments:", ", ".join(f"{x}->{y}" for x, y in f.sorted_attacks()))
