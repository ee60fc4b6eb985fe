"""Abstract frameworks: extensions, labellings and argument status.

Run with ``python3 notebooks/01_frameworks.py``.
"""

from importlib.resources import files

from argval.af import all_statuses, enumerate_extensions, legal_labellings
from argval.formats import load_af

DATA = files("argval") / "data"

f = load_af(DATA / "example1.af")
print("nodes:", ", ".join(f.nodes))
print("attacks:", ", ".join(f"{a}->{b}" for a, b in f.sorted_attacks()))

# every semantics on the same four-node framework
for sem in ("grounded", "complete", "preferred", "stable"):
    exts = enumerate_extensions(f, sem)
    print(f"{sem:>9}: {' '.join(str(e) for e in exts)}")

# complete extensions and legal labellings are the same objects seen twice
for lab in legal_labellings(f):
    row = " ".join(f"{n}={lab.assignment[n].value}" for n in f.nodes)
    print("labelling:", row)

# the status of an argument summarises every selected labelling
for sem in ("grounded", "preferred"):
    print(sem, {n: s.value for n, s in all_statuses(f, sem).items()})
