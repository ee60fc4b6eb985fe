"""Value-based frameworks: the same arguments judged by two audiences.

Run with ``python3 notebooks/02_audiences.py``.
"""

from importlib.resources import files

from argval.formats import load_vaf
from argval.vaf import hasse_to_dot, practice_ordering, preferred_for_audience, reduce_for_audience, statuses_for_audience

DATA = files("argval") / "data"

for name in ("vaf_kb0.vaf", "vaf_kb1.vaf"):
    vf = load_vaf(DATA / name)
    print(f"== {name}")
    for aud in vf.audiences.values():
        reduced = reduce_for_audience(vf, aud)
        print(f"audience {aud.name} ({aud})")
        print("  surviving defeats:", ", ".join(f"{a}->{b}" for a, b in reduced.sorted_attacks()) or "none")
        print("  preferred:", " ".join(str(e) for e in preferred_for_audience(vf, aud)))
        justified = [x for x, s in statuses_for_audience(vf, aud).items() if s.value == "justified"]
        print("  justified:", ", ".join(justified))
        po = practice_ordering(vf, aud)
        print("  practices:", str(po) or "(no dominance)")

# the ordering as a Graphviz Hasse diagram
vf = load_vaf(DATA / "vaf_kb0.vaf")
print(hasse_to_dot(practice_ordering(vf, vf.audience("w"))))
