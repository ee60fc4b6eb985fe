"""Checking derivations against the axiom schemes.

Run with ``python3 notebooks/05_derivations.py``.
"""

import random
from importlib.resources import files

from argval.corpus import scheme_instance, single_token_tampers
from argval.dkq import SCHEMES, check_text, match_axiom, parse_fo
from argval.logic import render_formula

DATA = files("argval") / "data" / "dkq_samples"

text = (DATA / "sample10.dkq").read_text()
print(text)
print("check:", check_text(text))

# one random instance per scheme, and what the matcher recovers from it
rng = random.Random(0)
for sid, scheme in SCHEMES.items():
    f = scheme_instance(rng, sid, max_depth=1)
    print(f"{sid:>2} {scheme.text:<38} {render_formula(f)}")

# schemes 4 and 5 are identical as listed, so both always match
print(match_axiom(parse_fo("p & (q | r) -> p & q | r")))

# every one-token change to the sample is caught somewhere
reports = [check_text(t) for t in single_token_tampers(text)]
print(f"{len(reports)} tampered copies, {sum(r.ok for r in reports)} accepted")
