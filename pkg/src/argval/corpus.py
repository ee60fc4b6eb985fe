"""Seeded random instances for property checks and demonstrations."""

from __future__ import annotations

import random
import re
from itertools import permutations

from .af import Framework
from .dkq import CORRECTED_SCHEMES, PRINTED_SCHEMES, ForAll, MetaVar, Pred, _Quantifier, free_vars, parse_fo, substitute
from .errors import SubstitutionCaptureError
from .logic import And, Atom, Formula, Implies, Not, Or
from .vaf import Audience, ValueFramework


def random_framework(rng: random.Random, max_nodes: int = 8, density: float | None = None) -> Framework:
    n = rng.randint(0, max_nodes)
    p = rng.uniform(0.0, 0.5) if density is None else density
    nodes = [f"a{i}" for i in range(n)]
    edges = [(x, y) for x in nodes for y in nodes if rng.random() < p]
    return Framework(nodes, edges)


def random_vaf(rng: random.Random, max_nodes: int = 7, max_values: int = 3) -> ValueFramework:
    base = random_framework(rng, max_nodes)
    values = [f"v{i}" for i in range(rng.randint(1, max_values))]
    value_map = {n: rng.choice(values) for n in base.nodes}
    audiences = {}
    for k, order in enumerate(permutations(values)):
        audiences[f"aud{k}"] = Audience(f"aud{k}", order)
    return ValueFramework(base, values, value_map, audiences)


def random_formula(rng: random.Random, atoms=("a", "b", "c"), max_depth: int = 4) -> Formula:
    if max_depth == 0 or rng.random() < 0.25:
        return Atom(rng.choice(atoms))
    k = rng.randrange(4)
    if k == 0:
        return Not(random_formula(rng, atoms, max_depth - 1))
    cls = (And, Or, Implies)[k - 1]
    return cls(random_formula(rng, atoms, max_depth - 1), random_formula(rng, atoms, max_depth - 1))


# --------------------------------------------------------------------------
# First-order instances for the derivation checker

FO_VARIABLES = ("x", "y")
FO_CONSTANTS = ("c", "d")


def random_fo_formula(rng: random.Random, max_depth: int = 3, avoid_free: str | None = None) -> Formula:
    """A random first-order formula without ``exists``; ``avoid_free`` never occurs free."""
    terms = [t for t in FO_VARIABLES + FO_CONSTANTS if t != avoid_free]
    if max_depth == 0 or rng.random() < 0.3:
        k = rng.randrange(3)
        if k == 0:
            return Atom(rng.choice(("p", "q", "r")))
        if k == 1:
            return Pred("P", (rng.choice(terms),))
        return Pred("Q", (rng.choice(terms), rng.choice(terms)))
    k = rng.randrange(5)
    if k == 0:
        return Not(random_fo_formula(rng, max_depth - 1, avoid_free))
    if k == 4:
        var = rng.choice(FO_VARIABLES)
        # x is bound inside, so it may occur there freely
        inner = None if var == avoid_free else avoid_free
        return ForAll(var, random_fo_formula(rng, max_depth - 1, inner))
    cls = (And, Or, Implies)[k - 1]
    return cls(random_fo_formula(rng, max_depth - 1, avoid_free), random_fo_formula(rng, max_depth - 1, avoid_free))


def scheme_instance(rng: random.Random, scheme_id: int, corrected: bool = False, max_depth: int = 3) -> Formula:
    """A random instance of an axiom scheme, metavariables replaced by random formulas."""
    if scheme_id == 11:
        while True:
            a = random_fo_formula(rng, max_depth)
            xs = sorted(v for v in free_vars(a))
            if not xs:
                continue
            x = rng.choice(xs)
            t = rng.choice(FO_CONSTANTS + FO_VARIABLES)
            try:
                inst = substitute(a, x, t)
            except SubstitutionCaptureError:
                continue
            return Implies(ForAll(x, a) if corrected else a, inst)

    text = (CORRECTED_SCHEMES if corrected else PRINTED_SCHEMES)[scheme_id]
    pattern = parse_fo(text, allow_meta=True)
    var = rng.choice(FO_VARIABLES)
    side = corrected and scheme_id in (12, 13)
    env: dict[str, Formula] = {}

    def fill(p: Formula) -> Formula:
        if isinstance(p, MetaVar):
            if p.name not in env:
                avoid = var if side and p.name == "A" else None
                env[p.name] = random_fo_formula(rng, max_depth, avoid)
            return env[p.name]
        if isinstance(p, _Quantifier):
            return type(p)(var, fill(p.body))
        if isinstance(p, Not):
            return Not(fill(p.operand))
        if isinstance(p, (And, Or, Implies)):
            return type(p)(fill(p.left), fill(p.right))
        return p

    return fill(pattern)


_TAMPER_TOKEN = re.compile(r"->|[~&|().,\[\]]|\d+|[A-Za-z_][A-Za-z0-9_]*|\s+|.")
_TAMPER_CLASSES = (("&", "|", "->"), ("p", "q", "r"), ("c", "d"), ("x", "y"), ("P", "Q"), ("mp", "adj"))


def single_token_tampers(text: str) -> list[str]:
    """Every variant of ``text`` with one token swapped for another of its class.

    Connectives, atoms, constants, variables, predicate names, two-premise
    rule names and numbers (shifted by ±1, ±2) are swapped; ``#`` comments
    are left alone.
    """
    lines = text.splitlines(keepends=True)
    out = []
    for k, line in enumerate(lines):
        code, hash_, comment = line.partition("#")
        toks = _TAMPER_TOKEN.findall(code)
        for i, t in enumerate(toks):
            if t.isdigit():
                alts = [str(int(t) + d) for d in (-2, -1, 1, 2) if int(t) + d >= 0]
            else:
                alts = next(([a for a in c if a != t] for c in _TAMPER_CLASSES if t in c), [])
            for a in alts:
                changed = "".join(toks[:i] + [a] + toks[i + 1 :]) + hash_ + comment
                out.append("".join(lines[:k] + [changed] + lines[k + 1 :]))
    return out
