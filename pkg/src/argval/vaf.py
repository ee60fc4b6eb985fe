"""Value-based frameworks: audiences, audience-relative defeat and practice orderings."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import networkx as nx

from .af import (
    DEFAULT_MAX_NODES,
    Extension,
    Framework,
    Semantics,
    Status,
    aggregate_status,
    enumerate_extensions,
    extension_sort_key,
    selected_labellings,
    _check_size,
    _dot_id,
)
from .errors import CycleError, InputError, UnknownValueError


@dataclass(frozen=True)
class Audience:
    """A total strict order over values, most preferred first."""

    name: str
    order: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        if len(set(self.order)) != len(self.order):
            raise InputError(f"audience {self.name!r} lists a value twice")

    def rank(self, value: str) -> int:
        try:
            return self.order.index(value)
        except ValueError:
            raise UnknownValueError(f"value {value!r} is not ordered by audience {self.name!r}") from None

    def __str__(self):
        return " > ".join(self.order)


@dataclass(frozen=True)
class ValueFramework:
    base: Framework
    values: frozenset[str]
    value_map: Mapping[str, str]
    audiences: Mapping[str, Audience] = field(default_factory=dict)
    practices: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "values", frozenset(self.values))
        object.__setattr__(self, "value_map", dict(sorted(self.value_map.items())))
        object.__setattr__(self, "audiences", dict(sorted(self.audiences.items())))
        object.__setattr__(self, "practices", dict(sorted(self.practices.items())))
        if not self.values:
            raise InputError("a value framework needs at least one value")
        missing = [n for n in self.base.nodes if n not in self.value_map]
        if missing:
            raise InputError(f"no value mapping for: {', '.join(missing)}")
        extra = sorted(set(self.value_map) - set(self.base.nodes))
        if extra:
            raise InputError(f"value mapping for unknown argument(s): {', '.join(extra)}")
        stray = sorted(set(self.value_map.values()) - self.values)
        if stray:
            raise UnknownValueError(f"undeclared value(s): {', '.join(stray)}")
        for aud in self.audiences.values():
            if set(aud.order) != self.values:
                raise InputError(
                    f"audience {aud.name!r} must order exactly the values {{{', '.join(sorted(self.values))}}}"
                )

    def __hash__(self):
        return hash((self.base, self.values, tuple(self.value_map.items())))

    def audience(self, name: str) -> Audience:
        try:
            return self.audiences[name]
        except KeyError:
            raise InputError(f"unknown audience {name!r}") from None


def valpref(aud: Audience, v1: str, v2: str) -> bool:
    return aud.rank(v1) < aud.rank(v2)


def defeats_for(aud: Audience, x: str, y: str, vf: ValueFramework) -> bool:
    vf.base.check_nodes([x, y])
    if (x, y) not in vf.base.attacks:
        return False
    return not valpref(aud, vf.value_map[y], vf.value_map[x])


def reduce_for_audience(vf: ValueFramework, aud: Audience) -> Framework:
    return vf.base.restrict_attacks(lambda a, b: defeats_for(aud, a, b, vf))


def conflict_free_for(aud: Audience, s: Iterable[str], vf: ValueFramework, strict_def10: bool = False) -> bool:
    """No member defeats another for ``aud``.

    With ``strict_def10`` a pair is also forbidden whenever the first member's
    value is preferred to the second's, attack or not.
    """
    s = sorted(vf.base.check_nodes(s))
    for x in s:
        for y in s:
            if defeats_for(aud, x, y, vf):
                return False
            if strict_def10 and (
                (x, y) in vf.base.attacks or valpref(aud, vf.value_map[x], vf.value_map[y])
            ):
                return False
    return True


def acceptable_to(aud: Audience, x: str, s: Iterable[str], vf: ValueFramework) -> bool:
    s = vf.base.check_nodes(s)
    vf.base.check_nodes([x])
    for z in vf.base.attackers[x]:
        if defeats_for(aud, z, x, vf) and not any(defeats_for(aud, m, z, vf) for m in s):
            return False
    return True


def admissible_for(aud: Audience, s: Iterable[str], vf: ValueFramework, strict_def10: bool = False) -> bool:
    s = vf.base.check_nodes(s)
    return conflict_free_for(aud, s, vf, strict_def10) and all(acceptable_to(aud, x, s, vf) for x in s)


def preferred_for_audience(
    vf: ValueFramework, aud: Audience, max_nodes: int | None = DEFAULT_MAX_NODES, strict_def10: bool = False
) -> list[Extension]:
    """Maximal admissible-for-``aud`` sets, searched directly rather than via reduction."""
    _check_size(vf.base, max_nodes)
    nodes = vf.base.nodes
    found: list[frozenset[str]] = []

    def rec(i: int, chosen: frozenset[str]):
        if i == len(nodes):
            if all(acceptable_to(aud, x, chosen, vf) for x in chosen):
                found.append(chosen)
            return
        rec(i + 1, chosen)
        bigger = chosen | {nodes[i]}
        if conflict_free_for(aud, bigger, vf, strict_def10):
            rec(i + 1, bigger)

    rec(0, frozenset())
    maximal = [s for s in found if not any(s < t for t in found)]
    return sorted((Extension(s, Semantics.PREFERRED) for s in maximal), key=extension_sort_key)


def statuses_for_audience(
    vf: ValueFramework, aud: Audience, max_nodes: int | None = DEFAULT_MAX_NODES
) -> dict[str, Status]:
    reduced = reduce_for_audience(vf, aud)
    labs = selected_labellings(reduced, Semantics.PREFERRED, max_nodes)
    return {x: aggregate_status(labs, x) for x in reduced.nodes}


# --------------------------------------------------------------------------
# Practices


@dataclass(frozen=True)
class PracticeOrdering:
    practices: frozenset[str]
    dominates: frozenset[tuple[str, str]]

    def __post_init__(self):
        object.__setattr__(self, "practices", frozenset(self.practices))
        object.__setattr__(self, "dominates", frozenset(self.dominates))
        for p, q in self.dominates:
            if p == q:
                raise InputError(f"practice {p!r} cannot dominate itself")
            if p not in self.practices or q not in self.practices:
                raise InputError(f"unknown practice in ({p}, {q})")

    def pairs(self) -> list[tuple[str, str]]:
        return sorted(self.dominates)

    def __str__(self):
        return "\n".join(f"{p} > {q}" for p, q in self.pairs())


def practice_ordering(
    vf: ValueFramework,
    aud: Audience,
    practice_map: Mapping[str, str] | None = None,
    max_nodes: int | None = DEFAULT_MAX_NODES,
) -> PracticeOrdering:
    """p dominates q when a justified p-argument defeats a q-argument and no
    justified q-argument defeats a p-argument."""
    pm = dict(vf.practices if practice_map is None else practice_map)
    missing = [n for n in vf.base.nodes if n not in pm]
    if missing:
        raise InputError(f"no practice for: {', '.join(missing)}")
    status = statuses_for_audience(vf, aud, max_nodes)
    justified = {x for x, st in status.items() if st is Status.JUSTIFIED}
    practices = frozenset(pm[n] for n in vf.base.nodes)

    def hits(p: str, q: str) -> bool:
        return any(
            defeats_for(aud, x, y, vf)
            for x in vf.base.nodes
            if pm[x] == p and x in justified
            for y in vf.base.nodes
            if pm[y] == q
        )

    dom = {(p, q) for p in practices for q in practices if p != q and hits(p, q) and not hits(q, p)}
    return PracticeOrdering(practices, frozenset(dom))


def hasse_to_dot(po: PracticeOrdering, name: str = "Hasse") -> str:
    g = nx.DiGraph()
    g.add_nodes_from(sorted(po.practices))
    g.add_edges_from(po.pairs())
    if not nx.is_directed_acyclic_graph(g):
        cycle = nx.find_cycle(g)
        raise CycleError("dominance relation has a cycle: " + " -> ".join(a for a, _ in cycle))
    reduced = nx.transitive_reduction(g)
    lines = [f"digraph {name} {{"]
    lines += [f"  {_dot_id(n)};" for n in sorted(po.practices)]
    lines += [f"  {_dot_id(a)} -> {_dot_id(b)};" for a, b in sorted(reduced.edges())]
    lines.append("}")
    return "\n".join(lines) + "\n"
