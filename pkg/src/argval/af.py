"""Abstract argumentation frameworks and their extension-based semantics.

Extensions are computed by a backtracking search over complete labellings
(``in``/``out``/``undec``); grounded, stable and preferred are read off the
labellings.  Admissible sets are enumerated separately, since most of them
are not complete.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import NoStableLabellingError, ResourceLimitError, UnknownNodeError

DEFAULT_MAX_NODES = 24


class Semantics(str, enum.Enum):
    ADMISSIBLE = "admissible"
    COMPLETE = "complete"
    GROUNDED = "grounded"
    STABLE = "stable"
    PREFERRED = "preferred"

    def __str__(self):
        return self.value


class Label(str, enum.Enum):
    IN = "in"
    OUT = "out"
    UNDEC = "undec"

    def __str__(self):
        return self.value


class Status(str, enum.Enum):
    JUSTIFIED = "justified"
    OVERRULED = "overruled"
    DEFENSIBLE = "defensible"

    def __str__(self):
        return self.value


class Framework:
    """A set of argument ids with a binary attack relation.

    Nodes are kept in canonical (lexicographic) order regardless of the
    order they were given in.
    """

    def __init__(self, nodes: Iterable[str] = (), attacks: Iterable[tuple[str, str]] = ()):
        node_list = list(nodes)
        if len(set(node_list)) != len(node_list):
            dupes = sorted({n for n in node_list if node_list.count(n) > 1})
            raise ValueError(f"duplicate argument id(s): {', '.join(dupes)}")
        self.nodes: tuple[str, ...] = tuple(sorted(node_list))
        node_set = frozenset(self.nodes)
        attack_set = frozenset((a, b) for a, b in attacks)
        dangling = {x for pair in attack_set for x in pair} - node_set
        if dangling:
            raise UnknownNodeError(dangling)
        self.attacks: frozenset[tuple[str, str]] = attack_set
        self._node_set = node_set
        self.attackers: dict[str, frozenset[str]] = {
            n: frozenset(a for a, b in attack_set if b == n) for n in self.nodes
        }
        self.attacked_by: dict[str, frozenset[str]] = {
            n: frozenset(b for a, b in attack_set if a == n) for n in self.nodes
        }

    def __contains__(self, node) -> bool:
        return node in self._node_set

    def __len__(self):
        return len(self.nodes)

    def __eq__(self, other):
        return (
            isinstance(other, Framework)
            and self.nodes == other.nodes
            and self.attacks == other.attacks
        )

    def __hash__(self):
        return hash((self.nodes, self.attacks))

    def __repr__(self):
        return f"Framework(nodes={list(self.nodes)!r}, attacks={self.sorted_attacks()!r})"

    def sorted_attacks(self) -> list[tuple[str, str]]:
        return sorted(self.attacks)

    def check_nodes(self, nodes: Iterable[str]) -> frozenset[str]:
        s = frozenset(nodes)
        unknown = s - self._node_set
        if unknown:
            raise UnknownNodeError(unknown)
        return s

    def restrict_attacks(self, keep) -> "Framework":
        """Same nodes, keeping only the attacks for which ``keep(a, b)`` holds."""
        return Framework(self.nodes, [(a, b) for a, b in self.attacks if keep(a, b)])


@dataclass(frozen=True)
class Extension:
    members: frozenset[str]
    semantics: Semantics

    def sorted_members(self) -> tuple[str, ...]:
        return tuple(sorted(self.members))

    def __str__(self):
        return "{" + ",".join(self.sorted_members()) + "}"


@dataclass(frozen=True)
class Labelling:
    assignment: Mapping[str, Label]

    def __post_init__(self):
        object.__setattr__(self, "assignment", dict(sorted(self.assignment.items())))

    def __hash__(self):
        return hash(tuple(self.assignment.items()))

    def __getitem__(self, node: str) -> Label:
        return self.assignment[node]

    def _with(self, label):
        return frozenset(n for n, lab in self.assignment.items() if lab is label)

    @property
    def in_set(self) -> frozenset[str]:
        return self._with(Label.IN)

    @property
    def out_set(self) -> frozenset[str]:
        return self._with(Label.OUT)

    @property
    def undec_set(self) -> frozenset[str]:
        return self._with(Label.UNDEC)

    def is_legal(self, f: Framework) -> bool:
        if set(self.assignment) != set(f.nodes):
            return False
        for n in f.nodes:
            att = f.attackers[n]
            all_out = all(self.assignment[a] is Label.OUT for a in att)
            some_in = any(self.assignment[a] is Label.IN for a in att)
            lab = self.assignment[n]
            if (lab is Label.IN) != all_out or (lab is Label.OUT) != some_in:
                return False
        return True


def extension_sort_key(ext) -> tuple[str, ...]:
    members = ext.members if isinstance(ext, Extension) else ext
    return tuple(sorted(members))


# --------------------------------------------------------------------------
# Basic predicates


def is_conflict_free(s: Iterable[str], f: Framework) -> bool:
    s = f.check_nodes(s)
    return not any(f.attacked_by[a] & s for a in s)


def defends(s: Iterable[str], x: str, f: Framework) -> bool:
    """True iff every attacker of ``x`` is attacked by some member of ``s``."""
    s = f.check_nodes(s)
    f.check_nodes([x])
    return all(f.attackers[z] & s for z in f.attackers[x])


def defended_by(s: Iterable[str], f: Framework) -> frozenset[str]:
    """The characteristic function: every node that ``s`` defends."""
    s = frozenset(s)
    return frozenset(x for x in f.nodes if all(f.attackers[z] & s for z in f.attackers[x]))


def attacked_by_set(s: Iterable[str], f: Framework) -> frozenset[str]:
    out: set[str] = set()
    for a in s:
        out |= f.attacked_by[a]
    return frozenset(out)


def is_admissible(s: Iterable[str], f: Framework) -> bool:
    s = f.check_nodes(s)
    return is_conflict_free(s, f) and all(defends(s, x, f) for x in s)


def is_complete(s: Iterable[str], f: Framework) -> bool:
    s = f.check_nodes(s)
    return is_admissible(s, f) and defended_by(s, f) <= s


def is_stable(s: Iterable[str], f: Framework) -> bool:
    s = f.check_nodes(s)
    return is_conflict_free(s, f) and attacked_by_set(s, f) == frozenset(f.nodes) - s


def labelling_from_extension(s: Iterable[str], f: Framework) -> Labelling:
    s = frozenset(s)
    out = attacked_by_set(s, f)
    return Labelling(
        {n: Label.IN if n in s else Label.OUT if n in out else Label.UNDEC for n in f.nodes}
    )


# --------------------------------------------------------------------------
# Search


def _check_size(f: Framework, max_nodes: int | None):
    if max_nodes is not None and len(f.nodes) > max_nodes:
        raise ResourceLimitError(
            f"framework has {len(f.nodes)} arguments; exhaustive search is bounded at {max_nodes}"
        )


def grounded_extension(f: Framework) -> Extension:
    """Least fixed point of the characteristic function, iterated from the empty set."""
    s: frozenset[str] = frozenset()
    while True:
        nxt = defended_by(s, f)
        if nxt == s:
            return Extension(s, Semantics.GROUNDED)
        s = nxt


def _complete_labellings(f: Framework) -> list[dict[str, Label]]:
    nodes = f.nodes
    index = {n: i for i, n in enumerate(nodes)}
    # a node's legality is decidable once it and all its attackers are labelled
    ready_at: list[list[str]] = [[] for _ in nodes]
    for n in nodes:
        last = max([index[n]] + [index[a] for a in f.attackers[n]])
        ready_at[last].append(n)
    # attack lists restricted to earlier-or-equal nodes allow early pruning
    results = []
    lab: dict[str, Label] = {}

    def consistent_partial(n: str) -> bool:
        # pruning with partially labelled attackers
        att = f.attackers[n]
        mine = lab[n]
        labelled = [lab[a] for a in att if a in lab]
        if mine is Label.IN:
            return all(x is Label.OUT for x in labelled)
        if mine is Label.UNDEC:
            return all(x is not Label.IN for x in labelled)
        return True

    def legal(n: str) -> bool:
        att = f.attackers[n]
        all_out = all(lab[a] is Label.OUT for a in att)
        some_in = any(lab[a] is Label.IN for a in att)
        mine = lab[n]
        return (mine is Label.IN) == all_out and (mine is Label.OUT) == some_in

    def touched_ok(n: str) -> bool:
        # n was just labelled: re-check labelled nodes it attacks
        if not consistent_partial(n):
            return False
        return all(consistent_partial(t) for t in f.attacked_by[n] if t in lab)

    def rec(i: int):
        if i == len(nodes):
            results.append(dict(lab))
            return
        n = nodes[i]
        for choice in (Label.IN, Label.OUT, Label.UNDEC):
            lab[n] = choice
            if touched_ok(n) and all(legal(m) for m in ready_at[i]):
                rec(i + 1)
            del lab[n]

    rec(0)
    return results


def legal_labellings(f: Framework, max_nodes: int | None = DEFAULT_MAX_NODES) -> list[Labelling]:
    """All legal (complete) labellings, ordered by their in-sets."""
    _check_size(f, max_nodes)
    labs = [Labelling(a) for a in _complete_labellings(f)]
    labs.sort(key=lambda lab: extension_sort_key(lab.in_set))
    return labs


def _admissible_sets(f: Framework) -> list[frozenset[str]]:
    nodes = f.nodes
    found = []

    def rec(i: int, chosen: frozenset[str]):
        if i == len(nodes):
            if all(defends(chosen, x, f) for x in chosen):
                found.append(chosen)
            return
        rec(i + 1, chosen)
        n = nodes[i]
        if n in f.attackers[n]:
            return
        if f.attacked_by[n] & chosen or f.attackers[n] & chosen:
            return
        rec(i + 1, chosen | {n})

    rec(0, frozenset())
    return found


def _maximal(sets: list[frozenset[str]]) -> list[frozenset[str]]:
    return [s for s in sets if not any(s < t for t in sets)]


def enumerate_extensions(
    f: Framework, semantics: Semantics | str, max_nodes: int | None = DEFAULT_MAX_NODES
) -> list[Extension]:
    """All extensions of ``f`` under ``semantics`` in canonical order."""
    semantics = Semantics(semantics)
    if semantics is Semantics.GROUNDED:
        return [grounded_extension(f)]
    _check_size(f, max_nodes)
    if semantics is Semantics.ADMISSIBLE:
        sets = _admissible_sets(f)
    else:
        complete = [Labelling(a) for a in _complete_labellings(f)]
        if semantics is Semantics.COMPLETE:
            sets = [lab.in_set for lab in complete]
        elif semantics is Semantics.STABLE:
            sets = [lab.in_set for lab in complete if not lab.undec_set]
        else:
            sets = _maximal([lab.in_set for lab in complete])
    return sorted((Extension(s, semantics) for s in sets), key=extension_sort_key)


def selected_labellings(
    f: Framework, semantics: Semantics | str, max_nodes: int | None = DEFAULT_MAX_NODES
) -> list[Labelling]:
    """Labellings over which argument status is aggregated."""
    semantics = Semantics(semantics)
    if semantics is Semantics.GROUNDED:
        return [labelling_from_extension(grounded_extension(f).members, f)]
    if semantics is Semantics.ADMISSIBLE:
        raise ValueError("argument status is not defined for admissible semantics")
    labs = legal_labellings(f, max_nodes)
    if semantics is Semantics.STABLE:
        return [lab for lab in labs if not lab.undec_set]
    if semantics is Semantics.PREFERRED:
        maximal = set(_maximal([lab.in_set for lab in labs]))
        return [lab for lab in labs if lab.in_set in maximal]
    return labs


def aggregate_status(labellings: list[Labelling], x: str) -> Status:
    labels = {lab[x] for lab in labellings}
    if labels == {Label.IN}:
        return Status.JUSTIFIED
    if labels == {Label.OUT}:
        return Status.OVERRULED
    return Status.DEFENSIBLE


def argument_status(
    f: Framework, x: str, semantics: Semantics | str, max_nodes: int | None = DEFAULT_MAX_NODES
) -> Status:
    """Justified if ``in`` in every selected labelling, overruled if ``out`` in every one."""
    f.check_nodes([x])
    labs = selected_labellings(f, semantics, max_nodes)
    if not labs:
        raise NoStableLabellingError("the framework has no stable labelling")
    return aggregate_status(labs, x)


def all_statuses(
    f: Framework, semantics: Semantics | str, max_nodes: int | None = DEFAULT_MAX_NODES
) -> dict[str, Status]:
    labs = selected_labellings(f, semantics, max_nodes)
    if not labs and f.nodes:
        raise NoStableLabellingError("the framework has no stable labelling")
    return {x: aggregate_status(labs, x) for x in f.nodes}


# --------------------------------------------------------------------------
# Output


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def framework_to_dot(f: Framework, name: str = "AF") -> str:
    lines = [f"digraph {name} {{"]
    for n in f.nodes:
        lines.append(f"  {_dot_id(n)};")
    for a, b in f.sorted_attacks():
        lines.append(f"  {_dot_id(a)} -> {_dot_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
