"""Readers and writers for the framework text formats.

AF files hold ``arg(<id>).`` and ``att(<id>,<id>).`` facts; VAF files add
``val(<arg>,<value>).``, ``audience(<name>, <v1> > <v2> > ...).`` and
``practice(<arg>,<practice>).``.  ``%`` starts a comment.
"""

from __future__ import annotations

import re

from .af import Framework
from .errors import FileFormatError, InputError
from .vaf import Audience, ValueFramework

_ID = r"\s*([A-Za-z0-9_]+)\s*"
_FACT = {
    "arg": re.compile(rf"arg\({_ID}\)\.\Z"),
    "att": re.compile(rf"att\({_ID},{_ID}\)\.\Z"),
    "val": re.compile(rf"val\({_ID},{_ID}\)\.\Z"),
    "practice": re.compile(rf"practice\({_ID},{_ID}\)\.\Z"),
    "audience": re.compile(rf"audience\({_ID},\s*([A-Za-z0-9_\s>]+)\)\.\Z"),
}
_AF_KINDS = ("arg", "att")


def _facts(text: str, kinds, path):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        head = line.split("(", 1)[0].strip()
        if head not in kinds:
            raise FileFormatError(f"unknown directive {head!r}", lineno, path)
        m = _FACT[head].match(line)
        if not m:
            raise FileFormatError(f"malformed {head} fact", lineno, path)
        yield lineno, head, m.groups()


def _collect(text: str, kinds, path):
    nodes: list[str] = []
    attacks: list[tuple[str, str]] = []
    facts = []
    for lineno, head, groups in _facts(text, kinds, path):
        if head == "arg":
            if groups[0] in nodes:
                raise FileFormatError(f"duplicate argument {groups[0]!r}", lineno, path)
            nodes.append(groups[0])
        elif head == "att":
            if groups in attacks:
                raise FileFormatError(f"duplicate attack {groups[0]} -> {groups[1]}", lineno, path)
            attacks.append(groups)
        facts.append((lineno, head, groups))
    known = set(nodes)
    for lineno, head, groups in facts:
        if head == "att":
            for n in groups:
                if n not in known:
                    raise FileFormatError(f"attack mentions undeclared argument {n!r}", lineno, path)
    return Framework(nodes, attacks), facts


def parse_af(text: str, path=None) -> Framework:
    return _collect(text, _AF_KINDS, path)[0]


def load_af(path) -> Framework:
    with open(path, encoding="utf-8") as fh:
        return parse_af(fh.read(), path)


def af_to_text(f: Framework) -> str:
    lines = [f"arg({n})." for n in f.nodes]
    lines += [f"att({a},{b})." for a, b in f.sorted_attacks()]
    return "".join(line + "\n" for line in lines)


def parse_vaf(text: str, path=None) -> ValueFramework:
    base, facts = _collect(text, tuple(_FACT), path)
    value_map: dict[str, str] = {}
    practices: dict[str, str] = {}
    audiences: dict[str, Audience] = {}
    values: set[str] = set()
    for lineno, head, groups in facts:
        if head in ("val", "practice"):
            arg, v = groups
            if arg not in base:
                raise FileFormatError(f"{head} fact for undeclared argument {arg!r}", lineno, path)
            target = value_map if head == "val" else practices
            if arg in target:
                raise FileFormatError(f"second {head} fact for {arg!r}", lineno, path)
            target[arg] = v
            if head == "val":
                values.add(v)
        elif head == "audience":
            name, order = groups
            if name in audiences:
                raise FileFormatError(f"duplicate audience {name!r}", lineno, path)
            ranked = [v.strip() for v in order.split(">")]
            if not all(re.fullmatch(r"[A-Za-z0-9_]+", v) for v in ranked):
                raise FileFormatError("audience order must be '<v1> > <v2> > ...'", lineno, path)
            try:
                audiences[name] = Audience(name, ranked)
            except InputError as e:
                raise FileFormatError(str(e), lineno, path) from None
            values.update(ranked)
    missing = [n for n in base.nodes if n not in value_map]
    if missing:
        raise FileFormatError(f"no val fact for: {', '.join(missing)}", None, path)
    if practices and len(practices) != len(base.nodes):
        absent = [n for n in base.nodes if n not in practices]
        raise FileFormatError(f"no practice fact for: {', '.join(absent)}", None, path)
    for aud in audiences.values():
        if set(aud.order) != values:
            raise FileFormatError(
                f"audience {aud.name!r} does not totally order the values {{{', '.join(sorted(values))}}}",
                None,
                path,
            )
    return ValueFramework(base, values, value_map, audiences, practices)


def load_vaf(path) -> ValueFramework:
    with open(path, encoding="utf-8") as fh:
        return parse_vaf(fh.read(), path)


def vaf_to_text(vf: ValueFramework) -> str:
    out = af_to_text(vf.base)
    out += "".join(f"val({n},{v}).\n" for n, v in vf.value_map.items())
    out += "".join(f"audience({a.name}, {' > '.join(a.order)}).\n" for a in vf.audiences.values())
    out += "".join(f"practice({n},{p}).\n" for n, p in vf.practices.items())
    return out
