"""Command line: ``python -m argval <command> ...``.

Exit status: 0 success, 1 semantic error, 2 input error, 3 resource bound.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import af, builder, dialogue, dkq, formats, vaf
from .corpus import random_framework
from .errors import ArgvalError, InputError, NoStableLabellingError, SemanticError
from .logic import KnowledgeBase, load_kb, parse_formula

COMMANDS = ("solve", "vaf", "build", "dialogue", "dkq", "dot")


def _common(suppress: bool) -> argparse.ArgumentParser:
    # accepted before or after the command name
    p = argparse.ArgumentParser(add_help=False)
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    p.add_argument("--config", help="key=value file supplying defaults for the command's options", **kw)
    p.add_argument("--seed", type=int, help="seed for randomly generated inputs", **(kw or {"default": 0}))
    p.add_argument("--output", "-o", help="write to this file instead of standard output", **kw)
    return p


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="argval", description="Argumentation and dialogue toolkit.", parents=[_common(False)]
    )
    common = _common(True)
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    s = sub.add_parser("solve", help="extensions and statuses of an AF file")
    s.add_argument("file", nargs="?")
    s.add_argument("--semantics", default="preferred", choices=[x.value for x in af.Semantics])
    s.add_argument("--status", action="store_true", help="also print each argument's status")
    s.add_argument("--random", type=int, metavar="N", help="solve a random framework of up to N nodes")
    s.add_argument("--max-nodes", type=int, default=af.DEFAULT_MAX_NODES)

    s = sub.add_parser("vaf", help="per-audience results of a VAF file")
    s.add_argument("file")
    s.add_argument("--audience", help="only this audience")
    s.add_argument("--strict-def10", action="store_true", help="value-order conflicts count as conflicts")

    s = sub.add_parser("build", help="arguments and attacks from a knowledge base")
    s.add_argument("file")
    s.add_argument("--targets", help="claims separated by ';'")
    s.add_argument("--max-support", type=int, default=3)
    s.add_argument("--allow-inconsistent", action="store_true")
    s.add_argument("--budget", type=int, default=builder.BuilderConfig.node_budget)
    s.add_argument("--max-atoms", type=int, default=builder.DEFAULT_MAX_ATOMS)

    s = sub.add_parser("dialogue", help="replay or decide a dialogue")
    s.add_argument("--thesis", required=True)
    s.add_argument("--premises", help="premises separated by ';' (sequent thesis)")
    s.add_argument("--preset", default="classical", choices=list(dialogue.PRESETS))
    s.add_argument("--rank-o", type=int)
    s.add_argument("--rank-p", type=int)
    s.add_argument("--depth-cap", type=int)
    s.add_argument("--script", help="move file to replay")
    s.add_argument("--decide", action="store_true", help="search for a winning strategy")
    s.add_argument("--strategy", action="store_true", help="print the Proponent's strategy when deciding")

    s = sub.add_parser("dkq", help="check a DKQ derivation file")
    s.add_argument("file")
    s.add_argument("--corrected", action="store_true", help="use the corrected scheme set")

    s = sub.add_parser("dot", help="Graphviz output for an AF or VAF file")
    s.add_argument("file")
    s.add_argument("--audience", help="VAF: draw the defeat graph for this audience")
    s.add_argument("--hasse", action="store_true", help="VAF: draw the practice ordering instead")
    return p


def _config_tokens(path: str) -> list[str]:
    tokens = []
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as e:
        raise InputError(f"cannot read config {path}: {e.strerror}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected key=value")
        key, value = (x.strip() for x in line.split("=", 1))
        flag = "--" + key.replace("_", "-")
        if value.lower() in ("true", "yes", "on"):
            tokens.append(flag)
        elif value.lower() not in ("false", "no", "off"):
            tokens += [flag, value]
    return tokens


def _with_config(argv: list[str]) -> list[str]:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return argv
    extra = _config_tokens(known.config)
    for i, tok in enumerate(argv):
        if tok in COMMANDS:
            # explicit options come later and therefore win
            return argv[: i + 1] + extra + argv[i + 1 :]
    return argv


def _solve(args) -> str:
    if args.random is not None:
        f = random_framework(random.Random(args.seed), args.random)
    elif args.file:
        f = formats.load_af(args.file)
    else:
        raise InputError("solve needs an AF file or --random N")
    exts = af.enumerate_extensions(f, args.semantics, args.max_nodes)
    if args.semantics == "stable" and not exts:
        raise NoStableLabellingError("the framework has no stable extension")
    out = [str(e) for e in exts]
    if args.status:
        if args.semantics == "admissible":
            raise SemanticError("argument status is not defined for admissible semantics")
        out.append("")
        out += [f"{x}: {st}" for x, st in af.all_statuses(f, args.semantics, args.max_nodes).items()]
    if args.random is not None:
        out = formats.af_to_text(f).splitlines() + [""] + out
    return "\n".join(out)


def _vaf(args) -> str:
    vf = formats.load_vaf(args.file)
    names = [args.audience] if args.audience else list(vf.audiences)
    out = []
    for name in names:
        aud = vf.audience(name)
        out.append(f"audience {aud.name}: {aud}")
        for e in vaf.preferred_for_audience(vf, aud, strict_def10=args.strict_def10):
            out.append(f"  preferred {e}")
        for x, st in vaf.statuses_for_audience(vf, aud).items():
            out.append(f"  {x}: {st}")
        if vf.practices:
            po = vaf.practice_ordering(vf, aud)
            pairs = po.pairs()
            out += [f"  practice {p} > {q}" for p, q in pairs] or ["  practice (no dominance)"]
    return "\n".join(out)


def _build(args) -> str:
    kb: KnowledgeBase = load_kb(args.file)
    targets = None
    if args.targets:
        targets = tuple(parse_formula(t) for t in args.targets.split(";") if t.strip())
    cfg = builder.BuilderConfig(
        max_support_size=args.max_support,
        claim_targets=targets,
        allow_inconsistent_support=args.allow_inconsistent,
        node_budget=args.budget,
        max_atoms=args.max_atoms,
    )
    f, table = builder.framework_from_kb(kb, cfg)
    return builder.arguments_to_text(table.values()) + "\n" + formats.af_to_text(f).rstrip("\n")


def _dialogue(args) -> str:
    thesis = dialogue.parse_thesis(args.thesis, args.premises)
    overrides = {} if args.depth_cap is None else {"depth_cap": args.depth_cap}
    rules = dialogue.preset(args.preset, args.rank_o, args.rank_p, **overrides)
    out = []
    if args.script:
        t = dialogue.play_script(thesis, rules, dialogue.load_script(args.script))
        out.append(dialogue.render_transcript(t).rstrip("\n"))
    if args.decide or not args.script:
        result = dialogue.proponent_wins(thesis, rules)
        if args.strategy and result.strategy is not None:
            out += result.strategy.lines()
        out.append(dialogue.verdict_text(result.winner))
    return "\n".join(out)


def _dkq(args) -> tuple[str, int]:
    with open(args.file, encoding="utf-8") as fh:
        report = dkq.check_text(fh.read(), args.corrected, args.file)
    return str(report), 0 if report.ok else 1


def _dot(args) -> str:
    if args.file.endswith(".vaf") or args.audience or args.hasse:
        vf = formats.load_vaf(args.file)
        if args.hasse:
            if not args.audience:
                raise InputError("--hasse needs --audience")
            return vaf.hasse_to_dot(vaf.practice_ordering(vf, vf.audience(args.audience))).rstrip("\n")
        f = vaf.reduce_for_audience(vf, vf.audience(args.audience)) if args.audience else vf.base
        return af.framework_to_dot(f).rstrip("\n")
    return af.framework_to_dot(formats.load_af(args.file)).rstrip("\n")


HANDLERS = {"solve": _solve, "vaf": _vaf, "build": _build, "dialogue": _dialogue, "dkq": _dkq, "dot": _dot}


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _parser().parse_args(_with_config(argv))
        result = HANDLERS[args.command](args)
        text, code = result if isinstance(result, tuple) else (result, 0)
        text = text.replace("\r\n", "\n")
        if text and not text.endswith("\n"):
            text += "\n"
        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            stdout.write(text)
        return code
    except ArgvalError as e:
        stderr.write(f"argval: {e}\n")
        return e.exit_code
    except BrokenPipeError:  # e.g. piped into head
        return 0
    except OSError as e:
        stderr.write(f"argval: {e.filename}: {e.strerror}\n")
        return InputError.exit_code
    except SystemExit as e:  # argparse usage errors
        return 2 if e.code not in (0, None) else 0


def main() -> None:
    sys.exit(run())
