"""Command-line front end.

Every command assembles its whole report before printing, so a run that
ends in a usage or parse error (exit 2) writes nothing to stdout.
Exit codes: 0 success or PASS, 1 FAIL, 2 usage, parse or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import multiindex as mi
from .enveloping import Envelope, render_env, render_tensor
from .expr import GRAMMAR, ParseError, parse_poly
from .finite_dual import DualRep, RepError, URep, density_diagnostic, load_rep, trivial_rep, zeta_truncated
from .fixtures import FIXTURE_NAMES, load_fixture, seed_rep_documents
from .functionals import LevelMismatch, PrecisionExceeded, convolve, parse_functional
from .hopf import antipode_star, delta_star, report
from .jets import theta_matrix
from .lie_rinehart import PresentationError, load_presentation
from .poly import Poly
from .session import COMMANDS, SessionError, load_session, rep_documents
from .suites import SUITES, run_suite

FULL_GRAMMAR = "\n".join(
    [
        "grammar:",
        "  element    " + GRAMMAR.replace(" ; ", "\n             "),
        "  x<i> are base-ring variables, X<i> generators of L; '/' only by a nonzero constant",
        "  functional eps | theta(<poly>; <poly>) | {[a1,...,ar]: <poly>, ...}",
        "  vector     JSON list of polynomial strings, e.g. '[\"1\", \"x1\"]'",
    ]
)

DEFAULT_PRECISION = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class Context:
    env: Envelope
    label: str
    fixture: str | None
    rep_docs: list
    precision: int | None
    seed: int

    def reps(self, env: Envelope | None = None) -> dict[str, URep]:
        env = env or self.env
        out = {"trivial": trivial_rep(env)}
        for name, doc in self.rep_docs:
            out[name] = load_rep(doc, env, name)
        return out

    def prec(self, value: int | None) -> int:
        for p in (value, self.precision):
            if p is not None:
                return p
        return DEFAULT_PRECISION


def build_parser() -> _Parser:
    parser = _Parser(prog="lrhopf", description="Exact computations in enveloping Hopf algebroids.")
    parser.add_argument("--config", help="session config JSON (supplies presentation, reps, command)")
    common = _Parser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--fixture", choices=FIXTURE_NAMES, help="bundled presentation (default W1)")
    src.add_argument("--presentation", help="presentation JSON file")
    common.add_argument("--rep-file", action="append", default=[], help="representation JSON file (repeatable)")
    common.add_argument("--seed", type=int, default=None, help="seed for sampled checks (default 0)")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="run property suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="hopf")
    p.add_argument("--level", type=_nonneg)
    p.add_argument("--mutate", action="store_true", help="flip the translation sign (negative control)")

    p = sub.add_parser("mul", parents=[common], help="product of two elements")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)

    for name, what in (("coprod", "coproduct"), ("translate", "translation map")):
        p = sub.add_parser(name, parents=[common], help=f"{what} of an element")
        p.add_argument("--expr", required=True)

    p = sub.add_parser("antipode", parents=[common], help="S* of a functional")
    p.add_argument("--f", required=True)
    p.add_argument("--precision", type=_nonneg)

    p = sub.add_parser("convolve", parents=[common], help="convolution product f*g")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--precision", type=_nonneg)

    p = sub.add_parser("deltastar", parents=[common], help="level-(m,n) table of Δ*(f)")
    p.add_argument("--f", required=True)
    p.add_argument("--m", type=_nonneg, default=1)
    p.add_argument("--n", type=_nonneg, default=1)

    p = sub.add_parser("zeta", parents=[common], help="ζ(φ⊗m) truncated at a precision")
    p.add_argument("--rep", dest="rep_name", default="trivial", help="representation name")
    p.add_argument("--phi", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--precision", type=_nonneg)

    p = sub.add_parser("jets-matrix", parents=[common], help="matrix of ϑ̂ on h-monomials")
    p.add_argument("--level", type=_nonneg, default=2)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("density", parents=[common], help="rank of truncated ζ-images")
    p.add_argument("--level", type=_nonneg, default=2)
    p.add_argument("--elements", help='JSON list of {"rep": name, "phi": [...], "m": [...]}')
    return parser


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _context(args, session) -> Context:
    seed = args.seed
    if session is not None:
        env = Envelope(session.presentation)
        label = session.fixture or session.presentation.name
        docs = list(session.representations)
        if session.fixture:
            docs = list(seed_rep_documents(session.fixture).items()) + docs
        precision = session.precision
        seed = session.seed if seed is None else seed
        fixture = session.fixture
    elif args.presentation:
        path = Path(args.presentation)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise UsageError(f"cannot read presentation: {exc}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}: invalid JSON ({exc.msg}, line {exc.lineno})") from None
        env = Envelope(load_presentation(doc, path.stem))
        label, fixture, docs, precision = env.presentation.name, None, [], None
    else:
        fixture = args.fixture or "W1"
        env = Envelope(load_fixture(fixture))
        label, docs, precision = fixture, list(seed_rep_documents(fixture).items()), None
    for rel in args.rep_file:
        path = Path(rel)
        try:
            docs.extend(rep_documents(json.loads(path.read_text(encoding="utf-8")), path.stem))
        except (OSError, json.JSONDecodeError, ValueError) as exc:
            raise UsageError(f"cannot load representation {rel}: {exc}") from None
    return Context(env, label, fixture, docs, precision, 0 if seed is None else seed)


def _vector(text: str, k: int, what: str):
    try:
        items = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--{what}: invalid JSON ({exc.msg})") from None
    if not isinstance(items, list) or not all(isinstance(t, (str, int)) for t in items):
        raise UsageError(f"--{what}: expected a JSON list of polynomial strings")
    return tuple(parse_poly(str(t), k) for t in items)


def _unit_vector(d: int, p: int, k: int) -> tuple[Poly, ...]:
    return tuple(Poly.one(k) if t == p else Poly.zero(k) for t in range(d))


def _dual(ctx: Context, reps: dict, rep_name: str, phi_text, m_text) -> DualRep:
    if rep_name not in reps:
        raise UsageError(f"unknown representation {rep_name!r}; available: {', '.join(sorted(reps))}")
    rep = reps[rep_name]
    k = ctx.env.nvars
    phi = phi_text if isinstance(phi_text, tuple) else _vector(phi_text, k, "phi")
    m = m_text if isinstance(m_text, tuple) else _vector(m_text, k, "m")
    if len(phi) != rep.rank or len(m) != rep.rank:
        raise UsageError(f"representation {rep_name!r} has rank {rep.rank}; φ and m must have that length")
    return DualRep(rep, phi, m)


# -- commands ---------------------------------------------------------------


def cmd_check(args, ctx: Context) -> tuple[list[str], int]:
    env = ctx.env
    label = ctx.label
    if args.mutate:
        env = Envelope(env.presentation, translation_sign=1)
        label = f"{label}-mutated"
    names = SUITES if args.suite == "all" else (args.suite,)
    reps = list(ctx.reps(env).values())
    results = []
    for name in names:
        results.extend(run_suite(name, env, args.level, label, ctx.seed, reps))
    failed = sum(not r.passed for r in results)
    lines = report(results).splitlines()
    lines.append("PASS" if not failed else f"FAIL ({failed} of {len(results)} checks failed)")
    return lines, 1 if failed else 0


def cmd_mul(args, ctx):
    env = ctx.env
    return [render_env(env.parse(args.left) * env.parse(args.right))], 0


def cmd_coprod(args, ctx):
    return [render_tensor(ctx.env.coprod(ctx.env.parse(args.expr)))], 0


def cmd_translate(args, ctx):
    return [render_tensor(ctx.env.translate(ctx.env.parse(args.expr)))], 0


def cmd_antipode(args, ctx):
    f = parse_functional(args.f, ctx.env, ctx.prec(args.precision))
    return [str(antipode_star(f))], 0


def cmd_convolve(args, ctx):
    p = ctx.prec(args.precision)
    f = parse_functional(args.f, ctx.env, p)
    g = parse_functional(args.g, ctx.env, p)
    return [str(convolve(f, g))], 0


def cmd_deltastar(args, ctx):
    f = parse_functional(args.f, ctx.env, args.m + args.n)
    t = delta_star(f, args.m, args.n)
    lines = [f"Delta*(f) at level ({args.m},{args.n}); entry [a] [b] is f(X^a X^b)"]
    for alpha in mi.up_to(ctx.env.rank, args.n):
        for beta in mi.up_to(ctx.env.rank, args.m):
            lines.append(f"{mi.render(alpha)} {mi.render(beta)}: {t.entry(beta, alpha)}")
    return lines, 0


def cmd_zeta(args, ctx):
    w = _dual(ctx, ctx.reps(), args.rep_name, args.phi, args.m)
    return [str(zeta_truncated(w, ctx.prec(args.precision)))], 0


def cmd_jets_matrix(args, ctx):
    rows, det = theta_matrix(ctx.env, args.level)
    k = ctx.env.nvars
    if args.format == "json":
        doc = {
            "level": args.level,
            "rows": [mi.render(g) for g in mi.up_to(k, args.level)],
            "columns": [mi.render(a) for a in mi.up_to(ctx.env.rank, args.level)],
            "matrix": [[str(v) for v in row] for row in rows],
            "determinant": str(det),
        }
        return [json.dumps(doc, indent=2)], 0
    cells = [[str(v) for v in row] for row in rows]
    heads = [mi.render(g) for g in mi.up_to(k, args.level)]
    hw = max(map(len, heads))
    widths = [max(len(r[j]) for r in cells) for j in range(len(cells[0]))]
    lines = [f"{h.ljust(hw)}  " + "  ".join(c.rjust(w) for c, w in zip(r, widths)) for h, r in zip(heads, cells)]
    lines.append(f"det = {det}")
    return lines, 0


def cmd_density(args, ctx):
    reps = ctx.reps()
    k = ctx.env.nvars
    ws = []
    if args.elements:
        try:
            items = json.loads(args.elements)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--elements: invalid JSON ({exc.msg})") from None
        if not isinstance(items, list) or not all(isinstance(it, dict) for it in items):
            raise UsageError('--elements: expected a JSON list of {"rep", "phi", "m"} objects')
        for it in items:
            phi = tuple(parse_poly(str(t), k) for t in it.get("phi", []))
            m = tuple(parse_poly(str(t), k) for t in it.get("m", []))
            ws.append(_dual(ctx, reps, it.get("rep", "trivial"), phi, m))
    else:
        # matrix coefficients of every available representation
        for name in sorted(reps):
            rep = reps[name]
            for p in range(rep.rank):
                for q in range(rep.rank):
                    ws.append(DualRep(rep, _unit_vector(rep.rank, p, k), _unit_vector(rep.rank, q, k)))
    got, full = density_diagnostic(ws, args.level, ctx.env)
    verdict = "full" if got == full else "deficient"
    return [f"rank {got} of {full} at level {args.level} from {len(ws)} elements: {verdict}"], 0


COMMAND_TABLE = {
    "check": cmd_check,
    "mul": cmd_mul,
    "coprod": cmd_coprod,
    "translate": cmd_translate,
    "antipode": cmd_antipode,
    "convolve": cmd_convolve,
    "deltastar": cmd_deltastar,
    "zeta": cmd_zeta,
    "jets-matrix": cmd_jets_matrix,
    "density": cmd_density,
}


def _parse_error_text(exc: ParseError) -> str:
    text = f"parse error: {exc}"
    if exc.text:
        text += f"\n  {exc.text}\n  {' ' * exc.position}^"
    return text


def execute(argv: list[str]) -> tuple[list[str], list[str], int]:
    """Run one invocation and return ``(stdout lines, stderr lines, exit code)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        session = None
        if args.config:
            session = load_session(args.config)
            if args.command is None:
                args = parser.parse_args([session.command, *session.arguments])
        if args.command is None:
            raise UsageError("lrhopf: a command is required: " + " | ".join(COMMANDS))
        ctx = _context(args, session)
        out, code = COMMAND_TABLE[args.command](args, ctx)
        return out, [], code
    except UsageError as exc:
        return [], [str(exc), parser.format_usage().rstrip(), FULL_GRAMMAR], 2
    except ParseError as exc:
        return [], [_parse_error_text(exc), FULL_GRAMMAR], 2
    except (SessionError, PresentationError, RepError) as exc:
        return [], [f"error: {exc}"], 2
    except (PrecisionExceeded, LevelMismatch) as exc:
        return [], [f"precision error: {exc}"], 2
    except ValueError as exc:
        return [], [f"error: {exc}"], 2


def run(argv: list[str] | None = None) -> int:
    out, err, code = execute(sys.argv[1:] if argv is None else list(argv))
    if out:
        sys.stdout.write("\n".join(out) + "\n")
    if err:
        sys.stderr.write("\n".join(err) + "\n")
    return code


def main() -> None:
    sys.exit(run())
