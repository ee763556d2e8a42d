"""Command-line front end: ``detspace <command> ...``.

Exit codes: 0 success or pass, 1 verification failure, 2 usage, input or cap errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from . import matspace as ms
from .config import Config
from .detkit import census_any, char_poly, classify, det_poly, pfaffian, rank_census, singular_part, zero_census
from .gf import FieldError, field_from_order
from .matspace import CapExceeded, MatrixSubspace, SubspaceError
from .polyring import PolyError
from .theorems import VERIFIERS, Instance, UnknownTheorem, centralizer, normalizer_quotient, verify

SEED_ENV = "DETSPACE_SEED"
CONSTRUCTIONS = ("ex1", "ex2", "ex3", "thm3_7", "thm4_1", "thm4_4", "field", "reduce")


class UsageError(Exception):
    pass


# -- argument parsing -------------------------------------------------------------

def _common(p: argparse.ArgumentParser, needs_input: bool = True):
    if needs_input:
        p.add_argument("-i", "--input", required=True, help="subspace JSON file")
    p.add_argument("--seed", type=int, default=None, help=f"seed for randomized paths (env {SEED_ENV})")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="census worker threads")
    p.add_argument("--affine-cap", type=int, default=Config.affine_cap)
    p.add_argument("--projective-cap", type=int, default=Config.projective_cap)
    p.add_argument("--group-budget", type=int, default=Config.group_budget)
    p.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="detspace", description="Determinantal polynomials of matrix subspaces over finite fields")
    parser.add_argument("--version", action="version", version=f"detspace {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a named subspace and write it as JSON")
    p.add_argument("name", choices=CONSTRUCTIONS)
    p.add_argument("--q", type=int, help="field order")
    p.add_argument("--b", type=int, default=3, help="non-cube for ex3")
    p.add_argument("--d", type=int, default=2, help="dimension parameter for thm3_7")
    p.add_argument("--t", type=int, default=3, help="extension degree for field")
    p.add_argument("--m", type=int, default=2, help="reduction degree for reduce")
    p.add_argument("-o", "--output", help="output file (default: stdout)")

    for name, text in (("detpoly", "determinantal polynomial"), ("classify", "irreducibility verdicts"),
                       ("singular", "singular elements"), ("rank", "rank distribution and bounds"),
                       ("pfaffian", "Pfaffian of a skew-symmetric subspace")):
        _common(sub.add_parser(name, help=text))

    p = sub.add_parser("charpoly", help="characteristic polynomial of sum c_i M_i")
    _common(p)
    p.add_argument("--coeffs", required=True, help="comma-separated c_1,...,c_d")

    p = sub.add_parser("census", help="zero count of the determinantal polynomial")
    _common(p)
    p.add_argument("--projective", action="store_true", help="count projective points as well")

    p = sub.add_parser("group", help="centralizer (and normalizer) in GL(n,q)")
    _common(p)
    p.add_argument("--normalizer", action="store_true")

    p = sub.add_parser("verify", help="run a catalogue verifier or the whole suite")
    _common(p, needs_input=False)
    p.add_argument("-i", "--input", help="subspace JSON file")
    p.add_argument("--id", dest="theorem_id", help="catalogue id, e.g. T3.2")
    p.add_argument("--suite", action="store_true", help="run every designated instance")
    p.add_argument("--only", help="comma-separated ids to keep in suite mode")
    return parser


def resolve_seed(flag: int | None) -> tuple[int, str]:
    if flag is not None:
        return flag, "flag"
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env), "env"
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    return 0, "default"


def config_from(args) -> tuple[Config, str]:
    seed, source = resolve_seed(args.seed)
    for name in ("affine_cap", "projective_cap", "group_budget", "threads"):
        if getattr(args, name) < 1:
            raise UsageError(f"--{name.replace('_', '-')} must be positive")
    cfg = Config(seed=seed, affine_cap=args.affine_cap, projective_cap=args.projective_cap,
                 group_budget=args.group_budget, threads=args.threads)
    return cfg, source


def load_subspace(path: str) -> MatrixSubspace:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e}") from None
    try:
        return ms.subspace_from_dict(data)
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"{path} is not a subspace file: {e}") from None


# -- commands ---------------------------------------------------------------------

def construct(args) -> MatrixSubspace:
    name, q = args.name, args.q
    if name == "ex1":
        return ms.ex1()
    if name == "ex2":
        return ms.ex2()
    if name == "ex3":
        return ms.ex3(q or 7, args.b)
    if q is None:
        raise UsageError(f"construct {name} needs --q")
    if name == "thm3_7":
        return ms.thm3_7(q, args.d)
    if name == "thm4_1":
        return ms.thm4_1(q)
    if name == "thm4_4":
        return ms.thm4_4(q)
    if name == "field":
        return ms.field_subspace(field_from_order(q), args.t)
    return ms.reduce_construction(q, args.m)


def _header(cfg: Config, source: str, command: str, sub: MatrixSubspace | None) -> dict:
    out = {"tool": "detspace", "version": __version__, "command": command}
    if sub is not None:
        out.update({"q": sub.q, "n": sub.n, "d": sub.d})
        if sub.m != sub.n:
            out["m"] = sub.m
    out.update({"seed": cfg.seed, "seed_source": source, "caps": cfg.caps()})
    return out


def run_command(args, cfg: Config, sub: MatrixSubspace) -> tuple[dict, int]:
    cmd = args.command
    if cmd == "detpoly":
        P = det_poly(sub)
        return {"det_poly": P.render(), "degree": P.total_degree() if not P.is_zero() else None}, 0
    if cmd == "charpoly":
        try:
            cs = [int(x) for x in args.coeffs.split(",")]
        except ValueError:
            raise UsageError("--coeffs must be comma-separated integers") from None
        if len(cs) != sub.d:
            raise UsageError(f"need {sub.d} coefficients, got {len(cs)}")
        M = sub.element(cs)
        return {"coeffs": cs, "matrix": M, "char_poly": char_poly(sub.field, M).render("y")}, 0
    if cmd == "census":
        P = det_poly(sub)
        if args.projective:
            c = zero_census(P, "both", cfg.affine_cap, cfg.projective_cap, cfg.threads)
        else:
            c = census_any(P, cfg.affine_cap, cfg.projective_cap, cfg.threads)
        return {"det_poly": P.render(), "N_affine": c.N_affine, "N_projective": c.N_projective,
                "q^d": sub.size}, 0
    if cmd == "classify":
        return classify(sub, cfg.affine_cap, cfg.projective_cap, cfg.seed, cfg.threads, cfg.root_cap).to_dict(), 0
    if cmd == "singular":
        return singular_part(sub, cfg.affine_cap).to_dict(), 0
    if cmd == "rank":
        return rank_census(sub, cfg.affine_cap, cfg.threads).to_dict(), 0
    if cmd == "pfaffian":
        if not all(ms.is_skew(sub.field, M) for M in sub.basis):
            raise UsageError("pfaffian needs a skew-symmetric subspace")
        g = pfaffian(sub)
        return {"pfaffian": g.render(), "squares_to_det": g * g == det_poly(sub)}, 0
    if cmd == "group":
        if args.normalizer:
            g = normalizer_quotient(sub, cfg.group_budget, cfg.affine_cap)
        else:
            g = centralizer(sub, cfg.affine_cap)
        return g.to_dict(), 0
    raise UsageError(f"unknown command {cmd}")


def run_verify(args, cfg: Config) -> tuple[dict, int, MatrixSubspace | None]:
    if args.suite:
        from .suite import run_suite

        only = set(args.only.split(",")) if args.only else None
        if only and not only <= set(VERIFIERS):
            raise UsageError(f"unknown ids: {', '.join(sorted(only - set(VERIFIERS)))}")
        reports = [r.to_dict() for r in run_suite(cfg, only)]
        failed = sum(not r["passed"] for r in reports)
        body = {"summary": {"total": len(reports), "passed": len(reports) - failed, "failed": failed},
                "reports": reports}
        return body, 1 if failed else 0, None
    if not args.theorem_id:
        raise UsageError("verify needs --id or --suite")
    if args.theorem_id not in VERIFIERS:
        raise UsageError(f"unknown theorem id {args.theorem_id}")
    if args.input:
        sub = load_subspace(args.input)
        inst = Instance(Path(args.input).stem, sub=sub)
    elif args.theorem_id == "L5.7":
        sub, inst = None, Instance("grid(r<=13,q<=64)", params={"r_max": 13, "q_max": 64})
    else:
        raise UsageError(f"verify --id {args.theorem_id} needs -i")
    rep = verify(args.theorem_id, inst, cfg).to_dict()
    return rep, 0 if rep["passed"] else 1, sub


# -- output ---------------------------------------------------------------------

def _cell(v) -> str:
    if isinstance(v, str):
        return v
    return json.dumps(v, separators=(",", ":"))


def render_text(doc: dict) -> str:
    lines = []
    width = max(len(k) for k in doc)
    for k, v in doc.items():
        if k == "reports":
            continue
        lines.append(f"{k:<{width}}  {_cell(v)}")
    if "reports" in doc:
        lines.append("")
        lines.append(f"{'id':<7}{'instance':<28}{'result':<8}caveats")
        for r in doc["reports"]:
            res = "pass" if r["passed"] else "FAIL"
            cav = "; ".join(r["caveats"]) if r["caveats"] else "-"
            if r["violated"]:
                cav = "violated: " + r["violated"] + ("" if cav == "-" else "; " + cav)
            lines.append(f"{r['theorem_id']:<7}{r['instance']['label']:<28}{res:<8}{cav}")
    return "\n".join(lines) + "\n"


def emit(doc: dict, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(render_text(doc))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        if args.command == "construct":
            sub = construct(args)
            text = json.dumps(sub.to_dict(), indent=2) + "\n"
            if args.output:
                Path(args.output).write_text(text)
            else:
                sys.stdout.write(text)
            return 0
        cfg, source = config_from(args)
        if args.command == "verify":
            body, code, sub = run_verify(args, cfg)
        else:
            sub = load_subspace(args.input)
            body, code = run_command(args, cfg, sub)
        doc = _header(cfg, source, args.command, sub)
        doc.update(body)
        emit(doc, args.format)
        return code
    except (UsageError, CapExceeded, SubspaceError, FieldError, PolyError, UnknownTheorem) as e:
        sys.stderr.write(f"detspace: error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
