"""Evaluate a parsed session: build rings and modules, run commands."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .. import config
from ..errors import (
    BrimError,
    HomogeneityError,
    HypothesisError,
    MultiplicityError,
    NotContainedError,
    ResourceError,
)
from ..exact import QQ
from ..formulas import (
    AlgebraExtension,
    HypothesisCheck,
    check_additivity,
    check_dvr_fitting,
    check_hs_consistency,
    check_projection,
    multiplicity_report,
)
from ..modules import INFINITE, SubmoduleOfFree, declared_prime, fitting_ideal_0, quotient_length
from ..polyring import PolyRing, QuotientRing
from .ast import (
    BinOp,
    Command,
    ExtensionDecl,
    FreeDecl,
    IdealDecl,
    MapDecl,
    ModuleDecl,
    Neg,
    Num,
    Pow,
    PrimesDecl,
    RingDecl,
    SessionAst,
    Span,
    Var,
    format_statement,
)
from .parser import ParseError, parse_session

SCHEMA_VERSION = 1

EXIT_OK, EXIT_VERDICT, EXIT_HYPOTHESIS, EXIT_PARSE, EXIT_RESOURCE = 0, 1, 2, 3, 4


class SemanticError(BrimError):
    def __init__(self, message: str, span: Span):
        self.message = message
        self.span = span
        super().__init__(f"{span}: {message}")


@dataclass
class OutputRecord:
    command: str
    hypotheses: list
    result: dict | None
    declared_primes: bool = False
    declared_degree: bool = False
    seed: int = 0
    millis: int | None = None
    exit_code: int = EXIT_OK
    error: str | None = None

    def to_dict(self) -> dict:
        result = self.result
        if self.error is not None:
            result = {"error": self.error}
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "hypotheses": [h.to_payload() for h in self.hypotheses],
            "result": result,
            "flags": {"declared_primes": self.declared_primes, "declared_degree": self.declared_degree},
            "seed": self.seed,
            "millis": self.millis,
        }


@dataclass
class _Map:
    source: QuotientRing
    target: QuotientRing
    images: list


@dataclass
class _Primes:
    ring: QuotientRing
    records: list


@dataclass
class Environment:
    coefficients: object = QQ
    values: dict = field(default_factory=dict)

    def get(self, ref, *kinds):
        v = self.values.get(ref.ident)
        if v is None:
            raise SemanticError(f"unresolved name {ref.ident!r}", ref.span)
        if kinds and not isinstance(v, kinds):
            want = " or ".join(_KIND_NAMES[k] for k in kinds)
            raise SemanticError(f"{ref.ident!r} is not a {want}", ref.span)
        return v

    def module(self, ref) -> SubmoduleOfFree:
        v = self.get(ref, QuotientRing, SubmoduleOfFree)
        if isinstance(v, QuotientRing):
            return SubmoduleOfFree.free(v, 1)
        return v


_KIND_NAMES = {
    QuotientRing: "ring",
    SubmoduleOfFree: "module",
    _Map: "map",
    _Primes: "primes declaration",
    AlgebraExtension: "extension",
}


# --- expressions ----------------------------------------------------------------

def eval_expr(e, ring: PolyRing):
    if isinstance(e, Num):
        return ring.const(ring.field(e.value))
    if isinstance(e, Var):
        if e.name not in ring.names:
            raise SemanticError(f"unknown variable {e.name!r} (ring has {', '.join(ring.names)})", e.span)
        return ring.var(ring.names.index(e.name))
    if isinstance(e, Neg):
        return -eval_expr(e.operand, ring)
    if isinstance(e, Pow):
        return eval_expr(e.base, ring) ** e.exp
    if isinstance(e, BinOp):
        a = eval_expr(e.left, ring)
        b = eval_expr(e.right, ring)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if any(any(x) for x in b.terms) or b.is_zero():
            raise SemanticError("division only by a nonzero constant", e.span)
        c = next(iter(b.terms.values()))
        return a.scale(ring.field.one / c)
    raise TypeError(f"not an expression: {e!r}")


# --- declarations ---------------------------------------------------------------

def _declare(stmt, env: Environment):
    if isinstance(stmt, RingDecl):
        if len(set(stmt.variables)) != len(stmt.variables):
            raise SemanticError("repeated variable name", stmt.span)
        if stmt.weights is not None:
            if len(stmt.weights) != len(stmt.variables):
                raise SemanticError(
                    f"{len(stmt.weights)} weights for {len(stmt.variables)} variables", stmt.span
                )
            if any(w < 0 for w in stmt.weights):
                raise SemanticError("weights must be non-negative", stmt.span)
        amb = PolyRing(list(stmt.variables), list(stmt.weights) if stmt.weights else None, env.coefficients)
        rels = [eval_expr(r, amb) for r in stmt.relations]
        try:
            return QuotientRing(amb, rels, name=stmt.name)
        except HomogeneityError as exc:
            raise SemanticError(str(exc), stmt.span) from exc
    if isinstance(stmt, FreeDecl):
        R = env.get(stmt.ring, QuotientRing)
        if stmt.rank < 1:
            raise SemanticError("rank must be positive", stmt.span)
        if stmt.shifts is not None and len(stmt.shifts) != stmt.rank:
            raise SemanticError("one shift per basis vector required", stmt.span)
        return SubmoduleOfFree.free(R, stmt.rank, stmt.shifts, name=stmt.name)
    if isinstance(stmt, ModuleDecl):
        F = env.module(stmt.free)
        if not F.is_full():
            raise SemanticError(f"{stmt.free.ident!r} is not a free module", stmt.free.span)
        cols = []
        for col in stmt.columns:
            if len(col) != F.rank:
                raise SemanticError(f"generator of length {len(col)} in a free module of rank {F.rank}", stmt.span)
            cols.append([eval_expr(a, F.ring.ambient) for a in col])
        try:
            return SubmoduleOfFree(F.ring, F.rank, cols, F.shifts, name=stmt.name)
        except HomogeneityError as exc:
            raise SemanticError(str(exc), stmt.span) from exc
    if isinstance(stmt, IdealDecl):
        R = env.get(stmt.ring, QuotientRing)
        gens = [eval_expr(g, R.ambient) for g in stmt.gens]
        try:
            return SubmoduleOfFree.ideal(R, gens, name=stmt.name)
        except HomogeneityError as exc:
            raise SemanticError(str(exc), stmt.span) from exc
    if isinstance(stmt, MapDecl):
        src = env.get(stmt.source, QuotientRing)
        dst = env.get(stmt.target, QuotientRing)
        if len(stmt.images) != src.nvars:
            raise SemanticError(f"{src.nvars} images needed, got {len(stmt.images)}", stmt.span)
        return _Map(src, dst, [eval_expr(g, dst.ambient) for g in stmt.images])
    if isinstance(stmt, PrimesDecl):
        R = env.get(stmt.ring, QuotientRing)
        recs = []
        for item in stmt.items:
            gens = [eval_expr(g, R.ambient) for g in item.gens]
            try:
                recs.append(declared_prime(R, gens, item.length))
            except HypothesisError as exc:
                raise SemanticError(str(exc), item.span) from exc
        return _Primes(R, recs)
    if isinstance(stmt, ExtensionDecl):
        m = env.get(stmt.map, _Map)
        maximal = None
        if stmt.maximal is not None:
            maximal = [[eval_expr(g, m.target.ambient) for g in gens] for gens in stmt.maximal]
        return AlgebraExtension(m.source, m.target, m.images, stmt.degree, maximal, name=stmt.name)
    raise TypeError(stmt)


# --- commands ---------------------------------------------------------------------

_ARITY = {
    "mult": (2, 3),
    "brpoly": (2, 3),
    "hs": (1, 2),
    "fitting": (1, 1),
    "check-projection": (4, 5),
    "check-additivity": (3, 4),
    "check-dvr": (2, 2),
}


def _primes_arg(cmd, env, idx):
    if len(cmd.args) > idx:
        return env.get(cmd.args[idx], _Primes).records
    return None


def _verdict_code(verdict) -> int:
    if verdict is None:
        return EXIT_HYPOTHESIS
    return EXIT_OK if verdict else EXIT_VERDICT


def run_command(cmd: Command, env: Environment, seed: int = 0) -> OutputRecord:
    """Dispatch one command; errors become records with an exit code."""
    lo, hi = _ARITY[cmd.name]
    rec = OutputRecord(format_statement(cmd), [], None, seed=seed)
    if not lo <= len(cmd.args) <= hi:
        raise SemanticError(f"{cmd.name} takes {lo}..{hi} arguments, got {len(cmd.args)}", cmd.span)
    a = cmd.args
    try:
        if cmd.name in ("mult", "brpoly"):
            primes = _primes_arg(cmd, env, 2)
            rec.declared_primes = primes is not None
            rep = multiplicity_report(env.module(a[0]), env.module(a[1]), primes, seed)
        elif cmd.name == "hs":
            R = env.get(a[1], QuotientRing) if len(a) > 1 else None
            rep = check_hs_consistency(env.module(a[0]), R, seed)
        elif cmd.name == "fitting":
            M = env.module(a[0])
            fitt = fitting_ideal_0(M)
            L = quotient_length(fitt, SubmoduleOfFree.free(M.ring, 1))
            rec.result = {
                "generators": [str(c[0]) for c in fitt.columns],
                "colength": "infinite" if L is INFINITE else L,
            }
            return rec
        elif cmd.name == "check-projection":
            ext = env.get(a[1], AlgebraExtension)
            primes = _primes_arg(cmd, env, 4)
            rec.declared_primes = primes is not None
            rec.declared_degree = ext.declared_degree is not None
            rep = check_projection(env.get(a[0], QuotientRing), ext, env.module(a[2]), env.module(a[3]), primes, seed)
        elif cmd.name == "check-additivity":
            primes = _primes_arg(cmd, env, 3)
            rec.declared_primes = primes is not None
            rep = check_additivity(env.get(a[0], QuotientRing), env.module(a[1]), env.module(a[2]), primes, seed)
        else:
            rep = check_dvr_fitting(env.module(a[0]), env.module(a[1]), seed)
    except NotContainedError as exc:
        rec.hypotheses = [HypothesisCheck("M contained in N", False, str(exc))]
        rec.exit_code = EXIT_HYPOTHESIS
        return rec
    except HypothesisError as exc:
        rec.hypotheses = [HypothesisCheck(exc.clause, False, exc.detail)]
        rec.exit_code = EXIT_HYPOTHESIS
        return rec
    except ResourceError as exc:
        rec.error = str(exc)
        rec.exit_code = EXIT_RESOURCE
        return rec
    except MultiplicityError as exc:
        rec.error = str(exc)
        rec.exit_code = EXIT_VERDICT
        return rec
    rec.hypotheses = list(rep.hypotheses)
    rec.result = rep.to_payload() if rep.verdict is not None else None
    if cmd.name == "brpoly" and rep.verdict is not None:
        rec.result = rep.result.to_payload(verbose=True)
    rec.exit_code = _verdict_code(rep.verdict)
    if rec.exit_code == EXIT_HYPOTHESIS and not any(not h.ok for h in rec.hypotheses):
        rec.error = "no result and no failed hypothesis"
    return rec


@dataclass
class SessionResult:
    records: list
    exit_code: int
    error: str | None = None


def _combine(codes) -> int:
    return max(codes, default=EXIT_OK)


def run_session(text: str, seed: int = 0, field=QQ, timing: bool = False) -> SessionResult:
    """Parse and run a whole session; settings come from :mod:`brmult.config`."""
    try:
        ast = parse_session(text)
    except ParseError as exc:
        return SessionResult([], EXIT_PARSE, str(exc))
    return run_ast(ast, seed, field, timing)


def run_ast(ast: SessionAst, seed: int = 0, field=QQ, timing: bool = False) -> SessionResult:
    env = Environment(field)
    records = []
    with config.settings_override(seed=seed):
        for stmt in ast.statements:
            try:
                if isinstance(stmt, Command):
                    t0 = time.perf_counter()
                    rec = run_command(stmt, env, seed)
                    if timing:
                        rec.millis = int((time.perf_counter() - t0) * 1000)
                    records.append(rec)
                else:
                    env.values[stmt.name] = _declare(stmt, env)
            except (SemanticError, HomogeneityError, ValueError) as exc:
                return SessionResult(records, EXIT_PARSE, str(exc))
            except ResourceError as exc:
                return SessionResult(records, EXIT_RESOURCE, str(exc))
            except BrimError as exc:
                return SessionResult(records, EXIT_PARSE, str(exc))
    return SessionResult(records, _combine(r.exit_code for r in records))


# --- text rendering ---------------------------------------------------------------

def render_text(rec: OutputRecord) -> str:
    lines = [rec.command]
    for h in rec.hypotheses:
        if not h.ok:
            lines.append(f"  hypothesis unmet: {h.name}" + (f" ({h.detail})" if h.detail else ""))
    if rec.error:
        lines.append(f"  error: {rec.error}")
    r = rec.result
    if r is None:
        return "\n".join(lines)
    if "e" in r and "polynomial" in r:
        lines.append(f"  e = {r['e']}, s = {r['s']} ({r['s_source']})")
        lines.append(f"  polynomial: {r['polynomial']}  (window n = {r['window'][0]}..{r['window'][1]})")
        if "samples" in r:
            lines.append("  samples: " + ", ".join(f"{k}: {v}" for k, v in r["samples"].items()))
    elif "colength" in r:
        lines.append(f"  Fitt_0 = ({', '.join(r['generators'])}), colength {r['colength']}")
    else:
        lines.append(f"  verdict: {str(r['verdict']).lower()}")
        for key in ("lhs", "rhs", "delta", "e", "e_from_powers", "length", "fitting_length"):
            if key in r and r[key] is not None:
                lines.append(f"  {key} = {r[key]}")
        for comp in r.get("components", []):
            lines.append(
                f"  {comp['maximal_ideal']}: delta_m = {comp['delta_m']}, s_m = {comp['s_m']}, "
                f"e = {comp['multiplicity']['e']}" + ("" if comp["in_phi"] else " (outside Phi)")
            )
        for term in r.get("terms", []):
            lines.append(f"  {term['prime']}: l = {term['ell']}, e = {term['multiplicity']['e']}")
    return "\n".join(lines)

