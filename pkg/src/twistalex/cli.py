"""Command line front end.

Subcommands::

    twistalex invariant      --braid "(s1 s2)^7 s1^-2"
    twistalex twisted        --pd trefoil.pd --rep "x0=(1 2); x1=(2 3)"
    twistalex twist-family   --pd borromean.pd --surgery 3 --q 1..5
    twistalex mahler         --poly "t^10+t^9-t^7-t^6-t^5-t^4-t^3+t+1"
    twistalex rep-search     --braid "s1 s2^-1 s1 s2^-1" --N 3 --transitive
    twistalex torsion-growth --pd trefoil.pd --n 1..50

PD files that do not exist relative to the working directory are looked
up among the bundled examples.  ``--json`` emits an object tagged with
``"schema": "twistalex/1"``.

Exit codes: 0 success, 1 other precondition failures, 2 parse errors,
3 convention failures, 4 numerical non-convergence.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from importlib import resources

from . import __version__
from .alexander import Augmentation, alexander_polynomial
from .errors import (ConventionError, ConvergenceError, NotDivisibleError, ParseError,
                     TwistalexError)
from .family import longitude_linking, substitution_family, twist_family_polynomial
from .laurent import canonical_form, canonical_with_unit, format_poly, parse_poly
from .links import braid_closure, parse_braid, parse_pd, wirtinger
from .mahler import DEFAULT_SEED, family_mahler_sweep, mahler, torsion_growth
from .twisted import enumerate_permutation_reps, parse_rep, twisted_alexander_polynomial

SCHEMA = "twistalex/1"
COMMANDS = ("invariant", "twisted", "twist-family", "mahler", "rep-search", "torsion-growth")
Q_MAX = 10 ** 4


@dataclass
class JobSpec:
    """One command line job."""

    command: str
    braid: str | None = None
    pd: str | None = None
    poly: str | None = None
    rep: str | None = None
    surgery: int | None = None
    axis: bool = False
    q_range: tuple | None = None
    n_range: tuple | None = None
    N: int = 3
    transitive: bool = False
    max_results: int | None = None
    k: int = 0
    method: str = "lawton"
    with_mahler: bool = False
    plot_data: bool = False
    as_json: bool = False
    seed: int = DEFAULT_SEED

    def validate(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        sources = [x for x in (self.braid, self.pd, self.poly) if x is not None]
        if len(sources) != 1:
            raise ValueError("give exactly one input source (--braid, --pd or --poly)")
        if self.poly is not None and self.command not in ("mahler", "torsion-growth"):
            raise ValueError(f"{self.command} needs a link (--braid or --pd)")
        for rng in (self.q_range, self.n_range):
            if rng is not None and not (1 <= rng[0] <= rng[1] <= Q_MAX):
                raise ValueError(f"range bounds must satisfy 1 <= min <= max <= {Q_MAX}")


def parse_range(text):
    """``"A..B"`` or ``"A"`` into an inclusive pair."""
    s = text.strip()
    try:
        if ".." in s:
            a, b = s.split("..", 1)
            return int(a), int(b)
        return int(s), int(s)
    except ValueError:
        raise ParseError("malformed range", text, 0, "A..B with integers") from None


def _read_pd(path):
    if os.path.exists(path):
        with open(path) as fh:
            return fh.read()
    data = resources.files("twistalex") / "data" / os.path.basename(path)
    if data.is_file():
        return data.read_text()
    raise FileNotFoundError(path)


def _read_rep(text):
    if text is not None and os.path.exists(text):
        with open(text) as fh:
            return fh.read()
    return text


def _diagram(job):
    if job.braid is not None:
        return braid_closure(parse_braid(job.braid), with_axis=job.axis)
    return parse_pd(_read_pd(job.pd))


def _poly_json(p):
    return {"text": format_poly(p), "terms": p.to_json(), "nvars": p.nvars}


def _unit_json(sign, shift):
    return {"sign": sign, "shift": list(shift)}


def _mahler_value(p, job):
    if p.is_zero():
        return 0.0
    return mahler(p, method=job.method, seed=job.seed).value


# -- commands ---------------------------------------------------------------------

def cmd_invariant(job):
    dg = _diagram(job)
    pres = wirtinger(dg)
    delta = alexander_polynomial(pres, Augmentation.standard(pres), k=job.k)
    out = {
        "components": dg.num_components,
        "linking_matrix": dg.linking_matrix(),
        "k": job.k,
        "alexander": _poly_json(delta),
    }
    text = [f"components: {dg.num_components}", f"Delta_{job.k}: {delta}"]
    if job.with_mahler:
        out["mahler"] = _mahler_value(delta, job)
        text.append(f"Mahler measure: {out['mahler']:.10f}")
    return out, "\n".join(text)


def cmd_twisted(job):
    if job.rep is None:
        raise ValueError("twisted needs --rep")
    dg = _diagram(job)
    pres = wirtinger(dg)
    rho = parse_rep(_read_rep(job.rep), pres)
    poly, parts = twisted_alexander_polynomial(pres, Augmentation.standard(pres), rho, return_parts=True)
    classical = alexander_polynomial(pres)
    out = {
        "N": rho.N,
        "representation": rho.to_text(),
        "twisted_alexander": _poly_json(poly),
        "D": _poly_json(canonical_form(parts["D"])),
        "Delta0": _poly_json(parts["Delta0"]),
        "denominator": _poly_json(parts["denominator"]),
        "alexander": _poly_json(classical),
    }
    text = [f"rho: {rho.to_text()}", f"Delta^rho: {poly}", f"D: {canonical_form(parts['D'])}",
            f"Delta0: {parts['Delta0']}", f"det(I - t1 rho(x0)): {parts['denominator']}"]
    if job.with_mahler:
        out["mahler"] = _mahler_value(poly, job)
        text.append(f"Mahler measure: {out['mahler']:.10f}")
    return out, "\n".join(text)


def cmd_twist_family(job):
    dg = _diagram(job)
    surgery = (job.surgery - 1) if job.surgery is not None else dg.num_components - 1
    if not 0 <= surgery < dg.num_components:
        raise ValueError(f"--surgery must be between 1 and {dg.num_components}")
    if dg.num_components < 2:
        raise ValueError("twist families need at least two components")
    pres = wirtinger(dg, surgery_component=surgery)
    rho = parse_rep(_read_rep(job.rep), pres) if job.rep else None
    qa, qb = job.q_range or (1, 5)
    qs = list(range(qa, qb + 1))
    lk = longitude_linking(pres)
    rows = []
    out = {"surgery_component": surgery + 1, "linking": list(lk)}
    text = []
    if not any(lk):
        fam = twist_family_polynomial(pres, rho)
        out.update({
            "mode": "symbolic",
            "N": fam.N,
            "r": fam.r,
            "P_coeffs": [_poly_json(c) for c in fam.P.coeffs],
            "P_unit": _unit_json(*fam.unit),
            "limit_poly": _poly_json(fam.limit_poly),
            "modified_determinant": _poly_json(fam.modified_determinant),
            "constant": fam.constant,
        })
        text.append(f"P(q) = {fam.P}")
        text.append(f"limit polynomial: {fam.limit_poly}")
        text.append(f"modified-matrix determinant: {fam.modified_determinant}")
        text.append(f"constant family: {fam.constant}")
        for q in qs:
            val = fam.P.evaluate(q)
            canon, sign, shift = canonical_with_unit(val)
            row = {"q": q, "polynomial": _poly_json(canon), "unit": _unit_json(sign, shift)}
            rows.append(row)
        sweep = None
        if job.with_mahler:
            sweep = family_mahler_sweep(fam, qs, method=job.method, seed=job.seed)
    else:
        fam = substitution_family(pres, qs, rho)
        out.update({
            "mode": "substitution",
            "r": fam.r,
            "D_link": _poly_json(canonical_form(fam.D_link)),
            "correction": _poly_json(fam.correction),
        })
        text.append(f"D of the link: {canonical_form(fam.D_link)}")
        text.append(f"correction det(I - T rho(lambda)): {fam.correction}")
        for q in qs:
            rows.append({"q": q, "polynomial": _poly_json(fam.members[q])})
        sweep = None
        if job.with_mahler:
            sweep = family_mahler_sweep(fam, qs, method=job.method, seed=job.seed)
    if sweep is not None:
        for row, (_, _, m) in zip(rows, sweep.rows):
            row["mahler"] = m
        out["mahler_target"] = sweep.target
        out["final_gap"] = sweep.final_gap
        out["monotone_tail"] = sweep.monotone_tail
        if job.plot_data:
            out["plot_data"] = [[q, m] for q, _, m in sweep.rows]
    out["rows"] = rows
    for row in rows:
        line = f"q={row['q']}: {row['polynomial']['text']}"
        if "unit" in row:
            u = row["unit"]
            line += f"   (unit: {u['sign']:+d} t^{tuple(u['shift'])})"
        if "mahler" in row:
            line += f"   M={row['mahler']:.8f}"
        text.append(line)
    if sweep is not None:
        text.append(f"target M: {sweep.target:.8f}   final gap: {sweep.final_gap:.3e}")
    return out, "\n".join(text)


def cmd_mahler(job):
    if job.poly is not None:
        p = parse_poly(job.poly)
    else:
        dg = _diagram(job)
        p = alexander_polynomial(wirtinger(dg))
    est = mahler(p, method=job.method, seed=job.seed) if not p.is_zero() else None
    value = est.value if est else 0.0
    out = {"polynomial": _poly_json(p), "mahler": value,
           "error_bound": est.error_bound if est else 0.0, "method": est.method if est else "zero"}
    return out, f"M({p}) = {value:.10f}  (+- {out['error_bound']:.1e}, {out['method']})"


def cmd_rep_search(job):
    dg = _diagram(job)
    pres = wirtinger(dg)
    reps = enumerate_permutation_reps(pres, job.N, max_results=job.max_results, transitive=job.transitive,
                                      up_to_first_conjugacy=True)
    out = {"N": job.N, "transitive": job.transitive, "count": len(reps),
           "representations": [r.to_text() for r in reps]}
    text = [f"{len(reps)} representation(s) of degree {job.N}"] + [r.to_text() for r in reps]
    return out, "\n".join(text)


def cmd_torsion_growth(job):
    if job.poly is not None:
        delta = parse_poly(job.poly)
    else:
        delta = alexander_polynomial(wirtinger(_diagram(job)))
    if len(delta.support_vars()) > 1:
        raise ValueError("torsion growth is implemented for knots only")
    na, nb = job.n_range or (1, 20)
    rows = torsion_growth(delta, range(na, nb + 1))
    target = math.log(mahler(delta, seed=job.seed).value)
    out = {"alexander": _poly_json(delta), "log_mahler": target,
           "rows": [{"n": n, "b_n": str(b), "log_b_n_over_n": x} for n, b, x in rows]}
    text = [f"Delta = {delta}, log M = {target:.10f}"]
    text += [f"n={n}: b_n={b}  log(b_n)/n={x:.8f}" for n, b, x in rows]
    return out, "\n".join(text)


HANDLERS = {
    "invariant": cmd_invariant,
    "twisted": cmd_twisted,
    "twist-family": cmd_twist_family,
    "mahler": cmd_mahler,
    "rep-search": cmd_rep_search,
    "torsion-growth": cmd_torsion_growth,
}


def run(job):
    """Execute a job; returns ``(exit code, JSON-ready dict, text)``."""
    try:
        job.validate()
        out, text = HANDLERS[job.command](job)
    except ParseError as exc:
        return 2, _error("parse", exc, position=exc.position), f"parse error: {exc}"
    except (ConventionError, NotDivisibleError) as exc:
        return 3, _error("convention", exc), f"convention error: {exc}"
    except ConvergenceError as exc:
        return 4, _error("convergence", exc), f"convergence error: {exc}"
    except (TwistalexError, ValueError, FileNotFoundError) as exc:
        return 1, _error("precondition", exc), f"error: {exc}"
    out = {"schema": SCHEMA, "command": job.command, **out}
    return 0, out, text


def _error(kind, exc, **extra):
    return {"schema": SCHEMA, "error": kind, "message": str(exc), **extra}


def build_parser():
    parser = argparse.ArgumentParser(prog="twistalex", description="Twisted Alexander invariants and twist families.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        src = p.add_mutually_exclusive_group()
        src.add_argument("--braid", help='braid word, e.g. "(s1 s2)^7 s1^-2"')
        src.add_argument("--pd", metavar="FILE", help="planar diagram file")
        if name in ("mahler", "torsion-growth"):
            src.add_argument("--poly", help='Laurent polynomial, e.g. "t^2-3*t+1"')
        p.add_argument("--axis", action="store_true", help="add the braid axis as the last component")
        p.add_argument("--json", action="store_true", dest="as_json")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--method", choices=("lawton", "quadrature"), default="lawton")
        if name in ("twisted", "twist-family"):
            p.add_argument("--rep", metavar="FILE|STRING", help='e.g. "x0=(1 2 3); x1=(1 3 2)"')
        if name == "invariant":
            p.add_argument("--k", type=int, default=0, help="elementary ideal index")
        if name in ("invariant", "twisted", "twist-family"):
            p.add_argument("--mahler", action="store_true", dest="with_mahler", help="also report Mahler measures")
        if name == "twist-family":
            p.add_argument("--surgery", type=int, help="1-based component to surger (default: last)")
            p.add_argument("--q", dest="q_range", default="1..5", help="range A..B")
            p.add_argument("--plot-data", action="store_true", help="emit (q, M) pairs (implies --mahler)")
        if name == "rep-search":
            p.add_argument("--N", type=int, default=3)
            p.add_argument("--transitive", action="store_true")
            p.add_argument("--max", type=int, dest="max_results")
        if name == "torsion-growth":
            p.add_argument("--n", dest="n_range", default="1..20", help="range A..B")
    return parser


def job_from_args(ns):
    kw = {k: v for k, v in vars(ns).items() if k in JobSpec.__dataclass_fields__}
    if isinstance(kw.get("q_range"), str):
        kw["q_range"] = parse_range(kw["q_range"])
    if isinstance(kw.get("n_range"), str):
        kw["n_range"] = parse_range(kw["n_range"])
    if getattr(ns, "plot_data", False):
        kw["with_mahler"] = True
    return JobSpec(**kw)


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        job = job_from_args(ns)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    code, out, text = run(job)
    if job.as_json:
        print(json.dumps(out, indent=2, sort_keys=True))
    elif code == 0:
        print(text)
    if code != 0:
        print(text, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
