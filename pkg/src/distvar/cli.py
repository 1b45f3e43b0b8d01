"""Command line interface.

Subcommands:
  model     print a camera model's invariants and generators
  distort   distortion ideal generators for an ideal from a file
  degree    distortion degree (or bound) of a model or file ideal
  cayley    multi-parameter Cayley data for a configuration
  solve     run the f+E+lambda minimal solver on correspondences
  template  build, validate and serialize the elimination template
  simulate  Monte Carlo experiment over synthetic scenes

Exit codes: 0 success, 1 computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .polycore import GF, default_names, format_polynomial, parse_polynomial
from .groebner import BudgetError, DEFAULT_MAX_PAIRS, Ideal
from .geometry import (DistortionVector, cayley_ideal, cayley_parametrization,
                       degree_bound, distortion_degree,
                       distortion_ideal_generators, iterated_decomposition)
from .models import (MODEL_DIM_DEGREE, ModelId, VAR_NAMES, model_config,
                     model_ideal)
from .solver import (Correspondence, DegenerateDataError, EliminationTemplate,
                     TEMPLATE_VERSION, TemplateError, build_template,
                     count_real, solve)
from .simulate import SceneConfig, run_experiment

DEFAULT_SEED = 0


class ComputationError(RuntimeError):
    pass


def _parse_u(text: str) -> DistortionVector:
    try:
        return DistortionVector(tuple(int(x) for x in text.split(",")))
    except (ValueError, TypeError) as exc:
        raise ComputationError(f"bad distortion vector {text!r}: {exc}")


def _load_ideal(path: str, nvars: int, prime: int) -> Ideal:
    domain = GF(prime)
    names = default_names(nvars)
    gens = []
    try:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if line and not line.startswith("#"):
                    gens.append(parse_polynomial(line, nvars, domain, names))
    except OSError as exc:
        raise ComputationError(str(exc))
    if not gens:
        raise ComputationError(f"no polynomials found in {path}")
    return Ideal(gens, nvars, domain)


def _model_or_file(args, prime: int):
    if args.model:
        ideal = model_ideal(ModelId(args.model), GF(prime))
        names = VAR_NAMES
        if args.config:
            u = model_config(ModelId(args.model), args.config)
        elif args.u:
            u = _parse_u(args.u)
        else:
            raise ComputationError("need --config or --u with --model")
    else:
        if not args.u:
            raise ComputationError("need --u with --ideal")
        u = _parse_u(args.u)
        ideal = _load_ideal(args.ideal, u.n + 1, prime)
        names = default_names(u.n + 1)
    return ideal, u, names


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_model(args) -> dict:
    model = ModelId(args.model)
    ideal = model_ideal(model, GF(args.prime))
    dim, deg = MODEL_DIM_DEGREE[model]
    return {
        "model": model.value,
        "dimension": dim,
        "degree": deg,
        "generators": [format_polynomial(g, VAR_NAMES)
                       for g in ideal.generators],
    }


def cmd_distort(args) -> dict:
    ideal, u, names = _model_or_file(args, args.prime)
    gens = distortion_ideal_generators(ideal, u,
                                       max_pairs=args.max_pairs).generators
    from .geometry import scroll_names
    out_names = scroll_names(u, names)
    by_degree: dict[int, int] = {}
    for g in gens:
        by_degree[g.total_degree()] = by_degree.get(g.total_degree(), 0) + 1
    report = {"u": list(u.entries), "n_generators": len(gens),
              "count_by_degree": {str(k): v for k, v in sorted(by_degree.items())}}
    if args.gens:
        report["generators"] = [format_polynomial(g, out_names) for g in gens]
    return report


def cmd_degree(args) -> dict:
    ideal, u, _ = _model_or_file(args, args.prime)
    report = {"u": list(u.entries)}
    if args.bound:
        from .groebner import dim_degree
        dim, deg = dim_degree(ideal)
        codim = ideal.nvars - 1 - dim
        report["bound"] = degree_bound(deg, codim, u)
    else:
        report["degree"] = distortion_degree(ideal, u, max_pairs=args.max_pairs)
    return report


def cmd_cayley(args) -> dict:
    if not args.model or not args.config:
        raise ComputationError("cayley needs --model and --config")
    cfg = model_config(ModelId(args.model), args.config)
    A = cayley_parametrization(cfg)
    report = {"r": cfg.r, "exponent_matrix": [list(row) for row in A]}
    if args.gens:
        I = cayley_ideal(cfg)
        names = default_names(I.nvars)
        report["generators"] = [format_polynomial(g, names)
                                for g in I.generators]
    if cfg.r == 2:
        vw = iterated_decomposition(cfg)
        if vw is not None:
            v, w = vw
            report["iterated"] = {"v": list(v), "w": [list(x) for x in w]}
    return report


def _load_correspondences(path: str) -> list[Correspondence]:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ComputationError(f"cannot read correspondences: {exc}")
    try:
        return [Correspondence(tuple(d["U1"]), tuple(d["U2"])) for d in data]
    except (KeyError, TypeError) as exc:
        raise ComputationError(f"bad correspondence record: {exc}")


def cmd_solve(args) -> dict:
    corrs = _load_correspondences(args.corrs)
    tmpl = (EliminationTemplate.from_json(open(args.template).read())
            if args.template else build_template())
    cands = solve(corrs, tmpl)
    n_real, n_f = count_real(cands)
    out = []
    for c in cands:
        rec = {"gamma": [[g.real, g.imag] for g in c.gamma],
               "residual": c.residual, "is_real": c.is_real}
        if c.is_real:
            rec["lambda"] = c.lam
            rec["f_squared"] = c.f_squared
            rec["F"] = c.F.tolist()
        out.append(rec)
    return {"n_candidates": len(cands), "n_real": n_real,
            "n_real_f": n_f, "candidates": out}


def cmd_template(args) -> dict:
    tmpl = build_template(validate=not args.no_validate, prune=args.prune,
                          prime=args.prime, seed=args.seed)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(tmpl.to_json())
    return {"version": tmpl.version, "rows": tmpl.n_rows,
            "cols": tmpl.n_cols, "basis_size": len(tmpl.basis),
            "out": args.out}


def cmd_simulate(args) -> dict:
    cfg = SceneConfig(n_trials=args.trials, noise_sigma_px=args.noise,
                      motion=args.motion, seed=args.seed)
    stats = run_experiment(cfg)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(stats.to_json())
    if args.csv:
        stats.write_csv(args.csv)
    return json.loads(stats.to_json())


# ---------------------------------------------------------------------------
# dispatcher
# ---------------------------------------------------------------------------

def _add_common(p, model=False, ideal=False):
    p.add_argument("--prime", type=int, default=30011)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--json", action="store_true")
    p.add_argument("--max-pairs", type=int, default=DEFAULT_MAX_PAIRS)
    if model:
        p.add_argument("--model",
                       choices=[m.value for m in ModelId], default=None)
        p.add_argument("--config", default=None)
    if ideal:
        p.add_argument("--ideal", default=None)
        p.add_argument("--u", default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="distvar", description=__doc__)
    ap.add_argument("--version", action="version",
                    version=f"distvar {__version__} (template {TEMPLATE_VERSION})")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("model", help="camera model info")
    _add_common(p, model=True)
    p.set_defaults(fn=cmd_model)

    p = sub.add_parser("distort", help="distortion ideal generators")
    _add_common(p, model=True, ideal=True)
    p.add_argument("--gens", action="store_true")
    p.set_defaults(fn=cmd_distort)

    p = sub.add_parser("degree", help="distortion degree or bound")
    _add_common(p, model=True, ideal=True)
    p.add_argument("--bound", action="store_true")
    p.set_defaults(fn=cmd_degree)

    p = sub.add_parser("cayley", help="multi-parameter Cayley data")
    _add_common(p, model=True)
    p.add_argument("--gens", action="store_true")
    p.set_defaults(fn=cmd_cayley)

    p = sub.add_parser("solve", help="run the minimal solver")
    _add_common(p)
    p.add_argument("--corrs", required=True)
    p.add_argument("--template", default=None)
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("template", help="build the elimination template")
    _add_common(p)
    p.add_argument("--out", default=None)
    p.add_argument("--prune", action="store_true")
    p.add_argument("--no-validate", action="store_true")
    p.set_defaults(fn=cmd_template)

    p = sub.add_parser("simulate", help="Monte Carlo experiment")
    _add_common(p)
    p.add_argument("--trials", type=int, default=20000)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--motion", choices=["generic", "sideways"],
                   default="generic")
    p.add_argument("--out", default=None)
    p.add_argument("--csv", default=None)
    p.set_defaults(fn=cmd_simulate)
    return ap


def _print_report(report: dict, as_json: bool) -> None:
    if as_json:
        json.dump(report, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return
    for key, value in report.items():
        if isinstance(value, list) and value and isinstance(value[0], str):
            print(f"{key}:")
            for item in value:
                print(f"  {item}")
        else:
            print(f"{key}: {value}")


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        report = args.fn(args)
    except (ComputationError, BudgetError, DegenerateDataError,
            TemplateError, ValueError, np.linalg.LinAlgError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    _print_report(report, args.json)
    return 0


if __name__ == "__main__":
    sys.exit(main())
