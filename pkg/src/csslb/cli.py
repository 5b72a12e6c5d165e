"""Command line entry point: ``csslb <command> ...``.

Exit status is 0 on success, 1 when a check fails (infeasible parameters,
a failed lemma check, or a simulated curve that dips below its Fano bound)
and 2 for bad arguments.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .bounds import SETTINGS, bound_report, count_noiseless_outputs, mi_bound_onebit, mi_bound_std_noiseless
from .ensembles import F2, F3, Ensemble
from .errors import ParameterError, TooLargeError
from .graph_model import WgmModel, WgmParams, enumerate_supports, supports_to_json, validate_requirements
from .harness.config import load_config, model_from_mapping
from .harness.experiment import DEFAULT_EPS_F3, phase_curve
from .harness.lemmas import LemmaBundle, verify_lemmas
from .harness.mi_oracles import empirical_mi_noiseless_std, empirical_mi_onebit

MODEL_KEYS = ("model", "d", "s", "g", "B", "rho", "arity", "J", "N", "K", "isolated_vertices")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _wgm_args(p: argparse.ArgumentParser, required: bool = True):
    for k in ("d", "s", "g", "B", "rho"):
        p.add_argument(f"--{k}", type=int, required=required)


def _model_args(p: argparse.ArgumentParser):
    p.add_argument("--model", choices=("wgm", "tree", "block", "regular"), default="wgm")
    _wgm_args(p, required=False)
    p.add_argument("--arity", type=int, default=2)
    for k in ("J", "N", "K"):
        p.add_argument(f"--{k}", type=int)
    p.add_argument("--isolated-vertices", dest="isolated_vertices", action="store_true",
                   help="let single vertices count as forest components")


def _model(args):
    m = {k: getattr(args, k) for k in MODEL_KEYS if getattr(args, k, None) is not None}
    m["isolated_vertices"] = str(bool(args.isolated_vertices))
    return model_from_mapping(m)


def cmd_validate(args) -> int:
    rep = validate_requirements(WgmParams(args.d, args.s, args.g, args.B, args.rho))
    sys.stdout.write(_dump(rep.to_dict()))
    return 0 if rep.ok else 1


def cmd_enumerate(args) -> int:
    model = _model(args)
    supports = enumerate_supports(model, cap=args.cap)
    if args.graph_out:
        if not isinstance(model, WgmModel):
            raise ParameterError("--graph-out needs a wgm model")
        with open(args.graph_out, "w") as fh:
            fh.write(model.graph.to_json())
    sys.stdout.write(supports_to_json(supports))
    return 0


def cmd_bounds(args) -> int:
    model = _model(args)
    log_card = None
    if args.exact:
        # F1 and F2 have the same size; F3 size does not depend on eps
        fam = F2() if args.setting in ("std_noisy", "std_noiseless") else F3(DEFAULT_EPS_F3)
        log_card = math.log(Ensemble(fam, model).size)
    rep = bound_report(args.setting, model, args.n, log_card, args.C0, args.eps)
    sys.stdout.write(_dump(rep.to_dict()))
    return 0


def cmd_simulate(args) -> int:
    exp = load_config(args.config)
    table = phase_curve(exp.scenario, exp.n_grid, exp.trials, args.workers)
    text = table.to_csv()
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    bad = table.violations()
    for r in bad:
        print(f"n={r.n}: err_rate {r.err_rate} + 3*half-width below Fano bound {r.fano_bound}", file=sys.stderr)
    return 1 if bad else 0


def cmd_verify(args) -> int:
    bundle = LemmaBundle(wgm=WgmParams(args.d, args.s, args.g, args.B, args.rho), seed=args.seed)
    rep = verify_lemmas(bundle)
    sys.stdout.write(_dump(rep.to_dict()))
    return 0 if rep.passed else 1


def cmd_mi(args) -> int:
    model = _model(args)
    rng = np.random.default_rng(args.seed)
    out = {"oracle": args.oracle, "n": args.n}
    if args.oracle == "onebit":
        e = Ensemble(F3(args.eps), model)
        out["mi"] = empirical_mi_onebit(e, args.n, args.sigma, args.x_samples, rng)
        out["bound"] = mi_bound_onebit(args.n)
    else:
        e = Ensemble(F2(), model)
        out["mi"] = empirical_mi_noiseless_std(e, args.n, args.x_samples, rng)
        out["count_bound"] = args.n * math.log(count_noiseless_outputs(model.s))
        out["bound"] = mi_bound_std_noiseless(args.n, model.s)
    out["log_card"] = math.log(e.size)
    sys.stdout.write(_dump(out))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="csslb", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check WGM parameters against the construction requirements")
    _wgm_args(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("enumerate", help="list every support of a model as JSON")
    _model_args(p)
    p.add_argument("--cap", type=int, default=10**7)
    p.add_argument("--graph-out", help="also write the construction graph JSON here")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("bounds", help="mutual-information and Fano bounds for a setting")
    p.add_argument("--setting", choices=SETTINGS, required=True)
    _model_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--C0", type=float, default=1.0)
    p.add_argument("--eps", type=float, default=0.9448)
    p.add_argument("--exact", action="store_true", help="use ln|F| of the enumerated ensemble")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("simulate", help="Monte Carlo error curve from a config file, as CSV")
    p.add_argument("config")
    p.add_argument("--out")
    p.add_argument("--workers", type=int, help="defaults to CSSLB_THREADS or 1")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run the lemma checks and print a JSON report")
    p.add_argument("--d", type=int, default=6)
    p.add_argument("--s", type=int, default=4)
    p.add_argument("--g", type=int, default=2)
    p.add_argument("--B", type=int, default=2)
    p.add_argument("--rho", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mi", help="empirical mutual information on a tiny ensemble")
    p.add_argument("--oracle", choices=("onebit", "noiseless"), required=True)
    _model_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma", type=float, default=0.0)
    p.add_argument("--eps", type=float, default=DEFAULT_EPS_F3, help="F3 offset (onebit oracle)")
    p.add_argument("--x-samples", dest="x_samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_mi)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, TooLargeError) as exc:
        print(f"csslb {args.command}: {exc}", file=sys.stderr)
        return 2
