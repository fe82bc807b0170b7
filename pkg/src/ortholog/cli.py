"""Command line front end.

Every verb reads matrices in the shared file format (``-`` for stdin) and
prints one JSON object, except ``geodesic --samples k`` which prints CSV.
Exit status: 0 on success, 2 on precondition/domain errors (a JSON
``{"error": {"code", "message"}}`` object is printed), 1 on I/O or parse
errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import geo, loglattice, plog
from .canon import canonical_form, has_minus_one
from .errors import OrthologError
from .matcore import Tolerances, exp_oracle, pfaffian
from .matio import load_matrix, matrix_to_obj
from .skewsvd import decompose, eig_summary

TOL_SCALE_ENV = "ORTHOLOG_TOL_SCALE"


class InputError(Exception):
    """Unreadable or unparsable input; maps to exit status 1."""


def _tolerances(args, n: int) -> Tolerances:
    scale = float(os.environ.get(TOL_SCALE_ENV, "1") or 1)
    tol = Tolerances.for_order(n, scale)
    overrides = {
        "orth_tol": args.tol_orth,
        "cluster_tol": args.tol_cluster,
        "pi_tol": args.tol_pi,
        "recon_tol": args.tol_recon,
    }
    return Tolerances(**{k: (v if v is not None else getattr(tol, k)) for k, v in overrides.items()})


def _load(path, stdin):
    try:
        return load_matrix(path, stdin)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except (ValueError, OrthologError) as exc:
        raise InputError(f"cannot parse {path}: {exc}") from None


def _mats(Ms):
    return [matrix_to_obj(M) for M in Ms]


def _floats(xs):
    return [float(x) for x in xs]


# -- verbs -----------------------------------------------------------------


def cmd_exp(args, stdin):
    A = _load(args.matrix, stdin)
    return {"exp": matrix_to_obj(exp_oracle(A))}


def cmd_svd_skew(args, stdin):
    A = _load(args.matrix, stdin)
    system = decompose(A, _tolerances(args, A.shape[0]))
    rank, tr_sq = eig_summary(system)
    return {
        "zetas": _floats(system.zetas),
        "mults": list(system.mults),
        "factors": _mats(system.factors),
        "rank": rank,
        "tr_sq": tr_sq,
    }


def cmd_pfaffian(args, stdin):
    A = _load(args.matrix, stdin)
    return {"pfaffian": pfaffian(A, _tolerances(args, A.shape[0]))}


def cmd_canon(args, stdin):
    R = _load(args.matrix, stdin)
    tol = _tolerances(args, R.shape[0])
    cf = canonical_form(R, tol)
    flag, mult = has_minus_one(cf, tol)
    return {
        "thetas": _floats(cf.thetas),
        "mults": list(cf.mults),
        "fixed_dim": cf.fixed_dim,
        "K": matrix_to_obj(cf.K),
        "minus_one": flag,
        "minus_one_multiplicity": mult,
    }


def cmd_plog(args, stdin):
    R = _load(args.matrix, stdin)
    desc = plog.principal_log(R, _tolerances(args, R.shape[0]))
    out = {
        "structure": desc.structure.kind,
        "mu": desc.structure.mu,
        "dim": desc.structure.dim,
        "components": desc.structure.components,
        "B": matrix_to_obj(desc.B),
        "logs": _mats(plog.principal_logs_of(desc)),
        "thetas": _floats(desc.system.zetas),
        "mults": list(desc.system.mults),
        "tr_sq": desc.tr_sq,
    }
    if desc.b1_squared is not None:
        out["b1_squared"] = matrix_to_obj(desc.b1_squared)
    return out


def cmd_sample_aplog(args, stdin):
    R = _load(args.matrix, stdin)
    tol = _tolerances(args, R.shape[0])
    samples = plog.sample_aplog(R, args.count, args.seed, tol)
    desc = plog.principal_log(R, tol)
    signs = [plog.classify_component(plog.w_block(S, desc), tol) for S in samples]
    return {"seed": args.seed, "samples": _mats(samples), "components": signs}


def cmd_logs(args, stdin):
    R = _load(args.matrix, stdin)
    logs = loglattice.enumerate_logs(R, args.radius, _tolerances(args, R.shape[0]))
    return {
        "radius": args.radius,
        "count": len(logs),
        "logs": [
            {"coeffs": list(L.coeffs), "norm": L.norm, "matrix": matrix_to_obj(L.matrix)}
            for L in logs
        ],
    }


def cmd_verify_log(args, stdin):
    R = _load(args.rotation, stdin)
    A = _load(args.log, stdin)
    res = loglattice.verify_general_form(R, A, _tolerances(args, R.shape[0]))
    return {
        "ok": res.ok,
        "reason": res.reason,
        "base": None if res.base is None else matrix_to_obj(res.base),
        "ints": res.ints,
    }


def cmd_dist(args, stdin):
    G = _load(args.G, stdin)
    H = _load(args.H, stdin)
    return {"distance": geo.distance(G, H, _tolerances(args, G.shape[0]))}


def cmd_geodesic(args, stdin):
    G = _load(args.G, stdin)
    A = _load(args.A, stdin)
    tol = _tolerances(args, G.shape[0])
    arc = geo.geodesic(G, A, tol)
    fmt = args.format or ("csv" if args.samples else "json")
    if fmt == "csv":
        k = args.samples or 2
        if k < 2:
            raise ValueError("--samples must be at least 2")
        n = G.shape[0]
        header = ["t"] + [f"m{i}_{j}" for i in range(n) for j in range(n)]
        lines = [",".join(header)]
        for t in np.linspace(args.t_min, args.t_max, k):
            row = [float(t)] + [float(x) + 0.0 for x in arc(float(t)).ravel()]
            lines.append(",".join(repr(x) for x in row))
        return "\n".join(lines) + "\n"
    out = {"is_principal": arc.is_principal, "length": arc.length(), "zetas": _floats(arc.system.zetas)}
    if len(arc.system):
        per = geo.classify_periodicity(arc, tol.recon_tol, args.max_den)
        out["periodicity"] = {"kind": per.kind, "period": per.period}
    else:
        out["periodicity"] = {"kind": "Constant", "period": None}
    out["end"] = matrix_to_obj(arc(1.0))
    return out


def cmd_classify_pair(args, stdin):
    G = _load(args.G, stdin)
    H = _load(args.H, stdin)
    pc = geo.classify_pair(G, H, _tolerances(args, G.shape[0]))
    return {
        "same_component": pc.same_component,
        "weakly_diametral": pc.weakly_diametral,
        "diametral": pc.diametral,
        "grassmann_signature": None if pc.grassmann_signature is None else list(pc.grassmann_signature),
        "distance": pc.distance,
        "diameter": geo.diameter(G.shape[0]),
    }


def cmd_curvature(args, stdin):
    ricci, scalar = geo.einstein_constants(args.n)
    out = {"n": args.n, "ricci_coeff": ricci, "scalar": scalar}
    if args.plane:
        if len(args.plane) != 2:
            raise ValueError("curvature takes either no plane or exactly two matrices X Y")
        X = _load(args.plane[0], stdin)
        Y = _load(args.plane[1], stdin)
        if X.shape[0] != args.n:
            raise ValueError("plane matrices must have order n")
        out["sectional"] = geo.sectional_curvature(X, Y, _tolerances(args, args.n))
    return out


def cmd_diameter(args, stdin):
    return {"n": args.n, "diameter": geo.diameter(args.n)}


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-orth", type=float)
    common.add_argument("--tol-cluster", type=float)
    common.add_argument("--tol-pi", type=float)
    common.add_argument("--tol-recon", type=float)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"))

    parser = argparse.ArgumentParser(
        prog="ortholog",
        description="Skew-symmetric logarithms of rotations and geodesics on O(n).",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, func, help_, *positionals):
        p = sub.add_parser(name, parents=[common], help=help_)
        for pos in positionals:
            p.add_argument(pos)
        p.set_defaults(func=func)
        return p

    verb("exp", cmd_exp, "matrix exponential", "matrix")
    verb("svd-skew", cmd_svd_skew, "SVD system of a skew matrix", "matrix")
    verb("pfaffian", cmd_pfaffian, "Pfaffian of an even-order skew matrix", "matrix")
    verb("canon", cmd_canon, "canonical rotation-block form", "matrix")
    verb("plog", cmd_plog, "principal logarithm and its structure", "matrix")
    p = verb("sample-aplog", cmd_sample_aplog, "sample principal logarithms", "matrix")
    p.add_argument("--count", type=int, default=8)
    p.add_argument("--seed", type=int, required=True)
    p = verb("logs", cmd_logs, "enumerate logarithms of a generic rotation", "matrix")
    p.add_argument("--radius", type=float, required=True)
    verb("verify-log", cmd_verify_log, "check a claimed logarithm", "rotation", "log")
    verb("dist", cmd_dist, "Riemannian distance", "G", "H")
    p = verb("geodesic", cmd_geodesic, "geodesic G exp(tA)", "G", "A")
    p.add_argument("--samples", type=int)
    p.add_argument("--t-min", type=float, default=0.0)
    p.add_argument("--t-max", type=float, default=1.0)
    p.add_argument("--max-den", type=int, default=1000)
    verb("classify-pair", cmd_classify_pair, "(weakly) diametral pair test", "G", "H")
    p = verb("curvature", cmd_curvature, "Einstein constants and sectional curvature")
    p.add_argument("n", type=int)
    p.add_argument("plane", nargs="*", help="optional skew matrices X Y")
    p = verb("diameter", cmd_diameter, "diameter of O(n)")
    p.add_argument("n", type=int)
    return parser


def _emit(text: str, out_path, stdout):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def main(argv=None, stdin=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args, stdin)
    except InputError as exc:
        stdout.write(json.dumps({"error": {"code": "io", "message": str(exc)}}) + "\n")
        return 1
    except (OrthologError, ValueError) as exc:
        code = getattr(exc, "code", "domain")
        stdout.write(json.dumps({"error": {"code": code, "message": str(exc)}}) + "\n")
        return 2
    text = result if isinstance(result, str) else json.dumps(result) + "\n"
    try:
        _emit(text, args.out, stdout)
    except OSError as exc:
        stdout.write(json.dumps({"error": {"code": "io", "message": str(exc)}}) + "\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
