"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .basis import complete_frame, gell_mann_basis, orthonormality_report
from .bloch import bloch_to_density, density_to_bloch, state_overlap
from .entangle import (
    EntangledSpec, build_density, decompose, interference_components, reduced_states,
)
from .errors import ExtBlochError, InputError, VerificationError
from .jsonio import bloch_doc, complex_matrix, density_doc, dumps, load_state, spec_doc
from .matrix import DensityOperator, partial_trace, projector
from .measure import sample_outcomes, simplex_from_basis
from .verify import FAULTS, run_suites

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _default_tol():
    raw = os.environ.get("EXTBLOCH_TOL")
    if raw is None:
        return 1e-9
    try:
        return float(raw)
    except ValueError:
        raise InputError(f"EXTBLOCH_TOL={raw!r} is not a number") from None


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--tol", type=float, default=None, help="validation tolerance (default 1e-9 or $EXTBLOCH_TOL)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", default="-", help="output path, '-' for stdout")
    return p


def _state_flags():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--state-file", action="append", default=None, help="JSON state document")
    p.add_argument("--na", type=int, default=2)
    p.add_argument("--nb", type=int, default=2)
    p.add_argument("--a1", type=float, default=None, help="amplitude of the first term; a2 = sqrt(1 - a1^2)")
    p.add_argument("--alpha", type=float, default=None, help="relative phase alpha2 - alpha1")
    p.add_argument("--alpha1", type=float, default=None)
    p.add_argument("--alpha2", type=float, default=None)
    p.add_argument("--degrees", action="store_true", help="angles are given in degrees")
    return p


def build_parser():
    common, state = _common(), _state_flags()
    parser = _Parser(prog="extbloch", description="Extended Bloch representation toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generators", parents=[common], help="list SU(N) generators")
    g.add_argument("n", type=int)

    sub.add_parser("convert", parents=[common, state], help="density <-> Bloch vector (Gell-Mann basis)")
    sub.add_parser("decompose", parents=[common, state], help="tripartite decomposition of an entangled state")
    sub.add_parser("reduce", parents=[common, state], help="reduced sub-entity states")

    m = sub.add_parser("measure", parents=[common, state], help="simulate a projective measurement")
    m.add_argument("--shots", type=int, default=100_000)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--target", choices=("joint", "A", "B"), default="joint",
                   help="which system of an entangled spec to measure")
    m.add_argument("--basis", choices=("canonical", "adapted"), default="canonical",
                   help="eigenbasis: canonical vectors or the spec's (psi, phi) frame")
    m.add_argument("--workers", type=int, default=1)

    v = sub.add_parser("verify", parents=[common], help="run randomised invariant suites")
    v.add_argument("--dims", default="2,3,4", help="comma-separated dimensions")
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--inject-fault", choices=FAULTS, default="none", help="test mode: corrupt a convention")

    sub.add_parser("overlap", parents=[common, state], help="Tr(D1 D2) from two state files")
    return parser


def _angle(x, degrees):
    return math.radians(x) if degrees else x


def _spec_from_flags(args, tol):
    a1 = 1.0 / math.sqrt(2.0) if args.a1 is None else args.a1
    alpha1 = 0.0 if args.alpha1 is None else _angle(args.alpha1, args.degrees)
    if args.alpha2 is not None:
        alpha2 = _angle(args.alpha2, args.degrees)
    else:
        alpha2 = alpha1 + (0.0 if args.alpha is None else _angle(args.alpha, args.degrees))
    if not (0.0 <= a1 <= 1.0):
        raise InputError(f"--a1 must lie in [0, 1], got {a1}")
    return EntangledSpec(args.na, args.nb, a1, math.sqrt(max(0.0, 1.0 - a1 * a1)), alpha1, alpha2, tol=tol)


def _read_doc(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _states(args, tol):
    if args.state_file:
        return [load_state(_read_doc(p), tol) for p in args.state_file]
    return [("entangled", _spec_from_flags(args, tol))]


def _one_state(args, tol):
    states = _states(args, tol)
    if len(states) != 1:
        raise InputError("expected exactly one --state-file")
    return states[0]


def _vec(x):
    return [float(v) for v in np.asarray(x)]


def _fmt(x):
    return f"{x: .12g}"


def _labelled(pairs):
    return [{"pair": list(p), "value": v} for p, v in pairs]


# -- commands: each returns (report, text lines, exit code) -------------------

def cmd_generators(args, tol):
    basis = gell_mann_basis(args.n)
    rep = orthonormality_report(basis.generators)
    worst = max(rep.values())
    report = {
        "command": "generators", "n": basis.n, "count": len(basis),
        "generators": [{"index": k + 1, "label": str(lab), "matrix": complex_matrix(g)}
                       for k, (lab, g) in enumerate(zip(basis.labels, basis.generators))],
        "check": {**rep, "max_deviation": worst, "passed": worst < 1e-12},
    }
    lines = [f"SU({basis.n}) generalized Gell-Mann basis: {len(basis)} generators"]
    for k, (lab, g) in enumerate(zip(basis.labels, basis.generators)):
        lines.append(f"[{k + 1}] {lab}")
        lines += ["    " + "  ".join(_cfmt(z) for z in row) for row in g]
    lines.append(f"check: max deviation {worst:.3g} ({'< 1e-12' if worst < 1e-12 else 'FAILED'})")
    return report, lines, EXIT_OK if worst < 1e-12 else EXIT_VERIFY


def _cfmt(z):
    return f"{z.real:+.4f}{z.imag:+.4f}i"


def cmd_convert(args, tol):
    kind, obj = _one_state(args, tol)
    if kind == "bloch":
        basis = gell_mann_basis(obj.n)
        d = bloch_to_density(obj, basis)
        DensityOperator(d, tol)  # a Bloch vector outside the state region is an input error here
        report = {"command": "convert", "direction": "bloch->density", "state": density_doc(d)}
        lines = ["density operator:"] + ["  " + "  ".join(_cfmt(z) for z in row) for row in d]
        return report, lines, EXIT_OK
    if kind == "entangled":
        d = build_density(obj).matrix
    elif kind == "vector":
        d = projector(obj)
    else:
        d = obj.matrix
    basis = gell_mann_basis(d.shape[0])
    r = density_to_bloch(d, basis)
    back = float(np.max(np.abs(bloch_to_density(r, basis) - d)))
    report = {"command": "convert", "direction": "density->bloch", "state": bloch_doc(r),
              "norm": r.norm, "round_trip_residual": back}
    lines = [f"Bloch vector (Gell-Mann, N={r.n}):", "  " + " ".join(_fmt(x) for x in r.components),
             f"norm {r.norm:.12g}", f"round-trip residual {back:.3g}"]
    return report, lines, EXIT_OK if back <= tol else EXIT_VERIFY


def _require_spec(kind, obj, command):
    if kind != "entangled":
        raise InputError(f"{command} needs an entangled-state specification, got a {kind!r} document")
    return obj


def cmd_decompose(args, tol):
    spec = _require_spec(*_one_state(args, tol), "decompose")
    dec = decompose(spec)
    full = density_to_bloch(build_density(spec), dec.basis).components
    recon = float(np.max(np.abs(dec.assembled() - full)))
    norm_res = dec.norm_identity_residual()
    try:
        comps = interference_components(dec, tol=tol)
        eq8 = {"passed": True, "components": _labelled(comps.items())}
    except VerificationError as exc:
        eq8 = {"passed": False, "error": str(exc)}
    c = dec.coefficients
    report = {
        "command": "decompose", "spec": spec_doc(spec), "classification": dec.classification,
        "coefficients": {"d_a": c.d_a, "d_b": c.d_b, "d_ab": c.d_ab},
        "ra_bar": _vec(dec.ra_bar), "rb_bar": _vec(dec.rb_bar),
        "rab_bar": _labelled(dec.nonzero("rab_bar")),
        "r_int": _labelled(dec.nonzero("r_int")),
        "r_corr": _labelled(dec.nonzero("r_corr")),
        "r_corr_norm": float(np.linalg.norm(dec.r_corr)),
        "reconstruction_residual": recon, "norm_identity_residual": norm_res,
        "interference_check": eq8,
    }
    lines = [
        f"state: N_A={spec.na} N_B={spec.nb} a1={spec.a1:.12g} a2={spec.a2:.12g} alpha={spec.alpha:.12g}",
        f"classification: {dec.classification}",
        f"d_A={c.d_a:.12g} d_B={c.d_b:.12g} d_AB={c.d_ab:.12g}",
        "rA_bar:" + " ".join(_fmt(x) for x in dec.ra_bar.components),
        "rB_bar:" + " ".join(_fmt(x) for x in dec.rb_bar.components),
    ]
    for name in ("rab_bar", "r_int", "r_corr"):
        entries = dec.nonzero(name)
        lines.append(f"{name} nonzero: " + (", ".join(f"{p}={v:.12g}" for p, v in entries) or "none"))
    lines += [f"|r_corr| = {np.linalg.norm(dec.r_corr):.12g}",
              f"reconstruction residual {recon:.3g}", f"norm identity residual {norm_res:.3g}",
              "interference check: " + ("pass" if eq8["passed"] else "FAIL " + eq8["error"])]
    ok = recon <= tol and norm_res <= tol and eq8["passed"]
    return report, lines, EXIT_OK if ok else EXIT_VERIFY


def cmd_reduce(args, tol):
    spec = _require_spec(*_one_state(args, tol), "reduce")
    da, db = reduced_states(spec)
    d = build_density(spec).matrix
    resid = float(max(np.max(np.abs(partial_trace(d, spec.na, spec.nb, "B") - da.matrix)),
                      np.max(np.abs(partial_trace(d, spec.na, spec.nb, "A") - db.matrix))))
    ra = density_to_bloch(da, gell_mann_basis(spec.na))
    rb = density_to_bloch(db, gell_mann_basis(spec.nb))
    report = {"command": "reduce", "spec": spec_doc(spec),
              "state_a": density_doc(da.matrix), "state_b": density_doc(db.matrix),
              "bloch_a": _vec(ra), "bloch_b": _vec(rb), "partial_trace_residual": resid}
    lines = ["D^A:"] + ["  " + "  ".join(_cfmt(z) for z in row) for row in da.matrix]
    lines += ["D^B:"] + ["  " + "  ".join(_cfmt(z) for z in row) for row in db.matrix]
    lines += ["Bloch A (Gell-Mann):" + " ".join(_fmt(x) for x in ra.components),
              "Bloch B (Gell-Mann):" + " ".join(_fmt(x) for x in rb.components),
              f"partial trace residual {resid:.3g}"]
    return report, lines, EXIT_OK if resid <= max(tol, 1e-12) else EXIT_VERIFY


def _measurement_target(args, tol):
    kind, obj = _one_state(args, tol)
    if kind == "entangled":
        if args.target == "A":
            d, frame = reduced_states(obj)[0].matrix, complete_frame([obj.psi_a, obj.phi_a])
        elif args.target == "B":
            d, frame = reduced_states(obj)[1].matrix, complete_frame([obj.psi_b, obj.phi_b])
        else:
            d = build_density(obj).matrix
            frame = np.kron(complete_frame([obj.psi_a, obj.phi_a]), complete_frame([obj.psi_b, obj.phi_b]))
    else:
        if args.target != "joint":
            raise InputError("--target A/B requires an entangled specification")
        if args.basis == "adapted":
            raise InputError("--basis adapted requires an entangled specification")
        if kind == "bloch":
            d = bloch_to_density(obj, gell_mann_basis(obj.n))
        elif kind == "vector":
            d = projector(obj)
        else:
            d = obj.matrix
        frame = None
    d = DensityOperator(d, tol).matrix
    n = d.shape[0]
    eig = np.eye(n) if args.basis == "canonical" or frame is None else frame
    return d, eig


def cmd_measure(args, tol):
    if args.shots < 1:
        raise InputError("--shots must be >= 1")
    if args.workers < 1:
        raise InputError("--workers must be >= 1")
    d, eig = _measurement_target(args, tol)
    basis = gell_mann_basis(d.shape[0])
    s = simplex_from_basis(eig, basis)
    r = density_to_bloch(d, basis)
    rep = sample_outcomes(r, s, args.shots, args.seed, workers=args.workers, tol=tol)
    report = {
        "command": "measure", "n": s.n, "shots": rep.shots, "seed": rep.seed, "rng": rep.algorithm,
        "born_trace": _vec(rep.born), "born_barycentric": _vec(rep.lambdas),
        "route_gap": rep.route_gap, "counts": [int(c) for c in rep.counts],
        "frequencies": _vec(rep.frequencies), "max_deviation": rep.max_deviation,
    }
    lines = [f"N={s.n} shots={rep.shots} seed={rep.seed} rng={rep.algorithm}",
             "outcome  born(trace)       born(simplex)     count      frequency"]
    for k in range(s.n):
        lines.append(f"{k:7d}  {rep.born[k]:.12f}  {rep.lambdas[k]:.12f}  {rep.counts[k]:9d}  {rep.frequencies[k]:.6f}")
    lines += [f"route gap {rep.route_gap:.3g}", f"max deviation {rep.max_deviation:.6f}"]
    return report, lines, EXIT_OK if rep.route_gap <= tol else EXIT_VERIFY


def cmd_verify(args, tol):
    try:
        dims = [int(x) for x in args.dims.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"--dims must be comma-separated integers, got {args.dims!r}") from None
    results = run_suites(dims, args.trials, args.seed, args.inject_fault)
    ok = all(r.passed for r in results)
    report = {"command": "verify", "dims": dims, "trials": args.trials, "seed": args.seed,
              "fault": args.inject_fault, "passed": ok, "suites": [r.as_dict() for r in results]}
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name:<18} worst={r.worst:.3g} threshold={r.threshold:.0e} cases={r.cases}"
             for r in results]
    lines.append("all suites passed" if ok else "verification FAILED")
    return report, lines, EXIT_OK if ok else EXIT_VERIFY


def _as_density(kind, obj):
    if kind == "entangled":
        return build_density(obj).matrix
    if kind == "vector":
        return projector(obj)
    if kind == "bloch":
        return bloch_to_density(obj, gell_mann_basis(obj.n))
    return obj.matrix


def cmd_overlap(args, tol):
    if not args.state_file or len(args.state_file) != 2:
        raise InputError("overlap needs exactly two --state-file arguments")
    d1, d2 = (DensityOperator(_as_density(*st), tol).matrix for st in _states(args, tol))
    if d1.shape != d2.shape:
        raise InputError("states have different dimensions")
    n = d1.shape[0]
    basis = gell_mann_basis(n)
    r1, r2 = density_to_bloch(d1, basis), density_to_bloch(d2, basis)
    geo = state_overlap(r1, r2, n)
    exact = float(np.trace(d1 @ d2).real)
    report = {"command": "overlap", "n": n, "overlap": geo, "trace_overlap": exact, "residual": abs(geo - exact)}
    lines = [f"Tr(D1 D2) = {geo:.15g} (Bloch) / {exact:.15g} (trace), residual {abs(geo - exact):.3g}"]
    return report, lines, EXIT_OK if abs(geo - exact) <= tol else EXIT_VERIFY


COMMANDS = {
    "generators": cmd_generators, "convert": cmd_convert, "decompose": cmd_decompose,
    "reduce": cmd_reduce, "measure": cmd_measure, "verify": cmd_verify, "overlap": cmd_overlap,
}


def _write(text, path):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = _default_tol() if args.tol is None else args.tol
        if not tol > 0:
            raise InputError("--tol must be positive")
        report, lines, code = COMMANDS[args.command](args, tol)
        text = dumps(report) if args.format == "json" else "\n".join(lines) + "\n"
        _write(text, args.output)
    except VerificationError as exc:
        print(f"extbloch: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ExtBlochError, ValueError) as exc:
        print(f"extbloch: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return code


if __name__ == "__main__":
    sys.exit(main())
