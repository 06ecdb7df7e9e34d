"""``qre`` command line: build R-matrices, verify identities, fuse and project.

Exit codes: 0 every identity holds, 1 some identity is violated (witness
printed), 2 malformed input.  With ``QRE_Q_EVAL`` set to a rational, each
residual is also evaluated at that point and disagreements are reported on
stderr; the symbolic verdict decides the exit code.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import io
from .ansatz import ANSATZES, ansatz_families, solve_ansatz
from .braid import braid_residuals, build_cylinder_rep
from .errors import QREError
from .quantum import gl_R, hecke_projectors, s_hat
from .rekit import (
    REData,
    REMatrix,
    appendix_identities,
    check_re_data,
    extend_family,
    family_from_R,
    fuse,
    fused_label,
    q_solution,
    restrict,
    verify_compat,
    verify_re,
    verify_ybe,
)
from .ring import parse_rat
from .tensor import embed

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class Session:
    inputs: list = field(default_factory=list)
    out: str | None = None
    q0: Fraction | None = None
    verbosity: int = 0

    def __post_init__(self):
        if self.q0 is not None and self.q0 == 0:
            raise InputError("QRE_Q_EVAL must be nonzero")

    def report(self, residuals) -> int:
        code = EXIT_OK
        for res in residuals:
            line = f"{res.name or 'identity'}: {'ok' if res.ok else 'FAIL'}"
            if res.witness is not None:
                row, col, v = res.witness
                line += f"  witness ({row}, {col}) = {v}"
            if self.q0 is not None:
                numeric = res.cross_check(self.q0)
                if numeric is not None:
                    line += f"  [q0={self.q0}: {'zero' if numeric else 'nonzero'}]"
                    if numeric != res.ok:
                        print(
                            f"warning: numeric check at q0={self.q0} disagrees with symbolic verdict for {res.name}",
                            file=sys.stderr,
                        )
            print(line)
            if not res.ok:
                code = EXIT_VIOLATED
        return code


def _session(args) -> Session:
    raw = os.environ.get("QRE_Q_EVAL")
    q0 = None
    if raw:
        try:
            q0 = parse_rat(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"QRE_Q_EVAL={raw!r} is not a rational: {exc}") from None
    return Session(out=getattr(args, "out", None), q0=q0, verbosity=args.verbose)


def _load(path):
    try:
        return io.read_json(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def _load_R(path):
    return io.mat_from_json(_load(path))


def _family_arg(args, label="f"):
    if getattr(args, "family", None):
        return io.family_from_json(_load(args.family))
    if getattr(args, "R", None):
        return family_from_R(_load_R(args.R), label)
    raise InputError("need --R or --family")


def _load_K(path, rep=None, default_rep="f"):
    return io.load_rematrix(_load(path), rep, default_rep)


# -- commands ---------------------------------------------------------------


def cmd_r_matrix(args, sess):
    if args.algebra != "gl":
        raise InputError(f"unsupported algebra {args.algebra!r}")
    if args.rank < 2:
        raise InputError(f"rank must be >= 2, got {args.rank}")
    io.write_json(args.out, io.mat_to_json(gl_R(args.rank)))
    return EXIT_OK


def cmd_q_solution(args, sess):
    fam = _family_arg(args, args.rep)
    K = q_solution(fam, args.rep)
    code = sess.report([verify_re(fam, K)])
    if code == EXIT_OK:
        io.write_json(args.out, io.rematrix_to_json(K))
    return code


def _verify_ybe(args, sess):
    fam = _family_arg(args)
    if args.reps:
        triples = [tuple(args.reps)]
    else:
        triples = list(product(fam.ids, repeat=3))
    return sess.report([verify_ybe(fam, *t) for t in triples])


def _verify_re(args, sess):
    K, data = _load_K(args.K, args.rep)
    if data is not None and not (args.R or args.family):
        fam = data.family
    else:
        fam = _family_arg(args, K.rep)
    return sess.report([verify_re(fam, K)])


def _load_data(args) -> REData:
    obj = _load(args.data)
    if io.classify(obj) != "redata":
        raise InputError(f"{args.data} is not an REData document")
    return io.redata_from_json(obj)


def _verify_compat(args, sess):
    data = _load_data(args)
    return sess.report([verify_compat(data, args.i, args.j)])


def _verify_data(args, sess):
    data = _load_data(args)
    results = [verify_re(data.family, data.K(i)) for i in data.triples]
    results += [verify_compat(data, i, j) for i, j in product(data.triples, repeat=2) if i != j]
    return sess.report(results)


def _verify_appendix(args, sess):
    data = _load_data(args)
    triples = [tuple(args.reps)] if args.reps else list(product(data.triples, repeat=3))
    out = []
    for t in triples:
        out.extend(appendix_identities(data, *t))
    return sess.report(out)


def cmd_braid(args, sess):
    R = _load_R(args.R)
    K, _ = _load_K(args.K, args.rep)
    shape = (K.dim,) * args.strands + (K.coeff_dim,)
    extra = []
    for path in args.tau or []:
        obj = _load(path)
        if io.classify(obj) == "mat" and io.mat_from_json(obj).nrows == K.dim**args.strands * K.coeff_dim:
            extra.append(io.mat_from_json(obj))  # already on the full legs
            continue
        Kx, _ = io.load_rematrix(obj)
        if (Kx.dim, Kx.coeff_dim) != (K.dim, K.coeff_dim):
            raise InputError(f"extra tau on dim {Kx.dim} x {Kx.coeff_dim}, expected {K.dim} x {K.coeff_dim}")
        extra.append(embed(Kx.k, [args.strands, args.strands + 1], shape))
    rep = build_cylinder_rep(R, K, args.strands, extra)
    return sess.report(braid_residuals(rep))


def cmd_verify(args, sess):
    handlers = {
        "ybe": _verify_ybe,
        "re": _verify_re,
        "compat": _verify_compat,
        "data": _verify_data,
        "appendix": _verify_appendix,
        "braid": cmd_braid,
    }
    return handlers[args.kind](args, sess)


def cmd_fuse(args, sess):
    Ki, di = _load_K(args.Ki, args.rep_i)
    Kj, dj = _load_K(args.Kj, args.rep_j)
    if args.family or args.R:
        fam = _family_arg(args, Ki.rep)
    elif di is not None:
        fam = di.family
    else:
        raise InputError("need --R or --family")
    if Kj.rep == Ki.rep and Kj != Ki:
        alias = Kj.rep + "'"
        fam = fam.alias(Kj.rep, alias)
        Kj = REMatrix(alias, Kj.coeff_dim, Kj.k)
    if Kj.rep not in fam:
        raise InputError(f"representation {Kj.rep!r} not in family")
    if Ki.coeff_dim != Kj.coeff_dim:
        raise InputError(f"coefficient dimensions differ: {Ki.coeff_dim} vs {Kj.coeff_dim}")
    data = REData(fam, {Ki.rep: Ki, Kj.rep: Kj})
    fused = fuse(data, Ki.rep, Kj.rep)
    res = check_re_data(fused)
    code = sess.report([res])
    if code == EXIT_OK:
        io.write_json(args.out, io.redata_to_json(fused))
    return code


def cmd_project(args, sess):
    R = _load_R(args.R)
    base = family_from_R(R, "f")
    label = fused_label("f", "f")
    fam = extend_family(base, "f", "f")
    K, _ = _load_K(args.K, args.rep, default_rep=label)
    if K.dim != fam.dim(label):
        raise InputError(f"K has dim {K.dim}; expected {fam.dim(label)} for the two-leg fused rep")
    K = REMatrix(label, K.coeff_dim, K.k)
    p_plus, p_minus = hecke_projectors(s_hat(R))
    p = p_plus if args.sector == "symmetric" else p_minus
    sub = f"{label}|{'sym' if args.sector == 'symmetric' else 'asym'}"
    fam0, K0 = restrict(fam, K, p, sub)
    code = sess.report([verify_re(fam0, K0)])
    if code == EXIT_OK:
        io.write_json(args.out, io.rematrix_to_json(K0))
        if args.family_out:
            io.write_json(args.family_out, io.family_to_json(fam0))
    return code


def cmd_solve(args, sess):
    R = _load_R(args.R)
    fams = ansatz_families(R, args.ansatz)
    for f in fams:
        print(f"family: {f.normalized().tolist()}")
    sols = solve_ansatz(R, args.ansatz)
    fam = family_from_R(R)
    code = sess.report([verify_re(fam, K) for K in sols])
    if args.out:
        io.write_json(args.out, {
            "ansatz": args.ansatz,
            "families": [str(f.normalized().tolist()) for f in fams],
            "solutions": [io.rematrix_to_json(K) for K in sols],
        })
    return code


# -- parser -----------------------------------------------------------------


def _add_braid_args(p):
    p.add_argument("--R", required=True, help="R-matrix (Mat JSON)")
    p.add_argument("--K", required=True, help="K-matrix (REMatrix, Mat or REData JSON)")
    p.add_argument("--rep", help="label to pick when --K is an REData")
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--tau", action="append", help="extra boundary generator (full Mat or REMatrix)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qre", description="Exact reflection-equation toolkit")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("r-matrix", help="write the fundamental R-matrix")
    p.add_argument("--algebra", default="gl", choices=["gl"])
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_r_matrix)

    p = sub.add_parser("q-solution", help="K = R21 R with End(V) coefficients")
    p.add_argument("--R")
    p.add_argument("--family")
    p.add_argument("--rep", default="f")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_q_solution)

    p = sub.add_parser("verify", help="check an identity exactly")
    vs = p.add_subparsers(dest="kind", required=True)
    v = vs.add_parser("ybe")
    v.add_argument("--R")
    v.add_argument("--family")
    v.add_argument("--reps", nargs=3)
    v = vs.add_parser("re")
    v.add_argument("--K", required=True)
    v.add_argument("--R")
    v.add_argument("--family")
    v.add_argument("--rep")
    v = vs.add_parser("compat")
    v.add_argument("--data", required=True)
    v.add_argument("--i", required=True)
    v.add_argument("--j", required=True)
    v = vs.add_parser("data")
    v.add_argument("--data", required=True)
    v = vs.add_parser("appendix")
    v.add_argument("--data", required=True)
    v.add_argument("--reps", nargs=3)
    v = vs.add_parser("braid")
    _add_braid_args(v)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fuse", help="fuse two RE matrices")
    p.add_argument("--R")
    p.add_argument("--family")
    p.add_argument("--Ki", required=True)
    p.add_argument("--Kj", required=True)
    p.add_argument("--rep-i")
    p.add_argument("--rep-j")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_fuse)

    p = sub.add_parser("project", help="restrict a fused K to a Hecke sector")
    p.add_argument("--R", required=True, help="base R-matrix on [d, d]")
    p.add_argument("--K", required=True)
    p.add_argument("--rep")
    p.add_argument("--sector", choices=["symmetric", "antisymmetric"], required=True)
    p.add_argument("--out", default="-")
    p.add_argument("--family-out")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("solve", help="solve the RE on a structured ansatz")
    p.add_argument("--R", required=True)
    p.add_argument("--ansatz", choices=ANSATZES, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("braid", help="check cylinder braid relations")
    _add_braid_args(p)
    p.set_defaults(func=cmd_braid)
    return ap


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        sess = _session(args)
        return args.func(args, sess)
    except (InputError, QREError, ValueError, KeyError, TypeError) as exc:
        print(f"qre: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
