"""Command-line interface.

Every invocation prints one JSON report on stdout. The exit code depends only
on the report's ``verdict``::

    success, solvable          0
    unsolvable, nonexistent,
    rejected                   2
    hypothesis-violated        3
    input-error                4
    internal-error             1

With ``--out DIR`` the report, every produced matrix and a figure are also
written to DIR.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from pathlib import Path

from . import oracle
from .equivalence import (
    PseudoEquivalenceWitness,
    PseudoSimilarityWitness,
    verify_pseudo_equivalent,
    verify_pseudo_similar,
    witness_from_json,
)
from .errors import (
    CertificateInvalid,
    DimensionError,
    HypothesisViolated,
    InternalInconsistency,
    ModeError,
    NotASolution,
    ParseError,
)
from .generate import GenSpec, gen_group_invertible, gen_solvable_instance, seed_from_env
from .geninv import (
    block_group_inverse,
    block_triangular_group_invertible,
    group_axioms,
    group_inverse,
    inner_inverse,
    inner_inverse_family,
    is_inner_inverse,
    spectral_checks,
)
from .numeric import MODES, from_json, to_json
from .stein import solve_stein
from .sylvester import extract_sylvester_solution, operator_matrices, solve_sylvester
from .twosided import candidate_certificate, parameters_for_solution, solve_two_sided

log = logging.getLogger("ginv")

EXIT_CODES = {
    "success": 0,
    "solvable": 0,
    "unsolvable": 2,
    "nonexistent": 2,
    "rejected": 2,
    "hypothesis-violated": 3,
    "input-error": 4,
    "internal-error": 1,
}

REPORT_KEYS = ("command", "argv", "verdict", "exit_code", "message", "matrices", "checks", "details", "timings")


class Report:
    def __init__(self, command, argv):
        self.command = command
        self.argv = list(argv)
        self.verdict = "success"
        self.message = ""
        self.matrices = {}
        self.checks = []
        self.details = {}

    def matrix(self, name, M):
        if M is not None:
            self.matrices[name] = M

    def check(self, name, passed):
        self.checks.append({"identity": name, "passed": bool(passed)})

    def checks_from(self, pairs, prefix=""):
        for name, passed in pairs:
            self.check(prefix + name, passed)

    def to_json(self, elapsed):
        return {
            "command": self.command,
            "argv": self.argv,
            "verdict": self.verdict,
            "exit_code": EXIT_CODES[self.verdict],
            "message": self.message,
            "matrices": {k: to_json(v) for k, v in self.matrices.items()},
            "checks": self.checks,
            "details": self.details,
            "timings": {"total_seconds": elapsed},
        }


# input


def load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read: {exc.strerror}", path) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, path, exc.pos) from None


def load_matrix(path, mode=None):
    M = from_json(load_json(path), source=path)
    return M.to_mode(mode) if mode else M


def _witness_to_mode(w, mode):
    if isinstance(w, PseudoSimilarityWitness):
        return PseudoSimilarityWitness(*(m.to_mode(mode) for m in (w.t, w.t_minus, w.t_equals)))
    return PseudoEquivalenceWitness(*(m.to_mode(mode) for m in (w.p, w.q, w.p_minus, w.q_minus)))


def load_witness(path, mode=None):
    w = witness_from_json(load_json(path), source=path)
    return _witness_to_mode(w, mode) if mode else w


def load_params(path, mode=None):
    obj = load_json(path)
    try:
        Z, Z1 = from_json(obj["Z"], path), from_json(obj["Z1"], path)
    except (KeyError, TypeError):
        raise ParseError('params file needs "Z" and "Z1"', path) from None
    return (Z.to_mode(mode), Z1.to_mode(mode)) if mode else (Z, Z1)


def _abc(args):
    return (load_matrix(p, args.mode) for p in (args.A, args.B, args.C))


# commands


def cmd_geninv(args, rep):
    A = load_matrix(args.A, args.mode)
    rep.matrix("A", A)
    res = group_inverse(A, args.tol)
    rep.details["index_le_one"] = res.index_le_one
    if not res.exists:
        rep.verdict = "nonexistent"
        rep.message = "group inverse does not exist (index > 1)"
        return
    rep.matrix("A_sharp", res.a_sharp)
    rep.matrix("A_pi", res.a_pi)
    rep.checks_from(group_axioms(A, res.a_sharp, args.tol))
    rep.checks_from(spectral_checks(A, res, args.tol))


def cmd_inner_inv(args, rep):
    A = load_matrix(args.A, args.mode)
    rep.matrix("A", A)
    G = inner_inverse(A, args.tol)
    rep.matrix("G", G)
    rep.check("A G A = A", is_inner_inverse(A, G, args.tol))
    if args.u:
        U = load_matrix(args.u, args.mode)
        G2 = inner_inverse_family(A, G, U, args.tol)
        rep.matrix("U", U)
        rep.matrix("G_family", G2)
        rep.check("A G_family A = A", is_inner_inverse(A, G2, args.tol))


def cmd_check_block(args, rep):
    A, B, C = _abc(args)
    ok = block_triangular_group_invertible(A, B, C, args.tol)
    rep.details["block_group_invertible"] = ok
    if not ok:
        rep.verdict = "nonexistent"
        rep.message = "A^π C B^π != 0: [[A, C], [0, B]] has no group inverse"
        return
    parts = block_group_inverse(A, B, C, args.tol)
    M, _ = operator_matrices(A, B, C)
    rep.matrix("M", M)
    rep.matrix("S", parts.s)
    rep.matrix("M_sharp", parts.m_sharp)
    rep.checks_from(group_axioms(M, parts.m_sharp, args.tol), prefix="M: ")


def cmd_solve_sylvester(args, rep):
    A, B, C = _abc(args)
    M, D = operator_matrices(A, B, C)
    if args.witness:
        w = load_witness(args.witness, args.mode)
        if not isinstance(w, PseudoSimilarityWitness):
            raise ParseError("expected a pseudo-similarity witness (T, T_minus, T_equals)", args.witness)
        X = extract_sylvester_solution(A, B, C, w, args.tol)
        rep.verdict = "solvable"
        rep.matrix("X_extracted", X)
        rep.checks_from(verify_pseudo_similar(M, D, w, args.tol).checks, prefix="M~D: ")
        rep.check("A X - X B = C", (A @ X - X @ B - C).is_zero(args.tol))
        return
    res = solve_sylvester(A, B, C, args.tol)
    if not res.solvable:
        rep.verdict = "unsolvable"
        rep.message = res.note
        return
    rep.verdict = "solvable"
    rep.matrix("X", res.x)
    rep.matrix("P", res.witness.t)
    rep.matrix("P_minus", res.witness.t_minus)
    rep.matrix("P_equals", res.witness.t_equals)
    rep.matrix("X_extracted", res.x_extracted)
    rep.details["witness"] = res.witness.to_json()
    rep.checks_from(verify_pseudo_similar(M, D, res.witness, args.tol).checks, prefix="M~D: ")
    rep.check("A X - X B = C", (A @ res.x - res.x @ B - C).is_zero(args.tol))
    X2 = res.x_extracted
    rep.check("A X_extracted - X_extracted B = C", (A @ X2 - X2 @ B - C).is_zero(args.tol))


def cmd_solve_two_sided(args, rep):
    A, B, C = _abc(args)
    fam = solve_two_sided(A, B, C, args.tol)
    cert = candidate_certificate(A, B, C, args.tol)
    rep.details["criterion_holds"] = fam is not None
    rep.details["u_invertible"] = cert.u_invertible
    rep.details["certificate_valid"] = cert.valid
    if args.oracle:
        found = oracle.oracle_two_sided(A, B, C, args.tol)
        rep.details["oracle_feasible"] = found.feasible
        if found:
            rep.matrix("X_oracle", found.x)
            rep.matrix("Y_oracle", found.y)
    if fam is None:
        rep.verdict = "unsolvable"
        rep.message = "A^π C B^π != 0: A X - Y B = C has no solution"
        rep.checks_from(cert.verification.checks, prefix="D≈M: ")
        return
    rep.verdict = "solvable"
    rep.matrix("X0", fam.x0)
    rep.matrix("Y0", fam.y0)
    rep.check("A X0 - Y0 B = C", (A @ fam.x0 - fam.y0 @ B - C).is_zero(args.tol))
    w = cert.witness
    for name, M_ in (("P", w.p), ("Q", w.q), ("P_minus", w.p_minus), ("Q_minus", w.q_minus), ("U", cert.u)):
        rep.matrix(name, M_)
    rep.details["certificate"] = w.to_json()
    rep.checks_from(cert.verification.checks, prefix="D≈M: ")
    rep.check("U invertible", cert.u_invertible)
    if args.params:
        Z, Z1 = load_params(args.params, args.mode)
        X, Y = fam.evaluate(Z, Z1)
        rep.matrix("X", X)
        rep.matrix("Y", Y)
        rep.check("A X - Y B = C", (A @ X - Y @ B - C).is_zero(args.tol))
    if args.oracle and found:
        Z, Z1 = parameters_for_solution(A, B, C, found.x, found.y, args.tol)
        rep.check("oracle solution reproduced by (Z, Z1) = (Y, X)", fam.evaluate(Z, Z1) == (found.x, found.y))


def cmd_solve_stein(args, rep):
    A, B, C = _abc(args)
    r = solve_stein(A, B, C, args.tol)
    rep.details.update(
        criterion_holds=r.criterion_holds,
        certificate_valid=r.certificate.valid,
        u_invertible=r.certificate.u_invertible,
        coupled_feasible=r.coupled_feasible,
        oracle_feasible=r.oracle_feasible,
        verdicts_agree=r.verdicts_agree,
    )
    rep.matrix("U1", r.certificate.u)
    for name, Y in (("Y_coupled", r.coupled_solution), ("Y_oracle", r.oracle_solution)):
        if Y is not None:
            rep.matrix(name, Y)
            rep.check(f"A {name} B - {name} = C", (A @ Y @ B - Y - C).is_zero(args.tol))
    if r.coupled_feasible or r.oracle_feasible:
        rep.verdict = "solvable"
    else:
        rep.verdict = "unsolvable"
        rep.message = "A Y B - Y = C has no solution"
    if not r.verdicts_agree:
        rep.message = (rep.message + "; " if rep.message else "") + (
            "shifted-equation criterion and brute-force verdict disagree"
        )


def cmd_verify_witness(args, rep):
    A = load_matrix(args.A, args.mode)
    B = load_matrix(args.B, args.mode)
    w = load_witness(args.W, args.mode)
    if args.C:
        C = load_matrix(args.C, args.mode)
        M, D = operator_matrices(A, B, C)
        # M ~ D for the Sylvester witness; D ≈ M (M = P D Q) for the two-sided one.
        left, right = (M, D) if isinstance(w, PseudoSimilarityWitness) else (D, M)
    else:
        left, right = A, B
    if isinstance(w, PseudoSimilarityWitness):
        v = verify_pseudo_similar(left, right, w, args.tol)
        rep.details["kind"] = "pseudo-similarity"
    else:
        v = verify_pseudo_equivalent(left, right, w, args.tol)
        rep.details["kind"] = "pseudo-equivalence"
    rep.checks_from(v.checks)
    rep.details["failed_identity"] = v.failed
    if not v.ok:
        rep.verdict = "rejected"
        rep.message = f"witness fails {v.failed}"


def cmd_gen(args, rep):
    seed = args.seed if args.seed is not None else seed_from_env()
    rep.details["seed"] = seed
    rng = random.Random(seed)
    spec = GenSpec(args.n, args.rank, seed, args.bound, args.k, args.rank_b)
    if args.kind == "group-invertible":
        A = gen_group_invertible(spec, rng)
        rep.matrix("A", A)
        return
    inst = gen_solvable_instance(args.kind.replace("-", "_"), spec, rng)
    rep.matrix("A", inst.a)
    rep.matrix("B", inst.b)
    rep.matrix("C", inst.c)
    names = ("X", "Y") if inst.kind == "two_sided" else (("Y",) if inst.kind == "stein" else ("X",))
    for name, M_ in zip(names, inst.solution):
        rep.matrix(name, M_)


COMMANDS = {
    "geninv": cmd_geninv,
    "inner-inv": cmd_inner_inv,
    "check-block": cmd_check_block,
    "solve-sylvester": cmd_solve_sylvester,
    "solve-two-sided": cmd_solve_two_sided,
    "solve-stein": cmd_solve_stein,
    "verify-witness": cmd_verify_witness,
    "gen": cmd_gen,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message, "argv")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=MODES, default=None, help="coerce inputs to this scalar mode")
    common.add_argument("--tol", type=float, default=None, help="relative tolerance (float mode)")
    common.add_argument("--oracle", action="store_true", help="include the brute-force cross-check")
    common.add_argument("--seed", type=int, default=None, help="random seed (overrides GINV_SEED)")
    common.add_argument("--out", default=None, help="also write report, matrices and figure here")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="ginv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("geninv", parents=[common], help="group inverse and spectral idempotent")
    p.add_argument("A")
    p = sub.add_parser("inner-inv", parents=[common], help="inner inverse (and family member)")
    p.add_argument("A")
    p.add_argument("--u", help="U matrix: also output G + U - G A U A G")
    p = sub.add_parser("check-block", parents=[common], help="group invertibility of [[A, C], [0, B]]")
    for name in "ABC":
        p.add_argument(name)
    p = sub.add_parser("solve-sylvester", parents=[common], help="A X - X B = C")
    for name in "ABC":
        p.add_argument(name)
    p.add_argument("--witness", help="extract X from this pseudo-similarity witness instead")
    p = sub.add_parser("solve-two-sided", parents=[common], help="A X - Y B = C")
    for name in "ABC":
        p.add_argument(name)
    p.add_argument("--params", help='JSON {"Z": M, "Z1": M}: evaluate the general solution')
    p = sub.add_parser("solve-stein", parents=[common], help="A Y B - Y = C")
    for name in "ABC":
        p.add_argument(name)
    p = sub.add_parser("verify-witness", parents=[common], help="check a certificate file")
    p.add_argument("W", help="witness JSON")
    p.add_argument("A")
    p.add_argument("B")
    p.add_argument("C", nargs="?", help="if given, verify M and D built from A, B, C")
    p = sub.add_parser("gen", parents=[common], help="random instance")
    p.add_argument("kind", choices=["group-invertible", "sylvester", "two-sided", "stein"])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--rank-b", type=int, default=None)
    p.add_argument("--bound", type=int, default=5)
    return parser


def _write_out(out, payload, report):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(json.dumps(payload, indent=2, ensure_ascii=False))
    for name, M in report.matrices.items():
        (out / f"{name}.json").write_text(json.dumps(to_json(M)))
    try:
        from .plotting import render_report
    except ImportError:  # matplotlib missing
        log.warning("matplotlib unavailable; no figure written")
        return
    render_report(payload, out / "report.png")


def run(argv=None, stdout=None):
    """Execute one command. Returns the exit code; the report goes to ``stdout``."""
    argv = sys.argv[1:] if argv is None else list(argv)
    stdout = stdout or sys.stdout
    start = time.perf_counter()
    rep = Report(argv[0] if argv else None, argv)
    args = None
    try:
        args = build_parser().parse_args(argv)
        rep.command = args.command
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
        COMMANDS[args.command](args, rep)
    except (ParseError, DimensionError, ModeError) as exc:
        rep.verdict = "input-error"
        rep.message = str(exc)
    except HypothesisViolated as exc:
        rep.verdict = "hypothesis-violated"
        rep.message = str(exc)
    except (CertificateInvalid, NotASolution) as exc:
        rep.verdict = "rejected"
        rep.message = str(exc)
    except InternalInconsistency as exc:
        rep.verdict = "internal-error"
        rep.message = str(exc)
    except SystemExit:
        # --help
        raise
    if rep.verdict in ("input-error", "hypothesis-violated", "rejected", "internal-error"):
        print(f"ginv: {rep.message}", file=sys.stderr)
    payload = rep.to_json(time.perf_counter() - start)
    stdout.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    if args is not None and args.out:
        _write_out(args.out, payload, rep)
    return payload["exit_code"]


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
