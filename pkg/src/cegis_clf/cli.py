"""Command line entry point.

    cegis-clf synth   PROBLEM [--out REPORT] [--seed S] [--max-iters I]
    cegis-clf verify  PROBLEM --candidate PK
    cegis-clf certify PROBLEM --candidate PK [--samples N] [--tol T]

Exit codes: 0 certified / pass, 1 infeasible / fail, 2 budget exhausted or
stalled, 3 usage or configuration error. ``PROBLEM`` may also name a bundled
problem (``polytopic_4x4.json``, ``spherical_2x2.json``).
"""

import argparse
import json
import sys
from pathlib import Path

from . import cegis, certify, io, verifier
from .errors import CegisError
from .uncertainty import EllipsoidA, IntervalAB, MAX_VERTEX_BITS

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _resolve(path):
    p = Path(path)
    if p.exists():
        return p
    try:
        return io.bundled_problem(p.name)
    except FileNotFoundError:
        raise CegisError(f"problem file not found: {path}") from None


def _emit(payload, out):
    text = json.dumps(payload, indent=2, allow_nan=False)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _synth(args):
    spec = io.load_problem(_resolve(args.problem))
    if args.seed is not None:
        spec.seed = args.seed
    if args.max_iters is not None:
        spec.max_iters = args.max_iters
    spec.validate()
    log = None if args.quiet else (lambda msg: print(msg, file=sys.stderr))
    report = cegis.run(spec, log=log)
    if args.out:
        Path(args.out).write_text(io.dump_report(report) + "\n", encoding="utf-8")
    else:
        print(io.dump_report(report))
    print(f"status: {report.status} after {report.iterations} iteration(s)", file=sys.stderr)
    if report.status == cegis.CERTIFIED:
        cert = report.certification
        if cert is not None and not cert["passed"]:
            print(f"warning: independent {cert['method']} check failed "
                  f"(worst {cert['worst']:.3g})", file=sys.stderr)
        return EXIT_OK
    if report.status == cegis.INFEASIBLE:
        return EXIT_FAIL
    return EXIT_BUDGET


def _verify(args):
    spec = io.load_problem(_resolve(args.problem))
    if args.seed is not None:
        spec.seed = args.seed
    cand = io.load_candidate(args.candidate)
    res = verifier.verify(cand, spec)
    payload = {
        "certified": bool(res.certified),
        "lambda_hat": res.lambda_hat,
        "method": res.method,
        "evaluations": int(res.evaluations),
        "lipschitz_gap": io._finite(res.gap),
        "minimizer": io._pair(res.minimizer),
        "accept_threshold": spec.threshold,
    }
    _emit(payload, args.out)
    return EXIT_OK if res.certified else EXIT_FAIL


def _certify(args):
    spec = io.load_problem(_resolve(args.problem))
    cand = io.load_candidate(args.candidate)
    omega = spec.omega
    if isinstance(omega, EllipsoidA) or (isinstance(omega, IntervalAB) and omega.q > MAX_VERTEX_BITS):
        passed, worst, arg = certify.certify_sampled(cand, omega, args.samples, spec.seed, args.tol)
        method = "sampled"
    else:
        passed, worst, arg = certify.certify_vertices(cand, omega, args.tol)
        method = "vertices"
    payload = {"passed": bool(passed), "worst": worst, "method": method, "tol": args.tol,
               "argmin": io._pair(arg)}
    _emit(payload, args.out)
    return EXIT_OK if passed else EXIT_FAIL


def build_parser():
    p = _Parser(prog="cegis-clf", description="Counter-example guided synthesis of "
                "quadratic control Lyapunov functions for uncertain linear systems.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("synth", help="run the synthesis loop")
    s.add_argument("problem")
    s.add_argument("--out")
    s.add_argument("--seed", type=int)
    s.add_argument("--max-iters", type=int)
    s.add_argument("--quiet", action="store_true")
    s.set_defaults(func=_synth)

    v = sub.add_parser("verify", help="run one verifier pass on a candidate")
    v.add_argument("problem")
    v.add_argument("--candidate", required=True)
    v.add_argument("--seed", type=int)
    v.add_argument("--out")
    v.set_defaults(func=_verify)

    c = sub.add_parser("certify", help="independent a-posteriori check of a candidate")
    c.add_argument("problem")
    c.add_argument("--candidate", required=True)
    c.add_argument("--samples", type=int, default=100_000)
    c.add_argument("--tol", type=float, default=1e-7)
    c.add_argument("--out")
    c.set_defaults(func=_certify)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (CegisError, OSError) as exc:
        print(f"cegis-clf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
