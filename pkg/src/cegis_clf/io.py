"""JSON problem, candidate and report formats.

Problem file::

    {
      "n": 4, "m": 1,
      "uncertainty": {"type": "interval", "A_lo": [[...]], "A_hi": [[...]], "B": [[...]]},
      "eps": 1e-3, "eta": 1e3, "w_max": 1e3, "n_t": 3,
      "accept_threshold": null, "max_iters": 100, "verifier_budget": null,
      "seed": 0, "initial_sample": {"A": [[...]], "B": [[...]]}
    }

Uncertainty variants:

* ``interval``: ``A_lo``, ``A_hi`` and either ``B`` (fixed) or ``B_lo``/``B_hi``.
* ``ellipsoid``: ``Q`` (n^2 x n^2), ``B``, and either ``c`` (column-stacked
  ``vec`` of the center) or ``A_center``.
* ``polytope``: ``vertices``, a list of ``{"A": ..., "B": ...}``.

Matrices are row-major nested lists. Everything except ``n``, ``m`` and
``uncertainty`` is optional.
"""

import json
import math
from pathlib import Path

import numpy as np

from .errors import CegisError, ConfigError, InvalidMatrix, ParseError
from .system import (DEFAULT_EPS, DEFAULT_ETA, DEFAULT_MAX_ITERS, DEFAULT_N_T,
                     DEFAULT_SENS_STEPS, DEFAULT_W_MAX, Candidate, ProblemSpec)
from .uncertainty import EllipsoidA, IntervalAB, PolytopeVerts

TOP_KEYS = {"n", "m", "uncertainty", "eps", "eta", "w_max", "n_t", "accept_threshold",
            "max_iters", "verifier_budget", "seed", "initial_sample", "sens_max_steps",
            "vertex_filter", "name", "description"}

BUNDLED_DIR = Path(__file__).parent / "problems"


def bundled_problem(name):
    """Path of a problem file shipped with the package, e.g. ``"polytopic_4x4"``."""
    p = BUNDLED_DIR / name
    if p.suffix != ".json":
        p = p.with_suffix(".json")
    if not p.exists():
        raise FileNotFoundError(f"no bundled problem named {name!r}")
    return p


def _matrix(obj, field, shape=None):
    try:
        M = np.array(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError("expected a numeric matrix", field) from exc
    if M.ndim != 2:
        raise ParseError(f"expected a 2-D nested list, got {M.ndim}-D", field)
    if not np.all(np.isfinite(M)):
        raise ParseError("matrix has non-finite entries", field)
    if shape is not None and M.shape != shape:
        raise ParseError(f"expected shape {shape}, got {M.shape}", field)
    return M


def _number(obj, field, kind=float):
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise ParseError(f"expected a number, got {type(obj).__name__}", field)
    if kind is int:
        if float(obj) != int(obj):
            raise ParseError("expected an integer", field)
        return int(obj)
    if not math.isfinite(obj):
        raise ParseError("expected a finite number", field)
    return float(obj)


def _require(d, key, field):
    if key not in d:
        raise ParseError("missing required field", f"{field}.{key}" if field else key)
    return d[key]


def _uncertainty(u, n, m):
    if not isinstance(u, dict):
        raise ParseError("expected an object", "uncertainty")
    kind = _require(u, "type", "uncertainty")
    f = "uncertainty"
    if kind == "interval":
        A_lo = _matrix(_require(u, "A_lo", f), f + ".A_lo", (n, n))
        A_hi = _matrix(_require(u, "A_hi", f), f + ".A_hi", (n, n))
        if "B" in u:
            B_lo = B_hi = _matrix(u["B"], f + ".B", (n, m))
        else:
            B_lo = _matrix(_require(u, "B_lo", f), f + ".B_lo", (n, m))
            B_hi = _matrix(_require(u, "B_hi", f), f + ".B_hi", (n, m))
        return IntervalAB(A_lo, A_hi, B_lo, B_hi)
    if kind == "ellipsoid":
        Q = _matrix(_require(u, "Q", f), f + ".Q", (n * n, n * n))
        B = _matrix(_require(u, "B", f), f + ".B", (n, m))
        if "c" in u:
            c = np.array(u["c"], dtype=float).ravel()
            if c.size != n * n:
                raise ParseError(f"expected {n * n} entries", f + ".c")
            return EllipsoidA(c, Q, B)
        A_c = _matrix(_require(u, "A_center", f), f + ".A_center", (n, n))
        return EllipsoidA.from_center(A_c, Q, B)
    if kind == "polytope":
        verts = _require(u, "vertices", f)
        if not isinstance(verts, list) or not verts:
            raise ParseError("expected a nonempty list", f + ".vertices")
        pairs = []
        for i, v in enumerate(verts):
            vf = f"{f}.vertices[{i}]"
            pairs.append((_matrix(_require(v, "A", vf), vf + ".A", (n, n)),
                          _matrix(_require(v, "B", vf), vf + ".B", (n, m))))
        return PolytopeVerts(pairs)
    raise ParseError(f"unknown uncertainty type {kind!r}", "uncertainty.type")


def problem_from_dict(d):
    if not isinstance(d, dict):
        raise ParseError("top level must be an object")
    unknown = sorted(set(d) - TOP_KEYS)
    if unknown:
        raise ParseError(f"unknown field(s) {unknown}")
    n = _number(_require(d, "n", None), "n", int)
    m = _number(_require(d, "m", None), "m", int)
    if n < 1 or m < 1:
        raise ParseError("dimensions must be positive", "n" if n < 1 else "m")
    try:
        omega = _uncertainty(_require(d, "uncertainty", None), n, m)
    except InvalidMatrix as exc:
        raise ConfigError(f"uncertainty: {exc}") from exc

    def opt(key, default, kind=float):
        v = d.get(key)
        return default if v is None else _number(v, key, kind)

    init = d.get("initial_sample")
    if init is not None:
        init = (_matrix(_require(init, "A", "initial_sample"), "initial_sample.A", (n, n)),
                _matrix(_require(init, "B", "initial_sample"), "initial_sample.B", (n, m)))
    vf = d.get("vertex_filter", True)
    if not isinstance(vf, bool):
        raise ParseError("expected a boolean", "vertex_filter")
    spec = ProblemSpec(
        omega=omega,
        eps=opt("eps", DEFAULT_EPS),
        eta=opt("eta", DEFAULT_ETA),
        w_max=opt("w_max", DEFAULT_W_MAX),
        initial_sample=init,
        accept_threshold=opt("accept_threshold", None),
        max_iters=opt("max_iters", DEFAULT_MAX_ITERS, int),
        verifier_budget=opt("verifier_budget", None, int),
        n_t=opt("n_t", DEFAULT_N_T, int),
        seed=opt("seed", 0, int),
        sens_max_steps=opt("sens_max_steps", DEFAULT_SENS_STEPS, int),
        vertex_filter=vf,
    )
    spec.extras = {k: d[k] for k in ("name", "description") if k in d}
    return spec.validate()


def parse_problem(text):
    """Parse and validate a problem file's text into a :class:`ProblemSpec`."""
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from exc
    return problem_from_dict(d)


def load_problem(path):
    return parse_problem(Path(path).read_text(encoding="utf-8"))


def _mat(M):
    return np.asarray(M, dtype=float).tolist()


def uncertainty_to_dict(omega):
    if isinstance(omega, IntervalAB):
        return {"type": "interval", "A_lo": _mat(omega.A_lo), "A_hi": _mat(omega.A_hi),
                "B_lo": _mat(omega.B_lo), "B_hi": _mat(omega.B_hi)}
    if isinstance(omega, EllipsoidA):
        return {"type": "ellipsoid", "c": omega.c.tolist(), "Q": _mat(omega.Q), "B": _mat(omega.B)}
    if isinstance(omega, PolytopeVerts):
        return {"type": "polytope",
                "vertices": [{"A": _mat(A), "B": _mat(B)} for A, B in omega.vertices]}
    raise TypeError(f"unsupported uncertainty set {type(omega).__name__}")


def problem_to_dict(spec):
    d = {"n": spec.n, "m": spec.m, "uncertainty": uncertainty_to_dict(spec.omega),
         "eps": spec.eps, "eta": spec.eta, "w_max": spec.w_max, "n_t": int(spec.n_t),
         "accept_threshold": spec.accept_threshold, "max_iters": int(spec.max_iters),
         "verifier_budget": spec.verifier_budget, "seed": int(spec.seed),
         "sens_max_steps": int(spec.sens_max_steps), "vertex_filter": bool(spec.vertex_filter),
         "initial_sample": None}
    if spec.initial_sample is not None:
        A, B = spec.initial_sample
        d["initial_sample"] = {"A": _mat(A), "B": _mat(B)}
    d.update(spec.extras)
    return d


def dump_problem(spec):
    return json.dumps(problem_to_dict(spec), indent=2)


def candidate_to_dict(cand):
    return {"P": _mat(cand.P), "K": _mat(cand.K)}


def candidate_from_dict(d):
    if isinstance(d, dict) and "candidate" in d:
        d = d["candidate"]
    if not isinstance(d, dict):
        raise ParseError("no candidate found")
    try:
        return Candidate(_matrix(_require(d, "P", "candidate"), "candidate.P"),
                         _matrix(_require(d, "K", "candidate"), "candidate.K"))
    except CegisError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), "candidate") from exc


def load_candidate(path):
    try:
        d = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from exc
    return candidate_from_dict(d)


def _finite(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def _pair(p):
    if p is None:
        return None
    return {"A": _mat(p[0]), "B": _mat(p[1])}


def report_to_dict(report):
    trace = []
    for r in report.trace:
        trace.append({
            "iteration": r.iteration,
            "n_samples": r.n_samples,
            "hull": list(r.hull),
            "margin": _finite(r.margin),
            "learner_status": r.learner_status,
            "lambda_hat": _finite(r.lambda_hat),
            "method": r.method,
            "evaluations": int(r.evaluations),
            "certified": bool(r.certified),
            "lipschitz_gap": _finite(r.gap),
            "P": None if r.P is None else _mat(r.P),
            "K": None if r.K is None else _mat(r.K),
            "counterexample": _pair(r.counterexample),
            "timing": r.timing,
        })
    return {
        "status": report.status,
        "iterations": report.iterations,
        "seed": report.config["seed"],
        "candidate": None if report.candidate is None else candidate_to_dict(report.candidate),
        "counterexamples": [_pair(p) for p in report.counterexamples.items],
        "trace": trace,
        "config": report.config,
        "certification": report.certification,
        "message": report.message,
        "hints": {k: (_finite(v) if isinstance(v, float) else v) for k, v in report.hints.items()},
        "timing": report.timing,
    }


def dump_report(report):
    return json.dumps(report_to_dict(report), indent=2, allow_nan=False)
