"""Counter-example guided synthesis of quadratic control Lyapunov functions.

Finds ``P > 0`` and ``K`` such that ``V(x) = x^T P x`` decreases along
``x+ = (A + B K) x`` for every ``(A, B)`` in a compact uncertainty set, by
alternating an LMI learner over finitely many samples with a Lipschitz global
verifier over the whole set.
"""

from .cegis import CegisReport, iteration_trace, run
from .certify import certify_sampled, certify_vertices, grid_oracle
from .counterexamples import CounterexampleSet
from .errors import (CegisError, ConfigError, DimensionError, DuplicateCounterexample,
                     InvalidMatrix, InvalidState, NotSPD, ParseError, SolverStalled,
                     TooManyVertices)
from .io import bundled_problem, dump_report, load_candidate, load_problem, parse_problem
from .learner import LearnerProblem, LearnerSolution, extract_candidate
from .system import Candidate, ProblemSpec, closed_loop, lyapunov_decrease
from .uncertainty import EllipsoidA, IntervalAB, PolytopeVerts
from .verifier import (VerifierResult, global_minimize, lipschitz_budget, objective,
                       sensitivity_refine, verify)

__version__ = "0.1.0"
