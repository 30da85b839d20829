from __future__ import annotations

from fractions import Fraction
import logging

from errors import ContractError, IllConditionedError, OrderBoundError
from graphs.multigraph import Multigraph
from interpolate.transcript import (
  DirectCheck, OracleGraphStats, ReductionMode, ReductionTranscript, ReductionVariant, SpotCheck,
  decimal_digits, digest_inputs,
)
from numeric.eigen import DEFAULT_PRECISION, to_mpf
from numeric.matrix import RationalMatrix, as_weight_vector
from numeric.rational import format_rational
from numeric.recurrence import extrapolate_back, min_recurrence
from numeric.vandermonde import default_merge_tol, merge_nodes, solve_vandermonde
from partition.evaluate import DEFAULT_BUDGET, z_vertex_weighted

logger = logging.getLogger(__name__)

DEFAULT_SPOT_CHECK_BUDGET = 2**16
MAX_PRECISION_DOUBLINGS = 2

class BaseReduction:
  """Base class for interpolation reductions.

  A reduction recovers a partition function value at an index it cannot query (target_index) from
  oracle values z_n at n >= n_start, then compares the recovered value against direct evaluations.
  Every oracle graph is built and structurally checked even though its value comes from a
  collapsed evaluator; small ones are also enumerated raw as a spot check.

  Subclasses should implement _prepare, _oracle_graph, _check_oracle_graph, _oracle_value,
  _eigen_nodes and _direct_checks.
  """

  variant: ReductionVariant

  def __init__(self, a: RationalMatrix, d: RationalMatrix, g: Multigraph,
      mode: ReductionMode = ReductionMode.EXACT, precision: int = DEFAULT_PRECISION,
      budget: int = DEFAULT_BUDGET, spot_check_budget: int = DEFAULT_SPOT_CHECK_BUDGET, threads: int = 1):
    self.a = a
    self.d = d
    self.g = g
    self.mode = ReductionMode(mode)
    self.precision = precision
    self.budget = budget
    self.spot_check_budget = spot_check_budget
    self.threads = threads

    self.n_start = 1
    self.target_index = 0
    self.order_bound = 0
    self.parameters: dict = {}
    self.oracle_values: list[tuple[int, Fraction]] = []
    self.spot_checks: list[SpotCheck] = []
    self.oracle_graphs: list[OracleGraphStats] = []

  def run(self) -> ReductionTranscript:
    self._prepare()
    self.parameters.update({
      "n_start": self.n_start,
      "target_index": self.target_index,
      "order_bound": self.order_bound,
      "precision": self.precision,
    })
    logger.info(
      "%s reduction (%s mode): order bound %d, samples from n=%d",
      self.variant.value, self.mode.value, self.order_bound, self.n_start,
    )
    if self.mode == ReductionMode.EXACT:
      recovered, system = self._solve_exact()
    else:
      recovered, system = self._solve_eigen()

    transcript = ReductionTranscript(
      variant=self.variant,
      mode=self.mode,
      input_digests=digest_inputs(self.a, self.d, self.g),
      parameters=self.parameters,
      oracle_values=self.oracle_values,
      system=system,
      recovered=recovered,
      direct_checks=self._direct_checks(),
      spot_checks=self.spot_checks,
      oracle_graphs=self.oracle_graphs,
    )
    logger.info("Recovered %s, verdict %s", transcript.format_recovered(), transcript.verdict.value)
    return transcript

  def query(self, n: int) -> Fraction:
    graph = self._oracle_graph(n)
    self._check_oracle_graph(n, graph)
    self.oracle_graphs.append(OracleGraphStats(n, graph.vertex_count, graph.edge_count, graph.max_degree, graph.is_simple()))
    value = self._oracle_value(n)
    if self.a.rows ** graph.vertex_count <= self.spot_check_budget:
      raw = z_vertex_weighted(self.a, self.d, graph, self.budget, self.threads).value
      self.spot_checks.append(SpotCheck(n, value, raw))
      if raw != value:
        logger.warning("Spot check failed at n=%d: collapsed %s, raw %s", n, value, raw)
    logger.debug("Oracle z_%d = %s on %d vertices", n, value, graph.vertex_count)
    self.oracle_values.append((n, value))
    return value

  def _solve_exact(self):
    bound = self.order_bound
    samples = [self.query(n) for n in range(self.n_start, self.n_start + 2*bound + 2)]
    # The last sample is held out to validate the recurrence.
    recurrence = min_recurrence(samples[:-1], bound)
    window = samples[len(samples) - 1 - recurrence.order:-1]
    if recurrence.next_term(window) != samples[-1]:
      raise OrderBoundError("Recurrence of order %d fails on the held-out sample" % recurrence.order)
    logger.info("Minimal recurrence has order %d", recurrence.order)
    recovered = extrapolate_back(recurrence, samples, self.n_start - self.target_index)
    system = {
      "recurrence": [format_rational(c) for c in recurrence.coefficients],
      "order": recurrence.order,
    }
    return recovered, system

  def _samples(self, count: int) -> list[Fraction]:
    """Oracle values for n_start, ..., n_start+count-1, querying only the ones not seen yet."""
    known = dict(self.oracle_values)
    return [known[n] if n in known else self.query(n) for n in range(self.n_start, self.n_start + count)]

  def _solve_eigen(self):
    precisions = [self.precision*2**k for k in range(MAX_PRECISION_DOUBLINGS + 1)]
    for working_precision in precisions:
      try:
        return self._solve_eigen_at(working_precision)
      except IllConditionedError as e:
        if working_precision == precisions[-1]:
          raise
        logger.warning("%s; retrying at %d bits", e, 2*working_precision)

  def _solve_eigen_at(self, working_precision: int):
    ctx, eigenvalues, nodes, diagnostics = self._eigen_nodes(working_precision)
    merged, _ = merge_nodes(ctx, nodes, default_merge_tol(ctx, nodes))
    # One sample beyond the distinct node count checks the residual.
    samples = self._samples(len(merged) + 1)
    solution = solve_vandermonde(
      ctx, nodes, [to_mpf(ctx, x) for x in samples],
      first_index=self.n_start, extrapolate_below=(self.target_index < self.n_start),
    )
    recovered = solution.evaluate(self.target_index) if solution.nodes else ctx.mpf(0)
    digits = decimal_digits(working_precision)
    system = {
      "working_precision": working_precision,
      "eigenvalues": [ctx.nstr(x, digits) for x in eigenvalues],
      "node_count": len(nodes),
      "nodes": [ctx.nstr(x, digits) for x in solution.nodes],
      "coefficients": [ctx.nstr(x, digits) for x in solution.coefficients],
      "residual": ctx.nstr(solution.residual, 5),
    }
    system.update(diagnostics)
    return recovered, system

  def _prepare(self):
    """Validate inputs and set n_start, target_index, order_bound and parameters."""
    raise NotImplementedError()

  def _oracle_graph(self, n: int) -> Multigraph:
    raise NotImplementedError()

  def _check_oracle_graph(self, n: int, graph: Multigraph):
    """Raise InternalError if the oracle graph breaks a structural guarantee."""
    raise NotImplementedError()

  def _oracle_value(self, n: int) -> Fraction:
    raise NotImplementedError()

  def _eigen_nodes(self, precision: int):
    """Return (ctx, eigenvalues, nodes, diagnostics) for the Vandermonde system, computed at precision bits."""
    raise NotImplementedError()

  def _direct_checks(self) -> list[DirectCheck]:
    raise NotImplementedError()

def require_positive_diagonal(d: RationalMatrix, size: int):
  weights = as_weight_vector(d)
  if len(weights) != size:
    raise ContractError("Vertex weights of size %d for a domain of size %d" % (len(weights), size))
  if any(w <= 0 for w in weights):
    raise ContractError("Vertex weights must be positive")
  return weights
