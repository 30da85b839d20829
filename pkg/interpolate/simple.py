from __future__ import annotations

from fractions import Fraction
import logging
from math import prod

from errors import ContractError, InternalError
from graphs.constructions import build_Gn_simple, parallel_and_loop_selection, selected_edge_count
from graphs.multigraph import Multigraph
from interpolate.base_reduction import DEFAULT_SPOT_CHECK_BUDGET, BaseReduction, require_positive_diagonal
from interpolate.stratify import composition_count, compositions
from interpolate.transcript import DirectCheck, ReductionMode, ReductionTranscript, ReductionVariant
from numeric.eigen import DEFAULT_PRECISION, residual_tolerance, sym_eigen
from numeric.linalg import rank
from numeric.matrix import RationalMatrix
from partition.collapsed import z_collapsed_stretch
from partition.evaluate import DEFAULT_BUDGET, z_vertex_weighted

logger = logging.getLogger(__name__)

class SimpleReduction(BaseReduction):
  """Recovers Z_{A,D}(G) for a multigraph G from Z_{A,D} on simple graphs G_n, obtained by
  stretching every parallel edge and loop of G into a path of length n.

  Sampling starts at the first simple G_n: n = 2, or n = 3 when G has a loop, since a loop stretched
  into a path of length 2 is a double edge. The target is n = 1, which is G itself."""

  variant = ReductionVariant.SIMPLE

  def _prepare(self):
    if not self.a.symmetric:
      raise ContractError("The simple reduction needs a symmetric matrix")
    # self.d stays as passed so the transcript digests the caller's input.
    self.weights = RationalMatrix.diag(require_positive_diagonal(self.d, self.a.rows))

    self.selection = parallel_and_loop_selection(self.g)
    self.t = selected_edge_count(self.g, self.selection)
    self.r = rank(self.a)
    self.order_bound = composition_count(self.t, self.r) if self.r > 0 else 1
    self.n_start = 3 if self.g.has_loops else 2
    self.target_index = 1
    self.parameters.update({
      "t": self.t,
      "r": self.r,
      "stretched_pairs": [list(pair) for pair in sorted(self.selection)],
    })

  def _oracle_graph(self, n: int) -> Multigraph:
    graph, _ = build_Gn_simple(self.g, n)
    return graph

  def _check_oracle_graph(self, n: int, graph: Multigraph):
    if not graph.is_simple():
      raise InternalError("Oracle graph G_%d is not simple" % n)

  def _oracle_value(self, n: int) -> Fraction:
    return z_collapsed_stretch(self.g, self.a, self.weights, self.selection, n, self.budget, self.threads).value

  def _eigen_nodes(self, precision: int):
    decomp = sym_eigen(self.a, precision, congruence=self.weights)
    ctx = decomp.ctx
    # The congruence preserves rank, so exactly r eigenvalues are nonzero.
    order = sorted(range(decomp.size), key=lambda k: ctx.fabs(decomp.eigenvalues[k]), reverse=True)
    eigenvalues = tuple(decomp.eigenvalues[k] for k in order[:self.r])
    tolerance = residual_tolerance(ctx, precision)
    if any(ctx.fabs(lam) <= tolerance for lam in eigenvalues):
      raise InternalError("A zero eigenvalue reached the interpolation nodes")
    nodes = [
      prod((lam**k for lam, k in zip(eigenvalues, exponents)), start=ctx.mpf(1))
      for exponents in compositions(self.t, len(eigenvalues))
    ]
    return ctx, eigenvalues, nodes, {}

  def _direct_checks(self) -> list[DirectCheck]:
    value = z_vertex_weighted(self.a, self.weights, self.g, self.budget, self.threads).value
    return [DirectCheck("vertex_weighted", value, 1)]

def run_simple_reduction(a: RationalMatrix, d: RationalMatrix, g: Multigraph,
    mode: ReductionMode = ReductionMode.EXACT, precision: int = DEFAULT_PRECISION,
    budget: int = DEFAULT_BUDGET, spot_check_budget: int = DEFAULT_SPOT_CHECK_BUDGET, threads: int = 1) -> ReductionTranscript:
  return SimpleReduction(a, d, g, mode, precision, budget, spot_check_budget, threads).run()
