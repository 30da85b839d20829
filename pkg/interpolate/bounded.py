from __future__ import annotations

from fractions import Fraction
import logging
from math import prod

from condense.condensation import condense
from condense.lemmas import ThickeningCertificate, analytic_bound, build_weights, find_thickening_p, gamma_squared
from dichotomy.blocks import strike_zero_weights
from dichotomy.classify import classify_pair
from errors import ContractError, InternalError, TractableInputError
from graphs.constructions import build_Gnp
from graphs.multigraph import Multigraph
from interpolate.base_reduction import DEFAULT_SPOT_CHECK_BUDGET, BaseReduction
from interpolate.stratify import composition_count, compositions
from interpolate.transcript import DirectCheck, ReductionMode, ReductionTranscript, ReductionVariant
from numeric.eigen import DEFAULT_PRECISION, expansion_tensor, sym_eigen, to_mpf
from numeric.linalg import det
from numeric.matrix import RationalMatrix, hadamard_pow
from numeric.rational import format_rational
from partition.collapsed import thickened_transfer, transfer_L, z_collapsed_bounded
from partition.evaluate import DEFAULT_BUDGET, z_degree_weighted, z_plain

logger = logging.getLogger(__name__)

class BoundedReduction(BaseReduction):
  """Recovers Z_C(G) from Z_{A,D} on the simple graphs G_{n,p}, whose degrees are at most 2p+1.

  The unqueryable target is n = 0, where every gadget degenerates to (D^[2p])^-1 on its cycle edge."""

  variant = ReductionVariant.BOUNDED

  def __init__(self, *args, p: int = None, **kwargs):
    super().__init__(*args, **kwargs)
    self.p_override = p

  def _prepare(self):
    if self.g.has_loops:
      raise ContractError("The bounded reduction needs a loopless graph")
    verdict = classify_pair(self.a, self.d)
    if verdict.tractable:
      raise TractableInputError("Input is on the tractable side: %s" % verdict.describe(), verdict)

    self.g_star, self.h = self.g.without_isolated_vertices()
    a, d, struck_weights = strike_zero_weights(self.a, self.d)
    self.cond = condense(a, d)
    self.certificate = self._thickening_certificate()
    self.p = self.certificate.p
    self.w, self.power_family, self.c_matrix = build_weights(self.cond, self.p)

    s = self.cond.s
    self.t = 2*self.g_star.edge_count
    self.order_bound = composition_count(self.t, s)
    # G_{1,p} has double edges wherever G has a vertex of degree 1.
    self.n_start = 2 if 1 in self.g_star.degrees() else 1
    self.target_index = 0
    self.parameters.update({
      "p": self.p,
      "s": s,
      "t": self.t,
      "h": self.h,
      "struck_zero_weights": list(struck_weights),
      "condensation": self.cond.to_json(),
      "certificate": self.certificate.to_json(),
      "w": [format_rational(x) for x in self.w],
      "c_matrix": self.c_matrix.to_json(),
    })

  def _thickening_certificate(self) -> ThickeningCertificate:
    a_prime = self.cond.a_prime
    d2 = self.cond.family.matrix(2)
    if self.p_override is None:
      return find_thickening_p(a_prime, d2)
    p = self.p_override
    if p < 1:
      raise ContractError("Thickening power must be at least 1, got %d" % p)
    product = a_prime @ d2 @ a_prime
    det_b = det(hadamard_pow(product, p))
    if det_b == 0:
      raise ContractError("Thickening power p=%d leaves B degenerate" % p)
    gamma_sq = gamma_squared(product)
    return ThickeningCertificate(p, gamma_sq, analytic_bound(product.rows, gamma_sq), det_b)

  def _oracle_graph(self, n: int) -> Multigraph:
    return build_Gnp(self.g_star, n, self.p)

  def _check_oracle_graph(self, n: int, graph: Multigraph):
    if not graph.is_simple():
      raise InternalError("Oracle graph G_{%d,%d} is not simple" % (n, self.p))
    if graph.max_degree > 2*self.p + 1:
      raise InternalError("Oracle graph G_{%d,%d} has degree %d above %d" % (n, self.p, graph.max_degree, 2*self.p + 1))

  def _oracle_value(self, n: int) -> Fraction:
    return z_collapsed_bounded(self.g_star, self.cond, self.p, n, self.budget, self.threads).value

  def _eigen_nodes(self, precision: int):
    d2p = self.cond.family.matrix(2*self.p)
    decomp = sym_eigen(thickened_transfer(self.cond, self.p), precision, congruence=d2p)
    ctx = decomp.ctx
    eigenvalues = decomp.eigenvalues
    nodes = [
      prod((lam**k for lam, k in zip(eigenvalues, exponents)), start=ctx.mpf(1))
      for exponents in compositions(self.t, len(eigenvalues))
    ]

    tensor = expansion_tensor(decomp)
    s = decomp.size
    symmetry = max(
      (ctx.fabs(tensor[i][j][l] - tensor[j][i][l]) for i in range(s) for j in range(s) for l in range(s)),
      default=ctx.mpf(0),
    )
    exact = transfer_L(self.cond, self.p, self.n_start)
    reconstruction = max(
      (
        ctx.fabs(ctx.fsum(tensor[i][j][l] * eigenvalues[l]**self.n_start for l in range(s)) - to_mpf(ctx, exact[i, j]))
        for i in range(s) for j in range(s)
      ),
      default=ctx.mpf(0),
    )
    diagnostics = {
      "tensor_symmetry_residual": ctx.nstr(symmetry, 5),
      "transfer_reconstruction_residual": ctx.nstr(reconstruction, 5),
    }
    return ctx, eigenvalues, nodes, diagnostics

  def _direct_checks(self) -> list[DirectCheck]:
    isolated_factor = self.cond.s ** self.h
    grid_value = z_collapsed_bounded(self.g_star, self.cond, self.p, 0, self.budget, self.threads).value
    weighted = z_degree_weighted(self.cond.a_prime, self.power_family, self.g, self.budget, self.threads).value
    plain = z_plain(self.c_matrix, self.g, self.budget, self.threads).value
    return [
      DirectCheck("ghgrid_G0p", grid_value, 1),
      DirectCheck("degree_weighted_P", weighted, isolated_factor),
      DirectCheck("plain_C", plain, isolated_factor),
    ]

def run_bounded_reduction(a: RationalMatrix, d: RationalMatrix, g: Multigraph,
    mode: ReductionMode = ReductionMode.EXACT, precision: int = DEFAULT_PRECISION, p: int = None,
    budget: int = DEFAULT_BUDGET, spot_check_budget: int = DEFAULT_SPOT_CHECK_BUDGET, threads: int = 1) -> ReductionTranscript:
  reduction = BoundedReduction(
    a, d, g, mode, precision, budget, spot_check_budget, threads, p=p,
  )
  return reduction.run()
