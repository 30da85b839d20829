from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import logging

from condense.condensation import Condensation, condense
from dichotomy.blocks import strike_zero_weights
from errors import ContractError, InternalError, ShapeError
from numeric.eigen import make_context, to_mpf
from numeric.linalg import columns_dependent, det
from numeric.matrix import RationalMatrix, as_weight_vector, hadamard_pow, scale_symmetric
from numeric.rational import format_rational
from partition.families import PowerFamily

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class ThickeningCertificate:
  p: int
  gamma_sq: Fraction
  analytic_bound: int
  det_b: Fraction

  def to_json(self) -> dict:
    return {
      "p": self.p,
      "gamma_sq": format_rational(self.gamma_sq),
      "analytic_bound": self.analytic_bound,
      "det_B": format_rational(self.det_b),
    }

def validate_lemma_preconditions(a_prime: RationalMatrix, d: RationalMatrix):
  """a_prime must be nonnegative symmetric with nonzero, pairwise independent columns, d positive."""
  if not a_prime.symmetric or not a_prime.nonnegative:
    raise ContractError("Expected a nonnegative symmetric matrix")
  weights = as_weight_vector(d)
  if len(weights) != a_prime.rows:
    raise ShapeError("Vertex weights of size %d for a %dx%d matrix" % (len(weights), a_prime.rows, a_prime.cols))
  if any(w <= 0 for w in weights):
    raise ContractError("Vertex weights must be positive")
  for j in range(a_prime.cols):
    if all(x == 0 for x in a_prime.column(j)):
      raise ContractError("Column %d is zero" % j)
    for j2 in range(j+1, a_prime.cols):
      if columns_dependent(a_prime, j, j2):
        raise ContractError("Columns %d and %d are linearly dependent" % (j, j2))

def check_lemma_b1(a_prime: RationalMatrix, d: RationalMatrix) -> tuple[bool, tuple[int, int] | None]:
  """Checks that A D A has nonzero, pairwise independent columns. Returns (holds, offending pair);
  a zero column j is reported as (j, j)."""
  validate_lemma_preconditions(a_prime, d)
  product = a_prime @ RationalMatrix.diag(as_weight_vector(d)) @ a_prime
  for j in range(product.cols):
    if all(x == 0 for x in product.column(j)):
      return False, (j, j)
  for j in range(product.cols):
    for j2 in range(j+1, product.cols):
      if columns_dependent(product, j, j2):
        return False, (j, j2)
  return True, None

def gamma_squared(product: RationalMatrix) -> Fraction:
  """max over i < j of M_ij^2 / (M_ii M_jj)."""
  return max(
    (
      product[i, j]**2 / (product[i, i]*product[j, j])
      for i in range(product.rows) for j in range(i+1, product.cols)
    ),
    default=Fraction(0),
  )

def analytic_bound(m: int, gamma_sq: Fraction) -> int:
  """Search ceiling floor(ln(2m) / ln(1/gamma)) + 1, plus one for floating point slack."""
  if m == 1 or gamma_sq == 0:
    return 2
  ctx = make_context(64)
  ratio = ctx.log(2*m) / (-ctx.log(to_mpf(ctx, gamma_sq)) / 2)
  return int(ctx.floor(ratio)) + 2

def find_thickening_p(a_prime: RationalMatrix, d2: RationalMatrix) -> ThickeningCertificate:
  """Smallest p >= 1 with (A' D^[2] A')^(Hadamard p) nondegenerate."""
  validate_lemma_preconditions(a_prime, d2)
  product = a_prime @ RationalMatrix.diag(as_weight_vector(d2)) @ a_prime
  gamma_sq = gamma_squared(product)
  if gamma_sq >= 1:
    raise InternalError("gamma^2 = %s is not below 1; columns of A'DA' are dependent" % gamma_sq)
  bound = analytic_bound(product.rows, gamma_sq)
  for p in range(1, bound + 1):
    det_b = det(hadamard_pow(product, p))
    if det_b != 0:
      logger.debug("Thickening power p=%d (gamma^2=%s, bound %d)", p, gamma_sq, bound)
      return ThickeningCertificate(p, gamma_sq, bound, det_b)
  raise InternalError("No thickening power up to %d makes B nondegenerate" % bound)

def build_weights(cond: Condensation, p: int) -> tuple[tuple[Fraction, ...], PowerFamily, RationalMatrix]:
  """w_j = D^[2p+1]_j / D^[2p]_j, the family P^[k] = w^k and C_ij = A'_ij w_i w_j."""
  if p < 1:
    raise ContractError("Thickening power must be at least 1, got %d" % p)
  odd = cond.family.diagonal(2*p + 1)
  even = cond.family.diagonal(2*p)
  w = tuple(x / y for x, y in zip(odd, even))
  return w, PowerFamily(w), scale_symmetric(cond.a_prime, w)

def degree_bound(a: RationalMatrix, d: RationalMatrix) -> int:
  """2p+1 for the thickening power p the bounded reduction would use on (a, d)."""
  a, d, _ = strike_zero_weights(a, d)
  cond = condense(a, d)
  certificate = find_thickening_p(cond.a_prime, cond.family.matrix(2))
  return 2*certificate.p + 1
