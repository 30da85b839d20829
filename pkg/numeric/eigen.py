from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import logging

import mpmath

from errors import ContractError, PrecisionError
from numeric.matrix import RationalMatrix, as_weight_vector

logger = logging.getLogger(__name__)

DEFAULT_PRECISION = 256
MIN_PRECISION = 64

def make_context(precision: int) -> mpmath.MPContext:
  """A private mpmath context, so concurrent callers never share a working precision."""
  if precision < MIN_PRECISION:
    raise ContractError("Precision must be at least %d bits, got %d" % (MIN_PRECISION, precision))
  ctx = mpmath.MPContext()
  ctx.prec = precision
  return ctx

def to_mpf(ctx: mpmath.MPContext, value):
  if isinstance(value, Fraction):
    return ctx.mpf(value.numerator) / value.denominator
  return ctx.mpf(value)

def residual_tolerance(ctx: mpmath.MPContext, precision: int):
  return ctx.mpf(2) ** (-(precision // 2))

@dataclass(frozen=True)
class EigenDecomposition:
  ctx: mpmath.MPContext
  precision: int
  eigenvalues: tuple
  # Rows of the basis are eigenvectors: scaled_source = basis^T * diag(eigenvalues) * basis.
  basis: mpmath.matrix
  source: RationalMatrix
  congruence: tuple[Fraction, ...] | None = None

  @property
  def size(self) -> int:
    return self.source.rows

  def scaled_source(self) -> mpmath.matrix:
    return scaled_source_matrix(self.ctx, self.source, self.congruence)

  def orthogonality_residual(self):
    ctx = self.ctx
    n = self.size
    product = self.basis * self.basis.T
    return max(
      (ctx.fabs(product[i, j] - (1 if i == j else 0)) for i in range(n) for j in range(n)),
      default=ctx.mpf(0),
    )

  def reconstruction_residual(self):
    ctx = self.ctx
    n = self.size
    j_matrix = ctx.diag(list(self.eigenvalues)) if n else ctx.matrix(0, 0)
    rebuilt = self.basis.T * j_matrix * self.basis
    target = self.scaled_source()
    return max(
      (ctx.fabs(rebuilt[i, j] - target[i, j]) for i in range(n) for j in range(n)),
      default=ctx.mpf(0),
    )

def scaled_source_matrix(ctx, source: RationalMatrix, congruence) -> mpmath.matrix:
  n = source.rows
  m = ctx.matrix(n, n)
  if congruence is None:
    for i in range(n):
      for j in range(n):
        m[i, j] = to_mpf(ctx, source[i, j])
  else:
    roots = [ctx.sqrt(to_mpf(ctx, x)) for x in congruence]
    for i in range(n):
      for j in range(n):
        m[i, j] = roots[i] * to_mpf(ctx, source[i, j]) * roots[j]
  return m

def sym_eigen(a: RationalMatrix, precision: int = DEFAULT_PRECISION, congruence: RationalMatrix = None) -> EigenDecomposition:
  """Orthogonal eigen-decomposition of a symmetric rational matrix at the given binary precision.

  With a positive diagonal `congruence` D, the matrix decomposed is D^(1/2) a D^(1/2), whose
  entries are irrational in general and only ever formed inside the mpmath context.
  Eigenvalues come back sorted in descending order."""
  if not a.symmetric:
    raise ContractError("sym_eigen needs a symmetric matrix")
  weights = None
  if congruence is not None:
    weights = as_weight_vector(congruence)
    if len(weights) != a.rows:
      raise ContractError("Congruence scaling has %d entries for a %dx%d matrix" % (len(weights), a.rows, a.cols))
    if any(x <= 0 for x in weights):
      raise ContractError("Congruence scaling must be positive")
    weights = tuple(weights)

  ctx = make_context(precision)
  n = a.rows
  if n == 0:
    return EigenDecomposition(ctx, precision, (), ctx.matrix(0, 0), a, weights)

  target = scaled_source_matrix(ctx, a, weights)
  try:
    values, vectors = ctx.eigsy(target.copy())
  except RuntimeError as e:
    raise PrecisionError("Symmetric eigensolver did not converge at %d bits: %s" % (precision, e))

  order = sorted(range(n), key=lambda k: values[k], reverse=True)
  eigenvalues = tuple(values[k] for k in order)
  basis = ctx.matrix(n, n)
  for row, k in enumerate(order):
    for j in range(n):
      basis[row, j] = vectors[j, k]

  decomp = EigenDecomposition(ctx, precision, eigenvalues, basis, a, weights)

  tolerance = residual_tolerance(ctx, precision)
  scale = max(1, max((ctx.fabs(target[i, j]) for i in range(n) for j in range(n))))
  orthogonality = decomp.orthogonality_residual()
  reconstruction = decomp.reconstruction_residual()
  if orthogonality > tolerance or reconstruction > tolerance*scale:
    raise PrecisionError(
      "Eigen-decomposition residuals too large at %d bits (orthogonality %s, reconstruction %s)" % (
        precision, ctx.nstr(orthogonality, 5), ctx.nstr(reconstruction, 5),
      )
    )
  logger.debug("Decomposed %dx%d matrix at %d bits", n, n, precision)
  return decomp

def expansion_tensor(decomp: EigenDecomposition) -> list[list[list]]:
  """Coefficients a[i][j][l] with M^n_ij = sum_l a[i][j][l] * lambda_l^n, where M^n is
  D^(-1/2) (scaled source)^n D^(-1/2) for the congruence D (identity when absent)."""
  ctx = decomp.ctx
  n = decomp.size
  if decomp.congruence is None:
    inv_roots = [ctx.mpf(1)]*n
  else:
    inv_roots = [1/ctx.sqrt(to_mpf(ctx, x)) for x in decomp.congruence]
  s = decomp.basis
  return [
    [
      [s[l, i]*s[l, j]*inv_roots[i]*inv_roots[j] for l in range(n)]
      for j in range(n)
    ]
    for i in range(n)
  ]
