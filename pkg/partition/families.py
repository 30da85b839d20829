from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from errors import ContractError
from numeric.matrix import RationalMatrix

class DegreeWeightFamily:
  """Base class for degree-indexed vertex weights: a vertex of degree k gets weight diagonal(k)[i]
  when it is assigned domain value i.

  Subclasses implement _diagonal. The weights never change after construction, but the object is
  not immutable: diagonal(k) memoizes each result in a per-instance cache."""

  def __init__(self, domain_size: int):
    self.domain_size = domain_size
    self._cache: dict[int, tuple[Fraction, ...]] = {}

  def diagonal(self, k: int) -> tuple[Fraction, ...]:
    if k < 0:
      raise ContractError("Degree must be nonnegative, got %d" % k)
    if k not in self._cache:
      self._cache[k] = tuple(self._diagonal(k))
    return self._cache[k]

  def _diagonal(self, k: int) -> Sequence[Fraction]:
    raise NotImplementedError()

  def matrix(self, k: int) -> RationalMatrix:
    return RationalMatrix.diag(self.diagonal(k))

  def describe(self) -> dict:
    return {"kind": type(self).__name__, "domain_size": self.domain_size}

class ConstantFamily(DegreeWeightFamily):
  """Every degree gets the same diagonal, which recovers plain vertex weights."""

  def __init__(self, weights: Sequence):
    super().__init__(len(weights))
    self.weights = tuple(Fraction(x) for x in weights)

  def _diagonal(self, k):
    return self.weights

class ExplicitFamily(DegreeWeightFamily):
  def __init__(self, diagonals: Sequence[Sequence]):
    if not diagonals:
      raise ContractError("An explicit family needs at least the degree 0 diagonal")
    super().__init__(len(diagonals[0]))
    self.diagonals = [tuple(Fraction(x) for x in diag) for diag in diagonals]
    for diag in self.diagonals:
      if len(diag) != self.domain_size:
        raise ContractError("Explicit family diagonals differ in length")

  def _diagonal(self, k):
    if k >= len(self.diagonals):
      raise ContractError("Explicit family only covers degrees up to %d, asked for %d" % (len(self.diagonals) - 1, k))
    return self.diagonals[k]

class CondensedFamily(DegreeWeightFamily):
  """D^[k]_i = sum_j alpha[i][j] * mu[i][j]^k over the members j of class i."""

  def __init__(self, alpha: Sequence[Sequence], mu: Sequence[Sequence]):
    super().__init__(len(alpha))
    self.alpha = tuple(tuple(Fraction(x) for x in row) for row in alpha)
    self.mu = tuple(tuple(Fraction(x) for x in row) for row in mu)
    if len(self.mu) != len(self.alpha) or any(len(a) != len(m) for a, m in zip(self.alpha, self.mu)):
      raise ContractError("Condensed family alpha and mu tables differ in shape")
    if any(x <= 0 for row in self.alpha + self.mu for x in row):
      raise ContractError("Condensed family needs positive alpha and mu")

  def _diagonal(self, k):
    return [
      sum((a * m**k for a, m in zip(alphas, mus)), Fraction(0))
      for alphas, mus in zip(self.alpha, self.mu)
    ]

class PowerFamily(DegreeWeightFamily):
  """P^[k]_j = w_j^k, so P^[0] is the identity."""

  def __init__(self, w: Sequence):
    super().__init__(len(w))
    self.w = tuple(Fraction(x) for x in w)

  def _diagonal(self, k):
    if k == 0:
      return [Fraction(1)]*self.domain_size
    return [x**k for x in self.w]
