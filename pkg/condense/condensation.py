from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
import logging

from networkx.utils import UnionFind

from errors import ContractError, EmptyDomainError, ShapeError
from numeric.linalg import columns_dependent
from numeric.matrix import RationalMatrix, as_weight_vector
from numeric.rational import format_rational
from partition.families import CondensedFamily

logger = logging.getLogger(__name__)

def _positive_weights(a: RationalMatrix, d: RationalMatrix) -> tuple[Fraction, ...]:
  weights = as_weight_vector(d)
  if len(weights) != a.rows or not a.is_square:
    raise ShapeError("Vertex weights of size %d for a %dx%d edge matrix" % (len(weights), a.rows, a.cols))
  if any(w <= 0 for w in weights):
    raise ContractError("Vertex weights must be positive")
  return weights

def strike_zero_rows(a: RationalMatrix, d: RationalMatrix) -> tuple[RationalMatrix, RationalMatrix, tuple[int, ...]]:
  """Removes the indices whose row (and column) of a is entirely zero."""
  weights = _positive_weights(a, d)
  kept = [i for i in range(a.rows) if any(x != 0 for x in a.row(i))]
  struck = tuple(i for i in range(a.rows) if i not in kept)
  if not kept:
    raise EmptyDomainError("Every row of the matrix is zero")
  if not struck:
    return a, RationalMatrix.diag(weights), ()
  return a.submatrix(kept), RationalMatrix.diag([weights[i] for i in kept]), struck

@dataclass(frozen=True)
class Condensation:
  """Compressed form of a nonnegative symmetric matrix: each class of pairwise dependent columns
  collapses to its lowest index, and A_(i,j),(i',j') = mu[i][j] * mu[i'][j'] * a_prime[i, i'].

  groups, struck and index_map use the indices of the matrix that was condensed."""
  groups: tuple[tuple[int, ...], ...]
  mu: tuple[tuple[Fraction, ...], ...]
  alpha: tuple[tuple[Fraction, ...], ...]
  a_prime: RationalMatrix
  struck: tuple[int, ...]
  domain_size: int

  @property
  def s(self) -> int:
    return len(self.groups)

  @cached_property
  def family(self) -> CondensedFamily:
    return CondensedFamily(self.alpha, self.mu)

  @cached_property
  def index_map(self) -> dict[int, tuple[int, int]]:
    return {
      index: (i, j)
      for i, group in enumerate(self.groups)
      for j, index in enumerate(group)
    }

  @property
  def surviving(self) -> tuple[int, ...]:
    return tuple(sorted(self.index_map))

  def reconstruct(self) -> RationalMatrix:
    """The surviving submatrix of the original, rebuilt from the compressed form."""
    positions = [self.index_map[index] for index in self.surviving]
    return RationalMatrix(
      [
        [self.mu[i][j]*self.mu[i2][j2]*self.a_prime[i, i2] for i2, j2 in positions]
        for i, j in positions
      ],
      cols=len(positions),
    )

  def to_json(self) -> dict:
    return {
      "s": self.s,
      "groups": [list(group) for group in self.groups],
      "mu": [[format_rational(x) for x in row] for row in self.mu],
      "alpha": [[format_rational(x) for x in row] for row in self.alpha],
      "a_prime": self.a_prime.to_json(),
      "struck": list(self.struck),
    }

def condense(a: RationalMatrix, d: RationalMatrix) -> Condensation:
  if not a.symmetric or not a.nonnegative:
    raise ContractError("Condensation needs a nonnegative symmetric matrix")
  reduced, reduced_d, struck = strike_zero_rows(a, d)
  kept = [i for i in range(a.rows) if i not in struck]
  weights = reduced_d.diagonal_entries()
  n = reduced.rows

  sets = UnionFind(range(n))
  for j in range(n):
    for j2 in range(j+1, n):
      if sets[j] != sets[j2] and columns_dependent(reduced, j, j2):
        sets.union(j, j2)
  # Each class is represented by its lowest index.
  classes = sorted(sorted(members) for members in sets.to_sets())

  groups, mu, alpha = [], [], []
  for group in classes:
    representative = group[0]
    pivot = next(r for r in range(n) if reduced[r, representative] != 0)
    groups.append(tuple(kept[j] for j in group))
    mu.append(tuple(reduced[pivot, j] / reduced[pivot, representative] for j in group))
    alpha.append(tuple(weights[j] for j in group))

  a_prime = reduced.submatrix([group[0] for group in classes])
  logger.debug("Condensed %d indices into %d classes, struck %s", a.rows, len(groups), list(struck))
  return Condensation(tuple(groups), tuple(mu), tuple(alpha), a_prime, struck, a.rows)

def family_from(cond: Condensation) -> CondensedFamily:
  return cond.family
