from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from dichotomy.blocks import BlockKind
from errors import ContractError
from numeric.linalg import rank
from numeric.matrix import RationalMatrix

@dataclass(frozen=True)
class Rank1Factorization:
  """Square-root-free rank one factorization of a block with no zero entries.

  LOOP: A_ij = x_i * x_j / scale, where x is the first row and scale = A_00.
  BIPARTITE: B_ij = x_i * y_j, where x is the first column and y is the first row over B_00."""
  kind: BlockKind
  x: tuple[Fraction, ...]
  y: tuple[Fraction, ...]
  scale: Fraction

  def entry(self, i: int, j: int) -> Fraction:
    if self.kind == BlockKind.LOOP:
      return self.x[i]*self.x[j] / self.scale
    return self.x[i]*self.y[j]

  def reconstruct(self) -> RationalMatrix:
    cols = len(self.x) if self.kind == BlockKind.LOOP else len(self.y)
    return RationalMatrix(
      [[self.entry(i, j) for j in range(cols)] for i in range(len(self.x))],
      cols=cols,
    )

def factor_rank1(block: RationalMatrix, kind: BlockKind) -> Rank1Factorization:
  if block.rows == 0 or block.cols == 0:
    raise ContractError("Cannot factor an empty block")
  if any(x == 0 for row in block.entries for x in row):
    raise ContractError("Rank one blocks must have no zero entries")
  if rank(block) != 1:
    raise ContractError("Block has rank %d, expected 1" % rank(block))
  if kind == BlockKind.LOOP:
    if not block.symmetric:
      raise ContractError("A loop block must be symmetric")
    x = block.row(0)
    return Rank1Factorization(kind, x, x, block[0, 0])
  x = block.column(0)
  y = tuple(b / block[0, 0] for b in block.row(0))
  return Rank1Factorization(kind, x, y, Fraction(1))
