from fractions import Fraction
from math import lcm

from errors import ShapeError
from numeric.matrix import RationalMatrix

def _integer_rows(a: RationalMatrix) -> tuple[list[list[int]], int]:
  """Scale each row by the lcm of its denominators.

  Returns the integer rows and the product of the row scales, which divides out of the determinant."""
  rows = []
  total_scale = 1
  for row in a.entries:
    scale = lcm(*(x.denominator for x in row)) if row else 1
    rows.append([int(x*scale) for x in row])
    total_scale *= scale
  return rows, total_scale

def _fraction_free_eliminate(rows: list[list[int]]) -> tuple[int, int, list[list[int]]]:
  # Bareiss elimination with row pivoting. Columns without a pivot are skipped, which keeps every
  # entry an integer minor of the input, so the division by the previous pivot is exact.
  n_rows = len(rows)
  n_cols = len(rows[0]) if rows else 0
  prev_pivot = 1
  sign = 1
  rank = 0
  for col in range(n_cols):
    if rank == n_rows:
      break
    pivot_row = next((i for i in range(rank, n_rows) if rows[i][col] != 0), None)
    if pivot_row is None:
      continue
    if pivot_row != rank:
      rows[pivot_row], rows[rank] = rows[rank], rows[pivot_row]
      sign = -sign
    pivot = rows[rank][col]
    for i in range(rank+1, n_rows):
      factor = rows[i][col]
      for j in range(col+1, n_cols):
        rows[i][j] = (pivot*rows[i][j] - factor*rows[rank][j]) // prev_pivot
      rows[i][col] = 0
    prev_pivot = pivot
    rank += 1
  return rank, sign, rows

def rank(a: RationalMatrix) -> int:
  rows, _ = _integer_rows(a)
  r, _, _ = _fraction_free_eliminate(rows)
  return r

def det(a: RationalMatrix) -> Fraction:
  if not a.is_square:
    raise ShapeError("Determinant of a non-square %dx%d matrix" % (a.rows, a.cols))
  n = a.rows
  if n == 0:
    return Fraction(1)
  rows, scale = _integer_rows(a)
  r, sign, reduced = _fraction_free_eliminate(rows)
  if r < n:
    return Fraction(0)
  return Fraction(sign*reduced[n-1][n-1], scale)

def nonzero_minor(a: RationalMatrix, row_indices, col_indices):
  """Finds rows i < i' and columns j < j' among the given indices with a nonzero 2x2 minor."""
  for x, i in enumerate(row_indices):
    for i2 in row_indices[x+1:]:
      for y, j in enumerate(col_indices):
        for j2 in col_indices[y+1:]:
          if a[i, j]*a[i2, j2] - a[i, j2]*a[i2, j] != 0:
            return (i, i2, j, j2)
  return None

def columns_dependent(a: RationalMatrix, j: int, j2: int) -> bool:
  """True when columns j and j2 are linearly dependent, tested by cross-multiplication."""
  return nonzero_minor(a, list(range(a.rows)), [j, j2]) is None
