from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from errors import ContractError, ParseError, ShapeError
from numeric.rational import format_rational, parse_rational, to_rational

class RationalMatrix:
  """Exact rows x cols matrix of Fractions.

  Instances are never mutated after construction, so the symmetric/diagonal/nonnegative flags are
  computed once on first use and cached."""

  def __init__(self, rows: Iterable[Iterable], cols: int = None):
    self.entries: tuple[tuple[Fraction, ...], ...] = tuple(
      tuple(to_rational(x) for x in row)
      for row in rows
    )
    if cols is None:
      cols = len(self.entries[0]) if self.entries else 0
    for row in self.entries:
      if len(row) != cols:
        raise ShapeError("Ragged matrix: expected %d columns, got a row of %d" % (cols, len(row)))
    self.rows = len(self.entries)
    self.cols = cols

  @classmethod
  def identity(cls, n: int) -> RationalMatrix:
    return cls.diag([1]*n)

  @classmethod
  def diag(cls, values: Sequence) -> RationalMatrix:
    n = len(values)
    return cls(
      [[values[i] if i == j else 0 for j in range(n)] for i in range(n)],
      cols=n,
    )

  @classmethod
  def zeros(cls, rows: int, cols: int) -> RationalMatrix:
    return cls([[0]*cols for _ in range(rows)], cols=cols)

  def __getitem__(self, index: tuple[int, int]) -> Fraction:
    i, j = index
    return self.entries[i][j]

  def row(self, i: int) -> tuple[Fraction, ...]:
    return self.entries[i]

  def column(self, j: int) -> tuple[Fraction, ...]:
    return tuple(row[j] for row in self.entries)

  @property
  def is_square(self) -> bool:
    return self.rows == self.cols

  @cached_property
  def symmetric(self) -> bool:
    if not self.is_square:
      return False
    return all(
      self.entries[i][j] == self.entries[j][i]
      for i in range(self.rows) for j in range(i+1, self.cols)
    )

  @cached_property
  def diagonal(self) -> bool:
    if not self.is_square:
      return False
    return all(
      self.entries[i][j] == 0
      for i in range(self.rows) for j in range(self.cols)
      if i != j
    )

  @cached_property
  def nonnegative(self) -> bool:
    return all(x >= 0 for row in self.entries for x in row)

  @property
  def is_zero_one(self) -> bool:
    return all(x in (0, 1) for row in self.entries for x in row)

  def diagonal_entries(self) -> tuple[Fraction, ...]:
    return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

  def transpose(self) -> RationalMatrix:
    return RationalMatrix(
      [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
      cols=self.rows,
    )

  def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int] = None) -> RationalMatrix:
    if col_indices is None:
      col_indices = row_indices
    return RationalMatrix(
      [[self.entries[i][j] for j in col_indices] for i in row_indices],
      cols=len(col_indices),
    )

  def max_abs(self) -> Fraction:
    return max((abs(x) for row in self.entries for x in row), default=Fraction(0))

  def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
    return mat_mul(self, other)

  def __eq__(self, other):
    if not isinstance(other, RationalMatrix):
      return NotImplemented
    return self.rows == other.rows and self.cols == other.cols and self.entries == other.entries

  def __hash__(self):
    return hash((self.rows, self.cols, self.entries))

  def __repr__(self):
    return "RationalMatrix(%s)" % [[str(x) for x in row] for row in self.entries]

  def to_text(self) -> str:
    lines = ["%d %d" % (self.rows, self.cols)]
    for row in self.entries:
      lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"

  @classmethod
  def from_text(cls, text: str) -> RationalMatrix:
    tokens = text.split()
    if len(tokens) < 2:
      raise ParseError("Matrix file must start with the row and column counts")
    try:
      rows, cols = int(tokens[0]), int(tokens[1])
    except ValueError:
      raise ParseError("Matrix dimensions are not integers: %r %r" % (tokens[0], tokens[1]))
    if rows < 0 or cols < 0:
      raise ParseError("Negative matrix dimensions: %d %d" % (rows, cols))
    values = tokens[2:]
    if len(values) != rows*cols:
      raise ParseError("Expected %d matrix entries, found %d" % (rows*cols, len(values)))
    values = [parse_rational(token) for token in values]
    return cls([values[i*cols:(i+1)*cols] for i in range(rows)], cols=cols)

  def to_json(self) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in self.entries]

  @classmethod
  def from_json(cls, data) -> RationalMatrix:
    if not isinstance(data, list):
      raise ParseError("Matrix JSON must be a list of rows")
    cols = len(data[0]) if data else 0
    return cls([[parse_rational(x) for x in row] for row in data], cols=cols)


def mat_mul(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
  if a.cols != b.rows:
    raise ShapeError("Cannot multiply %dx%d by %dx%d" % (a.rows, a.cols, b.rows, b.cols))
  b_columns = [b.column(j) for j in range(b.cols)]
  return RationalMatrix(
    [
      [sum((x*y for x, y in zip(row, col)), Fraction(0)) for col in b_columns]
      for row in a.entries
    ],
    cols=b.cols,
  )

def hadamard_pow(a: RationalMatrix, p: int) -> RationalMatrix:
  if p < 1:
    raise ContractError("Hadamard power must be at least 1, got %d" % p)
  return RationalMatrix([[x**p for x in row] for row in a.entries], cols=a.cols)

def mat_pow(a: RationalMatrix, k: int) -> RationalMatrix:
  if not a.is_square:
    raise ShapeError("Only square matrices have powers")
  if k < 0:
    raise ContractError("Negative matrix power %d" % k)
  result = RationalMatrix.identity(a.rows)
  base = a
  while k:
    if k & 1:
      result = mat_mul(result, base)
    k >>= 1
    if k:
      base = mat_mul(base, base)
  return result

def inverse_diagonal(d: RationalMatrix) -> RationalMatrix:
  if not d.diagonal:
    raise ContractError("Expected a diagonal matrix")
  values = d.diagonal_entries()
  if any(x == 0 for x in values):
    raise ContractError("Diagonal matrix with a zero entry has no inverse")
  return RationalMatrix.diag([1/x for x in values])

def scale_symmetric(a: RationalMatrix, w: Sequence[Fraction]) -> RationalMatrix:
  """Returns the matrix with entries a_ij * w_i * w_j."""
  if len(w) != a.rows or not a.is_square:
    raise ShapeError("Weight vector of length %d does not fit a %dx%d matrix" % (len(w), a.rows, a.cols))
  return RationalMatrix(
    [[a[i, j]*w[i]*w[j] for j in range(a.cols)] for i in range(a.rows)],
    cols=a.cols,
  )

def as_weight_vector(d: RationalMatrix) -> tuple[Fraction, ...]:
  """Vertex weights may be given either as a diagonal matrix or as a single row."""
  if d.rows == 1:
    return d.row(0)
  if not d.diagonal:
    raise ContractError("Vertex weights must be a diagonal matrix")
  return d.diagonal_entries()
