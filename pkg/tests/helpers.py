from fractions import Fraction
from itertools import product
from math import prod
import random

from graphs.multigraph import Multigraph
from numeric.matrix import RationalMatrix

def brute_z(a: RationalMatrix, weights, g: Multigraph) -> Fraction:
  """Z_{A,D}(g) straight from the definition, with no pruning or integer scaling."""
  m = a.rows
  if weights is None:
    weights = [Fraction(1)]*m
  total = Fraction(0)
  for xi in product(range(m), repeat=g.vertex_count):
    term = prod((Fraction(weights[i]) for i in xi), start=Fraction(1))
    for (u, v), k in g.edges.items():
      term *= a[xi[u], xi[v]]**k
    for v, count in g.loops.items():
      term *= a[xi[v], xi[v]]**count
    total += term
  return total

def brute_degree_z(a: RationalMatrix, family, g: Multigraph) -> Fraction:
  degrees = g.degrees()
  total = Fraction(0)
  for xi in product(range(a.rows), repeat=g.vertex_count):
    term = prod((family.diagonal(degrees[u])[i] for u, i in enumerate(xi)), start=Fraction(1))
    for (u, v), k in g.edges.items():
      term *= a[xi[u], xi[v]]**k
    for v, count in g.loops.items():
      term *= a[xi[v], xi[v]]**count
    total += term
  return total

def cofactor_det(a: RationalMatrix) -> Fraction:
  def expand(rows):
    if not rows:
      return Fraction(1)
    total = Fraction(0)
    for j, x in enumerate(rows[0]):
      if x == 0:
        continue
      minor = [row[:j] + row[j+1:] for row in rows[1:]]
      total += (-1)**j * x * expand(minor)
    return total
  return expand([list(row) for row in a.entries])

def random_symmetric(rng: random.Random, m: int, low: int = 0, high: int = 3, zero_chance: float = 0.0) -> RationalMatrix:
  rows = [[Fraction(0)]*m for _ in range(m)]
  for i in range(m):
    for j in range(i, m):
      if rng.random() < zero_chance:
        x = Fraction(0)
      else:
        x = Fraction(rng.randint(low, high), rng.randint(1, 2))
      rows[i][j] = rows[j][i] = x
  return RationalMatrix(rows, cols=m)

def random_weights(rng: random.Random, m: int) -> list[Fraction]:
  return [Fraction(rng.randint(1, 3), rng.randint(1, 2)) for _ in range(m)]

def random_multigraph(rng: random.Random, vertex_count: int, edge_count: int, allow_loops: bool = True) -> Multigraph:
  edges = []
  for _ in range(edge_count):
    u = rng.randrange(vertex_count)
    v = rng.randrange(vertex_count)
    if u == v and not allow_loops:
      if vertex_count == 1:
        continue
      v = (u + 1) % vertex_count
    edges.append((u, v))
  return Multigraph(vertex_count, edges)

def random_block_rank1(rng: random.Random) -> RationalMatrix:
  """A nonnegative symmetric matrix made of one loop block and one bipartite block, shuffled."""
  loop_size = rng.randint(1, 2)
  p_size = rng.randint(1, 2)
  q_size = rng.randint(1, 2)
  m = loop_size + p_size + q_size
  rows = [[Fraction(0)]*m for _ in range(m)]
  x = [Fraction(rng.randint(1, 3)) for _ in range(loop_size)]
  for i in range(loop_size):
    for j in range(loop_size):
      rows[i][j] = x[i]*x[j]
  px = [Fraction(rng.randint(1, 3)) for _ in range(p_size)]
  qy = [Fraction(rng.randint(1, 3), 2) for _ in range(q_size)]
  for i in range(p_size):
    for j in range(q_size):
      pi = loop_size + i
      qj = loop_size + p_size + j
      rows[pi][qj] = rows[qj][pi] = px[i]*qy[j]
  order = list(range(m))
  rng.shuffle(order)
  return RationalMatrix([[rows[order[i]][order[j]] for j in range(m)] for i in range(m)], cols=m)

def hard_instances():
  """Small (matrix, weights) pairs on the hard side of the dichotomy."""
  return [
    (RationalMatrix([[1, 1], [1, 0]]), [1, 1]),
    (RationalMatrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]]), [1, 1, 1]),
    (RationalMatrix([[1, 2, 1], [2, 4, 2], [1, 2, 0]]), [1, 1, 1]),
    (RationalMatrix([[2, 1], [1, 1]]), [1, 2]),
  ]
