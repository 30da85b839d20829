from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm
from multiprocessing import Pool
import logging
from typing import Sequence

from errors import BudgetExceededError, ContractError, ShapeError
from graphs.constructions import EdgeGadget
from graphs.ghgrid import GHGrid
from graphs.multigraph import Multigraph
from numeric.matrix import RationalMatrix, as_weight_vector
from partition.families import DegreeWeightFamily

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 2*10**8
# Below this many terms, spinning up worker processes costs more than it saves.
PARALLEL_THRESHOLD = 2**14

@dataclass(frozen=True)
class PartitionValue:
  value: Fraction
  term_count: int

@dataclass(frozen=True)
class EnumerationPlan:
  """Integer-scaled description of a sum over all maps from vertices to the domain.

  edge_terms[v] lists (other, table) for every edge whose later endpoint is v, with table indexed
  [value of other][value of v]; a loop at v has other == v. Every table and weight row has been
  multiplied through by a common scale, and the product of all those scales is `denominator`."""
  domain_size: int
  vertex_count: int
  edge_terms: tuple
  vertex_weights: tuple
  denominator: int

def _integer_table(rows: Sequence[Sequence[Fraction]]) -> tuple[tuple[tuple[int, ...], ...], int]:
  scale = lcm(*(x.denominator for row in rows for x in row)) if rows and rows[0] else 1
  return tuple(tuple(int(x*scale) for x in row) for row in rows), scale

def make_plan(domain_size: int, vertex_count: int, edges, vertex_weights) -> EnumerationPlan:
  """edges: (u, v, matrix, multiplicity, directed) tuples. vertex_weights: (v, weights) pairs."""
  edge_terms = [[] for _ in range(vertex_count)]
  denominator = 1
  for u, v, matrix, multiplicity, directed in edges:
    if matrix.rows != domain_size or matrix.cols != domain_size:
      raise ShapeError("Edge matrix is %dx%d on a domain of size %d" % (matrix.rows, matrix.cols, domain_size))
    if u == v:
      powered = [[matrix[i, i]**multiplicity if i == j else Fraction(0) for j in range(domain_size)] for i in range(domain_size)]
    else:
      powered = [[x**multiplicity for x in row] for row in matrix.entries]
    table, scale = _integer_table(powered)
    denominator *= scale
    if u <= v:
      edge_terms[v].append((u, table))
    else:
      transposed = tuple(tuple(table[i][j] for i in range(domain_size)) for j in range(domain_size))
      edge_terms[u].append((v, transposed))

  weights = [None]*vertex_count
  for v, row in vertex_weights:
    if len(row) != domain_size:
      raise ShapeError("Vertex weights of length %d on a domain of size %d" % (len(row), domain_size))
    (int_row,), scale = _integer_table([list(row)])
    denominator *= scale
    if weights[v] is None:
      weights[v] = int_row
    else:
      weights[v] = tuple(a*b for a, b in zip(weights[v], int_row))
  weights = tuple(w if w is not None else (1,)*domain_size for w in weights)
  return EnumerationPlan(
    domain_size, vertex_count,
    tuple(tuple(terms) for terms in edge_terms),
    weights, denominator,
  )

def _sum_with_prefixes(plan: EnumerationPlan, prefixes) -> int:
  """Sums the weight of every assignment extending one of the given prefixes."""
  m = plan.domain_size
  n = plan.vertex_count
  assignment = [0]*n

  def visit(v: int, prefix) -> int:
    if v == n:
      return 1
    if v < len(prefix):
      choices = (prefix[v],)
    else:
      choices = range(m)
    total = 0
    weights = plan.vertex_weights[v]
    terms = plan.edge_terms[v]
    for i in choices:
      factor = weights[i]
      if factor == 0:
        continue
      for other, table in terms:
        factor *= table[i if other == v else assignment[other]][i]
        if factor == 0:
          break
      if factor == 0:
        continue
      assignment[v] = i
      total += factor*visit(v+1, prefix)
    return total

  return sum(visit(0, prefix) for prefix in prefixes)

def run_plan(plan: EnumerationPlan, budget: int = DEFAULT_BUDGET, threads: int = 1) -> PartitionValue:
  term_count = plan.domain_size ** plan.vertex_count
  if term_count > budget:
    raise BudgetExceededError(term_count, budget)

  if threads > 1 and term_count >= PARALLEL_THRESHOLD:
    prefix_length = 0
    while prefix_length < plan.vertex_count and plan.domain_size ** prefix_length < 4*threads:
      prefix_length += 1
    prefixes = list(product(range(plan.domain_size), repeat=prefix_length))
    chunk_size = -(-len(prefixes) // threads)
    chunks = [prefixes[k:k+chunk_size] for k in range(0, len(prefixes), chunk_size)]
    logger.debug("Enumerating %d terms in %d blocks on %d processes", term_count, len(chunks), threads)
    with Pool(processes=threads) as pool:
      partial_sums = pool.starmap(_sum_with_prefixes, [(plan, chunk) for chunk in chunks])
    total = sum(partial_sums)
  else:
    total = _sum_with_prefixes(plan, [()])

  return PartitionValue(Fraction(total, plan.denominator), term_count)

def _require_symmetric(a: RationalMatrix):
  if not a.symmetric:
    raise ContractError("Edge weight matrix must be symmetric")

def _graph_edges(g: Multigraph, a: RationalMatrix):
  edges = [(u, v, a, k, False) for (u, v), k in g.edges.items()]
  edges.extend((v, v, a, count, False) for v, count in g.loops.items())
  return edges

def z_plain(a: RationalMatrix, g: Multigraph, budget: int = DEFAULT_BUDGET, threads: int = 1) -> PartitionValue:
  _require_symmetric(a)
  plan = make_plan(a.rows, g.vertex_count, _graph_edges(g, a), [])
  return run_plan(plan, budget, threads)

def z_vertex_weighted(a: RationalMatrix, d: RationalMatrix, g: Multigraph, budget: int = DEFAULT_BUDGET, threads: int = 1) -> PartitionValue:
  _require_symmetric(a)
  weights = as_weight_vector(d)
  if len(weights) != a.rows:
    raise ShapeError("Vertex weights of size %d for a %dx%d edge matrix" % (len(weights), a.rows, a.cols))
  plan = make_plan(a.rows, g.vertex_count, _graph_edges(g, a), [(v, weights) for v in range(g.vertex_count)])
  return run_plan(plan, budget, threads)

def z_degree_weighted(a: RationalMatrix, family: DegreeWeightFamily, g: Multigraph, budget: int = DEFAULT_BUDGET, threads: int = 1) -> PartitionValue:
  _require_symmetric(a)
  if family.domain_size != a.rows:
    raise ShapeError("Weight family of size %d for a %dx%d edge matrix" % (family.domain_size, a.rows, a.cols))
  degrees = g.degrees()
  plan = make_plan(
    a.rows, g.vertex_count, _graph_edges(g, a),
    [(v, family.diagonal(degrees[v])) for v in range(g.vertex_count)],
  )
  return run_plan(plan, budget, threads)

def z_ghgrid(grid: GHGrid, budget: int = DEFAULT_BUDGET, threads: int = 1) -> PartitionValue:
  grid.validate()
  pool = grid.matrix_pool
  edges = [
    (edge.u, edge.v, pool[edge.matrix_id], edge.multiplicity, edge.directed)
    for edge in grid.edges
  ]
  vertex_weights = [
    (v, pool[matrix_id].diagonal_entries())
    for v, matrix_id in sorted(grid.vertex_weights.items())
  ]
  plan = make_plan(grid.domain_size, grid.vertex_count, edges, vertex_weights)
  return run_plan(plan, budget, threads)

def edge_signature(gadget: EdgeGadget, a: RationalMatrix, d: RationalMatrix, budget: int = DEFAULT_BUDGET) -> RationalMatrix:
  """F_ij: the gadget's partition function with its endpoints pinned to i and j, endpoint
  vertex weights excluded."""
  _require_symmetric(a)
  weights = as_weight_vector(d)
  m = a.rows
  if len(weights) != m:
    raise ShapeError("Vertex weights of size %d for a %dx%d edge matrix" % (len(weights), m, m))
  g = gadget.graph
  u_star, v_star = gadget.endpoints
  edges = _graph_edges(g, a)
  internal = [(v, weights) for v in range(g.vertex_count) if v not in gadget.endpoints]
  # Pinning an endpoint is an indicator vertex weight, so the enumeration prunes everything else.
  inner_budget = budget * max(1, m) ** 2
  rows = []
  for i in range(m):
    row = []
    for j in range(m):
      pin_u = tuple(1 if k == i else 0 for k in range(m))
      pin_v = tuple(1 if k == j else 0 for k in range(m))
      plan = make_plan(m, g.vertex_count, edges, internal + [(u_star, pin_u), (v_star, pin_v)])
      row.append(run_plan(plan, inner_budget).value)
    rows.append(row)
  return RationalMatrix(rows, cols=m)
