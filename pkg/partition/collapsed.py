from __future__ import annotations

import logging

from errors import ContractError
from graphs.constructions import CycleStructure, build_Gprime, is_selected
from graphs.ghgrid import GHGrid
from graphs.multigraph import Multigraph
from numeric.matrix import RationalMatrix, hadamard_pow, inverse_diagonal, mat_pow
from partition.evaluate import DEFAULT_BUDGET, PartitionValue, z_ghgrid

logger = logging.getLogger(__name__)

def thickened_transfer(cond, p: int) -> RationalMatrix:
  """B = (A' D^[2] A')^(Hadamard p), the signature of one thickened length-2 segment."""
  if p < 1:
    raise ContractError("Thickening power must be at least 1, got %d" % p)
  a_prime = cond.a_prime
  return hadamard_pow(a_prime @ cond.family.matrix(2) @ a_prime, p)

def transfer_L(cond, p: int, n: int) -> RationalMatrix:
  """Signature of P_{n,p} with internal weights D^[2p]: B (D^[2p] B)^(n-1), and (D^[2p])^-1 at n = 0."""
  if n < 0:
    raise ContractError("Transfer index must be nonnegative, got %d" % n)
  d2p = cond.family.matrix(2*p)
  if n == 0:
    return inverse_diagonal(d2p)
  b = thickened_transfer(cond, p)
  return b @ mat_pow(d2p @ b, n - 1)

def transfer_M(a: RationalMatrix, d: RationalMatrix, n: int) -> RationalMatrix:
  """Signature of a path of length n with internal vertex weights d: A (D A)^(n-1)."""
  if n < 1:
    raise ContractError("Path transfer needs n >= 1, got %d" % n)
  return a @ mat_pow(d @ a, n - 1)

def bounded_grid(structure: CycleStructure, cond, p: int, n: int) -> GHGrid:
  grid = GHGrid(structure.graph.vertex_count)
  grid.matrix_pool = {
    "L": transfer_L(cond, p, n),
    "A'": cond.a_prime,
    "D": cond.family.matrix(2*p + 1),
  }
  for u, v in structure.cycle_edges:
    grid.add_edge(u, v, "L")
  for u, v in structure.merged_edges:
    grid.add_edge(u, v, "A'")
  grid.vertex_weights = {v: "D" for v in range(structure.graph.vertex_count)}
  return grid

def z_collapsed_bounded(g: Multigraph, cond, p: int, n: int, budget: int = DEFAULT_BUDGET, threads: int = 1) -> PartitionValue:
  """Z_{A',D}(G_{n,p}) from the grid on G', with every P_{n,p} gadget replaced by its signature.

  n = 0 evaluates the virtual graph G_{0,p}."""
  structure = build_Gprime(g)
  logger.debug("Collapsed bounded query n=%d p=%d on %d cycle vertices", n, p, structure.graph.vertex_count)
  return z_ghgrid(bounded_grid(structure, cond, p, n), budget, threads)

def stretch_grid(g: Multigraph, a: RationalMatrix, d: RationalMatrix, selection, n: int) -> GHGrid:
  grid = GHGrid(g.vertex_count)
  grid.matrix_pool = {"A": a, "M": transfer_M(a, d, n), "D": d}
  for (u, v), k in g.edges.items():
    grid.add_edge(u, v, "M" if is_selected(selection, (u, v)) else "A", k)
  for v, count in g.loops.items():
    grid.add_edge(v, v, "M" if is_selected(selection, (v, v)) else "A", count)
  grid.vertex_weights = {v: "D" for v in range(g.vertex_count)}
  return grid

def z_collapsed_stretch(g: Multigraph, a: RationalMatrix, d: RationalMatrix, selection, n: int, budget: int = DEFAULT_BUDGET, threads: int = 1) -> PartitionValue:
  """Z_{A,D} of g with every selected edge stretched to a path of length n, evaluated on g itself."""
  if not d.diagonal:
    raise ContractError("Vertex weight matrix must be diagonal")
  return z_ghgrid(stretch_grid(g, a, d, selection, n), budget, threads)
