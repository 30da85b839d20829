from __future__ import annotations

from fractions import Fraction
import logging
from math import prod

import networkx as nx

from dichotomy.blocks import BlockKind, strike_zero_weights, support_blocks
from dichotomy.classify import classify_pair
from errors import NotTractableError
from graphs.multigraph import Multigraph
from numeric.matrix import RationalMatrix
from partition.evaluate import PartitionValue
from tractable.factor import factor_rank1

logger = logging.getLogger(__name__)

def _power_sum(weights, values, indices, k: int) -> Fraction:
  return sum((weights[i] * values[n]**k for n, i in enumerate(indices)), Fraction(0))

def _loop_block_value(h: Multigraph, a: RationalMatrix, weights, T) -> Fraction:
  factor = factor_rank1(a.submatrix(T), BlockKind.LOOP)
  # Every edge carries x_u x_v / A_rr and the degrees sum to twice the edge count.
  numerator = prod(_power_sum(weights, factor.x, T, k) for k in h.degrees())
  return numerator / factor.scale**h.edge_count

def _bipartite_block_value(h: Multigraph, a: RationalMatrix, weights, P, Q) -> Fraction:
  if h.has_loops:
    return Fraction(0)
  graph = nx.Graph()
  graph.add_nodes_from(range(h.vertex_count))
  graph.add_edges_from(h.edges.keys())
  if not nx.is_bipartite(graph):
    return Fraction(0)
  coloring = nx.bipartite.color(graph)
  factor = factor_rank1(a.submatrix(P, Q), BlockKind.BIPARTITE)
  degrees = h.degrees()

  def oriented(side_for_p: int) -> Fraction:
    return prod(
      _power_sum(weights, factor.x, P, degrees[u]) if coloring[u] == side_for_p
      else _power_sum(weights, factor.y, Q, degrees[u])
      for u in range(h.vertex_count)
    )

  return oriented(0) + oriented(1)

def eval_tractable(a: RationalMatrix, d: RationalMatrix, g: Multigraph) -> PartitionValue:
  """Z_{A,D}(g) for a block-rank-1 pair, in time polynomial in the graph and the domain.

  Connected components multiply. Within a component with an edge, each block contributes
  separately and the contributions add."""
  verdict = classify_pair(a, d)
  if not verdict.tractable:
    raise NotTractableError("Pair is not block-rank-1: %s" % verdict.describe(), verdict)
  a, d, _ = strike_zero_weights(a, d)
  weights = d.diagonal_entries()
  structure = support_blocks(a)

  total = Fraction(1)
  for component in g.components():
    h = g.induced(component)
    if h.edge_count == 0:
      total *= sum(weights, Fraction(0))
      continue
    value = Fraction(0)
    for block in structure.blocks:
      if block.kind == BlockKind.LOOP:
        value += _loop_block_value(h, a, weights, list(block.T))
      else:
        value += _bipartite_block_value(h, a, weights, list(block.P), list(block.Q))
    total *= value
    if total == 0:
      break
  logger.debug("Tractable evaluation over %d blocks gave %s", len(structure.blocks), total)
  return PartitionValue(total, 0)
